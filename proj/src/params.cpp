#include "hidaprop/params.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hidaprop::core {

namespace {

void require(bool cond, const char* what) {
    if (!cond) throw std::invalid_argument(what);
}

} // namespace

SystemParams::SystemParams(double m_, double omega_, double omega_q_,
                           double lambda, double c, double hbar_)
    : m(m_), omega(omega_), omega_q(omega_q_), lambda_c(lambda),
      c_coupling(c), hbar(hbar_) {
    require(std::isfinite(m) && m > 0.0, "SystemParams: m must be positive");
    require(std::isfinite(omega) && omega > 0.0, "SystemParams: omega must be positive");
    require(std::isfinite(omega_q) && omega_q > 0.0, "SystemParams: omega_q must be positive");
    require(std::isfinite(hbar) && hbar > 0.0, "SystemParams: hbar must be positive");
    require(std::isfinite(lambda_c), "SystemParams: lambda_c must be finite");
    require(std::isfinite(c_coupling), "SystemParams: c_coupling must be finite");
}

double rotation_angle(unsigned branch_n) {
    return (2.0 * branch_n + 1.0) * std::numbers::pi / 4.0;
}

CouplingCoefficients coupling_coefficients(const SystemParams& p, double phi_angle) {
    const double c = std::cos(phi_angle);
    const double s = std::sin(phi_angle);
    CouplingCoefficients out;
    out.alpha = 0.5 * p.m * p.omega * p.omega + p.lambda_c * c * s;
    out.beta = 0.5 * p.m * p.omega * p.omega - p.lambda_c * c * s;
    // cos(2 phi) written as (c - s)(c + s) = mu * nu so that gamma vanishes
    // identically whenever mu or nu does, i.e. on every branch angle.
    out.mu = c - s;
    out.nu = c + s;
    out.gamma = p.lambda_c * out.mu * out.nu;
    return out;
}

BathCoefficients bath_coefficients(const SystemParams& p, double omega2,
                                   double theta_angle) {
    if (!(omega2 > 0.0)) throw std::invalid_argument("bath_coefficients: omega2 must be positive");
    const double c = std::cos(theta_angle);
    const double s = std::sin(theta_angle);
    const double sq2c = std::numbers::sqrt2 * p.c_coupling;
    BathCoefficients out;
    out.a = 0.5 * p.m * omega2 * omega2 + sq2c * c * s;
    out.b = 0.5 * p.m * omega2 * omega2 - sq2c * c * s;
    out.d = sq2c * (c - s) * (c + s);
    return out;
}

ModeFrequencies mode_frequencies(const SystemParams& p) {
    const double w2 = p.omega * p.omega;
    const double r1 = w2 + p.lambda_c / p.m;
    const double r2 = w2 - p.lambda_c / p.m;
    const double shift = std::numbers::sqrt2 * p.c_coupling / p.m;
    const double rphi2 = r2 + shift;
    const double rphi = r2 - shift;

    auto reject = [](const char* name, double value) {
        std::ostringstream msg;
        msg << "mode_frequencies: radicand " << name << " = " << value
            << " is not positive";
        throw ImaginaryFrequency(msg.str());
    };
    if (!(r1 > 0.0)) reject("omega1^2", r1);
    if (!(r2 > 0.0)) reject("omega2^2", r2);
    if (!(rphi2 > 0.0)) reject("phi2^2", rphi2);
    if (!(rphi > 0.0)) reject("phi^2", rphi);

    ModeFrequencies f;
    f.omega1 = std::sqrt(r1);
    f.omega2 = std::sqrt(r2);
    f.phi2 = std::sqrt(rphi2);
    f.phi = std::sqrt(rphi);

    const double scale = std::max(f.omega2, p.omega_q);
    if (std::abs(f.omega2 - p.omega_q) > 1e-9 * scale) {
        std::ostringstream msg;
        msg << "mode_frequencies: omega2 = " << f.omega2
            << " is not resonant with omega_q = " << p.omega_q;
        throw ResonanceViolation(msg.str());
    }
    return f;
}

NormalModes to_normal_modes(double x1, double x2, double q,
                            const RotationAngles& angles) {
    const double cp = std::cos(angles.phi_angle);
    const double sp = std::sin(angles.phi_angle);
    const double ct = std::cos(angles.theta_angle);
    const double st = std::sin(angles.theta_angle);
    const double q1 = x1 * cp - x2 * sp;
    const double q2 = x1 * sp + x2 * cp;
    return NormalModes{q1, q2 * ct - q * st, q2 * st + q * ct};
}

LabCoords from_normal_modes(const NormalModes& modes, const RotationAngles& angles) {
    const double cp = std::cos(angles.phi_angle);
    const double sp = std::sin(angles.phi_angle);
    const double ct = std::cos(angles.theta_angle);
    const double st = std::sin(angles.theta_angle);
    const double q2 = modes.Q2 * ct + modes.Q * st;
    const double q = -modes.Q2 * st + modes.Q * ct;
    return LabCoords{modes.q1 * cp + q2 * sp, -modes.q1 * sp + q2 * cp, q};
}

double model_potential(const SystemParams& p, double x1, double x2, double q) {
    return 0.5 * p.m * p.omega * p.omega * (x1 * x1 + x2 * x2)
         - p.lambda_c * x1 * x2
         + 0.5 * p.m * p.omega_q * p.omega_q * q * q
         - p.c_coupling * q * (x1 + x2);
}

double model_potential_system(const SystemParams& p, double x1, double x2) {
    if (p.c_coupling != 0.0)
        throw std::invalid_argument("model_potential_system: requires c_coupling == 0");
    return 0.5 * p.m * p.omega * p.omega * (x1 * x1 + x2 * x2) - p.lambda_c * x1 * x2;
}

} // namespace hidaprop::core

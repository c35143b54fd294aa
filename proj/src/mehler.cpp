#include "hidaprop/mehler.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hidaprop::propagator {

namespace {

constexpr std::complex<double> kImag{0.0, 1.0};

void check_time(double t) {
    if (!(t > 0.0)) throw std::invalid_argument("mehler_kernel: t must be positive");
}

// Continuous-branch prefactor: amplitude sqrt(m Omega / (2 pi hbar |sin|))
// with phase -(pi/4 + n pi/2) where n counts caustics crossed before t.
// On the first window this equals the principal branch of
// sqrt(m Omega / (2 pi i hbar sin Omega t)).
std::complex<double> oscillator_prefactor(double m, double omega, double t,
                                          double s, double hbar,
                                          Prefactor convention) {
    const int crossings = static_cast<int>(std::floor(omega * t / std::numbers::pi));
    const double amp = std::sqrt(m * omega / (2.0 * std::numbers::pi * hbar * std::abs(s)));
    const double phase = -(0.25 + 0.5 * crossings) * std::numbers::pi;
    std::complex<double> pref = amp * std::exp(kImag * phase);
    if (convention == Prefactor::verbatim) pref /= std::sqrt(t);
    return pref;
}

template <typename Scalar>
std::complex<double> mehler_impl(double m, double omega, double t, Scalar x,
                                 Scalar x0, double hbar, Prefactor convention,
                                 double caustic_threshold) {
    check_time(t);
    if (omega < 0.0) throw std::invalid_argument("mehler_kernel: omega must be >= 0");

    if (omega == 0.0) {
        // free particle
        std::complex<double> pref =
            std::sqrt(m / (2.0 * std::numbers::pi * hbar * t)) *
            std::exp(-kImag * std::numbers::pi / 4.0);
        if (convention == Prefactor::verbatim) pref /= std::sqrt(t);
        const Scalar d = x - x0;
        return pref * std::exp(kImag * (m * d * d / (2.0 * hbar * t)));
    }

    const double s = std::sin(omega * t);
    if (std::abs(s) < caustic_threshold) {
        std::ostringstream msg;
        msg << "mehler_kernel: caustic at omega t = " << omega * t
            << " (|sin| = " << std::abs(s) << ")";
        throw Caustic(msg.str());
    }
    const double c = std::cos(omega * t);
    const Scalar quad = ((x * x + x0 * x0) * c - 2.0 * x * x0) / s;
    return oscillator_prefactor(m, omega, t, s, hbar, convention) *
           std::exp(kImag * (m * omega / (2.0 * hbar)) * quad);
}

} // namespace

std::complex<double> mehler_kernel(double m, double omega_mode, double t,
                                   double x_final, double x_initial, double hbar,
                                   Prefactor convention, double caustic_threshold) {
    return mehler_impl<double>(m, omega_mode, t, x_final, x_initial, hbar,
                               convention, caustic_threshold);
}

std::complex<double> detail::mehler_kernel_c(double m, double omega_mode, double t,
                                             std::complex<double> x_final,
                                             std::complex<double> x_initial,
                                             double hbar, Prefactor convention,
                                             double caustic_threshold) {
    return mehler_impl<std::complex<double>>(m, omega_mode, t, x_final, x_initial,
                                             hbar, convention, caustic_threshold);
}

namespace {

// Quadratic form of one origin-pinned mode factor in (x1, x2, q): the mode
// coordinate u = g . (x1, x2, q) gives M = (m Omega cot(Omega t) / 2) g g^T.
ModeKernel make_mode_kernel(const core::SystemParams& p, Mode label,
                            double omega, double t, Prefactor convention,
                            const Eigen::Vector3d& direction) {
    const double s = std::sin(omega * t);
    if (std::abs(s) < 1e-10) {
        std::ostringstream msg;
        msg << "full_kernel: caustic in mode " << static_cast<int>(label)
            << " at omega t = " << omega * t;
        throw Caustic(msg.str());
    }
    const double cot = std::cos(omega * t) / s;
    Eigen::MatrixXcd form =
        (0.5 * p.m * omega * cot) *
        (direction * direction.transpose()).cast<std::complex<double>>();
    const std::complex<double> pref =
        oscillator_prefactor(p.m, omega, t, s, p.hbar, convention);
    return ModeKernel{label, omega, core::QuadraticKernel(pref, std::move(form), t)};
}

} // namespace

FullKernel full_kernel(const core::SystemParams& p, double t, Prefactor convention) {
    if (!(t > 0.0)) throw std::invalid_argument("full_kernel: t must be positive");
    const core::ModeFrequencies f = core::mode_frequencies(p);
    const double r = 1.0 / std::numbers::sqrt2;
    // q1 = (x1 - x2)/sqrt2, Q2 = ((x1 + x2)/sqrt2 - q)/sqrt2, Q = (... + q)/sqrt2
    const Eigen::Vector3d g1(r, -r, 0.0);
    const Eigen::Vector3d g2(0.5, 0.5, -r);
    const Eigen::Vector3d g3(0.5, 0.5, r);
    return FullKernel{
        p, f, t,
        {make_mode_kernel(p, Mode::q1, f.omega1, t, convention, g1),
         make_mode_kernel(p, Mode::Q2, f.phi2, t, convention, g2),
         make_mode_kernel(p, Mode::Q, f.phi, t, convention, g3)}};
}

std::complex<double> FullKernel::evaluate(double x1, double x2, double q) const {
    Eigen::VectorXd x(3);
    x << x1, x2, q;
    std::complex<double> out(1.0, 0.0);
    for (const auto& factor : factors) out *= factor.kernel.evaluate(x, params.hbar);
    return out;
}

std::complex<double> full_propagator(const core::SystemParams& p, double x1,
                                     double x2, double q, double t,
                                     Prefactor convention) {
    return full_propagator_two_point(p, {x1, x2, q}, {0.0, 0.0, 0.0}, t, convention);
}

std::complex<double> full_propagator_two_point(const core::SystemParams& p,
                                               const core::LabCoords& final_point,
                                               const core::LabCoords& initial_point,
                                               double t, Prefactor convention) {
    if (!(t > 0.0)) throw std::invalid_argument("full_propagator: t must be positive");
    const core::ModeFrequencies f = core::mode_frequencies(p);
    const core::NormalModes uf =
        core::to_normal_modes(final_point.x1, final_point.x2, final_point.q);
    const core::NormalModes ui =
        core::to_normal_modes(initial_point.x1, initial_point.x2, initial_point.q);
    return mehler_kernel(p.m, f.omega1, t, uf.q1, ui.q1, p.hbar, convention) *
           mehler_kernel(p.m, f.phi2, t, uf.Q2, ui.Q2, p.hbar, convention) *
           mehler_kernel(p.m, f.phi, t, uf.Q, ui.Q, p.hbar, convention);
}

} // namespace hidaprop::propagator

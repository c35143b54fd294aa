#include "hidaprop/noise_kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hidaprop/gauss_hermite.hpp"

namespace hidaprop::whitenoise {

namespace {

constexpr std::complex<double> kImag{0.0, 1.0};

Eigen::MatrixXd scaled_kernel(const NoiseKernelMatrix& k) {
    return k.entries * k.dt;
}

} // namespace

NoiseKernelMatrix noise_kernel(double omega_mode, double t, int n_steps) {
    if (!(t > 0.0)) throw std::invalid_argument("noise_kernel: t must be positive");
    if (n_steps < 2) throw std::invalid_argument("noise_kernel: n_steps must be >= 2");
    if (!(omega_mode >= 0.0))
        throw std::invalid_argument("noise_kernel: omega_mode must be nonnegative");

    NoiseKernelMatrix k;
    k.n_steps = n_steps;
    k.t_total = t;
    k.dt = t / n_steps;
    k.omega_mode = omega_mode;
    k.entries.resize(n_steps, n_steps);
    const double w2 = omega_mode * omega_mode;
    for (int i = 0; i < n_steps; ++i) {
        const double tau_i = (i + 0.5) * k.dt;
        for (int j = 0; j <= i; ++j) {
            // max(tau_i, tau_j) = tau_i on the lower triangle
            const double v = w2 * (t - tau_i);
            k.entries(i, j) = v;
            k.entries(j, i) = v;
        }
    }
    return k;
}

UnitWindowVector unit_window_vector(int n_steps) {
    if (n_steps < 1)
        throw std::invalid_argument("unit_window_vector: n_steps must be >= 1");
    UnitWindowVector e;
    e.n_steps = n_steps;
    e.entries = Eigen::VectorXd::Constant(n_steps, 1.0 / std::sqrt(double(n_steps)));
    return e;
}

double fredholm_determinant(const NoiseKernelMatrix& k) {
    if (k.omega_mode == 0.0) return 1.0;
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(k.n_steps, k.n_steps) - scaled_kernel(k);
    return m.partialPivLu().determinant();
}

double bilinear_form(const NoiseKernelMatrix& k, const UnitWindowVector& e) {
    if (e.n_steps != k.n_steps)
        throw std::invalid_argument("bilinear_form: dimension mismatch");
    return determinant_and_form(k).bilinear;
}

DeterminantAndForm determinant_and_form(const NoiseKernelMatrix& k) {
    const int n = k.n_steps;
    if (k.omega_mode == 0.0) return {1.0, 1.0};

    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) - scaled_kernel(k);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    const double det = lu.determinant();
    if (std::abs(det) < 1e-12)
        throw SingularOperator("bilinear_form: (I - K dt) is singular (caustic)");
    const Eigen::VectorXd e = unit_window_vector(n).entries;
    return {det, e.dot(lu.solve(e))};
}

std::complex<double> t_transform_gaussian(std::complex<double> k_const,
                                          const NoiseKernelMatrix& l_kernel,
                                          double xi_const, double t) {
    return t_transform_gaussian_c(k_const, l_kernel, xi_const, t);
}

std::complex<double> t_transform_gaussian_c(std::complex<double> k_const,
                                            const NoiseKernelMatrix& l_kernel,
                                            std::complex<double> xi_const,
                                            double t) {
    const int n = l_kernel.n_steps;
    const std::complex<double> kp1 = k_const + 1.0;
    if (std::abs(kp1) < 1e-14)
        throw std::invalid_argument("t_transform_gaussian: K + 1 must be invertible");
    if (std::abs(l_kernel.t_total - t) > 1e-12 * std::max(1.0, t))
        throw std::invalid_argument("t_transform_gaussian: t must match the kernel window");

    const Eigen::MatrixXd kmat = scaled_kernel(l_kernel);  // S''/hbar * dt

    // The paper's constant K = -(1+i) makes both operators real multiples of
    // (1 - S''/hbar): 1 + L(K+1)^{-1} = 1 - S''/hbar and
    // (K+L+1)^{-1} = i (1 - S''/hbar)^{-1}. Use one real factorization there.
    if (std::abs(kp1 + kImag) < 1e-14) {
        Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) - kmat;
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
        const double det = lu.determinant();
        if (std::abs(det) < 1e-12)
            throw SingularOperator("t_transform_gaussian: determinant vanishes (caustic)");
        std::complex<double> quad(0.0, 0.0);
        if (xi_const != std::complex<double>(0.0, 0.0)) {
            const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
            const double elem = ones.dot(lu.solve(ones));
            quad = xi_const * xi_const * l_kernel.dt * kImag * elem;
        }
        return 1.0 / std::sqrt(std::complex<double>(det, 0.0)) * std::exp(-0.5 * quad);
    }

    // det(1 + L (K+1)^{-1}) with L = i S''/hbar
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(n, n)
                       + (kImag / kp1) * kmat.cast<std::complex<double>>();
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu_a(a);
    const std::complex<double> det_a = lu_a.determinant();
    if (std::abs(det_a) < 1e-12)
        throw SingularOperator("t_transform_gaussian: determinant vanishes (caustic)");

    // <xi, (K + L + 1)^{-1} xi> for xi constant on [0, t]
    std::complex<double> quad(0.0, 0.0);
    if (xi_const != std::complex<double>(0.0, 0.0)) {
        Eigen::MatrixXcd b = kp1 * Eigen::MatrixXcd::Identity(n, n)
                           + kImag * kmat.cast<std::complex<double>>();
        const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(n);
        const Eigen::VectorXcd g = b.partialPivLu().solve(ones);
        quad = xi_const * xi_const * l_kernel.dt * ones.transpose() * g;
    }

    return 1.0 / std::sqrt(det_a) * std::exp(-0.5 * quad);
}

namespace {

struct FresnelCoefficient {
    double b;       // exponent: exp(-i b lambda^2 - i lambda x)
    double det;     // discretized determinant
};

FresnelCoefficient fresnel_coefficient(const core::SystemParams& p,
                                       double omega_mode, double t,
                                       int n_steps) {
    const NoiseKernelMatrix k = noise_kernel(omega_mode, t, n_steps);
    const DeterminantAndForm df = determinant_and_form(k);
    return {p.hbar * t * df.bilinear / (2.0 * p.m), df.determinant};
}

} // namespace

double lambda_integral_default_cutoff(const core::SystemParams& p,
                                      double omega_mode, double endpoint,
                                      double t, int n_steps, int n_quad) {
    const FresnelCoefficient fc = fresnel_coefficient(p, omega_mode, t, n_steps);
    const double babs = std::abs(fc.b);
    const double node_span = std::sqrt(2.0 * n_quad + 1.0) / std::sqrt(babs);
    const double peak = std::abs(endpoint) / (2.0 * std::numbers::sqrt2 * babs);
    return 2.0 * (node_span + peak) + 8.0 / std::sqrt(babs);
}

std::complex<double> propagator_lambda_integral(const core::SystemParams& p,
                                                double omega_mode,
                                                double endpoint, double t,
                                                int n_steps,
                                                double lambda_cutoff,
                                                int n_quad) {
    if (n_quad < 2)
        throw std::invalid_argument("propagator_lambda_integral: n_quad must be >= 2");
    if (!(lambda_cutoff > 0.0))
        throw std::invalid_argument("propagator_lambda_integral: cutoff must be positive");

    const FresnelCoefficient fc = fresnel_coefficient(p, omega_mode, t, n_steps);
    const double babs = std::abs(fc.b);
    if (!(babs > 0.0))
        throw SingularOperator("propagator_lambda_integral: vanishing Fresnel coefficient");
    const double sgn = fc.b >= 0.0 ? 1.0 : -1.0;

    // Rotate lambda = rot * u with rot = exp(-i sgn(b) pi/4):
    //   -i b lambda^2 -> -|b| u^2, and the linear factor becomes
    //   exp(-i x rot u) whose real part grows at most linearly in u.
    const std::complex<double> rot =
        std::exp(-kImag * sgn * (std::numbers::pi / 4.0));
    const GaussHermite gh = gauss_hermite(n_quad);

    const double x = endpoint;
    const double sqrt_b = std::sqrt(babs);
    const double u_max = gh.nodes.cwiseAbs().maxCoeff() / sqrt_b;

    // Decay check at the cutoff: |integrand| / |peak| must be below 1e-12 and
    // all quadrature nodes must lie inside the cutoff.
    const double log_peak = x * x / (8.0 * babs);
    const double log_cut = -babs * lambda_cutoff * lambda_cutoff
                         + std::abs(x) * lambda_cutoff / std::numbers::sqrt2;
    if (u_max > lambda_cutoff || log_cut - log_peak > std::log(1e-12))
        throw NonConvergent(
            "propagator_lambda_integral: integrand not decayed below 1e-12 at cutoff");

    std::complex<double> sum(0.0, 0.0);
    for (int i = 0; i < n_quad; ++i) {
        const double u = gh.nodes(i) / sqrt_b;
        sum += gh.weights(i) * std::exp(-kImag * x * rot * u);
    }
    sum *= rot / sqrt_b;

    return std::pow(std::complex<double>(fc.det, 0.0), -0.5) * sum
         / (2.0 * std::numbers::pi);
}

} // namespace hidaprop::whitenoise

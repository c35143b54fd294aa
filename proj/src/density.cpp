#include "hidaprop/density.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "hidaprop/parallel.hpp"
#include "hidaprop/wavepacket.hpp"

namespace hidaprop::master {

std::complex<double> DensityGrid::trace() const {
    std::complex<double> acc(0.0, 0.0);
    for (Eigen::Index a = 0; a < side(); ++a) acc += values(a, a);
    return acc * cell_area();
}

double DensityGrid::hermiticity_residual() const {
    return (values - values.adjoint()).cwiseAbs().maxCoeff();
}

void DensityGrid::enforce_unit_trace() {
    const std::complex<double> tr = trace();
    if (std::abs(tr) == 0.0)
        throw std::invalid_argument("DensityGrid: zero trace, cannot normalize");
    values /= tr.real();
}

DensityGrid pure_density(const GridState& psi) {
    if (psi.dims() != 2 || psi.frame != Frame::normal_mode)
        throw std::invalid_argument("pure_density: 2-D normal-mode state expected");
    DensityGrid rho;
    rho.axis1 = psi.axes[0];
    rho.axis2 = psi.axes[1];
    rho.time = psi.time;
    rho.values = psi.values * psi.values.adjoint();
    const double nrm = psi.norm();
    rho.values /= nrm * nrm;
    return rho;
}

DensityGrid gaussian_density(const core::SystemParams& p, const GaussianState& g,
                             const GridAxis& axis1, const GridAxis& axis2) {
    GridState psi = gaussian_state({axis1, axis2}, {g.center1, g.center2},
                                   {g.sigma1, g.sigma2}, {0.0, 0.0},
                                   Frame::normal_mode, p.hbar);
    return pure_density(psi);
}

std::complex<double> liouville_kernel(const core::SystemParams& p, double t,
                                      double x1, double x2, double x1p, double x2p,
                                      Prefactor convention) {
    if (p.c_coupling != 0.0)
        throw CouplingNotTraced("liouville_kernel: requires the traced C = 0 form");
    if (!(t > 0.0)) throw std::invalid_argument("liouville_kernel: t must be positive");

    const core::ModeFrequencies f = core::mode_frequencies(p);
    const double s1 = std::sin(f.omega1 * t);
    const double s2 = std::sin(f.phi2 * t);
    if (std::abs(s1) < 1e-10 || std::abs(s2) < 1e-10) {
        std::ostringstream msg;
        msg << "liouville_kernel: caustic (sin omega1 t = " << s1
            << ", sin phi2 t = " << s2 << ")";
        throw Caustic(msg.str());
    }

    double pref = (p.m / (2.0 * std::numbers::pi * p.hbar)) *
                  (p.m / (2.0 * std::numbers::pi * p.hbar)) *
                  f.omega1 * f.phi2 / (s1 * s2);
    if (convention == Prefactor::verbatim) pref /= t * t;

    const double d2 = (x1 - x2) * (x1 - x2) - (x1p - x2p) * (x1p - x2p);
    const double s2q = (x1 + x2) * (x1 + x2) - (x1p + x2p) * (x1p + x2p);
    const std::complex<double> phase(
        0.0, p.m / (4.0 * p.hbar) *
                 (f.omega1 * d2 * std::cos(f.omega1 * t) / s1 +
                  f.phi2 * s2q * std::cos(f.phi2 * t) / s2));
    return pref * std::exp(phase);
}

namespace {

// Left-multiplies the flattened density by G = K1 (x) K2 without forming G.
// `in` is column-major (side x side) with row index a*n2 + b; per column the
// data is a contiguous (n2 x n1) block, so the b-contraction is one big GEMM
// over the whole buffer and the a-contraction is a small GEMM per column.
void left_apply(const Eigen::MatrixXcd& in, Eigen::MatrixXcd& out,
                const Eigen::MatrixXcd& k1, const Eigen::MatrixXcd& k2) {
    const Eigen::Index n1 = k1.rows();
    const Eigen::Index n2 = k2.rows();
    const Eigen::Index side = n1 * n2;
    out.resize(side, side);

    Eigen::Map<const Eigen::MatrixXcd> vb(in.data(), n2, side * n1);
    Eigen::Map<Eigen::MatrixXcd> vo(out.data(), n2, side * n1);
    parallel_for(static_cast<std::size_t>(side * n1),
                 [&](std::size_t lo, std::size_t hi) {
        const auto len = static_cast<Eigen::Index>(hi - lo);
        vo.middleCols(static_cast<Eigen::Index>(lo), len).noalias() =
            k2 * vb.middleCols(static_cast<Eigen::Index>(lo), len);
    });

    parallel_for(static_cast<std::size_t>(side), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t col = lo; col < hi; ++col) {
            Eigen::Map<Eigen::MatrixXcd> v(
                out.data() + static_cast<Eigen::Index>(col) * side, n2, n1);
            v = (v * k1.transpose()).eval();
        }
    });
}

} // namespace

DensityGrid evolve_density(const core::SystemParams& p, const DensityGrid& rho0,
                           double t, Prefactor convention) {
    if (p.c_coupling != 0.0)
        throw CouplingNotTraced("evolve_density: requires the traced C = 0 form");
    if (!(t > 0.0)) throw std::invalid_argument("evolve_density: t must be positive");

    const core::ModeFrequencies f = core::mode_frequencies(p);
    const GridAxis& a1 = rho0.axis1;
    const GridAxis& a2 = rho0.axis2;

    Eigen::VectorXd u1(a1.n), u2(a2.n);
    for (int i = 0; i < a1.n; ++i) u1(i) = a1.coord(i);
    for (int i = 0; i < a2.n; ++i) u2(i) = a2.coord(i);

    const Eigen::MatrixXcd k1 = propagator::detail::mehler_matrix(
        p.m, f.omega1, p.hbar, t, u1, u1, a1.step, convention);
    const Eigen::MatrixXcd k2 = propagator::detail::mehler_matrix(
        p.m, f.phi2, p.hbar, t, u2, u2, a2.step, convention);

    // rho' = G rho G^dagger as two left applications:
    //   X = G rho, then rho' = (G X^dagger)^dagger.
    DensityGrid out;
    out.axis1 = rho0.axis1;
    out.axis2 = rho0.axis2;
    Eigen::MatrixXcd work;
    left_apply(rho0.values, work, k1, k2);
    work.adjointInPlace();
    left_apply(work, out.values, k1, k2);
    out.values.adjointInPlace();
    out.time = rho0.time + t;
    return out;
}

DensityGrid evolve_density(const core::SystemParams& p, const GaussianState& rho0,
                           const GridAxis& axis1, const GridAxis& axis2, double t,
                           Prefactor convention) {
    return evolve_density(p, gaussian_density(p, rho0, axis1, axis2), t, convention);
}

double purity(const DensityGrid& rho) {
    // Tr(rho^2) = sum_{AB} rho[A,B] rho[B,A] (dA dB)
    const double w = rho.cell_area();
    const std::complex<double> acc =
        (rho.values.array() * rho.values.transpose().array()).sum();
    return acc.real() * w * w;
}

} // namespace hidaprop::master

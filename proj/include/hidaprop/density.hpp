// Liouville-space propagator J = K K* with the bath traced at C = 0,
// reduced density evolution, and density diagnostics.

#pragma once

#include <complex>

#include <Eigen/Dense>

#include "hidaprop/grid.hpp"
#include "hidaprop/mehler.hpp"
#include "hidaprop/params.hpp"

namespace hidaprop::master {

using propagator::Prefactor;

// rho((u1, u2); (u1', u2')) on a uniform grid. The axes are the decoupled
// system coordinates (default rotation branch), a unitary relabeling of
// (x1, x2): trace, purity and Hermiticity are unchanged, and the evolution
// map separates mode by mode there. values(row, col) with row = (a, b) for
// (u1_a, u2_b) and col likewise for the primed pair.
struct DensityGrid {
    GridAxis axis1;  // u1 = (x1 - x2)/sqrt2
    GridAxis axis2;  // u2 = (x1 + x2)/sqrt2
    double time = 0.0;
    Eigen::MatrixXcd values;

    Eigen::Index side() const {
        return static_cast<Eigen::Index>(axis1.n) * axis2.n;
    }
    double cell_area() const { return axis1.step * axis2.step; }

    std::complex<double> trace() const;
    double hermiticity_residual() const;  // max |rho - rho^dagger|
    void enforce_unit_trace();
};

// Pure-state density psi psi^dagger from a 2-D normal-mode-frame GridState.
DensityGrid pure_density(const GridState& psi);

// Gaussian initial data for evolve_density: per-mode centered Gaussians.
struct GaussianState {
    double center1 = 0.0;
    double center2 = 0.0;
    double sigma1 = 1.0;
    double sigma2 = 1.0;
};

DensityGrid gaussian_density(const core::SystemParams& p, const GaussianState& g,
                             const GridAxis& axis1, const GridAxis& axis2);

// The paper's printed Liouville kernel with all initial coordinates pinned
// at the origin, C = 0 traced:
//
//   J = (m / 2 pi hbar)^2 omega1 phi2 / (sin omega1 t sin phi2 t)
//       * exp[(i m omega1 / 4 hbar)((x1-x2)^2 - (x1'-x2')^2) cot omega1 t]
//       * exp[(i m phi2 / 4 hbar)((x1+x2)^2 - (x1'+x2')^2) cot phi2 t].
//
// Throws CouplingNotTraced unless c_coupling == 0; Caustic near sin = 0.
std::complex<double> liouville_kernel(const core::SystemParams& p, double t,
                                      double x1, double x2, double x1p, double x2p,
                                      Prefactor convention = Prefactor::corrected);

// rho(t) = integral J(x, x0; x', x0'; t) rho0(x0; x0') dx0 dx0' with the
// generalized two-point kernels: a forward 2-D quadrature over x0 and a
// conjugate one over x0', executed as four mode sweeps. Requires
// c_coupling == 0. Output preserves Hermiticity and trace to quadrature
// accuracy.
DensityGrid evolve_density(const core::SystemParams& p, const DensityGrid& rho0,
                           double t, Prefactor convention = Prefactor::corrected);

DensityGrid evolve_density(const core::SystemParams& p, const GaussianState& rho0,
                           const GridAxis& axis1, const GridAxis& axis2, double t,
                           Prefactor convention = Prefactor::corrected);

// Tr(rho^2) by double quadrature.
double purity(const DensityGrid& rho);

} // namespace hidaprop::master

// Kernel-quadrature propagation of grid states:
//   psi(x, t) = integral K(x, x0; t) psi0(x0) dx0
// using the two-point Mehler kernels per normal mode.

#pragma once

#include <Eigen/Dense>

#include "hidaprop/grid.hpp"
#include "hidaprop/mehler.hpp"
#include "hidaprop/params.hpp"

namespace hidaprop::propagator {

// Single-mode state on a 1-D grid, oscillator frequency omega_mode.
// Throws GridTooNarrow unless |psi0| at the boundary is below 1e-10 of its
// peak; Caustic propagates from the kernel.
GridState propagate_mode_wavepacket(double m, double omega_mode, double hbar,
                                    const GridState& psi0, double t,
                                    Prefactor convention = Prefactor::corrected);

// System state propagation.
//
// Lab frame, 2-D (x1, x2): requires c_coupling == 0 and equal axis steps.
// The 45-degree rotation maps the square lattice onto diagonal index lines
// (i - j, i + j), where the kernel separates exactly; the quadrature is the
// plain rectangle rule over the input grid, reorganized, with no
// interpolation.
//
// Lab frame, 3-D (x1, x2, q): additionally requires the bath spacing to be
// the system spacing divided by sqrt(2), which makes the second rotation
// land on diagonal index lines as well.
//
// Normal-mode frame: axes are the decoupled coordinates and each axis is
// propagated independently by its mode kernel.
GridState propagate_wavepacket(const core::SystemParams& p, const GridState& psi0,
                               double t,
                               Prefactor convention = Prefactor::corrected);

namespace detail {

// Matrix of two-point kernels k(out_i, in_j) * weight for one mode.
Eigen::MatrixXcd mehler_matrix(double m, double omega_mode, double hbar, double t,
                               const Eigen::VectorXd& out_coords,
                               const Eigen::VectorXd& in_coords, double weight,
                               Prefactor convention);

} // namespace detail

} // namespace hidaprop::propagator

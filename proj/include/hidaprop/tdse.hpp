// Paper-independent grid oracle: split-operator spectral stepping and dense
// matrix exponentiation under the model Hamiltonian.

#pragma once

#include <Eigen/Dense>

#include "hidaprop/grid.hpp"
#include "hidaprop/params.hpp"

namespace hidaprop::tdse {

// Uniform grid specification; n must be a power of two per dimension so the
// spectral transforms stay exact-radix.
struct GridSpec {
    std::vector<int> n_points;
    std::vector<double> half_width;

    std::vector<GridAxis> axes() const;
};

// Strang-split kinetic/potential stepping of a 1-D oscillator of frequency
// omega_mode. Norm is preserved to rounding; UnstableStep if it drifts
// beyond 1e-8, GridTooNarrow if psi0 does not decay at the boundary.
GridState split_operator_evolve_mode(double m, double omega_mode, double hbar,
                                     const GridState& psi0, double t, int n_steps);

// Same stepping for the coupled system: 2-D (x1, x2) or 3-D (x1, x2, q)
// lab-frame states under the model potential.
GridState split_operator_evolve(const core::SystemParams& p, const GridState& psi0,
                                double t, int n_steps);

// Spatial discretization of the dense Hamiltonian:
//   central2  — second-order central differences, hard-wall boundary;
//   spectral  — the same Fourier kinetic operator the split stepper uses
//               (periodic), so the two evolutions share one discrete H.
enum class KineticScheme { central2, spectral };

// psi(t) = exp(-i H t / hbar) psi0 by dense symmetric eigendecomposition.
// Throws TooLarge above 4096 total grid points.
GridState dense_expm_evolve_mode(double m, double omega_mode, double hbar,
                                 const GridState& psi0, double t,
                                 KineticScheme scheme = KineticScheme::central2);

GridState dense_expm_evolve(const core::SystemParams& p, const GridState& psi0,
                            double t, KineticScheme scheme = KineticScheme::central2);

// Dense 1-D mode Hamiltonian (for spectrum checks).
Eigen::MatrixXd dense_hamiltonian_mode(double m, double omega_mode, double hbar,
                                       const GridAxis& axis, KineticScheme scheme);

// <psi| H |psi> with the spectral kinetic operator.
double energy_expectation_mode(double m, double omega_mode, double hbar,
                               const GridState& psi);
double energy_expectation(const core::SystemParams& p, const GridState& psi);

// <x> along one axis
double position_expectation(const GridState& psi, int axis);

} // namespace hidaprop::tdse

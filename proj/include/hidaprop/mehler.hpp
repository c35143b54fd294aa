// Closed-form kernels: the single-mode Mehler propagator, the three
// normal-mode kernels in original coordinates, and the full propagator.

#pragma once

#include <array>
#include <complex>

#include "hidaprop/params.hpp"
#include "hidaprop/quadratic_kernel.hpp"

namespace hidaprop::propagator {

// The corrected prefactor sqrt(m Omega / (2 pi i hbar sin Omega t)) is the
// unitary form; `verbatim` keeps the printed t under the root and exists for
// documentation runs only.
enum class Prefactor { corrected, verbatim };

// Two-point harmonic-oscillator propagator
//
//   K(x, x0; t) = sqrt(m Omega / (2 pi i hbar sin Omega t))
//                 * exp[ (i m Omega / 2 hbar)
//                        ((x^2 + x0^2) cos Omega t - 2 x x0) / sin Omega t ]
//
// with the branch of the square root tracked continuously across caustic
// windows (a phase -pi/2 per crossing). omega == 0 gives the free-particle
// kernel. Throws Caustic when |sin(omega t)| < caustic_threshold.
std::complex<double> mehler_kernel(double m, double omega_mode, double t,
                                   double x_final, double x_initial,
                                   double hbar,
                                   Prefactor convention = Prefactor::corrected,
                                   double caustic_threshold = 1e-10);

namespace detail {

// Exponent and prefactor split out for complex endpoints (the semigroup
// check integrates the intermediate point along a rotated contour).
std::complex<double> mehler_kernel_c(double m, double omega_mode, double t,
                                     std::complex<double> x_final,
                                     std::complex<double> x_initial,
                                     double hbar,
                                     Prefactor convention = Prefactor::corrected,
                                     double caustic_threshold = 1e-10);

} // namespace detail

enum class Mode { q1, Q2, Q };

// One normal-mode factor of the full propagator, origin-pinned and expressed
// as a quadratic form in the original coordinates (x1, x2, q).
struct ModeKernel {
    Mode mode_label;
    double omega_mode;
    core::QuadraticKernel kernel;
};

// All three factors at time t. Evaluation factorizes by construction.
struct FullKernel {
    core::SystemParams params;
    core::ModeFrequencies freqs;
    double time;
    std::array<ModeKernel, 3> factors;

    std::complex<double> evaluate(double x1, double x2, double q) const;
};

FullKernel full_kernel(const core::SystemParams& p, double t,
                       Prefactor convention = Prefactor::corrected);

// K_F(x1, x2, q; t) with all initial coordinates at the origin: the product
// of the three mode kernels at the rotated coordinates,
//   exp[(i m omega1 / 4 hbar) (x1 - x2)^2 cot omega1 t]
//   exp[(i m phi2 / 4 hbar) (sqrt2/2 (x1+x2) - q)^2 cot phi2 t]
//   exp[(i m phi / 4 hbar) (sqrt2/2 (x1+x2) + q)^2 cot phi t]
// under the prefactor (m / 2 pi i hbar)^{3/2}
//   [omega1 phi phi2 / (sin omega1 t sin phi t sin phi2 t)]^{1/2}.
std::complex<double> full_propagator(const core::SystemParams& p, double x1,
                                     double x2, double q, double t,
                                     Prefactor convention = Prefactor::corrected);

// Generalized two-point version (initial point not pinned to the origin);
// used by wavepacket and density quadratures.
std::complex<double> full_propagator_two_point(
    const core::SystemParams& p, const core::LabCoords& final_point,
    const core::LabCoords& initial_point, double t,
    Prefactor convention = Prefactor::corrected);

} // namespace hidaprop::propagator

// Discretized white-noise calculus: the second-derivative action kernel,
// its Fredholm determinant and inverse bilinear form, the Gaussian
// T-transform, and the Donsker-delta lambda-integral form of the single-mode
// propagator. These are the paper-internal oracles for the closed-form
// kernels in the propagator module.

#pragma once

#include <complex>

#include <Eigen/Dense>

#include "hidaprop/errors.hpp"
#include "hidaprop/params.hpp"

namespace hidaprop::whitenoise {

// Midpoint discretization of the (hbar-cancelled) action kernel
//   S''(tau_i, tau_j) / hbar = Omega^2 (t - max(tau_i, tau_j))
// on N uniform slices of [0, t], sampled at tau_i = (i + 1/2) dt.
struct NoiseKernelMatrix {
    int n_steps;
    double dt;
    double t_total;
    double omega_mode;
    Eigen::MatrixXd entries;
};

NoiseKernelMatrix noise_kernel(double omega_mode, double t, int n_steps);

// Discretization of e = t^{-1/2} chi_[0,t]: every component sqrt(dt/t),
// unit Euclidean norm.
struct UnitWindowVector {
    int n_steps;
    Eigen::VectorXd entries;
};

UnitWindowVector unit_window_vector(int n_steps);

// det(I - K dt). Converges to cos(Omega t) as N grows.
double fredholm_determinant(const NoiseKernelMatrix& k);

// e^T (I - K dt)^{-1} e, the inverse-operator matrix element on the unit
// window. Converges to tan(Omega t)/(Omega t). Throws SingularOperator when
// (I - K dt) is singular (a caustic, Omega t near pi/2 + n pi).
double bilinear_form(const NoiseKernelMatrix& k, const UnitWindowVector& e);

// Both quantities from a single LU factorization (used by sweeps).
struct DeterminantAndForm {
    double determinant;
    double bilinear;
};

DeterminantAndForm determinant_and_form(const NoiseKernelMatrix& k);

// Gaussian T-transform
//
//   T.I(xi) = det(1 + L (K+1)^{-1})^{-1/2}
//             * exp(-1/2 <xi, (K + L + 1)^{-1} xi>)
//
// with scalar K (the paper's -(1+i)), L = i * (S''/hbar) discretized by
// l_kernel, and xi constant on [0, t]. For the paper's K this reduces to
// det(1 - S''/hbar)^{-1/2} exp(-(i/2) <xi, (1 - S''/hbar)^{-1} xi>).
std::complex<double> t_transform_gaussian(std::complex<double> k_const,
                                          const NoiseKernelMatrix& l_kernel,
                                          double xi_const, double t);

// Same transform at complex constant xi (internal: the S-transform relation
// S Phi(xi) = C(xi) T Phi(-i xi) needs imaginary arguments).
std::complex<double> t_transform_gaussian_c(std::complex<double> k_const,
                                            const NoiseKernelMatrix& l_kernel,
                                            std::complex<double> xi_const,
                                            double t);

// Single-mode propagator as the Donsker-delta Fourier integral
//
//   K(x, 0; t) = (1/2 pi) integral exp(-i lambda_f x) T.I(sqrt(hbar/m) lambda_f) d lambda_f
//
// evaluated with the discretized T-transform. The lambda_f integrand is a
// pure Fresnel factor, so the contour is rotated by -(pi/4) sgn(b) onto the
// steepest-descent line and integrated by n_quad-point Gauss-Hermite
// quadrature. lambda_cutoff bounds the rotated integration variable; the
// quadrature must keep all nodes inside the cutoff and the Gaussian factor
// must have decayed below 1e-12 of its peak there, else NonConvergent.
std::complex<double> propagator_lambda_integral(const core::SystemParams& p,
                                                double omega_mode,
                                                double endpoint, double t,
                                                int n_steps,
                                                double lambda_cutoff,
                                                int n_quad);

// Default cutoff for the rotated variable: generously past both the node
// span of `n_quad`-point Gauss-Hermite and the integrand's shifted peak.
double lambda_integral_default_cutoff(const core::SystemParams& p,
                                      double omega_mode, double endpoint,
                                      double t, int n_steps, int n_quad);

} // namespace hidaprop::whitenoise

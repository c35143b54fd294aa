#pragma once

#include <complex>

#include <Eigen/Dense>

namespace hidaprop::core {

// Evaluates the d-dimensional Gaussian integral
//
//   integral exp(-x^T a x / 2 + b^T x) d^d x
//     = (2 pi)^{d/2} det(a)^{-1/2} exp(b^T a^{-1} b / 2)
//
// for complex symmetric a with Re(a) positive semidefinite. det(a)^{-1/2}
// is taken as the product of per-eigenvalue principal square roots, which
// continues the positive-definite case analytically across the closed right
// half plane (no eigenvalue can cross the negative real cut).
//
// Throws SingularForm if |det(a)| < 1e-13 and Divergent if any eigenvalue
// has negative real part beyond rounding.
std::complex<double> gaussian_integral(const Eigen::MatrixXcd& form_a,
                                       const Eigen::VectorXcd& shift_b);

} // namespace hidaprop::core

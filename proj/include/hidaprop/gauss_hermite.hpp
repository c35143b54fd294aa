#pragma once

#include <Eigen/Dense>

namespace hidaprop {

// Nodes and weights of n-point Gauss-Hermite quadrature against the weight
// exp(-y^2), computed by Golub-Welsch on the Jacobi matrix.
struct GaussHermite {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

GaussHermite gauss_hermite(int n);

} // namespace hidaprop

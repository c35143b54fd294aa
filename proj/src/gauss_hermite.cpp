#include "hidaprop/gauss_hermite.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hidaprop {

GaussHermite gauss_hermite(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite: n must be >= 1");

    // Hermite recurrence: off-diagonal sqrt(k/2), zero diagonal.
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = std::sqrt(0.5 * k);
        jacobi(k, k - 1) = b;
        jacobi(k - 1, k) = b;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
    GaussHermite out;
    out.nodes = es.eigenvalues();
    out.weights.resize(n);
    const double mu0 = std::sqrt(std::numbers::pi);  // integral of exp(-y^2)
    for (int i = 0; i < n; ++i) {
        const double v0 = es.eigenvectors()(0, i);
        out.weights(i) = mu0 * v0 * v0;
    }
    return out;
}

} // namespace hidaprop

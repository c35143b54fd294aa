#include "hidaprop/gaussian_integral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hidaprop/errors.hpp"

namespace hidaprop::core {

std::complex<double> gaussian_integral(const Eigen::MatrixXcd& form_a,
                                       const Eigen::VectorXcd& shift_b) {
    const auto d = form_a.rows();
    if (d == 0 || form_a.cols() != d)
        throw std::invalid_argument("gaussian_integral: form must be square and nonempty");
    if (shift_b.size() != d)
        throw std::invalid_argument("gaussian_integral: shift dimension mismatch");
    if ((form_a - form_a.transpose()).cwiseAbs().maxCoeff() >
        1e-12 * (1.0 + form_a.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("gaussian_integral: form must be symmetric");

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(form_a, /*computeEigenvectors=*/false);
    const Eigen::VectorXcd eig = es.eigenvalues();

    const double scale = form_a.cwiseAbs().maxCoeff();
    std::complex<double> det(1.0, 0.0);
    std::complex<double> inv_sqrt_det(1.0, 0.0);
    for (Eigen::Index i = 0; i < d; ++i) {
        const std::complex<double> ev = eig(i);
        if (ev.real() < -1e-12 * scale)
            throw Divergent("gaussian_integral: eigenvalue with negative real part");
        det *= ev;
        inv_sqrt_det /= std::sqrt(ev);  // principal branch, Re(ev) >= 0
    }
    if (std::abs(det) < 1e-13)
        throw SingularForm("gaussian_integral: det(form) vanishes");

    std::complex<double> shift_term(0.0, 0.0);
    if (shift_b.cwiseAbs().maxCoeff() > 0.0) {
        // plain b^T a^{-1} b, no conjugation
        const Eigen::VectorXcd y = form_a.partialPivLu().solve(shift_b);
        shift_term = 0.5 * (shift_b.transpose() * y)(0);
    }

    const double norm = std::pow(2.0 * std::numbers::pi, 0.5 * static_cast<double>(d));
    return norm * inv_sqrt_det * std::exp(shift_term);
}

} // namespace hidaprop::core

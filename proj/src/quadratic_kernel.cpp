#include "hidaprop/quadratic_kernel.hpp"

#include <stdexcept>
#include <utility>

namespace hidaprop::core {

QuadraticKernel::QuadraticKernel(std::complex<double> prefactor,
                                 Eigen::MatrixXcd form, double time)
    : prefactor_(prefactor), form_(std::move(form)), time_(time) {
    if (form_.rows() == 0 || form_.rows() != form_.cols())
        throw std::invalid_argument("QuadraticKernel: form must be square and nonempty");
    if ((form_ - form_.transpose()).cwiseAbs().maxCoeff() > 1e-14)
        throw std::invalid_argument("QuadraticKernel: form must be symmetric to 1e-14");
}

std::complex<double> QuadraticKernel::evaluate(const Eigen::VectorXd& x,
                                               double hbar) const {
    if (x.size() != form_.rows())
        throw std::invalid_argument("QuadraticKernel: coordinate dimension mismatch");
    const std::complex<double> quad = (x.transpose().cast<std::complex<double>>()
                                       * form_ * x.cast<std::complex<double>>())(0);
    return prefactor_ * std::exp(std::complex<double>(0.0, 1.0) * quad / hbar);
}

} // namespace hidaprop::core

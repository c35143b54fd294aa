// Gaussian propagator data: a complex prefactor together with a complex
// symmetric quadratic form, the common closed shape of all mode kernels.

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace hidaprop::core {

class QuadraticKernel {
public:
    // Throws std::invalid_argument unless form is symmetric to 1e-14
    // entrywise and dimensions are consistent.
    QuadraticKernel(std::complex<double> prefactor, Eigen::MatrixXcd form,
                    double time);

    int dim() const { return static_cast<int>(form_.rows()); }
    std::complex<double> prefactor() const { return prefactor_; }
    const Eigen::MatrixXcd& form() const { return form_; }
    double time() const { return time_; }

    // prefactor * exp(i x^T M x / hbar)
    std::complex<double> evaluate(const Eigen::VectorXd& x, double hbar) const;

private:
    std::complex<double> prefactor_;
    Eigen::MatrixXcd form_;
    double time_;
};

} // namespace hidaprop::core

// Monte Carlo realization of the white-noise characteristic functional
//   C(xi) = E[ exp(i <omega, xi>) ] = exp(-1/2 integral xi^2 d tau).

#pragma once

#include <cstdint>
#include <vector>

namespace hidaprop::whitenoise {

// A piecewise-constant test function on [0, t_total], uniform pieces.
struct StepFunction {
    double t_total;
    std::vector<double> values;

    double at(double tau) const;
    double integral_sq() const;  // integral of xi^2 over [0, t_total]
};

struct McEstimate {
    double value;      // sample mean of Re exp(i <omega, xi>)
    double std_error;  // standard error of that mean
    int n_samples;
};

// Discretizes the noise as omega_i ~ Normal(0, 1/dt) on n_steps midpoint
// slices, so <omega, xi> ~ Normal(0, integral xi^2). The estimate is the
// sample mean of cos(<omega, xi>); the imaginary part vanishes by symmetry.
// Sampling uses the counter-based generator with one stream per sample and
// fixed-size accumulation blocks, so the result is byte-identical for a
// given seed regardless of thread count.
McEstimate characteristic_functional_mc(const StepFunction& xi, int n_samples,
                                        int n_steps, std::uint64_t seed);

} // namespace hidaprop::whitenoise

#include "hidaprop/characteristic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hidaprop/parallel.hpp"
#include "hidaprop/philox.hpp"

namespace hidaprop::whitenoise {

double StepFunction::at(double tau) const {
    if (values.empty() || !(t_total > 0.0)) return 0.0;
    if (tau < 0.0 || tau >= t_total) return 0.0;
    const auto piece = static_cast<std::size_t>(tau / t_total * values.size());
    return values[piece >= values.size() ? values.size() - 1 : piece];
}

double StepFunction::integral_sq() const {
    if (values.empty()) return 0.0;
    double acc = 0.0;
    for (double v : values) acc += v * v;
    return acc * t_total / static_cast<double>(values.size());
}

McEstimate characteristic_functional_mc(const StepFunction& xi, int n_samples,
                                        int n_steps, std::uint64_t seed) {
    if (n_samples < 10000)
        throw std::invalid_argument("characteristic_functional_mc: n_samples must be >= 1e4");
    if (n_steps < 1 || !(xi.t_total > 0.0))
        throw std::invalid_argument("characteristic_functional_mc: bad discretization");

    const double dt = xi.t_total / n_steps;
    const double sqrt_dt = std::sqrt(dt);
    std::vector<double> xi_mid(n_steps);
    for (int i = 0; i < n_steps; ++i) xi_mid[i] = xi.at((i + 0.5) * dt);

    // Fixed 1024-sample blocks keep the summation order independent of the
    // thread partition.
    constexpr int kBlock = 1024;
    const int n_blocks = (n_samples + kBlock - 1) / kBlock;
    std::vector<double> block_sum(n_blocks, 0.0);
    std::vector<double> block_sumsq(n_blocks, 0.0);

    parallel_for(static_cast<std::size_t>(n_blocks), [&](std::size_t lo, std::size_t hi) {
        std::vector<double> z(n_steps);
        for (std::size_t blk = lo; blk < hi; ++blk) {
            const int first = static_cast<int>(blk) * kBlock;
            const int last = std::min(n_samples, first + kBlock);
            double s = 0.0, s2 = 0.0;
            for (int sample = first; sample < last; ++sample) {
                NormalStream stream(seed, static_cast<std::uint64_t>(sample));
                stream.fill(z.data(), z.size());
                // omega_i = z_i / sqrt(dt), so omega_i xi_i dt = z_i xi_i sqrt(dt)
                double pairing = 0.0;
                for (int i = 0; i < n_steps; ++i) pairing += z[i] * xi_mid[i];
                const double v = std::cos(pairing * sqrt_dt);
                s += v;
                s2 += v * v;
            }
            block_sum[blk] = s;
            block_sumsq[blk] = s2;
        }
    });

    double sum = 0.0, sumsq = 0.0;
    for (int blk = 0; blk < n_blocks; ++blk) {
        sum += block_sum[blk];
        sumsq += block_sumsq[blk];
    }
    const double n = static_cast<double>(n_samples);
    const double mean = sum / n;
    const double var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
    return {mean, std::sqrt(var / n), n_samples};
}

} // namespace hidaprop::whitenoise

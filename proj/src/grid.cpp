#include "hidaprop/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace hidaprop {

std::size_t GridState::size() const {
    std::size_t total = 1;
    for (const auto& a : axes) total *= static_cast<std::size_t>(a.n);
    return total;
}

std::size_t GridState::index(int i) const { return static_cast<std::size_t>(i); }

std::size_t GridState::index(int i, int j) const {
    return static_cast<std::size_t>(i) * axes[1].n + j;
}

std::size_t GridState::index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * axes[1].n + j) * axes[2].n + k;
}

double GridState::cell_volume() const {
    double v = 1.0;
    for (const auto& a : axes) v *= a.step;
    return v;
}

double GridState::norm() const {
    return std::sqrt(values.squaredNorm() * cell_volume());
}

void GridState::normalize() {
    const double n = norm();
    if (n > 0.0) values /= n;
}

double GridState::boundary_max_abs() const {
    double worst = 0.0;
    const auto consider = [&](std::size_t idx) {
        worst = std::max(worst, std::abs(values(static_cast<Eigen::Index>(idx))));
    };
    if (dims() == 1) {
        consider(index(0));
        consider(index(axes[0].n - 1));
    } else if (dims() == 2) {
        for (int i = 0; i < axes[0].n; ++i) {
            consider(index(i, 0));
            consider(index(i, axes[1].n - 1));
        }
        for (int j = 0; j < axes[1].n; ++j) {
            consider(index(0, j));
            consider(index(axes[0].n - 1, j));
        }
    } else {
        for (int i = 0; i < axes[0].n; ++i)
            for (int j = 0; j < axes[1].n; ++j) {
                consider(index(i, j, 0));
                consider(index(i, j, axes[2].n - 1));
            }
        for (int i = 0; i < axes[0].n; ++i)
            for (int k = 0; k < axes[2].n; ++k) {
                consider(index(i, 0, k));
                consider(index(i, axes[1].n - 1, k));
            }
        for (int j = 0; j < axes[1].n; ++j)
            for (int k = 0; k < axes[2].n; ++k) {
                consider(index(0, j, k));
                consider(index(axes[0].n - 1, j, k));
            }
    }
    return worst;
}

GridState make_grid(std::vector<GridAxis> axes, Frame frame) {
    if (axes.empty() || axes.size() > 3)
        throw std::invalid_argument("make_grid: 1 to 3 axes supported");
    for (const auto& a : axes)
        if (a.n < 2 || !(a.step > 0.0))
            throw std::invalid_argument("make_grid: axis needs n >= 2 and positive step");
    GridState g;
    g.axes = std::move(axes);
    g.frame = frame;
    g.values = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(g.size()));
    return g;
}

GridAxis centered_axis(int n, double half_width) {
    const double step = 2.0 * half_width / n;
    return GridAxis{n, -half_width + 0.5 * step, step};
}

GridState gaussian_state(std::vector<GridAxis> axes,
                         const std::vector<double>& centers,
                         const std::vector<double>& sigmas,
                         const std::vector<double>& momenta,
                         Frame frame, double hbar) {
    const auto d = axes.size();
    if (centers.size() != d || sigmas.size() != d || momenta.size() != d)
        throw std::invalid_argument("gaussian_state: per-axis parameter count mismatch");
    GridState g = make_grid(std::move(axes), frame);

    std::vector<Eigen::VectorXcd> factors(d);
    for (std::size_t a = 0; a < d; ++a) {
        factors[a].resize(g.axes[a].n);
        for (int i = 0; i < g.axes[a].n; ++i) {
            const double u = g.axes[a].coord(i) - centers[a];
            factors[a](i) = std::exp(std::complex<double>(
                -u * u / (4.0 * sigmas[a] * sigmas[a]),
                momenta[a] * g.axes[a].coord(i) / hbar));
        }
    }
    if (d == 1) {
        g.values = factors[0];
    } else if (d == 2) {
        for (int i = 0; i < g.axes[0].n; ++i)
            for (int j = 0; j < g.axes[1].n; ++j)
                g.values(g.index(i, j)) = factors[0](i) * factors[1](j);
    } else {
        for (int i = 0; i < g.axes[0].n; ++i)
            for (int j = 0; j < g.axes[1].n; ++j)
                for (int k = 0; k < g.axes[2].n; ++k)
                    g.values(g.index(i, j, k)) =
                        factors[0](i) * factors[1](j) * factors[2](k);
    }
    g.normalize();
    return g;
}

double l2_distance(const GridState& a, const GridState& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("l2_distance: size mismatch");
    return std::sqrt((a.values - b.values).squaredNorm() * a.cell_volume());
}

} // namespace hidaprop

// Complex amplitudes on uniform Cartesian grids, shared by the wavepacket,
// density and TDSE modules.

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace hidaprop {

struct GridAxis {
    int n;        // number of points
    double min;   // coordinate of point 0
    double step;  // spacing

    double coord(int i) const { return min + i * step; }
    double extent() const { return n * step; }
};

// Coordinate frame the axes refer to. `lab` means (x1, x2[, q]);
// `normal_mode` means the decoupled coordinates (q1, Q2[, Q]) on the default
// rotation branch.
enum class Frame { lab, normal_mode };

// A wavefunction sampled on a 1-, 2- or 3-dimensional grid, row-major
// (last axis fastest).
struct GridState {
    std::vector<GridAxis> axes;
    Frame frame = Frame::lab;
    double time = 0.0;
    Eigen::VectorXcd values;

    int dims() const { return static_cast<int>(axes.size()); }
    std::size_t size() const;

    std::size_t index(int i) const;
    std::size_t index(int i, int j) const;
    std::size_t index(int i, int j, int k) const;

    // product of axis steps
    double cell_volume() const;

    // L2 norm with the grid measure
    double norm() const;
    void normalize();

    // largest |psi| over all boundary faces
    double boundary_max_abs() const;
};

GridState make_grid(std::vector<GridAxis> axes, Frame frame = Frame::lab);

// Symmetric axis of n points covering [-half_width, half_width), cell-centered.
GridAxis centered_axis(int n, double half_width);

// sqrt-normalized Gaussian exp(-(x-center)^2 / (4 sigma^2) + i k0 x) per
// axis, products across axes. Normalized to unit grid norm.
GridState gaussian_state(std::vector<GridAxis> axes,
                         const std::vector<double>& centers,
                         const std::vector<double>& sigmas,
                         const std::vector<double>& momenta,
                         Frame frame = Frame::lab, double hbar = 1.0);

double l2_distance(const GridState& a, const GridState& b);

} // namespace hidaprop

#include "hidaprop/wavepacket.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hidaprop/parallel.hpp"

namespace hidaprop::propagator {

namespace {

void check_decay(const GridState& psi0) {
    const double peak = psi0.values.cwiseAbs().maxCoeff();
    const double edge = psi0.boundary_max_abs();
    if (!(peak > 0.0) || edge > 1e-10 * peak)
        throw GridTooNarrow("propagate_wavepacket: |psi0| above 1e-10 of peak at boundary");
}

void check_equal_steps(double a, double b, const char* what) {
    if (std::abs(a - b) > 1e-9 * std::max(a, b))
        throw std::invalid_argument(what);
}

} // namespace

Eigen::MatrixXcd detail::mehler_matrix(double m, double omega_mode, double hbar,
                                       double t, const Eigen::VectorXd& out_coords,
                                       const Eigen::VectorXd& in_coords,
                                       double weight, Prefactor convention) {
    const auto rows = out_coords.size();
    const auto cols = in_coords.size();
    Eigen::MatrixXcd k(rows, cols);
    // probe once so caustics surface before the parallel fill
    (void)mehler_kernel(m, omega_mode, t, out_coords(0), in_coords(0), hbar, convention);
    parallel_for(static_cast<std::size_t>(rows), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t r = lo; r < hi; ++r)
            for (Eigen::Index c = 0; c < cols; ++c)
                k(static_cast<Eigen::Index>(r), c) =
                    weight * mehler_kernel(m, omega_mode, t, out_coords(r),
                                           in_coords(c), hbar, convention);
    });
    return k;
}

GridState propagate_mode_wavepacket(double m, double omega_mode, double hbar,
                                    const GridState& psi0, double t,
                                    Prefactor convention) {
    if (psi0.dims() != 1)
        throw std::invalid_argument("propagate_mode_wavepacket: 1-D state expected");
    check_decay(psi0);

    const GridAxis& ax = psi0.axes[0];
    Eigen::VectorXd coords(ax.n);
    for (int i = 0; i < ax.n; ++i) coords(i) = ax.coord(i);

    // The kernel row factorizes as
    //   K(x_r, x_c) = P exp(i a x_r^2) exp(i a x_c^2) exp(i b_r x_c),
    // with a = (m Omega / 2 hbar) cot(Omega t) and
    // b_r = -(m Omega / hbar) x_r / sin(Omega t) (free-particle analogues at
    // Omega = 0). The chirp factor is shared by all rows and the linear
    // phase advances by a unit-modulus ratio per column, so one row costs a
    // couple of exponentials instead of n. Short times need very fine grids
    // and the dense n x n kernel would not fit in memory anyway.
    const std::complex<double> pref =
        mehler_kernel(m, omega_mode, t, 0.0, 0.0, hbar, convention);
    double a, b_scale;
    if (omega_mode == 0.0) {
        a = m / (2.0 * hbar * t);
        b_scale = -m / (hbar * t);
    } else {
        const double s = std::sin(omega_mode * t);
        a = m * omega_mode / (2.0 * hbar) * std::cos(omega_mode * t) / s;
        b_scale = -m * omega_mode / (hbar * s);
    }

    Eigen::VectorXcd chirp_psi(ax.n);
    for (int c = 0; c < ax.n; ++c)
        chirp_psi(c) = std::exp(std::complex<double>(0.0, a * coords(c) * coords(c))) *
                       psi0.values(c);

    GridState out = psi0;
    out.time = psi0.time + t;
    parallel_for(static_cast<std::size_t>(ax.n), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t ri = lo; ri < hi; ++ri) {
            const auto r = static_cast<Eigen::Index>(ri);
            const double b = b_scale * coords(r);
            const std::complex<double> step_phase =
                std::exp(std::complex<double>(0.0, b * ax.step));
            std::complex<double> phase =
                std::exp(std::complex<double>(0.0, b * coords(0)));
            std::complex<double> acc(0.0, 0.0);
            for (int c = 0; c < ax.n; ++c) {
                acc += phase * chirp_psi(c);
                phase *= step_phase;
            }
            out.values(r) = acc * pref * ax.step *
                            std::exp(std::complex<double>(0.0, a * coords(r) * coords(r)));
        }
    });
    return out;
}

namespace {

// ---- lab-frame 2-D: diagonal-lattice separation --------------------------

GridState propagate_lab_2d(const core::SystemParams& p, const GridState& psi0,
                           double t, Prefactor convention) {
    if (p.c_coupling != 0.0)
        throw std::invalid_argument(
            "propagate_wavepacket: 2-D lab states require c_coupling == 0");
    check_equal_steps(psi0.axes[0].step, psi0.axes[1].step,
                      "propagate_wavepacket: x1 and x2 steps must match");

    const core::ModeFrequencies f = core::mode_frequencies(p);
    const GridAxis& a1 = psi0.axes[0];
    const GridAxis& a2 = psi0.axes[1];
    const double dx = a1.step;
    const int n1 = a1.n, n2 = a2.n;
    const int nd = n1 + n2 - 1;  // i - j and i + j index counts coincide
    const int doff = n2 - 1;

    Eigen::VectorXd u1(nd), u2(nd);
    const double r = 1.0 / std::numbers::sqrt2;
    for (int d = 0; d < nd; ++d) {
        u1(d) = ((a1.min - a2.min) + (d - doff) * dx) * r;
        u2(d) = ((a1.min + a2.min) + d * dx) * r;
    }

    const Eigen::MatrixXcd k1 =
        detail::mehler_matrix(p.m, f.omega1, p.hbar, t, u1, u1, 1.0, convention);
    const Eigen::MatrixXcd k2 =
        detail::mehler_matrix(p.m, f.omega2, p.hbar, t, u2, u2, 1.0, convention);

    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(nd, nd);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            diag(i - j + doff, i + j) = psi0.values(psi0.index(i, j));

    const Eigen::MatrixXcd evolved = k1 * diag * k2.transpose() * (dx * dx);

    GridState out = psi0;
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            out.values(out.index(i, j)) = evolved(i - j + doff, i + j);
    out.time = psi0.time + t;
    return out;
}

// ---- lab-frame 3-D: two diagonal stages -----------------------------------

GridState propagate_lab_3d(const core::SystemParams& p, const GridState& psi0,
                           double t, Prefactor convention) {
    check_equal_steps(psi0.axes[0].step, psi0.axes[1].step,
                      "propagate_wavepacket: x1 and x2 steps must match");
    const double h = psi0.axes[0].step / std::numbers::sqrt2;
    check_equal_steps(psi0.axes[2].step, h,
                      "propagate_wavepacket: bath step must be system step / sqrt(2)");

    const core::ModeFrequencies f = core::mode_frequencies(p);
    const GridAxis& a1 = psi0.axes[0];
    const GridAxis& a2 = psi0.axes[1];
    const GridAxis& aq = psi0.axes[2];
    const double dx = a1.step;
    const int n1 = a1.n, n2 = a2.n, nq = aq.n;
    const int nd = n1 + n2 - 1, doff = n2 - 1;   // d = i - j
    const int ns = n1 + n2 - 1;                  // s = i + j
    const int ne = ns + nq - 1, eoff = nq - 1;   // e = s - k
    const int nf = ns + nq - 1;                  // f = s + k

    const double r = 1.0 / std::numbers::sqrt2;
    Eigen::VectorXd u1(nd), q2c(ne), qc(nf);
    for (int d = 0; d < nd; ++d) u1(d) = ((a1.min - a2.min) + (d - doff) * dx) * r;
    const double wmin = (a1.min + a2.min) * r;  // w = (x1 + x2)/sqrt2 = wmin + s h
    for (int e = 0; e < ne; ++e) q2c(e) = ((wmin - aq.min) + (e - eoff) * h) * r;
    for (int fi = 0; fi < nf; ++fi) qc(fi) = ((wmin + aq.min) + fi * h) * r;

    const Eigen::MatrixXcd kq1 =
        detail::mehler_matrix(p.m, f.omega1, p.hbar, t, u1, u1, 1.0, convention);
    const Eigen::MatrixXcd kq2 =
        detail::mehler_matrix(p.m, f.phi2, p.hbar, t, q2c, q2c, 1.0, convention);
    const Eigen::MatrixXcd kq =
        detail::mehler_matrix(p.m, f.phi, p.hbar, t, qc, qc, 1.0, convention);

    // embed psi0 into the (d, e, f) diagonal tensor, zero elsewhere
    Eigen::VectorXcd tens = Eigen::VectorXcd::Zero(
        static_cast<Eigen::Index>(nd) * ne * nf);
    const auto at = [&](int d, int e, int fi) -> Eigen::Index {
        return (static_cast<Eigen::Index>(d) * ne + e) * nf + fi;
    };
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            for (int k = 0; k < nq; ++k)
                tens(at(i - j + doff, (i + j) - k + eoff, (i + j) + k)) =
                    psi0.values(psi0.index(i, j, k));

    // sweep axis 0 (d): (nd x ne*nf) viewed as matrix
    {
        Eigen::Map<Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                                  Eigen::RowMajor>>
            view(tens.data(), nd, static_cast<Eigen::Index>(ne) * nf);
        view = (kq1 * view).eval();
    }
    // sweep axis 1 (e): per-d slice of shape (ne x nf)
    for (int d = 0; d < nd; ++d) {
        Eigen::Map<Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                                  Eigen::RowMajor>>
            slice(tens.data() + static_cast<Eigen::Index>(d) * ne * nf, ne, nf);
        slice = (kq2 * slice).eval();
    }
    // sweep axis 2 (f): (nd*ne x nf) times kq^T
    {
        Eigen::Map<Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                                  Eigen::RowMajor>>
            view(tens.data(), static_cast<Eigen::Index>(nd) * ne, nf);
        view = (view * kq.transpose()).eval();
    }

    const double weight = dx * dx * aq.step;
    GridState out = psi0;
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            for (int k = 0; k < nq; ++k)
                out.values(out.index(i, j, k)) =
                    weight * tens(at(i - j + doff, (i + j) - k + eoff, (i + j) + k));
    out.time = psi0.time + t;
    return out;
}

// ---- normal-mode frame: independent axis sweeps ---------------------------

GridState propagate_modes(const core::SystemParams& p, const GridState& psi0,
                          double t, Prefactor convention) {
    const core::ModeFrequencies f = core::mode_frequencies(p);
    std::vector<double> freqs;
    if (psi0.dims() == 2) {
        if (p.c_coupling != 0.0)
            throw std::invalid_argument(
                "propagate_wavepacket: 2-D mode states require c_coupling == 0");
        freqs = {f.omega1, f.omega2};
    } else {
        freqs = {f.omega1, f.phi2, f.phi};
    }

    GridState out = psi0;
    for (int axis = 0; axis < psi0.dims(); ++axis) {
        const GridAxis& ax = psi0.axes[axis];
        Eigen::VectorXd coords(ax.n);
        for (int i = 0; i < ax.n; ++i) coords(i) = ax.coord(i);
        const Eigen::MatrixXcd k = detail::mehler_matrix(
            p.m, freqs[axis], p.hbar, t, coords, coords, ax.step, convention);

        if (psi0.dims() == 2) {
            Eigen::Map<Eigen::Matrix<std::complex<double>, Eigen::Dynamic,
                                      Eigen::Dynamic, Eigen::RowMajor>>
                view(out.values.data(), psi0.axes[0].n, psi0.axes[1].n);
            if (axis == 0)
                view = (k * view).eval();
            else
                view = (view * k.transpose()).eval();
        } else {
            const int n0 = psi0.axes[0].n, n1 = psi0.axes[1].n, n2 = psi0.axes[2].n;
            if (axis == 0) {
                Eigen::Map<Eigen::Matrix<std::complex<double>, Eigen::Dynamic,
                                          Eigen::Dynamic, Eigen::RowMajor>>
                    view(out.values.data(), n0, static_cast<Eigen::Index>(n1) * n2);
                view = (k * view).eval();
            } else if (axis == 1) {
                for (int i = 0; i < n0; ++i) {
                    Eigen::Map<Eigen::Matrix<std::complex<double>, Eigen::Dynamic,
                                              Eigen::Dynamic, Eigen::RowMajor>>
                        slice(out.values.data() + static_cast<Eigen::Index>(i) * n1 * n2,
                              n1, n2);
                    slice = (k * slice).eval();
                }
            } else {
                Eigen::Map<Eigen::Matrix<std::complex<double>, Eigen::Dynamic,
                                          Eigen::Dynamic, Eigen::RowMajor>>
                    view(out.values.data(), static_cast<Eigen::Index>(n0) * n1, n2);
                view = (view * k.transpose()).eval();
            }
        }
    }
    out.time = psi0.time + t;
    return out;
}

} // namespace

GridState propagate_wavepacket(const core::SystemParams& p, const GridState& psi0,
                               double t, Prefactor convention) {
    if (!(t > 0.0)) throw std::invalid_argument("propagate_wavepacket: t must be positive");
    if (psi0.dims() < 2)
        throw std::invalid_argument(
            "propagate_wavepacket: system states are 2-D or 3-D "
            "(use propagate_mode_wavepacket for a single mode)");

    // structural preconditions first, boundary decay second
    if (psi0.frame == Frame::lab) {
        check_equal_steps(psi0.axes[0].step, psi0.axes[1].step,
                          "propagate_wavepacket: x1 and x2 steps must match");
        if (psi0.dims() == 3)
            check_equal_steps(psi0.axes[2].step,
                              psi0.axes[0].step / std::numbers::sqrt2,
                              "propagate_wavepacket: bath step must be system "
                              "step / sqrt(2)");
    }
    check_decay(psi0);

    if (psi0.frame == Frame::normal_mode) return propagate_modes(p, psi0, t, convention);
    if (psi0.dims() == 2) return propagate_lab_2d(p, psi0, t, convention);
    return propagate_lab_3d(p, psi0, t, convention);
}

} // namespace hidaprop::propagator

#include "hidaprop/tdse.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fftw3.h>

#include "hidaprop/errors.hpp"

namespace hidaprop::tdse {

namespace {

constexpr std::complex<double> kImag{0.0, 1.0};

bool power_of_two(int n) { return n > 1 && (n & (n - 1)) == 0; }

void check_spectral_sizes(const GridState& psi) {
    for (const auto& ax : psi.axes)
        if (!power_of_two(ax.n))
            throw std::invalid_argument("tdse: grid sizes must be powers of two");
}

void check_decay(const GridState& psi0) {
    const double peak = psi0.values.cwiseAbs().maxCoeff();
    if (!(peak > 0.0) || psi0.boundary_max_abs() > 1e-10 * peak)
        throw GridTooNarrow("tdse: |psi0| above 1e-10 of peak at boundary");
}

// angular wavenumbers of an n-point axis (FFT ordering)
Eigen::VectorXd wavenumbers(const GridAxis& ax) {
    Eigen::VectorXd k(ax.n);
    const double base = 2.0 * std::numbers::pi / (ax.n * ax.step);
    for (int i = 0; i < ax.n; ++i)
        k(i) = base * (i < ax.n / 2 ? i : i - ax.n);
    return k;
}

// RAII FFTW plan pair for an in-place transform on `data`.
class FftPair {
public:
    FftPair(const std::vector<GridAxis>& axes, std::complex<double>* data) {
        auto* buf = reinterpret_cast<fftw_complex*>(data);
        const int d = static_cast<int>(axes.size());
        int n[3] = {0, 0, 0};
        for (int i = 0; i < d; ++i) n[i] = axes[i].n;
        fwd_ = fftw_plan_dft(d, n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft(d, n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
        if (fwd_ == nullptr || bwd_ == nullptr)
            throw std::runtime_error("tdse: fftw planning failed");
    }
    ~FftPair() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
    }
    FftPair(const FftPair&) = delete;
    FftPair& operator=(const FftPair&) = delete;

    void forward() const { fftw_execute(fwd_); }
    void backward() const { fftw_execute(bwd_); }

private:
    fftw_plan fwd_;
    fftw_plan bwd_;
};

// Strang stepping with a supplied potential table.
GridState split_evolve_impl(const GridState& psi0, const Eigen::VectorXd& potential,
                            double m, double hbar, double t, int n_steps) {
    if (!(t > 0.0) || n_steps < 1)
        throw std::invalid_argument("split_operator_evolve: need t > 0 and n_steps >= 1");
    check_spectral_sizes(psi0);
    check_decay(psi0);

    const double dt = t / n_steps;
    const double vmax = potential.cwiseAbs().maxCoeff();
    if (dt * vmax / hbar >= 0.1)
        throw std::invalid_argument(
            "split_operator_evolve: dt max|V|/hbar must stay below 0.1");

    const auto total = static_cast<Eigen::Index>(psi0.size());
    Eigen::VectorXcd half_v(total), kin(total);
    for (Eigen::Index i = 0; i < total; ++i)
        half_v(i) = std::exp(-kImag * potential(i) * dt / (2.0 * hbar));

    // kinetic phases, outer product over dimensions
    std::vector<Eigen::VectorXd> k_axis;
    for (const auto& ax : psi0.axes) k_axis.push_back(wavenumbers(ax));
    for (Eigen::Index i = 0; i < total; ++i) {
        Eigen::Index rest = i;
        double k2 = 0.0;
        for (int d = psi0.dims() - 1; d >= 0; --d) {
            const int idx = static_cast<int>(rest % psi0.axes[d].n);
            rest /= psi0.axes[d].n;
            k2 += k_axis[d](idx) * k_axis[d](idx);
        }
        kin(i) = std::exp(-kImag * hbar * k2 * dt / (2.0 * m));
    }

    GridState out = psi0;
    FftPair fft(out.axes, out.values.data());
    const double norm0 = out.norm();
    const double inv_total = 1.0 / static_cast<double>(total);

    for (int step = 0; step < n_steps; ++step) {
        out.values.array() *= half_v.array();
        fft.forward();
        out.values.array() *= kin.array();
        fft.backward();
        out.values *= inv_total;
        out.values.array() *= half_v.array();
        if (std::abs(out.norm() - norm0) > 1e-8 * norm0)
            throw UnstableStep("split_operator_evolve: norm drift beyond 1e-8");
    }
    out.time = psi0.time + t;
    return out;
}

Eigen::VectorXd mode_potential(double m, double omega, const GridState& psi) {
    Eigen::VectorXd v(psi.axes[0].n);
    for (int i = 0; i < psi.axes[0].n; ++i) {
        const double u = psi.axes[0].coord(i);
        v(i) = 0.5 * m * omega * omega * u * u;
    }
    return v;
}

Eigen::VectorXd system_potential(const core::SystemParams& p, const GridState& psi) {
    const auto total = static_cast<Eigen::Index>(psi.size());
    Eigen::VectorXd v(total);
    if (psi.dims() == 2) {
        for (int i = 0; i < psi.axes[0].n; ++i)
            for (int j = 0; j < psi.axes[1].n; ++j)
                v(psi.index(i, j)) = core::model_potential_system(
                    p, psi.axes[0].coord(i), psi.axes[1].coord(j));
    } else {
        for (int i = 0; i < psi.axes[0].n; ++i)
            for (int j = 0; j < psi.axes[1].n; ++j)
                for (int k = 0; k < psi.axes[2].n; ++k)
                    v(psi.index(i, j, k)) = core::model_potential(
                        p, psi.axes[0].coord(i), psi.axes[1].coord(j),
                        psi.axes[2].coord(k));
    }
    return v;
}

// dense kinetic matrices -----------------------------------------------------

Eigen::MatrixXd kinetic_central2(double m, double hbar, const GridAxis& ax) {
    const double c = hbar * hbar / (2.0 * m * ax.step * ax.step);
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(ax.n, ax.n);
    for (int i = 0; i < ax.n; ++i) {
        t(i, i) = 2.0 * c;
        if (i + 1 < ax.n) {
            t(i, i + 1) = -c;
            t(i + 1, i) = -c;
        }
    }
    return t;
}

// the circulant matrix of the Fourier-diagonal kinetic operator
Eigen::MatrixXd kinetic_spectral(double m, double hbar, const GridAxis& ax) {
    const Eigen::VectorXd k = wavenumbers(ax);
    Eigen::VectorXd profile(ax.n);  // T row profile by inverse DFT of hbar^2 k^2/2m
    for (int d = 0; d < ax.n; ++d) {
        double acc = 0.0;
        for (int kk = 0; kk < ax.n; ++kk)
            acc += hbar * hbar * k(kk) * k(kk) / (2.0 * m) *
                   std::cos(2.0 * std::numbers::pi * kk * d / ax.n);
        profile(d) = acc / ax.n;
    }
    Eigen::MatrixXd t(ax.n, ax.n);
    for (int i = 0; i < ax.n; ++i)
        for (int j = 0; j < ax.n; ++j) {
            int d = (i - j) % ax.n;
            if (d < 0) d += ax.n;
            t(i, j) = profile(d);
        }
    return t;
}

Eigen::MatrixXd kinetic_matrix(double m, double hbar, const GridAxis& ax,
                               KineticScheme scheme) {
    return scheme == KineticScheme::central2 ? kinetic_central2(m, hbar, ax)
                                             : kinetic_spectral(m, hbar, ax);
}

GridState expm_evolve_impl(const Eigen::MatrixXd& h, const GridState& psi0,
                           double t, double hbar) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const Eigen::VectorXcd coeff = es.eigenvectors().transpose() * psi0.values;
    Eigen::VectorXcd phased(coeff.size());
    for (Eigen::Index i = 0; i < coeff.size(); ++i)
        phased(i) = coeff(i) * std::exp(-kImag * es.eigenvalues()(i) * t / hbar);
    GridState out = psi0;
    out.values = es.eigenvectors() * phased;
    out.time = psi0.time + t;
    return out;
}

} // namespace

std::vector<GridAxis> GridSpec::axes() const {
    if (n_points.size() != half_width.size() || n_points.empty() || n_points.size() > 3)
        throw std::invalid_argument("GridSpec: 1 to 3 matching dimensions required");
    std::vector<GridAxis> out;
    for (std::size_t d = 0; d < n_points.size(); ++d) {
        if (!power_of_two(n_points[d]))
            throw std::invalid_argument("GridSpec: n_points must be powers of two");
        out.push_back(centered_axis(n_points[d], half_width[d]));
    }
    return out;
}

GridState split_operator_evolve_mode(double m, double omega_mode, double hbar,
                                     const GridState& psi0, double t, int n_steps) {
    if (psi0.dims() != 1)
        throw std::invalid_argument("split_operator_evolve_mode: 1-D state expected");
    return split_evolve_impl(psi0, mode_potential(m, omega_mode, psi0), m, hbar, t,
                             n_steps);
}

GridState split_operator_evolve(const core::SystemParams& p, const GridState& psi0,
                                double t, int n_steps) {
    if (psi0.dims() < 2 || psi0.frame != Frame::lab)
        throw std::invalid_argument(
            "split_operator_evolve: lab-frame 2-D or 3-D state expected");
    return split_evolve_impl(psi0, system_potential(p, psi0), p.m, p.hbar, t, n_steps);
}

GridState dense_expm_evolve_mode(double m, double omega_mode, double hbar,
                                 const GridState& psi0, double t,
                                 KineticScheme scheme) {
    if (psi0.dims() != 1)
        throw std::invalid_argument("dense_expm_evolve_mode: 1-D state expected");
    if (psi0.size() > 4096)
        throw TooLarge("dense_expm_evolve: more than 4096 grid points");
    Eigen::MatrixXd h = kinetic_matrix(m, hbar, psi0.axes[0], scheme);
    h += mode_potential(m, omega_mode, psi0).asDiagonal();
    return expm_evolve_impl(h, psi0, t, hbar);
}

GridState dense_expm_evolve(const core::SystemParams& p, const GridState& psi0,
                            double t, KineticScheme scheme) {
    if (psi0.dims() != 2)
        throw std::invalid_argument("dense_expm_evolve: 2-D system state expected");
    if (psi0.size() > 4096)
        throw TooLarge("dense_expm_evolve: more than 4096 grid points");

    const int n1 = psi0.axes[0].n, n2 = psi0.axes[1].n;
    const Eigen::MatrixXd t1 = kinetic_matrix(p.m, p.hbar, psi0.axes[0], scheme);
    const Eigen::MatrixXd t2 = kinetic_matrix(p.m, p.hbar, psi0.axes[1], scheme);
    const auto total = static_cast<Eigen::Index>(psi0.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(total, total);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
            const Eigen::Index row = psi0.index(i, j);
            for (int i2 = 0; i2 < n1; ++i2)
                h(row, psi0.index(i2, j)) += t1(i, i2);
            for (int j2 = 0; j2 < n2; ++j2)
                h(row, psi0.index(i, j2)) += t2(j, j2);
            h(row, row) += core::model_potential_system(p, psi0.axes[0].coord(i),
                                                        psi0.axes[1].coord(j));
        }
    return expm_evolve_impl(h, psi0, t, p.hbar);
}

Eigen::MatrixXd dense_hamiltonian_mode(double m, double omega_mode, double hbar,
                                       const GridAxis& axis, KineticScheme scheme) {
    Eigen::MatrixXd h = kinetic_matrix(m, hbar, axis, scheme);
    for (int i = 0; i < axis.n; ++i) {
        const double u = axis.coord(i);
        h(i, i) += 0.5 * m * omega_mode * omega_mode * u * u;
    }
    return h;
}

namespace {

double energy_impl(const GridState& psi, const Eigen::VectorXd& potential, double m,
                   double hbar) {
    check_spectral_sizes(psi);
    GridState work = psi;
    FftPair fft(work.axes, work.values.data());
    fft.forward();

    std::vector<Eigen::VectorXd> k_axis;
    for (const auto& ax : psi.axes) k_axis.push_back(wavenumbers(ax));
    const auto total = static_cast<Eigen::Index>(psi.size());
    double kinetic = 0.0;
    for (Eigen::Index i = 0; i < total; ++i) {
        Eigen::Index rest = i;
        double k2 = 0.0;
        for (int d = psi.dims() - 1; d >= 0; --d) {
            const int idx = static_cast<int>(rest % psi.axes[d].n);
            rest /= psi.axes[d].n;
            k2 += k_axis[d](idx) * k_axis[d](idx);
        }
        kinetic += hbar * hbar * k2 / (2.0 * m) * std::norm(work.values(i));
    }
    kinetic /= static_cast<double>(total);

    double pot = 0.0;
    for (Eigen::Index i = 0; i < total; ++i)
        pot += potential(i) * std::norm(psi.values(i));

    const double nrm2 = psi.values.squaredNorm();
    return (kinetic + pot) / nrm2;
}

} // namespace

double energy_expectation_mode(double m, double omega_mode, double hbar,
                               const GridState& psi) {
    return energy_impl(psi, mode_potential(m, omega_mode, psi), m, hbar);
}

double energy_expectation(const core::SystemParams& p, const GridState& psi) {
    return energy_impl(psi, system_potential(p, psi), p.m, p.hbar);
}

double position_expectation(const GridState& psi, int axis) {
    if (axis < 0 || axis >= psi.dims())
        throw std::invalid_argument("position_expectation: bad axis");
    const auto total = static_cast<Eigen::Index>(psi.size());
    double acc = 0.0, nrm = 0.0;
    for (Eigen::Index i = 0; i < total; ++i) {
        Eigen::Index rest = i;
        int idx = 0;
        for (int d = psi.dims() - 1; d >= 0; --d) {
            const int this_idx = static_cast<int>(rest % psi.axes[d].n);
            rest /= psi.axes[d].n;
            if (d == axis) idx = this_idx;
        }
        const double w = std::norm(psi.values(i));
        acc += psi.axes[axis].coord(idx) * w;
        nrm += w;
    }
    return acc / nrm;
}

} // namespace hidaprop::tdse

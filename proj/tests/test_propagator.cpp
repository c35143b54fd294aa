#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "hidaprop/gauss_hermite.hpp"
#include "hidaprop/mehler.hpp"
#include "hidaprop/tdse.hpp"
#include "hidaprop/wavepacket.hpp"

using namespace hidaprop;
using namespace hidaprop::propagator;
using std::numbers::pi;
using std::numbers::sqrt2;
using Complex = std::complex<double>;

namespace {

// Composes two Mehler kernels through the intermediate point numerically.
// The y-integrand is a pure phase, so the contour is shifted to the
// stationary point and rotated by +-45 degrees, where Gauss-Hermite applies.
Complex compose_kernels(double m, double omega, double hbar, double t1, double t2,
                        double x, double x0, int n_quad = 160) {
    const double c1 = std::cos(omega * t1), s1 = std::sin(omega * t1);
    const double c2 = std::cos(omega * t2), s2 = std::sin(omega * t2);
    const double alpha = (m * omega / (2.0 * hbar)) * (c1 / s1 + c2 / s2);
    const double beta = -(m * omega / hbar) * (x / s1 + x0 / s2);
    const double y_star = -beta / (2.0 * alpha);
    const Complex rot = std::exp(Complex(0.0, (alpha > 0 ? 1.0 : -1.0) * pi / 4.0));

    const auto gh = gauss_hermite(n_quad);
    const double scale = 1.0 / std::sqrt(std::abs(alpha));
    Complex acc(0.0, 0.0);
    for (int i = 0; i < n_quad; ++i) {
        const Complex y = y_star + rot * (gh.nodes(i) * scale);
        // divide out the Gauss-Hermite weight exp(-nodes^2) already present
        const Complex f = detail::mehler_kernel_c(m, omega, t1, x, y, hbar) *
                          detail::mehler_kernel_c(m, omega, t2, y, x0, hbar) *
                          std::exp(Complex(gh.nodes(i) * gh.nodes(i), 0.0));
        acc += gh.weights(i) * f;
    }
    return acc * rot * scale;
}

GridAxis wide_axis(int n, double half) { return centered_axis(n, half); }

} // namespace

TEST_CASE("mehler kernel closed-form points") {
    SUBCASE("quarter period at the origin") {
        const Complex k = mehler_kernel(1, 1, pi / 2, 0.0, 0.0, 1);
        CHECK(std::abs(k) == doctest::Approx(1.0 / std::sqrt(2 * pi)).epsilon(1e-12));
        CHECK(std::arg(k) == doctest::Approx(-pi / 4).epsilon(1e-12));
    }
    SUBCASE("small-frequency limit matches the free kernel") {
        const Complex free_k = mehler_kernel(1, 0.0, 1.0, 0.5, 0.0, 1);
        const Complex near_free = mehler_kernel(1, 1e-8, 1.0, 0.5, 0.0, 1);
        CHECK(std::abs(free_k - near_free) < 1e-10);
        const Complex expect = std::sqrt(1.0 / (2 * pi)) *
                               std::exp(Complex(0, -pi / 4)) *
                               std::exp(Complex(0, 0.125));
        CHECK(std::abs(free_k - expect) < 1e-14);
    }
    SUBCASE("caustic guard") {
        CHECK_THROWS_AS(mehler_kernel(1, 1, pi, 0.1, 0.0, 1), Caustic);
        CHECK_THROWS_AS(mehler_kernel(1, 2, pi, 0.1, 0.0, 1), Caustic);
    }
    SUBCASE("verbatim prefactor keeps the printed t under the root") {
        const Complex corrected = mehler_kernel(1, 1.2, 0.7, 0.4, 0.1, 1);
        const Complex verbatim =
            mehler_kernel(1, 1.2, 0.7, 0.4, 0.1, 1, Prefactor::verbatim);
        CHECK(std::abs(verbatim * std::sqrt(0.7) - corrected) < 1e-14);
    }
    SUBCASE("two-point symmetry x <-> x0") {
        const Complex a = mehler_kernel(1, 1.1, 0.8, 0.9, -0.3, 1);
        const Complex b = mehler_kernel(1, 1.1, 0.8, -0.3, 0.9, 1);
        CHECK(std::abs(a - b) < 1e-15);
    }
}

TEST_CASE("branch tracking across a caustic") {
    // Composing two first-window kernels through the caustic at omega t = pi
    // must land on the continued branch, not the principal one.
    const double t1 = 0.55 * pi, t2 = 0.55 * pi;
    const Complex composed = compose_kernels(1, 1, 1, t1, t2, 0.3, 0.2);
    const Complex direct = mehler_kernel(1, 1, t1 + t2, 0.3, 0.2, 1);
    CHECK(std::abs(composed - direct) < 1e-9 * std::abs(direct));
}

TEST_CASE("semigroup composition at t1 = t2 = 0.4") {
    for (double x : {0.0, 0.7, -1.2})
        for (double x0 : {0.0, 0.5}) {
            const Complex composed = compose_kernels(1, 1, 1, 0.4, 0.4, x, x0);
            const Complex direct = mehler_kernel(1, 1, 0.8, x, x0, 1);
            CHECK(std::abs(composed - direct) < 1e-6 * std::abs(direct));
        }
}

TEST_CASE("mode kernels of the full propagator") {
    const core::SystemParams p(1.0, std::sqrt(2.0), 1.0, 1.0, 0.0);
    const double t = 0.7;
    const FullKernel fk = full_kernel(p, t);

    SUBCASE("prefactor modulus invariant") {
        for (const auto& factor : fk.factors) {
            const double expect =
                p.m * factor.omega_mode /
                (2 * pi * p.hbar * std::abs(std::sin(factor.omega_mode * t)));
            const double got = std::norm(factor.kernel.prefactor());
            CHECK(got == doctest::Approx(expect).epsilon(1e-12));
        }
    }
    SUBCASE("evaluation factorizes and matches the two-point path") {
        for (double x1 : {0.3, -0.8})
            for (double x2 : {0.2, 1.1})
                for (double q : {0.0, -0.4}) {
                    const Complex via_struct = fk.evaluate(x1, x2, q);
                    const Complex via_modes = full_propagator(p, x1, x2, q, t);
                    CHECK(std::abs(via_struct - via_modes) <
                          1e-12 * std::abs(via_modes));
                }
    }
}

TEST_CASE("full propagator special points") {
    SUBCASE("decoupled limit is a triple product of identical kernels") {
        const core::SystemParams p(1.3, 0.9, 0.9, 0.0, 0.0);
        const double t = 0.6;
        for (double x1 : {0.5, -0.2}) {
            const double x2 = 0.3, q = -0.7;
            const auto u = core::to_normal_modes(x1, x2, q);
            const Complex product = mehler_kernel(p.m, p.omega, t, u.q1, 0, p.hbar) *
                                    mehler_kernel(p.m, p.omega, t, u.Q2, 0, p.hbar) *
                                    mehler_kernel(p.m, p.omega, t, u.Q, 0, p.hbar);
            const Complex full = full_propagator(p, x1, x2, q, t);
            CHECK(std::abs(full - product) < 1e-12 * std::abs(product));
        }
    }
    SUBCASE("origin keeps only the prefactor") {
        const core::SystemParams p(1.0, std::sqrt(2.0), 1.0, 1.0, 0.0);
        const double t = 0.7;
        const auto f = core::mode_frequencies(p);
        const Complex got = full_propagator(p, 0, 0, 0, t);
        const double amp = std::pow(p.m / (2 * pi * p.hbar), 1.5) *
                           std::sqrt(f.omega1 * f.phi2 * f.phi /
                                     std::abs(std::sin(f.omega1 * t) *
                                              std::sin(f.phi2 * t) *
                                              std::sin(f.phi * t)));
        CHECK(std::abs(got) == doctest::Approx(amp).epsilon(1e-12));
        CHECK(std::arg(got) == doctest::Approx(-3 * pi / 4).epsilon(1e-12));
    }
    SUBCASE("symmetric under particle exchange") {
        const core::SystemParams p(1.0, std::sqrt(2.0), 1.0, 1.0, 0.0);
        const Complex a = full_propagator(p, 0.8, -0.3, 0.2, 0.7);
        const Complex b = full_propagator(p, -0.3, 0.8, 0.2, 0.7);
        CHECK(std::abs(a - b) <= 1e-14 * std::abs(a));
    }
    SUBCASE("exponent matches the printed coordinate combinations") {
        const core::SystemParams p(1.0, std::sqrt(2.0), 1.0, 1.0, 0.0);
        const double t = 0.7, x1 = 0.9, x2 = -0.4, q = 0.3;
        const auto f = core::mode_frequencies(p);
        const Complex got = full_propagator(p, x1, x2, q, t);
        const double qq = sqrt2 / 2 * (x1 + x2);
        const double phase =
            p.m * f.omega1 / (4 * p.hbar) * (x1 - x2) * (x1 - x2) /
                std::tan(f.omega1 * t) +
            p.m * f.phi2 / (4 * p.hbar) * (qq - q) * (qq - q) /
                std::tan(f.phi2 * t) +
            p.m * f.phi / (4 * p.hbar) * (qq + q) * (qq + q) / std::tan(f.phi * t);
        const Complex expect = std::abs(got) *
                               std::exp(Complex(0.0, phase - 3 * pi / 4));
        CHECK(std::abs(got - expect) < 1e-12 * std::abs(got));
    }
}

TEST_CASE("single-mode wavepacket propagation") {
    const double omega = 1.3, hbar = 1.0, m = 1.0;
    const double sigma = std::sqrt(hbar / (2 * m * omega));

    SUBCASE("ground state is stationary up to the zero-point phase") {
        GridState psi0 = gaussian_state({wide_axis(256, 8.0)}, {0.0}, {sigma}, {0.0});
        const double t = 0.9;
        GridState psi = propagate_mode_wavepacket(m, omega, hbar, psi0, t);
        GridState rotated = psi0;
        rotated.values *= std::exp(Complex(0.0, -omega * t / 2.0));
        CHECK(l2_distance(psi, rotated) < 1e-7);
    }
    SUBCASE("norm is preserved for a structured state") {
        GridState a = gaussian_state({wide_axis(512, 10.0)}, {0.8}, {sigma}, {0.6});
        GridState b = gaussian_state({wide_axis(512, 10.0)}, {-1.1}, {1.4 * sigma}, {-0.2});
        GridState psi0 = a;
        psi0.values = (a.values + 0.7 * b.values);
        psi0.normalize();
        GridState psi = propagate_mode_wavepacket(m, omega, hbar, psi0, 1.1);
        CHECK(std::abs(psi.norm() - 1.0) < 1e-6);
    }
    SUBCASE("coherent state center follows the classical trajectory") {
        const double d = 0.7;
        GridState psi0 = gaussian_state({wide_axis(512, 9.0)}, {d}, {sigma}, {0.0});
        for (double t : {0.5, 1.1, 2.0}) {
            GridState psi = propagate_mode_wavepacket(m, omega, hbar, psi0, t);
            CHECK(tdse::position_expectation(psi, 0) ==
                  doctest::Approx(d * std::cos(omega * t)).epsilon(1e-6));
        }
    }
    SUBCASE("short-time propagation approaches the identity") {
        // near the ground state so t sqrt(<H^2>) stays below the tolerance;
        // the fine grid keeps the chirped kernel alias-free over the box
        const double t = 1e-3, w = 1.5;
        const double sg = std::sqrt(hbar / (2 * m * w));
        GridState psi0 = gaussian_state({wide_axis(28672, 5.8)}, {0.0}, {sg}, {0.0});
        GridState psi = propagate_mode_wavepacket(m, w, hbar, psi0, t);
        CHECK(l2_distance(psi, psi0) < 1e-3);
    }
    SUBCASE("grid that does not contain the state is rejected") {
        GridState psi0 = gaussian_state({wide_axis(64, 2.0)}, {0.0}, {1.0}, {0.0});
        CHECK_THROWS_AS(propagate_mode_wavepacket(m, omega, hbar, psi0, 0.5),
                        GridTooNarrow);
    }
}

TEST_CASE("system wavepacket propagation") {
    SUBCASE("2-D lab path conserves norm and exchange symmetry") {
        const core::SystemParams p(1.0, std::sqrt(2.0), 1.0, 1.0, 0.0);
        const double sigma = std::sqrt(p.hbar / (2 * p.m * p.omega));
        GridState psi0 = gaussian_state({wide_axis(96, 7.0), wide_axis(96, 7.0)},
                                        {0.4, 0.4}, {sigma, sigma}, {0.0, 0.0});
        GridState psi = propagate_wavepacket(p, psi0, 0.7);
        CHECK(std::abs(psi.norm() - 1.0) < 1e-6);
        // x1 <-> x2 symmetric initial state stays symmetric
        double asym = 0.0;
        for (int i = 0; i < 96; ++i)
            for (int j = 0; j < i; ++j)
                asym = std::max(asym, std::abs(psi.values(psi.index(i, j)) -
                                               psi.values(psi.index(j, i))));
        CHECK(asym < 1e-12);
    }
    SUBCASE("2-D lab path agrees with the normal-mode path") {
        const core::SystemParams p(1.0, std::sqrt(2.0), 1.0, 1.0, 0.0);
        const double sigma = std::sqrt(p.hbar / (2 * p.m * p.omega));
        const double a = 0.5, b = -0.1, t = 0.6;
        GridState lab0 = gaussian_state({wide_axis(96, 7.0), wide_axis(96, 7.0)},
                                        {a, b}, {sigma, sigma}, {0.0, 0.0});
        GridState lab = propagate_wavepacket(p, lab0, t);

        // same isotropic Gaussian expressed in mode coordinates
        GridState mode0 = gaussian_state(
            {wide_axis(128, 7.0), wide_axis(128, 7.0)},
            {(a - b) / sqrt2, (a + b) / sqrt2}, {sigma, sigma}, {0.0, 0.0},
            Frame::normal_mode);
        GridState mode = propagate_wavepacket(p, mode0, t);

        // compare mode-coordinate means computed on either grid
        double u1_lab = 0.0, nrm = 0.0;
        for (int i = 0; i < 96; ++i)
            for (int j = 0; j < 96; ++j) {
                const double w = std::norm(lab.values(lab.index(i, j)));
                u1_lab += w * (lab.axes[0].coord(i) - lab.axes[1].coord(j)) / sqrt2;
                nrm += w;
            }
        u1_lab /= nrm;
        CHECK(u1_lab == doctest::Approx(tdse::position_expectation(mode, 0))
                            .epsilon(1e-8));
        CHECK(std::abs(mode.norm() - 1.0) < 1e-6);
    }
    SUBCASE("3-D decoupled ground state is stationary") {
        const core::SystemParams p(1.0, 1.1, 1.1, 0.0, 0.0);
        const double sigma = std::sqrt(p.hbar / (2 * p.m * p.omega));
        const GridAxis sys = wide_axis(64, 7.0);
        const GridAxis bath = centered_axis(96, 48.0 * sys.step / sqrt2);
        GridState psi0 = gaussian_state({sys, sys, bath}, {0.0, 0.0, 0.0},
                                        {sigma, sigma, sigma}, {0.0, 0.0, 0.0});
        const double t = 0.9;
        GridState psi = propagate_wavepacket(p, psi0, t);
        GridState expect = psi0;
        expect.values *= std::exp(Complex(0.0, -3.0 * p.omega * t / 2.0));
        CHECK(l2_distance(psi, expect) < 1e-6);
        CHECK(std::abs(psi.norm() - 1.0) < 1e-6);
    }
    SUBCASE("3-D path requires the compatible bath spacing") {
        const core::SystemParams p(1.0, 1.1, 1.1, 0.0, 0.0);
        GridState psi0 = gaussian_state(
            {wide_axis(32, 5.0), wide_axis(32, 5.0), wide_axis(32, 5.0)},
            {0.0, 0.0, 0.0}, {0.7, 0.7, 0.7}, {0.0, 0.0, 0.0});
        CHECK_THROWS_AS(propagate_wavepacket(p, psi0, 0.5), std::invalid_argument);
    }
}

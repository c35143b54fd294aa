#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "hidaprop/characteristic.hpp"
#include "hidaprop/mehler.hpp"
#include "hidaprop/noise_kernel.hpp"
#include "hidaprop/philox.hpp"

using namespace hidaprop;
using namespace hidaprop::whitenoise;
using std::numbers::pi;
using Complex = std::complex<double>;

namespace {

const core::SystemParams unit_params(1, 1, 1, 0, 0);

} // namespace

TEST_CASE("noise_kernel matrix entries") {
    SUBCASE("hand-evaluated 2x2 case") {
        const auto k = noise_kernel(1.0, 1.0, 2);
        CHECK(k.dt == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(k.entries(0, 0) == doctest::Approx(0.75).epsilon(1e-15));
        CHECK(k.entries(0, 1) == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(k.entries(1, 0) == doctest::Approx(0.25).epsilon(1e-15));
        CHECK(k.entries(1, 1) == doctest::Approx(0.25).epsilon(1e-15));
    }
    SUBCASE("zero frequency gives the zero matrix") {
        const auto k = noise_kernel(0.0, 2.0, 16);
        CHECK(k.entries.cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("diagonal entries are Omega^2 (t - tau_i)") {
        const auto k = noise_kernel(1.5, 2.0, 8);
        for (int i = 0; i < 8; ++i) {
            const double tau = (i + 0.5) * k.dt;
            CHECK(k.entries(i, i) ==
                  doctest::Approx(1.5 * 1.5 * (2.0 - tau)).epsilon(1e-14));
        }
    }
    SUBCASE("symmetry and row monotonicity past the diagonal") {
        const auto k = noise_kernel(0.9, 1.7, 32);
        CHECK((k.entries - k.entries.transpose()).cwiseAbs().maxCoeff() == 0.0);
        for (int i = 0; i < 32; ++i) {
            for (int j = i + 1; j < 32; ++j)
                CHECK(k.entries(i, j) <= k.entries(i, j - 1) + 1e-15);
            CHECK(k.entries(i, 31) >= 0.0);
        }
    }
}

TEST_CASE("unit window vector has unit norm") {
    for (int n : {2, 17, 4000})
        CHECK(unit_window_vector(n).entries.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fredholm determinant converges to cos(omega t)") {
    SUBCASE("omega = 0 is exactly 1") {
        CHECK(fredholm_determinant(noise_kernel(0.0, 1.0, 64)) == 1.0);
    }
    SUBCASE("N = 4000 values at spec tolerance") {
        CHECK(std::abs(fredholm_determinant(noise_kernel(1.0, 1.0, 4000)) -
                       std::cos(1.0)) < 1e-3);
        CHECK(std::abs(fredholm_determinant(noise_kernel(1.0, pi / 2, 4000))) < 2e-3);
    }
    SUBCASE("error decays at least linearly in 1/N") {
        double prev = 0.0;
        for (int n : {250, 500, 1000, 2000}) {
            const double err =
                std::abs(fredholm_determinant(noise_kernel(1.0, 1.0, n)) - std::cos(1.0));
            if (prev > 0.0) CHECK(prev / err >= 1.8);
            prev = err;
        }
    }
}

TEST_CASE("bilinear form converges to tan(omega t)/(omega t)") {
    SUBCASE("omega = 0 is the unit vector norm") {
        const auto k = noise_kernel(0.0, 1.0, 64);
        CHECK(std::abs(bilinear_form(k, unit_window_vector(64)) - 1.0) < 1e-13);
    }
    SUBCASE("N = 4000 value at spec tolerance") {
        const auto k = noise_kernel(1.0, 1.0, 4000);
        CHECK(std::abs(bilinear_form(k, unit_window_vector(4000)) - std::tan(1.0)) <
              2e-3);
    }
    SUBCASE("dimension mismatch rejected") {
        CHECK_THROWS_AS(bilinear_form(noise_kernel(1.0, 1.0, 8), unit_window_vector(9)),
                        std::invalid_argument);
    }
    SUBCASE("singular operator at a discretized caustic") {
        // The discretized determinant crosses zero near omega t = pi/2; bisect
        // for the root so the |det| < 1e-12 guard genuinely fires.
        const int n = 100;
        double lo = 1.52, hi = 1.62;
        auto det_at = [&](double t) {
            return fredholm_determinant(noise_kernel(1.0, t, n));
        };
        REQUIRE(det_at(lo) > 0.0);
        REQUIRE(det_at(hi) < 0.0);
        for (int iter = 0; iter < 80; ++iter) {
            const double mid = 0.5 * (lo + hi);
            (det_at(mid) > 0.0 ? lo : hi) = mid;
        }
        const auto k = noise_kernel(1.0, 0.5 * (lo + hi), n);
        CHECK_THROWS_AS(bilinear_form(k, unit_window_vector(n)), SingularOperator);
    }
}

TEST_CASE("gaussian T-transform") {
    const Complex k_paper(-1.0, -1.0);

    SUBCASE("L = 0 reproduces the free Gaussian in lambda_f") {
        const auto kernel = noise_kernel(0.0, 1.0, 32);
        for (double lam : {0.0, 0.3, 1.0, 2.5}) {
            const double xi = std::sqrt(1.0 / 1.0) * lam;  // sqrt(hbar/m) lambda
            const Complex got = t_transform_gaussian(k_paper, kernel, xi, 1.0);
            const Complex want = std::exp(Complex(0.0, -1.0 * lam * lam / 2.0));
            CHECK(std::abs(got - want) < 1e-12);
        }
    }
    SUBCASE("xi = 0 with L = 0 is exactly 1") {
        const auto kernel = noise_kernel(0.0, 1.0, 16);
        CHECK(t_transform_gaussian(k_paper, kernel, 0.0, 1.0) == Complex(1.0, 0.0));
    }
    SUBCASE("xi = 0 recovers the determinant identity") {
        const auto kernel = noise_kernel(1.0, 1.0, 4000);
        const Complex got = t_transform_gaussian(k_paper, kernel, 0.0, 1.0);
        CHECK(std::abs(got - 1.0 / std::sqrt(std::cos(1.0))) < 1e-3);
        CHECK(std::abs(got.imag()) < 1e-12);
    }
    SUBCASE("mismatched window rejected") {
        const auto kernel = noise_kernel(1.0, 1.0, 16);
        CHECK_THROWS_AS(t_transform_gaussian(k_paper, kernel, 0.0, 2.0),
                        std::invalid_argument);
    }
}

TEST_CASE("S-transform relation on the Gaussian functionals") {
    // S I(xi) = C(xi) T I(-i xi). Route A evaluates the right-hand side with
    // the discretized operator; route B uses the paper's scalar identities
    // det -> cos and bilinear -> tan in closed form.
    const Complex k_paper(-1.0, -1.0);
    const double t = 0.8, omega = 1.1;
    const int n = 2000;
    const auto kernel = noise_kernel(omega, t, n);
    for (double xi : {0.25, 0.6, 1.0}) {
        const double c_xi = std::exp(-0.5 * xi * xi * t);
        const Complex route_a =
            c_xi * t_transform_gaussian_c(k_paper, kernel, Complex(0.0, -xi), t);

        const double wt = omega * t;
        const Complex quad = Complex(0.0, 1.0) * xi * xi * t * std::tan(wt) / wt;
        const Complex route_b = std::pow(Complex(std::cos(wt), 0.0), -0.5) *
                                std::exp(-0.5 * xi * xi * t + 0.5 * quad);
        CHECK(std::abs(route_a - route_b) < 1e-6 * std::abs(route_b));
    }
}

TEST_CASE("lambda integral of the Donsker delta") {
    SUBCASE("free limit closed form") {
        const Complex got = propagator_lambda_integral(unit_params, 0.0, 0.5, 1.0,
                                                       64, 60.0, 80);
        const Complex want =
            std::sqrt(1.0 / (2.0 * pi)) * std::exp(Complex(0.0, -pi / 4.0)) *
            std::exp(Complex(0.0, 0.125));
        CHECK(std::abs(got - want) < 1e-12 * std::abs(want));
    }
    SUBCASE("x = 0 leaves only the prefactor") {
        const double t = 0.2;
        const Complex got = propagator_lambda_integral(unit_params, 1.0, 0.0, t,
                                                       500, 80.0, 80);
        const Complex want = propagator::mehler_kernel(1, 1, t, 0.0, 0.0, 1);
        CHECK(std::abs(got - want) < 1e-5 * std::abs(want));
    }
    SUBCASE("matches the Mehler kernel across the acceptance window") {
        for (double wt : {0.3, 0.7, 1.0, 1.3})
            for (double x : {0.5, 1.0, 2.0}) {
                const double cutoff =
                    lambda_integral_default_cutoff(unit_params, 1.0, x, wt, 1000, 120);
                const Complex oracle = propagator_lambda_integral(
                    unit_params, 1.0, x, wt, 1000, cutoff, 120);
                const Complex closed = propagator::mehler_kernel(1, 1, wt, x, 0.0, 1);
                CHECK(std::abs(oracle - closed) < 2e-6 * std::abs(closed));
            }
    }
    SUBCASE("undersized cutoff is rejected") {
        CHECK_THROWS_AS(
            propagator_lambda_integral(unit_params, 1.0, 1.0, 1.0, 200, 1.0, 120),
            NonConvergent);
    }
}

TEST_CASE("philox counter generator matches the reference implementation") {
    // Reference blocks generated with numpy.random.Philox (4x64, 10 rounds).
    // numpy advances its counter before filling a buffer, so its first raw
    // outputs are the blocks at counters 1 and 2.
    const Philox4x64 rng(0);
    const auto b1 = rng.block(1);
    CHECK(b1[0] == 0x02f4ba6408e4d89bULL);
    CHECK(b1[1] == 0x3dd62b0b9ca8c5b2ULL);
    CHECK(b1[2] == 0x1c8667a55d902e79ULL);
    CHECK(b1[3] == 0x907d7a052fd5b4dcULL);
    const auto b2 = rng.block(2);
    CHECK(b2[0] == 0x809bf322883987c3ULL);
    CHECK(b2[1] == 0x471128b9e807f7ddULL);
    CHECK(b2[2] == 0xf250ba0dbec065b7ULL);
    CHECK(b2[3] == 0xfc6ed66767a457bcULL);

    const Philox4x64 rng2(0xdeadbeefcafe1234ULL);
    const auto c1 = rng2.block(1);
    CHECK(c1[0] == 0x77c3af67c3dd08d7ULL);
    CHECK(c1[1] == 0x0a4866be02a7e987ULL);
    CHECK(c1[2] == 0x16a65ef1472ec305ULL);
    CHECK(c1[3] == 0x3b366d0e693d60f2ULL);
}

TEST_CASE("normal stream moments") {
    NormalStream stream(123, 0);
    std::vector<double> z(200000);
    stream.fill(z.data(), z.size());
    double mean = 0.0, var = 0.0;
    for (double v : z) mean += v;
    mean /= double(z.size());
    for (double v : z) var += (v - mean) * (v - mean);
    var /= double(z.size() - 1);
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("characteristic functional Monte Carlo") {
    SUBCASE("xi = 0 gives exactly 1") {
        StepFunction xi{1.0, {0.0, 0.0}};
        const auto est = characteristic_functional_mc(xi, 20000, 32, 7);
        CHECK(est.value == 1.0);
        CHECK(est.std_error == 0.0);
    }
    SUBCASE("indicator of [0,1]") {
        StepFunction xi{1.0, {1.0}};
        const auto est = characteristic_functional_mc(xi, 100000, 64, 11);
        CHECK(std::abs(est.value - std::exp(-0.5)) < 3.0 * est.std_error);
        CHECK(est.std_error < 0.01);
    }
    SUBCASE("doubled amplitude") {
        StepFunction xi{1.0, {2.0}};
        const auto est = characteristic_functional_mc(xi, 100000, 64, 11);
        CHECK(std::abs(est.value - std::exp(-2.0)) < 3.0 * est.std_error);
    }
    SUBCASE("deterministic in the seed") {
        StepFunction xi{2.0, {0.4, -0.9, 1.3}};
        const auto a = characteristic_functional_mc(xi, 50000, 48, 99);
        const auto b = characteristic_functional_mc(xi, 50000, 48, 99);
        CHECK(a.value == b.value);
        CHECK(a.std_error == b.std_error);
        const auto c = characteristic_functional_mc(xi, 50000, 48, 100);
        CHECK(a.value != c.value);
    }
    SUBCASE("sample floor enforced") {
        StepFunction xi{1.0, {1.0}};
        CHECK_THROWS_AS(characteristic_functional_mc(xi, 5000, 32, 1),
                        std::invalid_argument);
    }
}

#include "hidaprop/philox.hpp"

#include <cmath>
#include <numbers>

namespace hidaprop {

namespace {

constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

inline double uniform_open(std::uint64_t bits) {
    // (0, 1]: top 53 bits, shifted away from zero so log() is safe.
    return (static_cast<double>(bits >> 11) + 1.0) * 0x1p-53;
}

} // namespace

std::array<std::uint64_t, 4> Philox4x64::block(std::uint64_t c0, std::uint64_t c1,
                                               std::uint64_t c2,
                                               std::uint64_t c3) const {
    std::array<std::uint64_t, 4> ctr{c0, c1, c2, c3};
    std::array<std::uint64_t, 2> key = key_;
    for (int round = 0; round < 10; ++round) {
        std::uint64_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

void NormalStream::fill(double* out, std::size_t count) const {
    std::size_t produced = 0;
    std::uint64_t block_index = 0;
    while (produced < count) {
        const auto words = rng_.block(block_index++, stream_id_);
        for (int pair = 0; pair < 2 && produced < count; ++pair) {
            const double u1 = uniform_open(words[2 * pair]);
            const double u2 = uniform_open(words[2 * pair + 1]);
            const double r = std::sqrt(-2.0 * std::log(u1));
            const double a = 2.0 * std::numbers::pi * u2;
            out[produced++] = r * std::cos(a);
            if (produced < count) out[produced++] = r * std::sin(a);
        }
    }
}

} // namespace hidaprop

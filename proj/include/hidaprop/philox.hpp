// Philox4x64-10 counter-based generator. Output for a given (key, counter)
// is a pure function, so Monte Carlo sampling stays reproducible under any
// thread partition.

#pragma once

#include <array>
#include <cstdint>

namespace hidaprop {

class Philox4x64 {
public:
    explicit Philox4x64(std::uint64_t seed, std::uint64_t stream = 0)
        : key_{seed, stream} {}

    // 256-bit counter -> four 64-bit words, ten rounds.
    std::array<std::uint64_t, 4> block(std::uint64_t c0, std::uint64_t c1 = 0,
                                       std::uint64_t c2 = 0,
                                       std::uint64_t c3 = 0) const;

private:
    std::array<std::uint64_t, 2> key_;
};

// Two standard normals per 128 bits of counter output (Box-Muller), i.e.
// four normals per Philox block. Block index advances the low counter word;
// `stream_id` occupies the second counter word so independent streams never
// collide.
class NormalStream {
public:
    NormalStream(std::uint64_t seed, std::uint64_t stream_id)
        : rng_(seed), stream_id_(stream_id) {}

    // Fills out[0..count) with the normals of this stream, starting at the
    // stream's first variate. Deterministic in (seed, stream_id).
    void fill(double* out, std::size_t count) const;

private:
    Philox4x64 rng_;
    std::uint64_t stream_id_;
};

} // namespace hidaprop

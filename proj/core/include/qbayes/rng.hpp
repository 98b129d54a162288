#pragma once

#include <array>
#include <cstdint>

namespace qbayes {

// Philox4x32-10 counter-based generator. A (seed, stream) pair names an
// independent stream; the block counter occupies the low 64 bits of the
// 128-bit counter and the stream id the high 64 bits, so streams never
// overlap. Pure function of (seed, stream, counter) — replaying a stream
// is just re-running it.
class Philox {
public:
    explicit Philox(uint64_t seed, uint64_t stream = 0)
        : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)},
          stream_{stream} {}

    // One keyed block: the raw bijection, exposed for known-answer tests.
    static std::array<uint32_t, 4> block(const std::array<uint32_t, 4>& counter,
                                         const std::array<uint32_t, 2>& key);

    uint32_t next_u32();
    uint64_t next_u64();

    // Uniform on [0,1) with 53 random bits.
    double next_double();
    // Uniform on (0,1); never returns an exact endpoint.
    double next_open_double();
    // Standard normal via Box-Muller (two uniforms per call, no caching).
    double next_gaussian();

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Integer in [0, n) without modulo bias.
    uint64_t next_below(uint64_t n);

private:
    void refill();

    std::array<uint32_t, 2> key_;
    uint64_t stream_ = 0;
    uint64_t block_ = 0;
    std::array<uint32_t, 4> buffer_{};
    int buffer_pos_ = 4;
};

// Mixes (seed, salt) into a derived 64-bit seed (splitmix64 finalizer);
// used to hand unrelated sub-seeds to nested components.
uint64_t derive_seed(uint64_t seed, uint64_t salt);

}  // namespace qbayes

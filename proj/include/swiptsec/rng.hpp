#pragma once

// Counter-based random stream.  Output i of stream (seed, stream_id) is a
// strong 64-bit mix of a Weyl sequence, so any (seed, stream_id) pair names a
// reproducible substream with no shared state.  Chunked simulations assign
// one substream per chunk and therefore produce bit-identical results
// regardless of how chunks are distributed over workers.

#include <cstdint>

namespace swiptsec {

class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id)
        : key_(mix(mix(seed + kWeyl) + kWeyl * stream_id)) {}

    std::uint64_t next_u64() { return mix(key_ + kWeyl * counter_++); }

    // Uniform on [0,1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0,1]; safe as a log/ratio argument.
    double uniform01_open() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; consumes two uniforms per call.
    double normal();

    // Gamma(shape, scale) via Marsaglia-Tsang squeeze, boosted below shape 1.
    double gamma(double shape, double scale);

private:
    static constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace swiptsec

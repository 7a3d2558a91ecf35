#pragma once

#include <cstdint>

namespace kcensus {

/// Small deterministic generator (splitmix64).  Used where output must be
/// bit-identical across platforms and shardable by (seed, index); the
/// standard distributions make no such guarantee.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next() % span);
    }

private:
    std::uint64_t state_;
};

/// Stream for sample `index` of run `seed`; distinct indices give
/// independent streams, so samples can be sharded across workers.
///
/// The initial state is scrambled through the splitmix64 finalizer.  Spacing
/// raw states by a constant would make stream i+k a shifted copy of stream i
/// whenever that constant is a small multiple of the internal increment.
inline SplitMix64 per_sample_stream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed ^ (0x510e527fade682d1ULL + index * 0xd6e8feb86659fd93ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return SplitMix64(z);
}

}  // namespace kcensus

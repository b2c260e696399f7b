#pragma once

#include <cstdint>

namespace ergolab {

/// Counter-based random streams.
///
/// Every sample index owns an independent SplitMix64 stream whose initial
/// state is derived from (seed, index) alone. A Monte Carlo loop that draws
/// sample i from SampleStream(seed, i) produces the same numbers no matter
/// how the index range is split across workers.
///
/// SplitMix64: state += 0x9e3779b97f4a7c15, output = mix(state), where mix is
/// the variant-13 finalizer of MurmurHash3 (Steele, Lea & Flood, 2014).
class SampleStream {
public:
    SampleStream(std::uint64_t seed, std::uint64_t index)
        : state_(mix(seed + kGolden) ^ mix(index * kStreamStride + kGolden)) {}

    std::uint64_t next_u64() {
        state_ += kGolden;
        return mix(state_);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) {
        const double u = lo + (hi - lo) * uniform();
        return u < hi ? u : lo;
    }

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
    static constexpr std::uint64_t kStreamStride = 0xd1b54a32d192ed03ULL;

    std::uint64_t state_;
};

}  // namespace ergolab

#pragma once

#include <cstdint>

namespace udn {

// Counter-based random streams. A stream is identified by a 64-bit key
// derived from (master seed, module tag, point index, item index); drawing
// from a stream never touches any other stream, so batches of realizations
// can be scheduled across threads in any order and still reproduce the
// single-threaded results bit for bit.

namespace rng_tag {
// Module tags entering the key derivation.
inline constexpr std::uint64_t kGeometry = 0x67656f6d;     // node sampling
inline constexpr std::uint64_t kPowerSample = 0x706f7772;  // single-node power draws
inline constexpr std::uint64_t kSinr = 0x73696e72;         // network realizations
inline constexpr std::uint64_t kProbe = 0x70726f62;        // optimizer probes
}  // namespace rng_tag

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// SplitMix64 output function.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

// Folds one word into a key. Applied left to right this behaves like a
// short hash chain; distinct word tuples give unrelated keys.
inline std::uint64_t derive_key(std::uint64_t key, std::uint64_t word) {
    return mix64((key + kGoldenGamma) ^ mix64(word + kGoldenGamma));
}

inline std::uint64_t derive_key(std::uint64_t seed, std::uint64_t tag,
                                std::uint64_t point_index, std::uint64_t item_index) {
    return derive_key(derive_key(derive_key(seed, tag), point_index), item_index);
}

// One independent stream: SplitMix64 in counter mode plus cached-normal
// state for Box-Muller. Cheap to construct, no heap.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t key) : state_(key) {}

    RandomStream(std::uint64_t seed, std::uint64_t tag, std::uint64_t point_index,
                 std::uint64_t item_index)
        : state_(derive_key(seed, tag, point_index, item_index)) {}

    std::uint64_t next_u64() {
        state_ += kGoldenGamma;
        return mix64(state_);
    }

    // Uniform on the open interval (0,1); never returns an exact 0 or 1.
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller, second variate cached.
    double next_normal();

    // Exponential with unit mean.
    double next_exponential();

    // Poisson with the given mean; inversion for small means, transformed
    // rejection for large ones.
    std::uint64_t next_poisson(double mean);

private:
    std::uint64_t state_;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace udn

#pragma once

#include <cstdint>

namespace perc {

// splitmix64 finalizer; full avalanche on sequential counters
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Purpose salts keep draws that share (seed, stream, counter) uncorrelated
// across different uses (e.g. addition vs thinning of the same edge).
namespace rng_purpose {
inline constexpr std::uint64_t add_edges = 0x6164642d65646765ull;
inline constexpr std::uint64_t thin_edges = 0x7468696e2d656467ull;
inline constexpr std::uint64_t activations = 0x616374697661746Full;
}  // namespace rng_purpose

// Counter-based generator: one uniform per (seed, stream, purpose, counter),
// independent of evaluation order and worker partitioning.
constexpr std::uint64_t hash_counter(std::uint64_t seed, std::uint64_t stream,
                                     std::uint64_t purpose, std::uint64_t counter) {
    std::uint64_t h = mix64(seed ^ mix64(purpose));
    h = mix64(h ^ (stream + 0x632BE59BD9B4E019ull));
    return mix64(h ^ counter);
}

constexpr double uniform01(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t purpose, std::uint64_t counter) {
    return static_cast<double>(hash_counter(seed, stream, purpose, counter) >> 11) * 0x1.0p-53;
}

}  // namespace perc

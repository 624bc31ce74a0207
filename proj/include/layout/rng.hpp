#pragma once

#include <cstdint>
#include <span>
#include <string_view>

// Deterministic random source. Results must be bit-identical across runs and
// platforms, so everything is hand-rolled on top of splitmix64 instead of the
// implementation-defined <random> distributions.

namespace layout {

std::uint64_t splitmix64(std::uint64_t& state);

// Derives an independent stream seed from a base seed and a stream index.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// FNV-1a; stable across platforms, used to seed per-pair subsampling.
std::uint64_t fnv1a(std::string_view text);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return splitmix64(state_); }

    /// Uniform double in [0, 1).
    double uniform();
    double uniform(double lo, double hi);
    /// Box-Muller normal deviate.
    double normal(double mean, double sigma);
    /// Uniform index in [0, n); n must be positive.
    std::size_t uniform_index(std::size_t n);
    /// Index drawn proportionally to the given non-negative weights.
    std::size_t pick_weighted(std::span<const double> weights);

private:
    std::uint64_t state_;
};

}  // namespace layout

#pragma once

#include <cstdint>
#include <optional>

#include "layout/corpus.hpp"

namespace layout {

struct CsrParams {
    double ratio = 0.10;          // subsampling fraction of a pair's sample list
    std::size_t min_samples = 30; // minimum subsample size; below it a pair is unmeasured
};

// One percent critical value of the Kolmogorov statistic; pairs at or above it
// are treated as spatially coherent.
inline constexpr double kDefaultEpsilon = 1.628;

// For each point, the angle in [0, 2*pi) swept counter-clockwise from the
// direction to its 1st nearest neighbour to the direction to its 2nd nearest
// neighbour. Distance ties break toward the lower point index; exact duplicate
// points are perturbed by 1e-9 before the search. Requires at least 3 points.
std::vector<double> nn_angles(const std::vector<Point2>& points);

// Polar angle of each point about the origin, in [0, 2*pi). Uniform when the
// points are completely spatially random around a heading-randomized anchor.
std::vector<double> polar_angles(const std::vector<Point2>& points);

// One-sample Kolmogorov statistic against Uniform[0, 2*pi), scaled by sqrt(m):
// d = sqrt(m) * sup |F_e(theta) - theta/(2*pi)|, the sup taken at both step
// edges of the empirical CDF. Requires a non-empty input.
double ks_uniform_d(std::vector<double> angles);

struct CsrResult {
    double d_value = 0.0;
    std::size_t m = 0;               // number of angles used
    std::vector<double> angles_used; // retained for diagnostics
};

// Seeded subsample of ceil(ratio*n) samples without replacement, projected to
// (px, pz), tested via polar_angles + ks_uniform_d. Returns nullopt when the
// subsample would be smaller than params.min_samples.
std::optional<CsrResult> pair_d_value(const std::vector<RelationSample>& samples,
                                      const CsrParams& params, std::uint64_t seed);

struct SsgEntry {
    double d_value = 0.0;
    std::size_t n_samples = 0;
    std::size_t m_used = 0;
    std::size_t cooccurrence = 0;
};

struct SpatialStrengthGraph {
    // keyed by the unordered pair, components sorted lexicographically
    std::map<CategoryPair, SsgEntry> weights;

    std::optional<double> d(const std::string& a, const std::string& b) const;
};

// d-value per unordered category pair with sufficient samples, computed from
// the ordered list of the lexicographically smaller category. Deterministic
// for a fixed seed; undersized pairs are simply absent.
SpatialStrengthGraph build_ssg(const RelationGraph& graph, const CsrParams& params,
                               std::uint64_t seed);

}  // namespace layout

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "layout/csr.hpp"
#include "layout/rng.hpp"

namespace layout {

struct DpcParams {
    double eta = 0.015;              // fraction fixing the cutoff distance rank
    double rho_keep = 0.015;         // drop points with rho below this fraction of max rho
    double center_score_keep = 0.2;  // flag centers at this fraction of max rho*delta
};

struct DpcDensities {
    std::vector<int> rho;        // neighbours within d_c, self excluded
    std::vector<double> delta;   // distance to the nearest denser point
    double d_c = 0.0;
};

// Densities over the (px, py, pz) translations with Euclidean distance. The
// cutoff d_c is the floor(eta*K^2)-th smallest of the K*(K-1) ordered pairwise
// distances. Density ties order by sample index; the densest point's delta is
// its maximum distance to any point. Requires K >= 2.
DpcDensities dpc_densities(const std::vector<RelationSample>& samples, double eta);
// Same, with the cutoff given directly (used by tests pinning d_c).
DpcDensities dpc_densities_forced(const std::vector<RelationSample>& samples, double d_c);
// Scalar variant; circular treats values as angles with wraparound distance.
DpcDensities dpc_densities_scalar(const std::vector<double>& values, double eta,
                                  bool circular);

struct TemplatePoint {
    RelationSample sample;
    double weight = 0.0;
};

// A denoised discrete layout pattern: retained relation samples weighted by
// local density (weights sum to 1), with pattern-center indices.
struct Template {
    std::vector<TemplatePoint> points;
    std::vector<std::size_t> centers;

    std::size_t sample_index(Rng& rng) const;  // weight-proportional draw
};

// Drops low-density samples, weights the rest by rho, flags centers by
// rho*delta. Throws std::runtime_error when nothing survives.
Template extract_template(const std::vector<RelationSample>& samples,
                          const DpcParams& params);

struct Multinomial {
    std::vector<double> values;
    std::vector<double> probs;

    double sample(Rng& rng) const;
};

struct WallPrior {
    Multinomial dist_modes;    // over retained d_wall peak values
    Multinomial orient_modes;  // over retained theta_wall peak values
};

// Independent 1D density-peak runs over the d_wall scalars and the theta_wall
// angles (circular distance); peak values become multinomial support with
// probabilities proportional to their local density.
WallPrior extract_wall_prior(const std::vector<WallAttributeSample>& samples,
                             const DpcParams& params);

struct ScoredTemplate {
    Template tmpl;
    double score = 0.0;
};

// Union of the top templates with score >= beta (inputs already descending by
// score, at most k_max used); weights are renormalized proportionally to each
// source's score. Throws std::runtime_error when no neighbour qualifies.
Template merge_templates(const std::vector<ScoredTemplate>& neighbors, double beta,
                         std::size_t k_max);

struct PriorStore {
    double epsilon = kDefaultEpsilon;
    CsrParams csr_params;
    DpcParams dpc_params;
    std::uint64_t seed = 0;
    SpatialStrengthGraph ssg;
    std::map<CategoryPair, Template> templates;  // ordered (anchor, other) keys
    std::map<std::string, WallPrior> wall_priors;
};

std::string priors_to_json(const PriorStore& store);
// Parses and validates every invariant (weight sums, center indices, template
// keys present in the SSG). Throws std::runtime_error on any violation.
PriorStore priors_from_json(const std::string& text);

void save_priors(const std::string& path, const PriorStore& store);
PriorStore load_priors(const std::string& path);

}  // namespace layout

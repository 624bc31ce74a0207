#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "layout/scene.hpp"

namespace layout {

// A discrete placement mode of a dependent object in its anchor's frame,
// jittered per-coordinate by sigma (meters for px/pz, radians for ptheta).
struct ModeSpec {
    double px = 0.0;
    double pz = 0.0;
    double ptheta = 0.0;
    double sigma = 0.05;
    double weight = 1.0;
};

struct PairRule {
    std::string anchor;
    std::string dependent;
    std::vector<ModeSpec> modes;
    double noise_fraction = 0.0;  // probability of a uniform-in-disc distractor
    double noise_radius = 2.0;    // distractor disc radius around the anchor
};

struct WallRule {
    std::vector<std::pair<double, double>> dist_modes;    // (d_wall value, weight)
    std::vector<std::pair<double, double>> orient_modes;  // (theta_wall value, weight)
    double jitter = 0.0;
};

struct CategorySpec {
    std::string name;
    double hx = 0.4;
    double hz = 0.4;
    std::optional<WallRule> wall;
};

struct GeneratorSpec {
    // Either a fixed polygon, or per-scene rectangular rooms drawn uniformly
    // from the given ranges (varied rooms keep wall-placed categories from
    // acquiring spurious cross-scene structure).
    Polygon room;
    std::optional<std::pair<double, double>> width_range;
    std::optional<std::pair<double, double>> depth_range;
    std::vector<CategorySpec> categories;
    std::vector<PairRule> pairs;
};

// Which ground-truth mode produced the dependent object in each scene (-1 for
// a noise distractor). Indexed scene-by-scene in generation order.
struct PairTruth {
    PairRule rule;
    std::vector<int> mode_of_scene;
};

struct SyntheticCorpus {
    std::vector<Scene> scenes;
    std::vector<PairTruth> truth;
};

// Deterministic for a fixed (spec, seed); every generated center lies inside
// the room. Throws std::invalid_argument for malformed specs (message names
// the offending field) and std::runtime_error when placements are infeasible.
SyntheticCorpus generate_synthetic_corpus(const GeneratorSpec& spec, std::size_t n_scenes,
                                          std::uint64_t seed);

GeneratorSpec generator_spec_from_json(const std::string& text);
std::string truth_to_json(const SyntheticCorpus& corpus, std::uint64_t seed);

}  // namespace layout

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "layout/scene.hpp"

namespace layout {

using CategoryPair = std::pair<std::string, std::string>;

// Returns the unordered form of a pair key: components sorted lexicographically.
CategoryPair unordered_pair(const std::string& a, const std::string& b);

// The relation multigraph over the corpus: relative-pose samples per ordered
// category pair, wall-attribute samples per category, and per-room
// co-occurrence counts per unordered pair.
struct RelationGraph {
    std::map<CategoryPair, std::vector<RelationSample>> relations;
    std::map<std::string, std::vector<WallAttributeSample>> wall_samples;
    std::map<CategoryPair, std::size_t> cooccurrence;
    std::size_t scenes_used = 0;
    std::size_t scenes_skipped = 0;
};

// Scans every scene: all ordered pairs of distinct movable objects contribute a
// relative_pose sample, every movable object contributes a wall sample.
// Corrupt scenes are skipped and counted. Deterministic in input order.
RelationGraph build_relation_graph(const std::vector<Scene>& corpus);

}  // namespace layout

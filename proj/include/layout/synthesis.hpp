#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "layout/priors.hpp"

namespace layout {

// Symmetric boolean adjacency over the input objects, zero diagonal.
struct AdjacencyMatrix {
    std::size_t n = 0;
    std::vector<char> cells;

    explicit AdjacencyMatrix(std::size_t size = 0) : n(size), cells(size * size, 0) {}
    bool at(std::size_t i, std::size_t j) const { return cells[i * n + j] != 0; }
    void set(std::size_t i, std::size_t j, bool value) {
        cells[i * n + j] = value;
        cells[j * n + i] = value;
    }
    std::size_t degree(std::size_t i) const;
};

// Connects object indices whose category pair carries a d-value >= epsilon.
AdjacencyMatrix build_adjacency(const std::vector<std::string>& categories,
                                const SpatialStrengthGraph& ssg, double epsilon);

struct Group {
    std::vector<std::size_t> members;  // ascending; one connected component
    std::size_t dominant = static_cast<std::size_t>(-1);
    // (member, anchor) in placement order: anchors always precede their members
    std::vector<std::pair<std::size_t, std::size_t>> attachments;
};

// Connected components of the adjacency graph, ordered by smallest member.
std::vector<Group> form_groups(const AdjacencyMatrix& adj);

// Uniform choice among the members of maximal degree.
std::size_t choose_dominant(const Group& group, const AdjacencyMatrix& adj, Rng& rng);

// Maximum-weight spanning tree of the group by d-value, grown from the
// dominant; each member's anchor is its tree parent. Ties break toward lower
// indices. Fills group.attachments in placement order.
void build_attachment_forest(Group& group, const AdjacencyMatrix& adj,
                             const std::vector<std::string>& categories,
                             const SpatialStrengthGraph& ssg);

struct LayoutState {
    Polygon room;
    std::vector<ObjectInstance> objects;   // poses updated during optimization
    std::vector<ObjectInstance> fixtures;  // doors and windows; never moved
};

struct SolverParams {
    double epsilon = kDefaultEpsilon;
    double stiffness = 0.2;          // fraction of each template correction per iteration
    std::size_t max_iterations = 100;
    double loss_tolerance = 1e-3;
    double collision_weight = 1.0;
    std::uint64_t seed = 0;
    int placement_rejections = 50;   // dominant resamples before forcing the longest wall
};

// Places the group's dominant from its wall prior (wall uniform, distance and
// orientation from the multinomials, position along the wall uniform), then
// every other member by drawing a template point against its anchor. Members
// whose pair template is missing fall back to their wall prior.
void heuristic_arrange(LayoutState& state, const Group& group, const PriorStore& priors,
                       const SolverParams& params, Rng& rng);

struct HausdorffTerm {
    double value = 0.0;
    std::size_t argmin = 0;  // index of the matched template point
};

// min over template points of ||translation difference on (x,z)|| +
// exp(circular orientation difference), for the current pose of j in i's frame.
HausdorffTerm hausdorff_term(const LayoutState& state, std::size_t i, std::size_t j,
                             const Template& tmpl);

// Corner-in-box products between all object pairs (fixtures included as
// obstacles) plus boundary violations of object corners against the room.
double collision_cost(const LayoutState& state);

// Sum of Hausdorff terms over adjacent ordered pairs with a template, plus the
// weighted collision cost.
double total_loss(const LayoutState& state, const PriorStore& priors,
                  const AdjacencyMatrix& adj, double collision_weight = 1.0);

struct OptimizeResult {
    LayoutState state;
    double loss = 0.0;
    std::size_t iterations = 0;
    bool feasible = false;  // collision cost exactly zero
};

// Iterative position-based projection: template pull at the given stiffness,
// full pairwise separation along the minimum translation vector with masses
// proportional to footprint area, then wall containment. Deterministic; never
// moves fixtures; returns the best state seen (preferring collision-free ones).
OptimizeResult optimize(const LayoutState& initial, const PriorStore& priors,
                        const AdjacencyMatrix& adj, const SolverParams& params);

struct ObjectSpec {
    std::string category;
    double hx = 0.0;
    double hz = 0.0;
};

struct SynthesizedScene {
    Scene scene;
    double loss = 0.0;
    std::size_t iterations = 0;
    bool feasible = false;
    std::uint64_t seed = 0;
};

// Full online stage: adjacency, grouping, then per variant dominant choice,
// heuristic arrangement and optimization. Bit-identical for fixed inputs/seed.
std::vector<SynthesizedScene> synthesize(const Polygon& room,
                                         const std::vector<ObjectSpec>& objects,
                                         const std::vector<ObjectInstance>& fixtures,
                                         const PriorStore& priors, std::size_t n_variants,
                                         const SolverParams& params);

}  // namespace layout

#include "layout/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace layout {

namespace {

// displacement overshoot keeping resolved constraints strictly satisfied under
// floating-point rounding
constexpr double kSeparationSlack = 1e-7;

}  // namespace

std::size_t AdjacencyMatrix::degree(std::size_t i) const {
    std::size_t deg = 0;
    for (std::size_t j = 0; j < n; ++j)
        if (at(i, j)) ++deg;
    return deg;
}

AdjacencyMatrix build_adjacency(const std::vector<std::string>& categories,
                                const SpatialStrengthGraph& ssg, double epsilon) {
    AdjacencyMatrix adj(categories.size());
    for (std::size_t i = 0; i < categories.size(); ++i)
        for (std::size_t j = i + 1; j < categories.size(); ++j) {
            auto d = ssg.d(categories[i], categories[j]);
            adj.set(i, j, d && *d >= epsilon);
        }
    return adj;
}

std::vector<Group> form_groups(const AdjacencyMatrix& adj) {
    std::vector<Group> groups;
    std::vector<bool> visited(adj.n, false);
    for (std::size_t start = 0; start < adj.n; ++start) {
        if (visited[start]) continue;
        Group group;
        std::vector<std::size_t> stack{start};
        visited[start] = true;
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            group.members.push_back(u);
            for (std::size_t v = 0; v < adj.n; ++v)
                if (!visited[v] && adj.at(u, v)) {
                    visited[v] = true;
                    stack.push_back(v);
                }
        }
        std::sort(group.members.begin(), group.members.end());
        groups.push_back(std::move(group));
    }
    return groups;
}

std::size_t choose_dominant(const Group& group, const AdjacencyMatrix& adj, Rng& rng) {
    if (group.members.empty()) throw std::invalid_argument("choose_dominant: empty group");
    std::size_t dmax = 0;
    for (std::size_t m : group.members) dmax = std::max(dmax, adj.degree(m));
    std::vector<std::size_t> argmax;
    for (std::size_t m : group.members)
        if (adj.degree(m) == dmax) argmax.push_back(m);
    return argmax[rng.uniform_index(argmax.size())];
}

void build_attachment_forest(Group& group, const AdjacencyMatrix& adj,
                             const std::vector<std::string>& categories,
                             const SpatialStrengthGraph& ssg) {
    group.attachments.clear();
    std::vector<bool> in_tree(adj.n, false);
    in_tree[group.dominant] = true;
    std::size_t placed = 1;
    while (placed < group.members.size()) {
        double best_w = -std::numeric_limits<double>::infinity();
        std::size_t best_member = adj.n, best_anchor = adj.n;
        for (std::size_t m : group.members) {
            if (in_tree[m]) continue;
            for (std::size_t a : group.members) {
                if (!in_tree[a] || !adj.at(m, a)) continue;
                double w = ssg.d(categories[m], categories[a]).value_or(0.0);
                if (w > best_w || (w == best_w && (m < best_member ||
                                                   (m == best_member && a < best_anchor)))) {
                    best_w = w;
                    best_member = m;
                    best_anchor = a;
                }
            }
        }
        if (best_member == adj.n)
            throw std::logic_error("build_attachment_forest: group is not connected");
        group.attachments.emplace_back(best_member, best_anchor);
        in_tree[best_member] = true;
        ++placed;
    }
}

namespace {

bool box_inside_room(const OrientedBox& box, const Polygon& room) {
    for (const Point2& corner : box_corners(box))
        if (!point_in_polygon(corner, room)) return false;
    return true;
}

void place_from_wall_prior(ObjectInstance& obj, const WallPrior& prior, const Polygon& room,
                           int rejection_cap, Rng& rng) {
    auto sample_on_edge = [&](std::size_t edge) {
        double d = prior.dist_modes.sample(rng);
        double theta_wall = prior.orient_modes.sample(rng);
        double t = rng.uniform();
        const Point2& a = room.vertices[edge];
        const Point2& b = room.vertices[(edge + 1) % room.vertices.size()];
        double normal_angle = edge_inward_normal_angle(room, edge);
        Point2 center = a + (b - a) * t + rotate({1.0, 0.0}, normal_angle) * d;
        obj.pose = {center.x, 0.0, center.z, wrap_angle(normal_angle + theta_wall)};
    };
    for (int attempt = 0; attempt < rejection_cap; ++attempt) {
        sample_on_edge(rng.uniform_index(room.vertices.size()));
        if (box_inside_room(obj.footprint(), room)) return;
    }
    sample_on_edge(longest_edge(room));  // bounded latency: force the longest wall
}

const Template* find_template(const PriorStore& priors, const std::string& anchor,
                              const std::string& other) {
    auto it = priors.templates.find({anchor, other});
    return it == priors.templates.end() ? nullptr : &it->second;
}

}  // namespace

void heuristic_arrange(LayoutState& state, const Group& group, const PriorStore& priors,
                       const SolverParams& params, Rng& rng) {
    ObjectInstance& dominant = state.objects[group.dominant];
    auto wall = priors.wall_priors.find(dominant.category);
    if (wall == priors.wall_priors.end())
        throw std::runtime_error("heuristic_arrange: no wall prior for dominant category '" +
                                 dominant.category + "'");
    place_from_wall_prior(dominant, wall->second, state.room, params.placement_rejections, rng);

    for (const auto& [member, anchor] : group.attachments) {
        ObjectInstance& obj = state.objects[member];
        const ObjectInstance& base = state.objects[anchor];
        if (const Template* tmpl = find_template(priors, base.category, obj.category)) {
            const RelationSample& rel = tmpl->points[tmpl->sample_index(rng)].sample;
            obj.pose = compose_pose(base.pose, rel);
        } else {
            auto fallback = priors.wall_priors.find(obj.category);
            if (fallback == priors.wall_priors.end())
                throw std::runtime_error(
                    "heuristic_arrange: no template and no wall prior for category '" +
                    obj.category + "'");
            std::cerr << "warning: no template for pair (" << base.category << ", "
                      << obj.category << "); falling back to wall prior\n";
            place_from_wall_prior(obj, fallback->second, state.room,
                                  params.placement_rejections, rng);
        }
    }
}

HausdorffTerm hausdorff_term(const LayoutState& state, std::size_t i, std::size_t j,
                             const Template& tmpl) {
    if (tmpl.points.empty()) throw std::invalid_argument("hausdorff_term: empty template");
    RelationSample rel = relative_pose(state.objects[i], state.objects[j]);
    HausdorffTerm best{std::numeric_limits<double>::infinity(), 0};
    for (std::size_t k = 0; k < tmpl.points.size(); ++k) {
        const RelationSample& p = tmpl.points[k].sample;
        double dx = rel.px - p.px;
        double dz = rel.pz - p.pz;
        double value = std::sqrt(dx * dx + dz * dz) + std::exp(ang_diff(rel.ptheta, p.ptheta));
        if (value < best.value) best = {value, k};
    }
    return best;
}

namespace {

double corner_in_box_product(const Point2& corner, const std::array<Point2, 4>& box) {
    double product = 1.0;
    for (std::size_t l = 0; l < 4; ++l) {
        product *= t_left(corner, box[l], box[(l + 1) % 4]);
        if (product == 0.0) return 0.0;
    }
    return product;
}

}  // namespace

double collision_cost(const LayoutState& state) {
    const std::size_t n = state.objects.size();
    const std::size_t total = n + state.fixtures.size();
    auto box_of = [&](std::size_t e) {
        return e < n ? state.objects[e].footprint() : state.fixtures[e - n].footprint();
    };

    double cost = 0.0;
    std::vector<std::array<Point2, 4>> corners(total);
    for (std::size_t e = 0; e < total; ++e) corners[e] = box_corners(box_of(e));

    for (std::size_t i = 0; i < total; ++i)
        for (std::size_t j = 0; j < total; ++j) {
            if (i == j || (i >= n && j >= n)) continue;
            for (const Point2& corner : corners[i])
                cost += corner_in_box_product(corner, corners[j]);
        }

    for (std::size_t i = 0; i < n; ++i)
        for (const Point2& corner : corners[i])
            cost += norm(boundary_violation(corner, state.room));
    return cost;
}

double total_loss(const LayoutState& state, const PriorStore& priors,
                  const AdjacencyMatrix& adj, double collision_weight) {
    double loss = 0.0;
    for (std::size_t i = 0; i < state.objects.size(); ++i)
        for (std::size_t j = 0; j < state.objects.size(); ++j) {
            if (i == j || !adj.at(i, j)) continue;
            if (const Template* tmpl = find_template(priors, state.objects[i].category,
                                                     state.objects[j].category))
                loss += hausdorff_term(state, i, j, *tmpl).value;
        }
    return loss + collision_weight * collision_cost(state);
}

namespace {

double signed_angle_to(double from, double to) {
    double d = wrap_angle(to - from);
    return d > kTau / 2.0 ? d - kTau : d;
}

void project_templates(LayoutState& state, const PriorStore& priors,
                       const AdjacencyMatrix& adj, double stiffness) {
    for (std::size_t i = 0; i < state.objects.size(); ++i)
        for (std::size_t j = 0; j < state.objects.size(); ++j) {
            if (i == j || !adj.at(i, j)) continue;
            const Template* tmpl =
                find_template(priors, state.objects[i].category, state.objects[j].category);
            if (!tmpl) continue;
            HausdorffTerm h = hausdorff_term(state, i, j, *tmpl);
            Pose target = compose_pose(state.objects[i].pose, tmpl->points[h.argmin].sample);
            Pose& pose = state.objects[j].pose;
            pose.x += stiffness * (target.x - pose.x);
            pose.y += stiffness * (target.y - pose.y);
            pose.z += stiffness * (target.z - pose.z);
            pose.theta =
                wrap_angle(pose.theta + stiffness * signed_angle_to(pose.theta, target.theta));
        }
}

void project_collisions(LayoutState& state) {
    const std::size_t n = state.objects.size();
    const std::size_t total = n + state.fixtures.size();
    auto box_of = [&](std::size_t e) {
        return e < n ? state.objects[e].footprint() : state.fixtures[e - n].footprint();
    };
    for (std::size_t a = 0; a < total; ++a)
        for (std::size_t b = a + 1; b < total; ++b) {
            if (a >= n && b >= n) continue;
            auto mtv = box_overlap_mtv(box_of(a), box_of(b));
            if (!mtv) continue;
            Vec2 push = *mtv * (1.0 + kSeparationSlack);
            if (a >= n) {  // fixture has infinite mass
                state.objects[b].pose.x -= push.x;
                state.objects[b].pose.z -= push.z;
            } else if (b >= n) {
                state.objects[a].pose.x += push.x;
                state.objects[a].pose.z += push.z;
            } else {
                // split inversely to footprint area: bulky furniture yields less
                double wa = 1.0 / box_area(box_of(a));
                double wb = 1.0 / box_area(box_of(b));
                double fa = wa / (wa + wb);
                double fb = wb / (wa + wb);
                state.objects[a].pose.x += push.x * fa;
                state.objects[a].pose.z += push.z * fa;
                state.objects[b].pose.x -= push.x * fb;
                state.objects[b].pose.z -= push.z * fb;
            }
        }
}

void project_walls(LayoutState& state) {
    for (ObjectInstance& obj : state.objects) {
        Vec2 worst{0.0, 0.0};
        double worst_norm = 0.0;
        for (const Point2& corner : box_corners(obj.footprint())) {
            Vec2 violation = boundary_violation(corner, state.room);
            double mag = norm(violation);
            if (mag > worst_norm) {
                worst_norm = mag;
                worst = violation;
            }
        }
        if (worst_norm > 0.0) {
            obj.pose.x += worst.x * (1.0 + kSeparationSlack);
            obj.pose.z += worst.z * (1.0 + kSeparationSlack);
        }
    }
}

}  // namespace

OptimizeResult optimize(const LayoutState& initial, const PriorStore& priors,
                        const AdjacencyMatrix& adj, const SolverParams& params) {
    LayoutState state = initial;

    LayoutState best_feasible, best_any = state;
    double best_feasible_loss = std::numeric_limits<double>::infinity();
    double best_any_loss = std::numeric_limits<double>::infinity();
    bool have_feasible = false;

    auto record = [&](double loss, double collisions) {
        if (collisions == 0.0 && loss < best_feasible_loss) {
            best_feasible_loss = loss;
            best_feasible = state;
            have_feasible = true;
        }
        if (loss < best_any_loss) {
            best_any_loss = loss;
            best_any = state;
        }
    };

    double prev_loss = total_loss(state, priors, adj, params.collision_weight);
    record(prev_loss, collision_cost(state));

    std::size_t iterations = 0;
    for (std::size_t iter = 1; iter <= params.max_iterations; ++iter) {
        iterations = iter;
        project_templates(state, priors, adj, params.stiffness);
        project_collisions(state);
        project_walls(state);

        double collisions = collision_cost(state);
        double loss = total_loss(state, priors, adj, params.collision_weight);
        record(loss, collisions);
        if (collisions == 0.0 && std::fabs(loss - prev_loss) < params.loss_tolerance) break;
        prev_loss = loss;
    }

    OptimizeResult result;
    result.iterations = iterations;
    result.feasible = have_feasible;
    result.state = have_feasible ? best_feasible : best_any;
    result.loss = have_feasible ? best_feasible_loss : best_any_loss;
    return result;
}

std::vector<SynthesizedScene> synthesize(const Polygon& room,
                                         const std::vector<ObjectSpec>& objects,
                                         const std::vector<ObjectInstance>& fixtures,
                                         const PriorStore& priors, std::size_t n_variants,
                                         const SolverParams& params) {
    Polygon ccw_room = room;
    ensure_ccw(ccw_room);
    if (ccw_room.vertices.size() < 3 || !polygon_is_simple(ccw_room))
        throw std::invalid_argument("synthesize: room polygon must be simple");

    std::vector<std::string> categories;
    categories.reserve(objects.size());
    for (const ObjectSpec& spec : objects) {
        if (!(spec.hx > 0.0) || !(spec.hz > 0.0))
            throw std::invalid_argument("synthesize: non-positive half extents for '" +
                                        spec.category + "'");
        categories.push_back(spec.category);
    }

    AdjacencyMatrix adj = build_adjacency(categories, priors.ssg, params.epsilon);
    std::vector<Group> groups = form_groups(adj);

    // every group needs at least one wall-prior-capable member to seed placement
    for (const Group& group : groups) {
        bool any = false;
        for (std::size_t m : group.members)
            if (priors.wall_priors.count(categories[m])) any = true;
        if (!any)
            throw std::runtime_error("synthesize: category '" + categories[group.members[0]] +
                                     "' has no wall prior and no usable group anchor");
    }

    std::vector<SynthesizedScene> results;
    results.reserve(n_variants);
    for (std::size_t variant = 0; variant < n_variants; ++variant) {
        std::uint64_t variant_seed = mix_seed(params.seed, variant);
        Rng rng(variant_seed);

        LayoutState state;
        state.room = ccw_room;
        state.fixtures = fixtures;
        state.objects.resize(objects.size());
        for (std::size_t i = 0; i < objects.size(); ++i) {
            state.objects[i].category = objects[i].category;
            state.objects[i].hx = objects[i].hx;
            state.objects[i].hz = objects[i].hz;
        }

        for (const Group& base : groups) {
            Group group = base;
            group.dominant = choose_dominant(group, adj, rng);
            build_attachment_forest(group, adj, categories, priors.ssg);
            heuristic_arrange(state, group, priors, params, rng);
        }

        OptimizeResult opt = optimize(state, priors, adj, params);
        SynthesizedScene out;
        out.scene = Scene{ccw_room, opt.state.objects, fixtures};
        out.loss = opt.loss;
        out.iterations = opt.iterations;
        out.feasible = opt.feasible;
        out.seed = variant_seed;
        results.push_back(std::move(out));
    }
    return results;
}

}  // namespace layout

#include "layout/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <json.hpp>

#include "layout/rng.hpp"

namespace layout {

using nlohmann::json;

namespace {

constexpr int kPlacementTries = 100;
constexpr int kSceneTries = 20;

struct PlacementPlan {
    std::vector<std::size_t> order;          // category indices, anchors before dependents
    std::vector<int> rule_of_category;       // pair-rule index per category, -1 if free
};

void validate_spec(const GeneratorSpec& spec) {
    if (spec.width_range || spec.depth_range) {
        if (!spec.width_range || !spec.depth_range)
            throw std::invalid_argument("spec.room: width and depth ranges must come together");
        for (const auto& range : {*spec.width_range, *spec.depth_range})
            if (!(range.first > 0.0) || range.second < range.first)
                throw std::invalid_argument("spec.room: malformed width/depth range");
    } else {
        if (spec.room.vertices.size() < 3)
            throw std::invalid_argument("spec.room: polygon needs at least 3 vertices");
        if (!polygon_is_simple(spec.room))
            throw std::invalid_argument("spec.room: polygon must be simple");
    }
    if (spec.categories.empty())
        throw std::invalid_argument("spec.categories: at least one category required");
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < spec.categories.size(); ++i) {
        const auto& cat = spec.categories[i];
        if (cat.name.empty())
            throw std::invalid_argument("spec.categories.name: empty name");
        if (cat.name.find('|') != std::string::npos)
            throw std::invalid_argument("spec.categories.name: '|' is reserved");
        if (!index.emplace(cat.name, i).second)
            throw std::invalid_argument("spec.categories.name: duplicate '" + cat.name + "'");
        if (!(cat.hx > 0.0) || !(cat.hz > 0.0))
            throw std::invalid_argument("spec.categories.hx/hz: must be positive for '" +
                                        cat.name + "'");
        if (cat.wall) {
            if (cat.wall->dist_modes.empty() || cat.wall->orient_modes.empty())
                throw std::invalid_argument("spec.categories.wall: empty modes for '" +
                                            cat.name + "'");
        }
    }
    std::map<std::string, std::size_t> dependents;
    for (std::size_t r = 0; r < spec.pairs.size(); ++r) {
        const PairRule& rule = spec.pairs[r];
        if (!index.count(rule.anchor))
            throw std::invalid_argument("spec.pairs.anchor: unknown category '" + rule.anchor + "'");
        if (!index.count(rule.dependent))
            throw std::invalid_argument("spec.pairs.dependent: unknown category '" +
                                        rule.dependent + "'");
        if (rule.anchor == rule.dependent)
            throw std::invalid_argument("spec.pairs: anchor and dependent must differ");
        if (!dependents.emplace(rule.dependent, r).second)
            throw std::invalid_argument("spec.pairs.dependent: '" + rule.dependent +
                                        "' appears in more than one rule");
        if (rule.noise_fraction < 0.0 || rule.noise_fraction > 1.0)
            throw std::invalid_argument("spec.pairs.noise: must lie in [0, 1]");
        if (rule.noise_fraction < 1.0 && rule.modes.empty())
            throw std::invalid_argument("spec.pairs.modes: required unless noise is 1.0");
        if (rule.noise_fraction > 0.0 && !(rule.noise_radius > 0.0))
            throw std::invalid_argument("spec.pairs.noise_radius: must be positive");
        for (const ModeSpec& mode : rule.modes) {
            if (!(mode.weight > 0.0))
                throw std::invalid_argument("spec.pairs.modes.weight: must be positive");
            if (mode.sigma < 0.0)
                throw std::invalid_argument("spec.pairs.modes.sigma: must be non-negative");
        }
    }
}

PlacementPlan plan_placement(const GeneratorSpec& spec) {
    PlacementPlan plan;
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < spec.categories.size(); ++i)
        index[spec.categories[i].name] = i;
    plan.rule_of_category.assign(spec.categories.size(), -1);
    for (std::size_t r = 0; r < spec.pairs.size(); ++r)
        plan.rule_of_category[index.at(spec.pairs[r].dependent)] = static_cast<int>(r);

    std::vector<bool> placed(spec.categories.size(), false);
    while (plan.order.size() < spec.categories.size()) {
        bool progress = false;
        for (std::size_t i = 0; i < spec.categories.size(); ++i) {
            if (placed[i]) continue;
            int r = plan.rule_of_category[i];
            if (r >= 0 && !placed[index.at(spec.pairs[r].anchor)]) continue;
            plan.order.push_back(i);
            placed[i] = true;
            progress = true;
        }
        if (!progress)
            throw std::invalid_argument("spec.pairs: dependency cycle among pair rules");
    }
    return plan;
}

struct RoomBounds {
    double min_x, max_x, min_z, max_z;
};

RoomBounds room_bounds(const Polygon& room) {
    RoomBounds b{room.vertices[0].x, room.vertices[0].x, room.vertices[0].z,
                 room.vertices[0].z};
    for (const Point2& v : room.vertices) {
        b.min_x = std::min(b.min_x, v.x);
        b.max_x = std::max(b.max_x, v.x);
        b.min_z = std::min(b.min_z, v.z);
        b.max_z = std::max(b.max_z, v.z);
    }
    return b;
}

double sample_scalar_mode(const std::vector<std::pair<double, double>>& modes, double jitter,
                          Rng& rng) {
    std::vector<double> weights;
    weights.reserve(modes.size());
    for (const auto& m : modes) weights.push_back(m.second);
    std::size_t k = rng.pick_weighted(weights);
    double value = modes[k].first;
    if (jitter > 0.0) value += rng.normal(0.0, jitter);
    return value;
}

bool place_wall_object(ObjectInstance& obj, const WallRule& rule, const Polygon& room,
                       Rng& rng) {
    for (int attempt = 0; attempt < kPlacementTries; ++attempt) {
        std::size_t edge = rng.uniform_index(room.vertices.size());
        double d = std::max(0.0, sample_scalar_mode(rule.dist_modes, rule.jitter, rng));
        double theta_wall =
            wrap_angle(sample_scalar_mode(rule.orient_modes, rule.jitter, rng));
        double t = rng.uniform();
        const Point2& a = room.vertices[edge];
        const Point2& b = room.vertices[(edge + 1) % room.vertices.size()];
        double normal_angle = edge_inward_normal_angle(room, edge);
        Point2 center = a + (b - a) * t + rotate({1.0, 0.0}, normal_angle) * d;
        if (!point_in_polygon(center, room)) continue;
        obj.pose = {center.x, 0.0, center.z, wrap_angle(normal_angle + theta_wall)};
        return true;
    }
    return false;
}

bool place_free_object(ObjectInstance& obj, const Polygon& room, Rng& rng) {
    RoomBounds b = room_bounds(room);
    for (int attempt = 0; attempt < kPlacementTries; ++attempt) {
        Point2 center{rng.uniform(b.min_x, b.max_x), rng.uniform(b.min_z, b.max_z)};
        if (!point_in_polygon(center, room)) continue;
        obj.pose = {center.x, 0.0, center.z, rng.uniform(0.0, kTau)};
        return true;
    }
    return false;
}

// Returns the ground-truth label (mode index or -1 for noise), or nullopt when
// no containing placement was found.
std::optional<int> place_dependent(ObjectInstance& obj, const PairRule& rule,
                                   const ObjectInstance& anchor, const Polygon& room,
                                   Rng& rng) {
    std::vector<double> weights;
    weights.reserve(rule.modes.size());
    for (const ModeSpec& m : rule.modes) weights.push_back(m.weight);
    for (int attempt = 0; attempt < kPlacementTries; ++attempt) {
        RelationSample rel;
        int label;
        if (rng.uniform() < rule.noise_fraction) {
            double r = rule.noise_radius * std::sqrt(rng.uniform());
            double phi = rng.uniform(0.0, kTau);
            rel = {r * std::cos(phi), 0.0, r * std::sin(phi), rng.uniform(0.0, kTau)};
            label = -1;
        } else {
            std::size_t k = rng.pick_weighted(weights);
            const ModeSpec& mode = rule.modes[k];
            rel = {mode.px + rng.normal(0.0, mode.sigma), 0.0,
                   mode.pz + rng.normal(0.0, mode.sigma),
                   wrap_angle(mode.ptheta + rng.normal(0.0, mode.sigma))};
            label = static_cast<int>(k);
        }
        Pose pose = compose_pose(anchor.pose, rel);
        if (!point_in_polygon({pose.x, pose.z}, room)) continue;
        obj.pose = pose;
        return label;
    }
    return std::nullopt;
}

}  // namespace

SyntheticCorpus generate_synthetic_corpus(const GeneratorSpec& spec, std::size_t n_scenes,
                                          std::uint64_t seed) {
    validate_spec(spec);
    Polygon fixed_room = spec.room;
    if (!spec.width_range) ensure_ccw(fixed_room);
    PlacementPlan plan = plan_placement(spec);

    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < spec.categories.size(); ++i)
        index[spec.categories[i].name] = i;

    SyntheticCorpus corpus;
    corpus.truth.reserve(spec.pairs.size());
    for (const PairRule& rule : spec.pairs) corpus.truth.push_back({rule, {}});

    Rng rng(mix_seed(seed, 0));
    for (std::size_t s = 0; s < n_scenes; ++s) {
        Polygon room = fixed_room;
        if (spec.width_range) {
            double w = rng.uniform(spec.width_range->first, spec.width_range->second);
            double d = rng.uniform(spec.depth_range->first, spec.depth_range->second);
            room.vertices = {{0, 0}, {w, 0}, {w, d}, {0, d}};
        }
        bool scene_ok = false;
        for (int attempt = 0; attempt < kSceneTries && !scene_ok; ++attempt) {
            Scene scene;
            scene.room = room;
            scene.objects.resize(spec.categories.size());
            std::vector<int> labels(spec.pairs.size(), -1);
            bool ok = true;
            for (std::size_t slot : plan.order) {
                const CategorySpec& cat = spec.categories[slot];
                ObjectInstance& obj = scene.objects[slot];
                obj.category = cat.name;
                obj.hx = cat.hx;
                obj.hz = cat.hz;
                int r = plan.rule_of_category[slot];
                if (r >= 0) {
                    const PairRule& rule = spec.pairs[r];
                    const ObjectInstance& anchor = scene.objects[index.at(rule.anchor)];
                    auto label = place_dependent(obj, rule, anchor, room, rng);
                    if (!label) {
                        ok = false;
                        break;
                    }
                    labels[r] = *label;
                } else if (cat.wall) {
                    if (!place_wall_object(obj, *cat.wall, room, rng)) {
                        ok = false;
                        break;
                    }
                } else {
                    if (!place_free_object(obj, room, rng)) {
                        ok = false;
                        break;
                    }
                }
            }
            if (!ok) continue;
            corpus.scenes.push_back(std::move(scene));
            for (std::size_t r = 0; r < spec.pairs.size(); ++r)
                corpus.truth[r].mode_of_scene.push_back(labels[r]);
            scene_ok = true;
        }
        if (!scene_ok)
            throw std::runtime_error(
                "generate_synthetic_corpus: no containing placement found; a pair mode or "
                "wall distance likely falls outside the room");
    }
    return corpus;
}

GeneratorSpec generator_spec_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("spec: invalid JSON: ") + e.what());
    }
    auto fail = [](const std::string& field) {
        throw std::invalid_argument("spec." + field + ": missing or malformed");
    };
    GeneratorSpec spec;
    try {
        if (j.contains("room") && j["room"].is_array()) {
            for (const auto& v : j["room"])
                spec.room.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
        } else if (j.contains("room") && j["room"].is_object()) {
            double w = j["room"].at("width").get<double>();
            double d = j["room"].at("depth").get<double>();
            spec.room.vertices = {{0, 0}, {w, 0}, {w, d}, {0, d}};
        } else {
            fail("room");
        }
    } catch (const json::exception&) {
        fail("room");
    }
    if (!j.contains("categories") || !j["categories"].is_array()) fail("categories");
    for (const auto& c : j["categories"]) {
        CategorySpec cat;
        try {
            cat.name = c.at("name").get<std::string>();
            cat.hx = c.at("hx").get<double>();
            cat.hz = c.at("hz").get<double>();
        } catch (const json::exception&) {
            fail("categories");
        }
        if (c.contains("wall")) {
            WallRule rule;
            try {
                for (const auto& m : c["wall"].at("dist_modes"))
                    rule.dist_modes.emplace_back(m.at(0).get<double>(), m.at(1).get<double>());
                for (const auto& m : c["wall"].at("orient_modes"))
                    rule.orient_modes.emplace_back(m.at(0).get<double>(), m.at(1).get<double>());
                rule.jitter = c["wall"].value("jitter", 0.0);
            } catch (const json::exception&) {
                fail("categories.wall");
            }
            cat.wall = rule;
        }
        spec.categories.push_back(std::move(cat));
    }
    if (j.contains("pairs")) {
        if (!j["pairs"].is_array()) fail("pairs");
        for (const auto& p : j["pairs"]) {
            PairRule rule;
            try {
                rule.anchor = p.at("anchor").get<std::string>();
                rule.dependent = p.at("dependent").get<std::string>();
                rule.noise_fraction = p.value("noise", 0.0);
                rule.noise_radius = p.value("noise_radius", 2.0);
                if (p.contains("modes"))
                    for (const auto& m : p["modes"]) {
                        ModeSpec mode;
                        mode.px = m.at("px").get<double>();
                        mode.pz = m.at("pz").get<double>();
                        mode.ptheta = m.value("ptheta", 0.0);
                        mode.sigma = m.value("sigma", 0.05);
                        mode.weight = m.value("weight", 1.0);
                        rule.modes.push_back(mode);
                    }
            } catch (const json::exception&) {
                fail("pairs");
            }
            spec.pairs.push_back(std::move(rule));
        }
    }
    validate_spec(spec);
    return spec;
}

std::string truth_to_json(const SyntheticCorpus& corpus, std::uint64_t seed) {
    json j;
    j["seed"] = seed;
    j["n_scenes"] = corpus.scenes.size();
    j["pairs"] = json::array();
    for (const PairTruth& truth : corpus.truth) {
        json p;
        p["anchor"] = truth.rule.anchor;
        p["dependent"] = truth.rule.dependent;
        p["noise"] = truth.rule.noise_fraction;
        p["noise_radius"] = truth.rule.noise_radius;
        p["modes"] = json::array();
        for (const ModeSpec& m : truth.rule.modes)
            p["modes"].push_back({{"px", m.px},
                                  {"pz", m.pz},
                                  {"ptheta", m.ptheta},
                                  {"sigma", m.sigma},
                                  {"weight", m.weight}});
        p["labels"] = truth.mode_of_scene;
        j["pairs"].push_back(std::move(p));
    }
    return j.dump();
}

}  // namespace layout

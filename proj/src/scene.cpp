#include "layout/scene.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace layout {

using nlohmann::json;

bool operator==(const Scene& a, const Scene& b) {
    return a.room.vertices == b.room.vertices && a.objects == b.objects &&
           a.fixtures == b.fixtures;
}

RelationSample relative_pose(const ObjectInstance& anchor, const ObjectInstance& other) {
    Vec2 delta = other.center() - anchor.center();
    Vec2 local = rotate(delta, -anchor.pose.theta);
    return {local.x, other.pose.y - anchor.pose.y, local.z,
            wrap_angle(other.pose.theta - anchor.pose.theta)};
}

Pose compose_pose(const Pose& anchor, const RelationSample& rel) {
    Vec2 world = Vec2{anchor.x, anchor.z} + rotate({rel.px, rel.pz}, anchor.theta);
    return {world.x, anchor.y + rel.py, world.z, wrap_angle(anchor.theta + rel.ptheta)};
}

WallAttributeSample wall_attributes(const ObjectInstance& obj, const Polygon& room) {
    if (!point_in_polygon(obj.center(), room))
        throw std::runtime_error("wall_attributes: object center outside room (corrupt record)");
    BoundaryPoint nearest = nearest_boundary_point(room, obj.center());
    double normal_angle = edge_inward_normal_angle(room, nearest.edge);
    return {nearest.distance, wrap_angle(obj.pose.theta - normal_angle), nearest.t};
}

std::optional<std::string> scene_problem(const Scene& scene) {
    if (scene.room.vertices.size() < 3) return "room polygon has fewer than 3 vertices";
    if (!polygon_is_simple(scene.room)) return "room polygon is not simple";
    auto check = [&](const ObjectInstance& obj, const char* kind) -> std::optional<std::string> {
        if (!(obj.hx > 0.0) || !(obj.hz > 0.0))
            return std::string(kind) + " '" + obj.category + "' has non-positive half extents";
        for (double v : {obj.pose.x, obj.pose.y, obj.pose.z, obj.pose.theta, obj.hx, obj.hz})
            if (!std::isfinite(v))
                return std::string(kind) + " '" + obj.category + "' has non-finite values";
        return std::nullopt;
    };
    for (const auto& obj : scene.objects) {
        if (auto p = check(obj, "object")) return p;
        if (!point_in_polygon(obj.center(), scene.room))
            return "object '" + obj.category + "' center outside room";
    }
    for (const auto& fix : scene.fixtures)
        if (auto p = check(fix, "fixture")) return p;
    return std::nullopt;
}

namespace {

json object_to_json(const ObjectInstance& obj) {
    return json{{"cat", obj.category}, {"x", obj.pose.x},     {"y", obj.pose.y},
                {"z", obj.pose.z},     {"theta", obj.pose.theta}, {"hx", obj.hx},
                {"hz", obj.hz}};
}

ObjectInstance object_from_json(const json& j) {
    ObjectInstance obj;
    obj.category = j.at("cat").get<std::string>();
    obj.pose = {j.at("x").get<double>(), j.at("y").get<double>(), j.at("z").get<double>(),
                j.at("theta").get<double>()};
    obj.hx = j.at("hx").get<double>();
    obj.hz = j.at("hz").get<double>();
    return obj;
}

}  // namespace

std::string scene_to_json(const Scene& scene) {
    json j;
    j["room"] = json::array();
    for (const Point2& v : scene.room.vertices) j["room"].push_back({v.x, v.z});
    j["objects"] = json::array();
    for (const auto& obj : scene.objects) j["objects"].push_back(object_to_json(obj));
    j["fixtures"] = json::array();
    for (const auto& fix : scene.fixtures) j["fixtures"].push_back(object_to_json(fix));
    return j.dump();
}

Scene scene_from_json(const std::string& line) {
    json j = json::parse(line);
    Scene scene;
    for (const auto& v : j.at("room"))
        scene.room.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
    ensure_ccw(scene.room);
    for (const auto& o : j.at("objects")) scene.objects.push_back(object_from_json(o));
    if (j.contains("fixtures"))
        for (const auto& f : j.at("fixtures")) scene.fixtures.push_back(object_from_json(f));
    return scene;
}

void save_corpus(const std::string& path, const std::vector<Scene>& scenes) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (const Scene& scene : scenes) out << scene_to_json(scene) << '\n';
}

CorpusFile load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open corpus: " + path);
    CorpusFile file;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            file.scenes.push_back(scene_from_json(line));
        } catch (const json::exception&) {
            ++file.bad_lines;
        }
    }
    return file;
}

}  // namespace layout

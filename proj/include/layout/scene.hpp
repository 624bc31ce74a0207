#pragma once

#include <optional>
#include <string>
#include <vector>

#include "layout/geometry.hpp"

namespace layout {

struct Pose {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double theta = 0.0;  // radians, [0, 2*pi)

    constexpr bool operator==(const Pose&) const = default;
};

struct ObjectInstance {
    std::string category;
    Pose pose;
    double hx = 0.0;  // half extents of the footprint
    double hz = 0.0;

    OrientedBox footprint() const { return {{pose.x, pose.z}, hx, hz, pose.theta}; }
    Point2 center() const { return {pose.x, pose.z}; }

    bool operator==(const ObjectInstance&) const = default;
};

struct Scene {
    Polygon room;                          // simple, CCW
    std::vector<ObjectInstance> objects;   // movable furniture
    std::vector<ObjectInstance> fixtures;  // doors, windows; never moved
};

bool operator==(const Scene& a, const Scene& b);

// One observed relative pose of an object expressed in an anchor's frame.
struct RelationSample {
    double px = 0.0;
    double py = 0.0;
    double pz = 0.0;
    double ptheta = 0.0;  // radians, [0, 2*pi)
};

// Pose of `other` in `anchor`'s frame: translation rotated by -anchor.theta on
// the xz-plane, py the height difference, ptheta the wrapped heading difference.
RelationSample relative_pose(const ObjectInstance& anchor, const ObjectInstance& other);

// Inverse of relative_pose: the world pose reached by applying rel to anchor.
Pose compose_pose(const Pose& anchor, const RelationSample& rel);

// Placement of an object relative to its nearest wall segment.
struct WallAttributeSample {
    double d_wall = 0.0;      // center distance to the nearest wall segment
    double theta_wall = 0.0;  // heading relative to that wall's inward normal, [0, 2*pi)
    double t_wall = 0.0;      // normalized position along the segment, [0, 1]
};

// Throws std::runtime_error when the object center lies outside the room.
// Nearest-wall ties break toward the lowest edge index.
WallAttributeSample wall_attributes(const ObjectInstance& obj, const Polygon& room);

// Reason the scene is unusable as a corpus record, or nullopt when valid.
std::optional<std::string> scene_problem(const Scene& scene);

// --- corpus serialization (JSON lines, one scene per line) ---

std::string scene_to_json(const Scene& scene);
Scene scene_from_json(const std::string& line);

struct CorpusFile {
    std::vector<Scene> scenes;
    std::size_t bad_lines = 0;
};

void save_corpus(const std::string& path, const std::vector<Scene>& scenes);
CorpusFile load_corpus(const std::string& path);

}  // namespace layout

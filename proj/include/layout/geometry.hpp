#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

// 2D primitives for the layout plane. The plane is spanned by x and z; the
// vertical axis y is carried in poses but never enters any geometry here.

namespace layout {

inline constexpr double kTau = 6.28318530717958647692528676655900577;

// Wraps an angle into [0, 2*pi).
double wrap_angle(double theta);

// Circular distance between two angles: min(2*pi - |a-b|, |a-b|), in [0, pi].
double ang_diff(double theta, double theta_p);

struct Point2 {
    double x = 0.0;
    double z = 0.0;

    constexpr Point2() = default;
    constexpr Point2(double x_, double z_) : x(x_), z(z_) {}

    constexpr Point2 operator+(const Point2& r) const { return {x + r.x, z + r.z}; }
    constexpr Point2 operator-(const Point2& r) const { return {x - r.x, z - r.z}; }
    constexpr Point2 operator*(double s) const { return {x * s, z * s}; }
    constexpr Point2 operator-() const { return {-x, -z}; }
    Point2& operator+=(const Point2& r) { x += r.x; z += r.z; return *this; }
    Point2& operator-=(const Point2& r) { x -= r.x; z -= r.z; return *this; }
    constexpr bool operator==(const Point2& r) const { return x == r.x && z == r.z; }
};

using Vec2 = Point2;

double dot(const Vec2& a, const Vec2& b);
double norm_sq(const Vec2& v);
double norm(const Vec2& v);

// Rotates v counter-clockwise by theta in the xz-plane.
Vec2 rotate(const Vec2& v, double theta);

// Signed area form of the orientation predicate:
//   (b - a) x (q - a) = (b.x-a.x)(q.z-a.z) - (b.z-a.z)(q.x-a.x).
// Positive iff q lies strictly left of the directed edge a -> b.
double to_left(const Point2& q, const Point2& a, const Point2& b);

// Truncated orientation tests: at most one of the pair is nonzero.
double t_left(const Point2& q, const Point2& a, const Point2& b);
double t_right(const Point2& q, const Point2& a, const Point2& b);

// Simple polygon, implicitly closed, stored counter-clockwise.
struct Polygon {
    std::vector<Point2> vertices;
};

double polygon_signed_area(const Polygon& poly);
// Reverses the vertex order in place when the polygon is stored clockwise.
void ensure_ccw(Polygon& poly);
// True when no two non-adjacent edges intersect and no edge is degenerate.
bool polygon_is_simple(const Polygon& poly);
std::size_t longest_edge(const Polygon& poly);

struct BoundaryPoint {
    std::size_t edge = 0;   // index of the edge (v[edge] -> v[edge+1])
    double distance = 0.0;
    double t = 0.0;         // projection parameter along the edge, clamped to [0, 1]
    Point2 closest;
};

// Nearest point on the polygon boundary; distance ties go to the lowest edge index.
BoundaryPoint nearest_boundary_point(const Polygon& poly, const Point2& q);

// Angle of the inward normal of an edge. Requires CCW storage.
double edge_inward_normal_angle(const Polygon& poly, std::size_t edge);

// Winding-number containment; points on the boundary count as inside.
bool point_in_polygon(const Point2& q, const Polygon& poly);

// Zero when q is inside; otherwise the vector from q to its nearest boundary point.
Vec2 boundary_violation(const Point2& q, const Polygon& poly);

struct OrientedBox {
    Point2 center;
    double hx = 0.0;       // half extent along the box x axis
    double hz = 0.0;       // half extent along the box z axis
    double theta = 0.0;    // rotation in [0, 2*pi)
};

// Corners in CCW order starting from the (+hx, +hz) corner.
std::array<Point2, 4> box_corners(const OrientedBox& box);
double box_area(const OrientedBox& box);

// Minimum translation vector that separates a from b, from the separating-axis
// construction over the four box axes. Absent when the boxes do not overlap
// (touching counts as non-overlapping).
std::optional<Vec2> box_overlap_mtv(const OrientedBox& a, const OrientedBox& b);

}  // namespace layout

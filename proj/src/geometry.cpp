#include "layout/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace layout {

namespace {

constexpr double kOnBoundaryEps = 1e-12;
constexpr double kAxisOverlapEps = 1e-12;

}  // namespace

double wrap_angle(double theta) {
    double t = std::fmod(theta, kTau);
    if (t < 0.0) t += kTau;
    // fmod of a tiny negative can land exactly on 2*pi after the correction
    if (t >= kTau) t = 0.0;
    return t;
}

double ang_diff(double theta, double theta_p) {
    double d = std::fabs(wrap_angle(theta) - wrap_angle(theta_p));
    return std::min(d, kTau - d);
}

double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.z * b.z; }
double norm_sq(const Vec2& v) { return v.x * v.x + v.z * v.z; }
double norm(const Vec2& v) { return std::sqrt(norm_sq(v)); }

Vec2 rotate(const Vec2& v, double theta) {
    double c = std::cos(theta);
    double s = std::sin(theta);
    return {v.x * c - v.z * s, v.x * s + v.z * c};
}

double to_left(const Point2& q, const Point2& a, const Point2& b) {
    return (b.x - a.x) * (q.z - a.z) - (b.z - a.z) * (q.x - a.x);
}

double t_left(const Point2& q, const Point2& a, const Point2& b) {
    return std::max(to_left(q, a, b), 0.0);
}

double t_right(const Point2& q, const Point2& a, const Point2& b) {
    return std::max(-to_left(q, a, b), 0.0);
}

double polygon_signed_area(const Polygon& poly) {
    double acc = 0.0;
    const auto& v = poly.vertices;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point2& a = v[i];
        const Point2& b = v[(i + 1) % v.size()];
        acc += a.x * b.z - b.x * a.z;
    }
    return 0.5 * acc;
}

void ensure_ccw(Polygon& poly) {
    if (polygon_signed_area(poly) < 0.0)
        std::reverse(poly.vertices.begin(), poly.vertices.end());
}

namespace {

bool proper_segment_intersection(const Point2& a, const Point2& b,
                                 const Point2& c, const Point2& d) {
    double d1 = to_left(c, a, b);
    double d2 = to_left(d, a, b);
    double d3 = to_left(a, c, d);
    double d4 = to_left(b, c, d);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) &&
           d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

}  // namespace

bool polygon_is_simple(const Polygon& poly) {
    const auto& v = poly.vertices;
    const std::size_t n = v.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i)
        if (v[i] == v[(i + 1) % n]) return false;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (proper_segment_intersection(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]))
                return false;
        }
    }
    return true;
}

std::size_t longest_edge(const Polygon& poly) {
    const auto& v = poly.vertices;
    std::size_t best = 0;
    double best_len = -1.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        double len = norm(v[(i + 1) % v.size()] - v[i]);
        if (len > best_len) {
            best_len = len;
            best = i;
        }
    }
    return best;
}

BoundaryPoint nearest_boundary_point(const Polygon& poly, const Point2& q) {
    const auto& v = poly.vertices;
    BoundaryPoint best;
    best.distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point2& a = v[i];
        const Point2& b = v[(i + 1) % v.size()];
        Vec2 ab = b - a;
        double len2 = norm_sq(ab);
        double t = len2 > 0.0 ? std::clamp(dot(q - a, ab) / len2, 0.0, 1.0) : 0.0;
        Point2 p = a + ab * t;
        double dist = norm(q - p);
        if (dist < best.distance) {
            best = {i, dist, t, p};
        }
    }
    return best;
}

double edge_inward_normal_angle(const Polygon& poly, std::size_t edge) {
    const auto& v = poly.vertices;
    Vec2 d = v[(edge + 1) % v.size()] - v[edge];
    // interior lies to the left of a CCW edge; left normal of (x, z) is (-z, x)
    return wrap_angle(std::atan2(d.x, -d.z));
}

bool point_in_polygon(const Point2& q, const Polygon& poly) {
    const auto& v = poly.vertices;
    const std::size_t n = v.size();
    BoundaryPoint nb = nearest_boundary_point(poly, q);
    if (nb.distance <= kOnBoundaryEps) return true;
    int winding = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = v[i];
        const Point2& b = v[(i + 1) % n];
        if (a.z <= q.z) {
            if (b.z > q.z && to_left(q, a, b) > 0) ++winding;
        } else {
            if (b.z <= q.z && to_left(q, a, b) < 0) --winding;
        }
    }
    return winding != 0;
}

Vec2 boundary_violation(const Point2& q, const Polygon& poly) {
    if (point_in_polygon(q, poly)) return {0.0, 0.0};
    BoundaryPoint nb = nearest_boundary_point(poly, q);
    return nb.closest - q;
}

std::array<Point2, 4> box_corners(const OrientedBox& box) {
    std::array<Point2, 4> local = {Point2{box.hx, box.hz}, Point2{-box.hx, box.hz},
                                   Point2{-box.hx, -box.hz}, Point2{box.hx, -box.hz}};
    std::array<Point2, 4> out;
    for (std::size_t i = 0; i < 4; ++i) out[i] = box.center + rotate(local[i], box.theta);
    return out;
}

double box_area(const OrientedBox& box) { return 4.0 * box.hx * box.hz; }

namespace {

struct AxisProjection {
    double lo = 0.0, hi = 0.0;
};

AxisProjection project_box(const OrientedBox& box, const Vec2& axis) {
    Point2 c = box.center;
    double center = dot(c, axis);
    Vec2 ux = rotate({1.0, 0.0}, box.theta);
    Vec2 uz = rotate({0.0, 1.0}, box.theta);
    double radius = box.hx * std::fabs(dot(ux, axis)) + box.hz * std::fabs(dot(uz, axis));
    return {center - radius, center + radius};
}

}  // namespace

std::optional<Vec2> box_overlap_mtv(const OrientedBox& a, const OrientedBox& b) {
    std::array<Vec2, 4> axes = {rotate({1.0, 0.0}, a.theta), rotate({0.0, 1.0}, a.theta),
                                rotate({1.0, 0.0}, b.theta), rotate({0.0, 1.0}, b.theta)};
    double best_depth = std::numeric_limits<double>::infinity();
    Vec2 best_push;
    for (const Vec2& axis : axes) {
        AxisProjection pa = project_box(a, axis);
        AxisProjection pb = project_box(b, axis);
        // push-out distances for moving a down or up the axis
        double down = pa.hi - pb.lo;
        double up = pb.hi - pa.lo;
        double depth = std::min(down, up);
        if (depth <= kAxisOverlapEps) return std::nullopt;
        if (depth < best_depth) {
            best_depth = depth;
            best_push = down <= up ? -axis : axis;
        }
    }
    return best_push * best_depth;
}

}  // namespace layout

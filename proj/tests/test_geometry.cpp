#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "layout/geometry.hpp"
#include "layout/rng.hpp"

using namespace layout;

namespace {

Polygon unit_square() { return Polygon{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}}; }

// Random convex polygon: random edge vectors recentred to sum to zero, sorted
// by angle, then accumulated. Always convex and CCW.
Polygon random_convex_polygon(Rng& rng, std::size_t k) {
    std::vector<Vec2> edges(k);
    Vec2 mean{0, 0};
    for (Vec2& e : edges) {
        e = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        mean += e;
    }
    for (Vec2& e : edges) e -= mean * (1.0 / static_cast<double>(k));
    std::sort(edges.begin(), edges.end(), [](const Vec2& a, const Vec2& b) {
        return std::atan2(a.z, a.x) < std::atan2(b.z, b.x);
    });
    Polygon poly;
    Point2 cursor{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    for (const Vec2& e : edges) {
        poly.vertices.push_back(cursor);
        cursor += e;
    }
    return poly;
}

// Independent containment oracle: crossing-number ray cast.
bool ray_cast_inside(const Point2& q, const Polygon& poly) {
    bool inside = false;
    const auto& v = poly.vertices;
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
        if ((v[i].z > q.z) != (v[j].z > q.z)) {
            double x_cross = v[j].x + (q.z - v[j].z) / (v[i].z - v[j].z) * (v[i].x - v[j].x);
            if (q.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

OrientedBox square_at(double x, double z) { return {{x, z}, 1.0, 1.0, 0.0}; }

}  // namespace

TEST_CASE("to_left signed area") {
    CHECK(to_left({0, 1}, {0, 0}, {1, 0}) == doctest::Approx(1.0));
    CHECK(to_left({0, -1}, {0, 0}, {1, 0}) == doctest::Approx(-1.0));
    CHECK(to_left({0.5, 0}, {0, 0}, {1, 0}) == 0.0);
}

TEST_CASE("to_left antisymmetry in the edge direction") {
    Rng rng(1);
    for (int i = 0; i < 200; ++i) {
        Point2 q{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        Point2 a{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        Point2 b{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        CHECK(to_left(q, a, b) == doctest::Approx(-to_left(q, b, a)));
    }
}

TEST_CASE("truncated tests") {
    CHECK(t_right({0, 1}, {0, 0}, {1, 0}) == 0.0);
    CHECK(t_right({0, -1}, {0, 0}, {1, 0}) == doctest::Approx(1.0));
    CHECK(t_left({0, 1}, {0, 0}, {1, 0}) == doctest::Approx(1.0));

    Rng rng(2);
    for (int i = 0; i < 200; ++i) {
        Point2 q{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        Point2 a{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        Point2 b{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        CHECK(t_left(q, a, b) * t_right(q, a, b) == 0.0);
    }
}

TEST_CASE("box corners") {
    auto c = box_corners({{0, 0}, 1, 1, 0});
    CHECK(c[0] == Point2{1, 1});
    CHECK(c[1] == Point2{-1, 1});
    CHECK(c[2] == Point2{-1, -1});
    CHECK(c[3] == Point2{1, -1});

    // quarter turn of a square permutes the corner set
    auto r = box_corners({{0, 0}, 1, 1, kTau / 4});
    for (const Point2& corner : r) {
        bool found = false;
        for (const Point2& original : c)
            if (std::fabs(corner.x - original.x) < 1e-12 &&
                std::fabs(corner.z - original.z) < 1e-12)
                found = true;
        CHECK(found);
    }

    auto rect = box_corners({{2, 0}, 1, 0.5, 0});
    CHECK(rect[0] == Point2{3, 0.5});
    CHECK(rect[1] == Point2{1, 0.5});
    CHECK(rect[2] == Point2{1, -0.5});
    CHECK(rect[3] == Point2{3, -0.5});
}

TEST_CASE("point_in_polygon basics") {
    Polygon square = unit_square();
    CHECK(point_in_polygon({0.5, 0.5}, square));
    CHECK_FALSE(point_in_polygon({2, 2}, square));
    CHECK(point_in_polygon({1, 0.5}, square));  // boundary counts as inside
}

TEST_CASE("point_in_polygon matches a ray-casting oracle") {
    Rng rng(3);
    int checked = 0;
    while (checked < 1000) {
        Polygon poly = random_convex_polygon(rng, 3 + rng.uniform_index(6));
        if (!polygon_is_simple(poly)) continue;
        Point2 q{rng.uniform(-4, 4), rng.uniform(-4, 4)};
        if (nearest_boundary_point(poly, q).distance < 1e-9) continue;  // boundary is ours by fiat
        CHECK(point_in_polygon(q, poly) == ray_cast_inside(q, poly));
        ++checked;
    }
}

TEST_CASE("inside a CCW convex polygon every edge sees the point to its left") {
    Rng rng(4);
    int checked = 0;
    while (checked < 200) {
        Polygon poly = random_convex_polygon(rng, 3 + rng.uniform_index(5));
        if (!polygon_is_simple(poly)) continue;
        Point2 q{rng.uniform(-4, 4), rng.uniform(-4, 4)};
        if (!ray_cast_inside(q, poly)) continue;
        for (std::size_t r = 0; r < poly.vertices.size(); ++r)
            CHECK(t_left(q, poly.vertices[r], poly.vertices[(r + 1) % poly.vertices.size()]) > 0);
        ++checked;
    }
}

TEST_CASE("boundary_violation on the unit square") {
    Polygon square = unit_square();
    CHECK(boundary_violation({0.5, 0.5}, square) == Point2{0, 0});
    Vec2 v1 = boundary_violation({1.5, 0.5}, square);
    CHECK(v1.x == doctest::Approx(-0.5));
    CHECK(v1.z == doctest::Approx(0.0));
    Vec2 v2 = boundary_violation({2, 2}, square);
    CHECK(v2.x == doctest::Approx(-1.0));
    CHECK(v2.z == doctest::Approx(-1.0));
}

TEST_CASE("boundary_violation against a dense boundary-sampling oracle") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        Polygon poly = random_convex_polygon(rng, 3 + rng.uniform_index(5));
        if (!polygon_is_simple(poly)) continue;
        Point2 q{rng.uniform(-5, 5), rng.uniform(-5, 5)};
        Vec2 violation = boundary_violation(q, poly);
        bool inside = ray_cast_inside(q, poly) || nearest_boundary_point(poly, q).distance < 1e-9;
        if (inside) {
            CHECK(norm(violation) == 0.0);
            continue;
        }
        // brute force: sample 2000 parameters along every edge
        double best = 1e300;
        const auto& verts = poly.vertices;
        for (std::size_t e = 0; e < verts.size(); ++e) {
            Point2 a = verts[e];
            Point2 b = verts[(e + 1) % verts.size()];
            for (int s = 0; s <= 2000; ++s) {
                Point2 p = a + (b - a) * (s / 2000.0);
                best = std::min(best, norm(q - p));
            }
        }
        CHECK(norm(violation) == doctest::Approx(best).epsilon(1e-4));
    }
}

TEST_CASE("boundary_violation is zero exactly when inside") {
    Rng rng(6);
    Polygon square = unit_square();
    for (int i = 0; i < 500; ++i) {
        Point2 q{rng.uniform(-1, 2), rng.uniform(-1, 2)};
        CHECK((norm(boundary_violation(q, square)) == 0.0) == point_in_polygon(q, square));
    }
}

TEST_CASE("box_overlap_mtv basics") {
    CHECK_FALSE(box_overlap_mtv(square_at(0, 0), square_at(3, 0)).has_value());

    auto mtv = box_overlap_mtv(square_at(0, 0), square_at(1.5, 0));
    REQUIRE(mtv.has_value());
    CHECK(mtv->x == doctest::Approx(-0.5));
    CHECK(mtv->z == doctest::Approx(0.0));

    OrientedBox box{{0.3, -0.2}, 0.8, 0.4, 0.3};
    auto degenerate = box_overlap_mtv(box, box);
    REQUIRE(degenerate.has_value());
    CHECK(norm(*degenerate) == doctest::Approx(2 * std::min(box.hx, box.hz)));
}

TEST_CASE("mtv separates and is minimal over the candidate axes") {
    Rng rng(7);
    int overlapping = 0;
    while (overlapping < 300) {
        OrientedBox a{{rng.uniform(-1, 1), rng.uniform(-1, 1)}, rng.uniform(0.2, 1.2),
                      rng.uniform(0.2, 1.2), rng.uniform(0, kTau)};
        OrientedBox b{{rng.uniform(-1, 1), rng.uniform(-1, 1)}, rng.uniform(0.2, 1.2),
                      rng.uniform(0.2, 1.2), rng.uniform(0, kTau)};
        auto mtv = box_overlap_mtv(a, b);
        if (!mtv) continue;
        ++overlapping;

        OrientedBox moved = a;
        moved.center += *mtv;
        CHECK_FALSE(box_overlap_mtv(moved, b).has_value());

        // test-side projection scan over the four axes: the push-out distance
        // on each axis is the smaller of the two one-sided exit depths
        double min_depth = 1e300;
        for (double theta : {a.theta, a.theta + kTau / 4, b.theta, b.theta + kTau / 4}) {
            Vec2 axis = rotate({1, 0}, theta);
            auto project = [&](const OrientedBox& box) {
                double lo = 1e300, hi = -1e300;
                for (const Point2& c : box_corners(box)) {
                    lo = std::min(lo, dot(c, axis));
                    hi = std::max(hi, dot(c, axis));
                }
                return std::pair{lo, hi};
            };
            auto [alo, ahi] = project(a);
            auto [blo, bhi] = project(b);
            min_depth = std::min(min_depth, std::min(ahi - blo, bhi - alo));
        }
        CHECK(norm(*mtv) == doctest::Approx(min_depth).epsilon(1e-9));
    }
}

TEST_CASE("ang_diff") {
    CHECK(ang_diff(0.1, kTau - 0.1) == doctest::Approx(0.2));
    CHECK(ang_diff(kTau / 2, 0) == doctest::Approx(kTau / 2));
    CHECK(ang_diff(1.0, 1.0) == 0.0);

    Rng rng(8);
    for (int i = 0; i < 500; ++i) {
        double a = rng.uniform(0, kTau), b = rng.uniform(0, kTau), c = rng.uniform(0, kTau);
        CHECK(ang_diff(a, b) == doctest::Approx(ang_diff(b, a)));
        CHECK(ang_diff(a, b) <= kTau / 2 + 1e-12);
        CHECK(ang_diff(a, c) <= ang_diff(a, b) + ang_diff(b, c) + 1e-12);
    }
}

TEST_CASE("wrap_angle") {
    CHECK(wrap_angle(kTau + 0.5) == doctest::Approx(0.5));
    CHECK(wrap_angle(-0.5) == doctest::Approx(kTau - 0.5));
    CHECK(wrap_angle(0.0) == 0.0);
    CHECK(wrap_angle(-1e-18) < kTau);
}

TEST_CASE("polygon helpers") {
    Polygon cw{{{0, 0}, {0, 1}, {1, 1}, {1, 0}}};
    CHECK(polygon_signed_area(cw) == doctest::Approx(-1.0));
    ensure_ccw(cw);
    CHECK(polygon_signed_area(cw) == doctest::Approx(1.0));
    CHECK(polygon_is_simple(cw));

    Polygon bowtie{{{0, 0}, {1, 1}, {1, 0}, {0, 1}}};
    CHECK_FALSE(polygon_is_simple(bowtie));

    Polygon wide{{{0, 0}, {5, 0}, {5, 1}, {0, 1}}};
    CHECK(longest_edge(wide) == 0);

    CHECK(edge_inward_normal_angle(unit_square(), 0) == doctest::Approx(kTau / 4));
}

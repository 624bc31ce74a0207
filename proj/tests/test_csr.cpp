#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "layout/csr.hpp"
#include "layout/rng.hpp"
#include "layout/synthetic.hpp"

using namespace layout;

namespace {

std::vector<RelationSample> two_cluster_samples(std::size_t n, double sigma, Rng& rng) {
    std::vector<RelationSample> samples;
    samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double cx = rng.uniform() < 0.5 ? 1.2 : -1.2;
        samples.push_back({cx + rng.normal(0, sigma), 0.0, rng.normal(0, sigma), 0.0});
    }
    return samples;
}

std::vector<RelationSample> annulus_samples(std::size_t n, double r0, double r1, Rng& rng) {
    std::vector<RelationSample> samples;
    samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double r = std::sqrt(rng.uniform(r0 * r0, r1 * r1));
        double phi = rng.uniform(0, kTau);
        samples.push_back({r * std::cos(phi), 0.0, r * std::sin(phi), 0.0});
    }
    return samples;
}

}  // namespace

TEST_CASE("nn_angles axis-aligned examples") {
    std::vector<double> angles = nn_angles({{0, 0}, {1, 0}, {0, 1}});
    CHECK(angles[0] == doctest::Approx(kTau / 4));  // from +x to +z

    angles = nn_angles({{0, 0}, {1, 0}, {2, 0}});
    CHECK(angles[1] == doctest::Approx(kTau / 2));  // opposite collinear neighbours

    CHECK_THROWS_AS(nn_angles({{0, 0}, {1, 1}}), std::invalid_argument);
}

TEST_CASE("nn_angles tolerates exact duplicates") {
    std::vector<double> angles = nn_angles({{0, 0}, {0, 0}, {0, 0}, {1, 0}});
    CHECK(angles.size() == 4);
    for (double a : angles) CHECK(std::isfinite(a));
}

TEST_CASE("nn_angles invariant under rotation and uniform scaling") {
    Rng rng(21);
    std::vector<Point2> pts;
    for (int i = 0; i < 60; ++i) pts.push_back({rng.uniform(-2, 2), rng.uniform(-2, 2)});
    std::vector<double> base = nn_angles(pts);

    double rot = 1.234, scale = 3.7;
    std::vector<Point2> moved;
    for (const Point2& p : pts) moved.push_back(rotate(p, rot) * scale);
    std::vector<double> transformed = nn_angles(moved);
    for (std::size_t i = 0; i < base.size(); ++i)
        CHECK(ang_diff(base[i], transformed[i]) < 1e-9);
}

TEST_CASE("nn_angles of uniform points look uniform (KS p > 0.01)") {
    // the spec-scale instance: 10,000 points in the unit square per trial
    int passed = 0;
    const int trials = 12;
    for (int t = 0; t < trials; ++t) {
        Rng rng(mix_seed(100, t));
        std::vector<Point2> pts;
        pts.reserve(10000);
        for (int i = 0; i < 10000; ++i) pts.push_back({rng.uniform(), rng.uniform()});
        if (ks_uniform_d(nn_angles(pts)) < 1.628) ++passed;
    }
    CHECK(passed >= static_cast<int>(std::ceil(0.95 * trials)));
}

TEST_CASE("ks_uniform_d hand-computed values") {
    std::vector<double> grid;
    for (int k = 1; k <= 100; ++k) grid.push_back(kTau * k / 100.0);
    CHECK(ks_uniform_d(grid) == doctest::Approx(0.1));

    std::vector<double> spike(25, kTau / 2);
    CHECK(ks_uniform_d(spike) == doctest::Approx(2.5));

    CHECK(ks_uniform_d({0.0}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(ks_uniform_d({}), std::invalid_argument);
}

TEST_CASE("ks_uniform_d is permutation invariant") {
    Rng rng(22);
    std::vector<double> angles;
    for (int i = 0; i < 64; ++i) angles.push_back(rng.uniform(0, kTau));
    double reference = ks_uniform_d(angles);
    for (int shuffle = 0; shuffle < 10; ++shuffle) {
        for (std::size_t i = angles.size(); i > 1; --i)
            std::swap(angles[i - 1], angles[rng.uniform_index(i)]);
        CHECK(ks_uniform_d(angles) == reference);
    }
}

TEST_CASE("ks calibration at the 1.628 threshold (m = 100)") {
    int rejections = 0;
    const int trials = 2000;
    for (int t = 0; t < trials; ++t) {
        Rng rng(mix_seed(7, t));
        std::vector<double> angles;
        angles.reserve(100);
        for (int i = 0; i < 100; ++i) angles.push_back(rng.uniform(0, kTau));
        if (ks_uniform_d(angles) > 1.628) ++rejections;
    }
    double rate = rejections / static_cast<double>(trials);
    CHECK(rate >= 0.002);
    CHECK(rate <= 0.035);
}

TEST_CASE("polar_angles basics") {
    std::vector<double> angles = polar_angles({{1, 0}, {0, 1}, {-1, -1}});
    CHECK(angles[0] == doctest::Approx(0.0));
    CHECK(angles[1] == doctest::Approx(kTau / 4));
    CHECK(angles[2] == doctest::Approx(5.0 * kTau / 8));
}

TEST_CASE("pair_d_value flags clustered pairs and passes uniform ones") {
    int clustered_above = 0, uniform_below = 0;
    const CsrParams params;
    for (int t = 0; t < 100; ++t) {
        Rng rng(mix_seed(31, t));
        auto clustered = two_cluster_samples(1000, 0.02, rng);
        auto uniform = annulus_samples(1000, 0.5, 2.0, rng);
        auto dc = pair_d_value(clustered, params, mix_seed(32, t));
        auto du = pair_d_value(uniform, params, mix_seed(33, t));
        REQUIRE(dc.has_value());
        REQUIRE(du.has_value());
        CHECK(dc->m == 100);
        if (dc->d_value > 1.628) ++clustered_above;
        if (du->d_value < 1.628) ++uniform_below;
    }
    CHECK(clustered_above >= 95);
    CHECK(uniform_below >= 95);
}

TEST_CASE("pair_d_value declines undersized pairs") {
    Rng rng(41);
    auto samples = two_cluster_samples(100, 0.02, rng);  // 10% of 100 is below min_samples
    CHECK_FALSE(pair_d_value(samples, CsrParams{}, 1).has_value());
    CHECK(pair_d_value(samples, CsrParams{0.5, 30}, 1).has_value());
}

TEST_CASE("median d decreases as clusters blur (sigma sweep)") {
    const CsrParams params;
    std::vector<double> medians;
    for (double sigma : {0.02, 0.1, 0.5, 2.0}) {
        std::vector<double> ds;
        for (int t = 0; t < 31; ++t) {
            Rng rng(mix_seed(51, t));
            auto samples = two_cluster_samples(1000, sigma, rng);
            ds.push_back(pair_d_value(samples, params, mix_seed(52, t))->d_value);
        }
        std::nth_element(ds.begin(), ds.begin() + 15, ds.end());
        medians.push_back(ds[15]);
    }
    for (std::size_t i = 1; i < medians.size(); ++i) CHECK(medians[i] < medians[i - 1]);
}

namespace {

GeneratorSpec two_pair_spec() {
    GeneratorSpec spec;
    spec.room = Polygon{{{0, 0}, {10, 0}, {10, 10}, {0, 10}}};
    spec.categories = {
        {"bed", 0.9, 1.0, WallRule{{{1.0, 1.0}}, {{0.0, 1.0}}, 0.02}},
        {"nightstand", 0.25, 0.25, std::nullopt},
        {"table", 0.5, 0.5, std::nullopt},
        {"stool", 0.2, 0.2, std::nullopt},
    };
    spec.pairs = {
        {"bed", "nightstand", {{0, 1.2, 0, 0.05, 1}, {0, -1.2, 0, 0.05, 1}}, 0.0, 2.5},
        {"table", "stool", {{0, 0, 0, 1, 1}}, 1.0, 1.5},  // pure distractor
    };
    return spec;
}

}  // namespace

TEST_CASE("build_ssg separates planted from independent pairs") {
    SyntheticCorpus corpus = generate_synthetic_corpus(two_pair_spec(), 1000, 77);
    RelationGraph graph = build_relation_graph(corpus.scenes);
    SpatialStrengthGraph ssg = build_ssg(graph, CsrParams{}, 77);

    auto planted = ssg.d("bed", "nightstand");
    auto independent = ssg.d("table", "stool");
    REQUIRE(planted.has_value());
    REQUIRE(independent.has_value());
    CHECK(*planted > 1.628);
    CHECK(*planted > *independent);

    CHECK_FALSE(ssg.d("bed", "sofa").has_value());

    const SsgEntry& entry = ssg.weights.at({"bed", "nightstand"});
    CHECK(entry.n_samples == 1000);
    CHECK(entry.m_used == 100);
    CHECK(entry.cooccurrence == 1000);
}

TEST_CASE("build_ssg is deterministic") {
    SyntheticCorpus corpus = generate_synthetic_corpus(two_pair_spec(), 400, 5);
    RelationGraph graph = build_relation_graph(corpus.scenes);
    SpatialStrengthGraph a = build_ssg(graph, CsrParams{}, 9);
    SpatialStrengthGraph b = build_ssg(graph, CsrParams{}, 9);
    REQUIRE(a.weights.size() == b.weights.size());
    for (const auto& [key, entry] : a.weights) {
        CHECK(b.weights.at(key).d_value == entry.d_value);
        CHECK(b.weights.at(key).m_used == entry.m_used);
    }
}

TEST_CASE("two pure-noise pairs score similarly small") {
    GeneratorSpec spec = two_pair_spec();
    spec.pairs[0].modes = {{0, 0, 0, 1, 1}};
    spec.pairs[0].noise_fraction = 1.0;
    spec.pairs[0].noise_radius = 1.5;

    std::vector<double> d1, d2;
    for (int t = 0; t < 30; ++t) {
        SyntheticCorpus corpus = generate_synthetic_corpus(spec, 1000, mix_seed(61, t));
        RelationGraph graph = build_relation_graph(corpus.scenes);
        SpatialStrengthGraph ssg = build_ssg(graph, CsrParams{}, mix_seed(62, t));
        d1.push_back(*ssg.d("bed", "nightstand"));
        d2.push_back(*ssg.d("table", "stool"));
    }
    auto median = [](std::vector<double> v) {
        std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
        return v[v.size() / 2];
    };
    double m1 = median(d1), m2 = median(d2);
    CHECK(m1 < 1.3);
    CHECK(m2 < 1.3);
    CHECK(std::fabs(m1 - m2) < 0.5);
}

#include "layout/csr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "layout/rng.hpp"

namespace layout {

std::vector<double> nn_angles(const std::vector<Point2>& points) {
    const std::size_t n = points.size();
    if (n < 3) throw std::invalid_argument("nn_angles: need at least 3 points");

    // deduplicate exact coincidences: the k-th repeat of a location is nudged
    // by k * 1e-9 along x so neighbour directions stay defined
    std::vector<Point2> pts = points;
    std::map<std::pair<double, double>, int> seen;
    for (Point2& p : pts) {
        int& count = seen[{p.x, p.z}];
        if (count > 0) p.x += 1e-9 * count;
        ++count;
    }

    std::vector<double> angles(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t best1 = n, best2 = n;
        double d1 = std::numeric_limits<double>::infinity();
        double d2 = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            double d = norm_sq(pts[j] - pts[i]);
            if (d < d1) {
                d2 = d1;
                best2 = best1;
                d1 = d;
                best1 = j;
            } else if (d < d2) {
                d2 = d;
                best2 = j;
            }
        }
        Vec2 v1 = pts[best1] - pts[i];
        Vec2 v2 = pts[best2] - pts[i];
        angles[i] = wrap_angle(std::atan2(v2.z, v2.x) - std::atan2(v1.z, v1.x));
    }
    return angles;
}

std::vector<double> polar_angles(const std::vector<Point2>& points) {
    std::vector<double> angles;
    angles.reserve(points.size());
    for (const Point2& p : points) angles.push_back(wrap_angle(std::atan2(p.z, p.x)));
    return angles;
}

double ks_uniform_d(std::vector<double> angles) {
    if (angles.empty()) throw std::invalid_argument("ks_uniform_d: empty input");
    std::sort(angles.begin(), angles.end());
    const double m = static_cast<double>(angles.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        double u = angles[i] / kTau;
        double above = std::fabs(static_cast<double>(i + 1) / m - u);
        double below = std::fabs(static_cast<double>(i) / m - u);
        sup = std::max({sup, above, below});
    }
    return std::sqrt(m) * sup;
}

std::optional<CsrResult> pair_d_value(const std::vector<RelationSample>& samples,
                                      const CsrParams& params, std::uint64_t seed) {
    const std::size_t n = samples.size();
    const auto k = static_cast<std::size_t>(
        std::ceil(params.ratio * static_cast<double>(n)));
    if (k < params.min_samples || k == 0) return std::nullopt;

    // partial Fisher-Yates draw of k indices without replacement
    Rng rng(seed);
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::vector<Point2> pts;
    pts.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + rng.uniform_index(n - i);
        std::swap(idx[i], idx[j]);
        pts.push_back({samples[idx[i]].px, samples[idx[i]].pz});
    }

    CsrResult result;
    result.angles_used = polar_angles(pts);
    result.m = k;
    result.d_value = ks_uniform_d(result.angles_used);
    return result;
}

std::optional<double> SpatialStrengthGraph::d(const std::string& a,
                                              const std::string& b) const {
    auto it = weights.find(unordered_pair(a, b));
    if (it == weights.end()) return std::nullopt;
    return it->second.d_value;
}

SpatialStrengthGraph build_ssg(const RelationGraph& graph, const CsrParams& params,
                               std::uint64_t seed) {
    SpatialStrengthGraph ssg;
    for (const auto& [key, samples] : graph.relations) {
        if (key.first > key.second) continue;  // the (min, max) ordered list speaks for the pair
        auto result = pair_d_value(samples, params, seed ^ fnv1a(key.first + "|" + key.second));
        if (!result) continue;
        SsgEntry entry;
        entry.d_value = result->d_value;
        entry.n_samples = samples.size();
        entry.m_used = result->m;
        auto co = graph.cooccurrence.find(key);
        entry.cooccurrence = co == graph.cooccurrence.end() ? 0 : co->second;
        ssg.weights.emplace(key, entry);
    }
    return ssg;
}

}  // namespace layout

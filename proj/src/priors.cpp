#include "layout/priors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace layout {

using nlohmann::json;

namespace {

using DistanceFn = std::function<double(std::size_t, std::size_t)>;

double cutoff_from_rank(std::size_t count, double eta, const DistanceFn& dist) {
    std::vector<double> dists;
    dists.reserve(count * (count - 1) / 2);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i + 1; j < count; ++j) dists.push_back(dist(i, j));
    // rank over the ordered multiset (every unordered distance appears twice)
    auto rank = static_cast<std::size_t>(eta * static_cast<double>(count) *
                                         static_cast<double>(count));
    rank = std::clamp<std::size_t>(rank, 1, count * (count - 1));
    std::size_t unordered_index = (rank + 1) / 2 - 1;
    std::nth_element(dists.begin(), dists.begin() + unordered_index, dists.end());
    return dists[unordered_index];
}

DpcDensities densities_with_cutoff(std::size_t count, double d_c, const DistanceFn& dist) {
    DpcDensities out;
    out.d_c = d_c;
    out.rho.assign(count, 0);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = i + 1; j < count; ++j)
            if (dist(i, j) <= d_c) {
                ++out.rho[i];
                ++out.rho[j];
            }

    // "denser" is a total order: higher rho first, ties to the lower index
    auto denser = [&](std::size_t a, std::size_t b) {
        return out.rho[a] > out.rho[b] || (out.rho[a] == out.rho[b] && a < b);
    };
    std::size_t top = 0;
    for (std::size_t i = 1; i < count; ++i)
        if (denser(i, top)) top = i;

    out.delta.assign(count, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
        if (i == top) {
            double far = 0.0;
            for (std::size_t j = 0; j < count; ++j)
                if (j != i) far = std::max(far, dist(i, j));
            out.delta[i] = far;
        } else {
            double near = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < count; ++j)
                if (j != i && denser(j, i)) near = std::min(near, dist(i, j));
            out.delta[i] = near;
        }
    }
    return out;
}

DistanceFn translation_distance(const std::vector<RelationSample>& samples) {
    return [&samples](std::size_t i, std::size_t j) {
        double dx = samples[i].px - samples[j].px;
        double dy = samples[i].py - samples[j].py;
        double dz = samples[i].pz - samples[j].pz;
        return std::sqrt(dx * dx + dy * dy + dz * dz);
    };
}

}  // namespace

DpcDensities dpc_densities(const std::vector<RelationSample>& samples, double eta) {
    if (samples.size() < 2) throw std::invalid_argument("dpc_densities: need at least 2 samples");
    DistanceFn dist = translation_distance(samples);
    return densities_with_cutoff(samples.size(), cutoff_from_rank(samples.size(), eta, dist),
                                 dist);
}

DpcDensities dpc_densities_forced(const std::vector<RelationSample>& samples, double d_c) {
    if (samples.size() < 2) throw std::invalid_argument("dpc_densities: need at least 2 samples");
    return densities_with_cutoff(samples.size(), d_c, translation_distance(samples));
}

DpcDensities dpc_densities_scalar(const std::vector<double>& values, double eta,
                                  bool circular) {
    if (values.size() < 2) throw std::invalid_argument("dpc_densities: need at least 2 samples");
    DistanceFn dist;
    if (circular) {
        dist = [&values](std::size_t i, std::size_t j) { return ang_diff(values[i], values[j]); };
    } else {
        dist = [&values](std::size_t i, std::size_t j) { return std::fabs(values[i] - values[j]); };
    }
    return densities_with_cutoff(values.size(), cutoff_from_rank(values.size(), eta, dist),
                                 dist);
}

std::size_t Template::sample_index(Rng& rng) const {
    std::vector<double> weights;
    weights.reserve(points.size());
    for (const TemplatePoint& p : points) weights.push_back(p.weight);
    return rng.pick_weighted(weights);
}

namespace {

struct Retained {
    std::vector<std::size_t> indices;   // into the original sample list
    std::vector<std::size_t> centers;   // into `indices`
    std::vector<double> rho;            // per retained point
};

Retained retain_and_flag(const DpcDensities& dens, const DpcParams& params) {
    int max_rho = *std::max_element(dens.rho.begin(), dens.rho.end());
    Retained out;
    for (std::size_t i = 0; i < dens.rho.size(); ++i)
        if (dens.rho[i] >= params.rho_keep * max_rho) {
            out.indices.push_back(i);
            out.rho.push_back(dens.rho[i]);
        }
    if (out.indices.empty() || max_rho == 0)
        throw std::runtime_error("density peak extraction: no pattern survives denoising");
    double max_score = 0.0;
    for (std::size_t i : out.indices)
        max_score = std::max(max_score, dens.rho[i] * dens.delta[i]);
    for (std::size_t r = 0; r < out.indices.size(); ++r) {
        std::size_t i = out.indices[r];
        if (dens.rho[i] * dens.delta[i] >= params.center_score_keep * max_score)
            out.centers.push_back(r);
    }
    return out;
}

}  // namespace

Template extract_template(const std::vector<RelationSample>& samples,
                          const DpcParams& params) {
    DpcDensities dens = dpc_densities(samples, params.eta);
    Retained kept = retain_and_flag(dens, params);
    double total = 0.0;
    for (double r : kept.rho) total += r;
    Template tmpl;
    tmpl.points.reserve(kept.indices.size());
    for (std::size_t r = 0; r < kept.indices.size(); ++r)
        tmpl.points.push_back({samples[kept.indices[r]], kept.rho[r] / total});
    tmpl.centers = kept.centers;
    return tmpl;
}

namespace {

Multinomial peaks_to_multinomial(const std::vector<double>& values, const DpcDensities& dens,
                                 const DpcParams& params) {
    Retained kept = retain_and_flag(dens, params);
    // support = the peak values; coincident peaks merge into one atom
    std::map<double, double> mass;
    for (std::size_t r : kept.centers) mass[values[kept.indices[r]]] += kept.rho[r];
    double total = 0.0;
    for (const auto& [value, rho] : mass) total += rho;
    Multinomial out;
    for (const auto& [value, rho] : mass) {
        out.values.push_back(value);
        out.probs.push_back(rho / total);
    }
    return out;
}

}  // namespace

double Multinomial::sample(Rng& rng) const { return values[rng.pick_weighted(probs)]; }

WallPrior extract_wall_prior(const std::vector<WallAttributeSample>& samples,
                             const DpcParams& params) {
    if (samples.size() < 2)
        throw std::invalid_argument("extract_wall_prior: need at least 2 samples");
    std::vector<double> dists, orients;
    dists.reserve(samples.size());
    orients.reserve(samples.size());
    for (const WallAttributeSample& s : samples) {
        dists.push_back(s.d_wall);
        orients.push_back(s.theta_wall);
    }
    WallPrior prior;
    prior.dist_modes =
        peaks_to_multinomial(dists, dpc_densities_scalar(dists, params.eta, false), params);
    prior.orient_modes =
        peaks_to_multinomial(orients, dpc_densities_scalar(orients, params.eta, true), params);
    return prior;
}

Template merge_templates(const std::vector<ScoredTemplate>& neighbors, double beta,
                         std::size_t k_max) {
    Template merged;
    double total = 0.0;
    std::size_t used = 0;
    for (const ScoredTemplate& neighbor : neighbors) {
        if (used >= k_max || neighbor.score < beta) break;
        std::size_t base = merged.points.size();
        for (const TemplatePoint& p : neighbor.tmpl.points) {
            merged.points.push_back({p.sample, p.weight * neighbor.score});
            total += p.weight * neighbor.score;
        }
        for (std::size_t c : neighbor.tmpl.centers) merged.centers.push_back(base + c);
        ++used;
    }
    if (used == 0)
        throw std::runtime_error("merge_templates: no neighbour meets the similarity threshold");
    for (TemplatePoint& p : merged.points) p.weight /= total;
    return merged;
}

// --- serialization ---

namespace {

json multinomial_to_json(const Multinomial& m) {
    json arr = json::array();
    for (std::size_t i = 0; i < m.values.size(); ++i)
        arr.push_back({m.values[i], m.probs[i]});
    return arr;
}

Multinomial multinomial_from_json(const json& arr, const std::string& what) {
    Multinomial m;
    for (const auto& pair : arr) {
        m.values.push_back(pair.at(0).get<double>());
        m.probs.push_back(pair.at(1).get<double>());
    }
    if (m.values.empty()) throw std::runtime_error("priors: empty multinomial in " + what);
    double total = 0.0;
    for (double p : m.probs) total += p;
    if (std::fabs(total - 1.0) > 1e-9)
        throw std::runtime_error("priors: multinomial probabilities of " + what +
                                 " do not sum to 1");
    return m;
}

}  // namespace

std::string priors_to_json(const PriorStore& store) {
    json j;
    j["version"] = 1;
    j["epsilon"] = store.epsilon;
    j["csr"] = {{"ratio", store.csr_params.ratio}, {"min_samples", store.csr_params.min_samples}};
    j["dpc"] = {{"eta", store.dpc_params.eta},
                {"rho_keep", store.dpc_params.rho_keep},
                {"center_score_keep", store.dpc_params.center_score_keep}};
    j["seed"] = store.seed;
    j["ssg"] = json::array();
    for (const auto& [key, entry] : store.ssg.weights)
        j["ssg"].push_back({{"a", key.first},
                            {"b", key.second},
                            {"d", entry.d_value},
                            {"n_samples", entry.n_samples},
                            {"m_used", entry.m_used},
                            {"cooccurrence", entry.cooccurrence}});
    j["templates"] = json::object();
    for (const auto& [key, tmpl] : store.templates) {
        json t;
        t["points"] = json::array();
        for (const TemplatePoint& p : tmpl.points)
            t["points"].push_back(
                {p.sample.px, p.sample.py, p.sample.pz, p.sample.ptheta, p.weight});
        t["centers"] = tmpl.centers;
        j["templates"][key.first + "|" + key.second] = std::move(t);
    }
    j["wall_priors"] = json::object();
    for (const auto& [cat, prior] : store.wall_priors)
        j["wall_priors"][cat] = {{"dist", multinomial_to_json(prior.dist_modes)},
                                 {"orient", multinomial_to_json(prior.orient_modes)}};
    return j.dump();
}

PriorStore priors_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("priors: invalid JSON: ") + e.what());
    }
    try {
        if (j.at("version").get<int>() != 1)
            throw std::runtime_error("priors: unsupported version");
        PriorStore store;
        store.epsilon = j.at("epsilon").get<double>();
        store.csr_params.ratio = j.at("csr").at("ratio").get<double>();
        store.csr_params.min_samples = j.at("csr").at("min_samples").get<std::size_t>();
        store.dpc_params.eta = j.at("dpc").at("eta").get<double>();
        store.dpc_params.rho_keep = j.at("dpc").at("rho_keep").get<double>();
        store.dpc_params.center_score_keep =
            j.at("dpc").at("center_score_keep").get<double>();
        store.seed = j.at("seed").get<std::uint64_t>();
        for (const auto& e : j.at("ssg")) {
            SsgEntry entry{e.at("d").get<double>(), e.at("n_samples").get<std::size_t>(),
                           e.at("m_used").get<std::size_t>(),
                           e.at("cooccurrence").get<std::size_t>()};
            store.ssg.weights.emplace(
                CategoryPair{e.at("a").get<std::string>(), e.at("b").get<std::string>()}, entry);
        }
        for (const auto& [key, t] : j.at("templates").items()) {
            auto sep = key.find('|');
            if (sep == std::string::npos)
                throw std::runtime_error("priors: malformed template key '" + key + "'");
            CategoryPair pair{key.substr(0, sep), key.substr(sep + 1)};
            Template tmpl;
            double total = 0.0;
            for (const auto& p : t.at("points")) {
                RelationSample s{p.at(0).get<double>(), p.at(1).get<double>(),
                                 p.at(2).get<double>(), p.at(3).get<double>()};
                tmpl.points.push_back({s, p.at(4).get<double>()});
                total += p.at(4).get<double>();
            }
            if (tmpl.points.empty())
                throw std::runtime_error("priors: empty template '" + key + "'");
            if (std::fabs(total - 1.0) > 1e-9)
                throw std::runtime_error("priors: template weights of '" + key +
                                         "' do not sum to 1");
            for (const auto& c : t.at("centers")) {
                auto idx = c.get<std::size_t>();
                if (idx >= tmpl.points.size())
                    throw std::runtime_error("priors: center index out of range in '" + key + "'");
                tmpl.centers.push_back(idx);
            }
            if (!store.ssg.d(pair.first, pair.second))
                throw std::runtime_error("priors: template '" + key + "' has no SSG entry");
            store.templates.emplace(pair, std::move(tmpl));
        }
        for (const auto& [cat, prior] : j.at("wall_priors").items()) {
            WallPrior wp;
            wp.dist_modes = multinomial_from_json(prior.at("dist"), cat + ".dist");
            wp.orient_modes = multinomial_from_json(prior.at("orient"), cat + ".orient");
            store.wall_priors.emplace(cat, std::move(wp));
        }
        return store;
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("priors: missing or malformed field: ") + e.what());
    }
}

void save_priors(const std::string& path, const PriorStore& store) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << priors_to_json(store) << '\n';
}

PriorStore load_priors(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open priors: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return priors_from_json(buffer.str());
}

}  // namespace layout

#include "layout/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "layout/synthesis.hpp"
#include "layout/synthetic.hpp"

namespace layout::cli {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

ObjectInstance fixture_from_json(const json& f) {
    ObjectInstance fix;
    fix.category = f.at("cat").get<std::string>();
    fix.pose = {f.at("x").get<double>(), f.value("y", 0.0), f.at("z").get<double>(),
                f.at("theta").get<double>()};
    fix.hx = f.at("hx").get<double>();
    fix.hz = f.at("hz").get<double>();
    return fix;
}

}  // namespace

int cmd_gen_corpus(const std::string& spec_path, const std::string& out_path, std::size_t n,
                   std::uint64_t seed) {
    try {
        GeneratorSpec spec = generator_spec_from_json(read_file(spec_path));
        SyntheticCorpus corpus = generate_synthetic_corpus(spec, n, seed);
        save_corpus(out_path, corpus.scenes);
        write_file(out_path + ".truth.json", truth_to_json(corpus, seed) + "\n");
        std::cout << "wrote " << corpus.scenes.size() << " scenes to " << out_path << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "gen-corpus: " << e.what() << "\n";
        return kExitInputError;
    }
}

int cmd_learn(const std::string& corpus_path, const std::string& out_path,
              const LearnOptions& options) {
    try {
        CorpusFile corpus = load_corpus(corpus_path);
        if (corpus.scenes.empty()) {
            std::cerr << "learn: corpus is empty: " << corpus_path << "\n";
            return kExitInputError;
        }
        RelationGraph graph = build_relation_graph(corpus.scenes);

        PriorStore store;
        store.epsilon = options.epsilon;
        store.csr_params = {options.ratio, options.min_samples};
        store.dpc_params = {options.eta, options.rho_keep, options.center_score_keep};
        store.seed = options.seed;
        store.ssg = build_ssg(graph, store.csr_params, options.seed);

        std::size_t below_epsilon = 0, failed_templates = 0;
        for (const auto& [key, samples] : graph.relations) {
            auto d = store.ssg.d(key.first, key.second);
            if (!d) continue;
            if (*d < options.epsilon) {
                ++below_epsilon;
                continue;
            }
            try {
                store.templates.emplace(key, extract_template(samples, store.dpc_params));
            } catch (const std::exception&) {
                ++failed_templates;
            }
        }
        std::size_t failed_walls = 0;
        for (const auto& [category, samples] : graph.wall_samples) {
            if (samples.size() < 2) {
                ++failed_walls;
                continue;
            }
            try {
                store.wall_priors.emplace(category, extract_wall_prior(samples, store.dpc_params));
            } catch (const std::exception&) {
                ++failed_walls;
            }
        }
        save_priors(out_path, store);

        std::size_t unmeasured = 0;
        for (const auto& [key, samples] : graph.relations)
            if (key.first <= key.second && !store.ssg.d(key.first, key.second)) ++unmeasured;
        std::cout << "scenes: " << graph.scenes_used << " used, "
                  << graph.scenes_skipped + corpus.bad_lines << " skipped\n"
                  << "pairs: " << store.ssg.weights.size() << " measured, " << unmeasured
                  << " with insufficient samples\n"
                  << "templates: " << store.templates.size() << " extracted, " << below_epsilon
                  << " ordered lists below epsilon, " << failed_templates << " failed\n"
                  << "wall priors: " << store.wall_priors.size() << " extracted, "
                  << failed_walls << " skipped\n";
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "learn: " << e.what() << "\n";
        return kExitInputError;
    }
}

int cmd_synth(const std::string& priors_path, const std::string& room_path,
              const std::string& objects_path, const std::string& out_path,
              const SynthOptions& options) {
    try {
        PriorStore store = load_priors(priors_path);

        json room_doc = json::parse(read_file(room_path));
        Polygon room;
        for (const auto& v : room_doc.at("room"))
            room.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
        std::vector<ObjectInstance> fixtures;
        if (room_doc.contains("fixtures"))
            for (const auto& f : room_doc["fixtures"]) fixtures.push_back(fixture_from_json(f));

        json objects_doc = json::parse(read_file(objects_path));
        const json& list = objects_doc.is_array() ? objects_doc : objects_doc.at("objects");
        std::vector<ObjectSpec> objects;
        for (const auto& o : list)
            objects.push_back({o.at("cat").get<std::string>(), o.at("hx").get<double>(),
                               o.at("hz").get<double>()});

        SolverParams params;
        params.epsilon = store.epsilon;
        params.seed = options.seed;
        params.max_iterations = options.max_iterations;
        std::vector<SynthesizedScene> results =
            synthesize(room, objects, fixtures, store, options.variants, params);

        std::ofstream scenes_out(out_path);
        std::ofstream meta_out(out_path + ".meta.jsonl");
        if (!scenes_out || !meta_out)
            throw std::runtime_error("cannot open for writing: " + out_path);
        bool all_feasible = true;
        for (std::size_t v = 0; v < results.size(); ++v) {
            const SynthesizedScene& r = results[v];
            scenes_out << scene_to_json(r.scene) << '\n';
            meta_out << json{{"variant", v},
                             {"seed", r.seed},
                             {"loss", r.loss},
                             {"iterations", r.iterations},
                             {"feasible", r.feasible}}
                             .dump()
                     << '\n';
            all_feasible = all_feasible && r.feasible;
            std::cout << "variant " << v << ": loss " << r.loss << ", " << r.iterations
                      << " iterations, " << (r.feasible ? "feasible" : "infeasible") << "\n";
        }
        return all_feasible ? kExitOk : kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "synth: " << e.what() << "\n";
        return kExitInputError;
    }
}

int cmd_render(const std::string& input_path, const std::string& out_svg,
               const RenderOptions& options, const std::string& pair, std::size_t index) {
    try {
        std::string text = read_file(input_path);
        json probe;
        try {
            std::istringstream lines(text);
            std::string first;
            std::getline(lines, first);
            probe = json::parse(first);
        } catch (const json::exception&) {
            std::cerr << "render: unknown input kind: " << input_path << "\n";
            return kExitInputError;
        }

        if (probe.is_object() && probe.contains("templates")) {
            PriorStore store = priors_from_json(text);
            if (pair.empty()) {
                std::cerr << "render: priors input requires --pair anchor|other\n";
                return kExitInputError;
            }
            auto sep = pair.find('|');
            if (sep == std::string::npos) {
                std::cerr << "render: --pair must look like anchor|other\n";
                return kExitInputError;
            }
            CategoryPair key{pair.substr(0, sep), pair.substr(sep + 1)};
            auto it = store.templates.find(key);
            if (it == store.templates.end()) {
                std::cerr << "render: no template for pair '" << pair << "'\n";
                return kExitInputError;
            }
            write_file(out_svg, render_template_svg(it->second, options));
            return kExitOk;
        }
        if (probe.is_object() && probe.contains("room")) {
            std::istringstream lines(text);
            std::string line;
            std::size_t current = 0;
            while (std::getline(lines, line)) {
                if (line.empty()) continue;
                if (current++ == index) {
                    write_file(out_svg, render_scene_svg(scene_from_json(line), options));
                    return kExitOk;
                }
            }
            std::cerr << "render: scene index " << index << " out of range\n";
            return kExitInputError;
        }
        std::cerr << "render: unknown input kind: " << input_path << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "render: " << e.what() << "\n";
        return kExitInputError;
    }
}

int cmd_ssg_report(const std::string& priors_path, const std::string& out_csv) {
    try {
        PriorStore store = load_priors(priors_path);
        std::vector<std::pair<CategoryPair, SsgEntry>> rows(store.ssg.weights.begin(),
                                                            store.ssg.weights.end());
        std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
            return a.second.d_value > b.second.d_value;
        });
        std::ostringstream csv;
        csv << "pair,cooccurrence,n_samples,m_used,d_value,above_threshold\n";
        for (const auto& [key, entry] : rows) {
            char dbuf[32];
            std::snprintf(dbuf, sizeof(dbuf), "%.6g", entry.d_value);
            csv << key.first << '|' << key.second << ',' << entry.cooccurrence << ','
                << entry.n_samples << ',' << entry.m_used << ',' << dbuf << ','
                << (entry.d_value >= store.epsilon ? "true" : "false") << '\n';
        }
        write_file(out_csv, csv.str());
        return kExitOk;
    } catch (const std::exception& e) {
        std::cerr << "ssg-report: " << e.what() << "\n";
        return kExitInputError;
    }
}

}  // namespace layout::cli

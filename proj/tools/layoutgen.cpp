#include <CLI11.hpp>

#include "layout/commands.hpp"

// layoutgen: learn spatial-relation priors from a corpus of indoor scenes and
// synthesize new furniture layouts.
int main(int argc, char** argv) {
    CLI::App app{"Indoor scene layout learning and synthesis"};
    app.require_subcommand(1);

    std::string spec_path, corpus_path, priors_path, room_path, objects_path;
    std::string in_path, out_path, pair;
    std::size_t n_scenes = 100, index = 0;
    std::uint64_t seed = 0;
    layout::cli::LearnOptions learn;
    layout::cli::SynthOptions synth;
    layout::RenderOptions render;

    auto* gen = app.add_subcommand("gen-corpus", "Generate a synthetic scene corpus");
    gen->add_option("--spec", spec_path, "Generator spec JSON file")->required();
    gen->add_option("--out", out_path, "Output corpus path (JSON lines)")->required();
    gen->add_option("-n,--scenes", n_scenes, "Number of scenes");
    gen->add_option("--seed", seed, "Random seed");

    auto* lrn = app.add_subcommand("learn", "Learn priors from a corpus");
    lrn->add_option("--corpus", corpus_path, "Corpus path (JSON lines)")->required();
    lrn->add_option("--out", out_path, "Output priors path")->required();
    lrn->add_option("--ratio", learn.ratio, "CSR subsampling ratio");
    lrn->add_option("--eta", learn.eta, "Density cutoff fraction");
    lrn->add_option("--epsilon", learn.epsilon, "Spatial strength threshold");
    lrn->add_option("--seed", learn.seed, "Random seed");
    lrn->add_option("--rho-keep", learn.rho_keep, "Density retention fraction");
    lrn->add_option("--center-keep", learn.center_score_keep, "Center score fraction");

    auto* syn = app.add_subcommand("synth", "Synthesize layouts from priors");
    syn->add_option("--priors", priors_path, "Priors file")->required();
    syn->add_option("--room", room_path, "Room JSON file")->required();
    syn->add_option("--objects", objects_path, "Objects JSON file")->required();
    syn->add_option("--out", out_path, "Output scenes path (JSON lines)")->required();
    syn->add_option("--variants", synth.variants, "Number of layout variants");
    syn->add_option("--seed", synth.seed, "Random seed");
    syn->add_option("--max-iters", synth.max_iterations, "Optimizer iteration cap");

    auto* ren = app.add_subcommand("render", "Render a scene or template to SVG");
    ren->add_option("input", in_path, "Scene JSON-lines or priors file")->required();
    ren->add_option("--out", out_path, "Output SVG path")->required();
    ren->add_option("--pair", pair, "Template pair anchor|other (priors input)");
    ren->add_option("--index", index, "Scene line index (scene input)");
    ren->add_option("--scale", render.scale, "Pixels per meter");
    ren->add_flag("!--no-labels", render.draw_labels, "Skip category labels");
    ren->add_flag("!--no-hsv", render.hsv_orientation, "Plain template dots");

    auto* rep = app.add_subcommand("ssg-report", "Export the spatial strength graph as CSV");
    rep->add_option("--priors", priors_path, "Priors file")->required();
    rep->add_option("--out", out_path, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : layout::cli::kExitInputError;
    }

    if (gen->parsed()) return layout::cli::cmd_gen_corpus(spec_path, out_path, n_scenes, seed);
    if (lrn->parsed()) return layout::cli::cmd_learn(corpus_path, out_path, learn);
    if (syn->parsed())
        return layout::cli::cmd_synth(priors_path, room_path, objects_path, out_path, synth);
    if (ren->parsed()) return layout::cli::cmd_render(in_path, out_path, render, pair, index);
    if (rep->parsed()) return layout::cli::cmd_ssg_report(priors_path, out_path);
    return layout::cli::kExitInputError;
}

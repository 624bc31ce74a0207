#pragma once

#include <cstdint>
#include <string>

#include "layout/priors.hpp"
#include "layout/render.hpp"

// Subcommand implementations behind the layoutgen binary. All return process
// exit codes: 0 ok, 2 input error, 3 infeasible result.

namespace layout::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitInfeasible = 3;

int cmd_gen_corpus(const std::string& spec_path, const std::string& out_path, std::size_t n,
                   std::uint64_t seed);

struct LearnOptions {
    double ratio = 0.10;
    double eta = 0.015;
    double epsilon = kDefaultEpsilon;
    std::uint64_t seed = 0;
    double rho_keep = 0.015;
    double center_score_keep = 0.2;
    std::size_t min_samples = 30;
};

int cmd_learn(const std::string& corpus_path, const std::string& out_path,
              const LearnOptions& options);

struct SynthOptions {
    std::size_t variants = 1;
    std::uint64_t seed = 0;
    std::size_t max_iterations = 100;
};

int cmd_synth(const std::string& priors_path, const std::string& room_path,
              const std::string& objects_path, const std::string& out_path,
              const SynthOptions& options);

int cmd_render(const std::string& input_path, const std::string& out_svg,
               const RenderOptions& options, const std::string& pair, std::size_t index);

int cmd_ssg_report(const std::string& priors_path, const std::string& out_csv);

}  // namespace layout::cli

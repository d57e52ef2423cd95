// Copyright 2026 The risopt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ris_sim: command line front end for the RIS phase-shift experiments.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "risopt/harness.hpp"

namespace {

struct Options {
  std::string config;
  std::string profile;
  std::string seeds;
  std::string out;
  std::vector<std::string> methods;
  int episodes = 0;
  int steps = 0;
  int threads = 0;
  bool wall_time = false;
};

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string item = text.substr(start, comma - start);
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("--seed: '" + item + "' is not an unsigned integer");
    seeds.push_back(std::stoull(item));
    start = comma + 1;
  }
  return seeds;
}

risopt::ExperimentConfig resolve(const Options& opt, risopt::ExperimentKind kind) {
  std::optional<std::string> profile;
  if (!opt.profile.empty()) profile = opt.profile;
  risopt::ExperimentConfig cfg =
      opt.config.empty() ? risopt::parse_experiment_config("", profile)
                         : risopt::load_experiment_config(opt.config, profile);
  cfg.kind = kind;
  if (!opt.seeds.empty()) cfg.seeds = parse_seeds(opt.seeds);
  if (!opt.out.empty()) cfg.out_dir = opt.out;
  if (!opt.methods.empty()) {
    cfg.methods.clear();
    for (const auto& m : opt.methods) cfg.methods.push_back(risopt::method_from_string(m));
  }
  if (opt.episodes > 0) cfg.ddqn.n_episodes = cfg.ddqn_ga.n_episodes = opt.episodes;
  if (opt.steps > 0) cfg.ddqn.n_steps = cfg.ddqn_ga.n_steps = opt.steps;
  if (opt.threads > 0) cfg.threads = opt.threads;
  if (opt.wall_time) cfg.record_wall_time = true;
  return cfg;
}

void add_common(CLI::App* sub, Options& opt) {
  sub->add_option("--config", opt.config, "YAML config file")->check(CLI::ExistingFile);
  sub->add_option("--seed", opt.seeds, "Comma separated seeds");
  sub->add_option("--out", opt.out, "Output directory");
  sub->add_option("--profile", opt.profile, "Preset profile")
      ->check(CLI::IsMember({"tiny", "small", "paper"}));
  sub->add_option("--methods", opt.methods, "Methods to run")->delimiter(',');
  sub->add_option("--episodes", opt.episodes, "Training episodes (both agents)");
  sub->add_option("--steps", opt.steps, "Steps per episode (both agents)");
  sub->add_option("--threads", opt.threads, "Worker threads");
  sub->add_flag("--wall-time", opt.wall_time, "Record wall-clock seconds in the summary");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RIS discrete phase-shift optimization experiments"};
  app.require_subcommand(1);
  Options opt;

  struct Command {
    const char* name;
    const char* help;
    risopt::ExperimentKind kind;
  };
  const std::vector<Command> commands = {
      {"run", "Train or evaluate each method once per seed", risopt::ExperimentKind::kSingleRun},
      {"sweep-steps", "Repeat over steps_sweep values of T", risopt::ExperimentKind::kSweepSteps},
      {"sweep-size", "Repeat over size_sweep RIS side lengths", risopt::ExperimentKind::kSweepSize},
      {"compare", "Compare methods; adds aggregate and curve CSVs", risopt::ExperimentKind::kCompareMethods},
      {"action-space", "Write the action-space size table", risopt::ExperimentKind::kActionSpace},
      {"oracle-check", "Compare methods with the exhaustive optimum", risopt::ExperimentKind::kOracleCheck},
  };
  std::vector<CLI::App*> subs;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, opt);
    subs.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    risopt::ExperimentKind kind = risopt::ExperimentKind::kSingleRun;
    for (std::size_t i = 0; i < subs.size(); ++i)
      if (subs[i]->parsed()) kind = commands[i].kind;
    const risopt::ExperimentConfig cfg = resolve(opt, kind);
    const risopt::ExperimentResult result = risopt::run_experiment(cfg);
    for (const auto& file : result.files) std::cout << file.string() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "ris_sim: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "risopt/baselines.hpp"

namespace risopt {

// ---------------------------------------------------------------------------
// Action-space arithmetic

enum class ControlScheme { kElement, kColumn, kGroup10, kProposed };

std::string to_string(ControlScheme scheme);
ControlScheme scheme_from_string(const std::string& name);

/// Exact decimal action-space size for a side x side RIS:
///   element  2^(N bits), column 2^(side bits), group10 2^((N/10) bits),
///   proposed side + 1.
/// group10 requires N divisible by 10.
std::string action_space_size(ControlScheme scheme, int n_side, int resolution_bits);

/// log2 of the same size (exact for the power-of-two schemes).
double action_space_log2(ControlScheme scheme, int n_side, int resolution_bits);

// ---------------------------------------------------------------------------
// Experiments

/// Trailing mean over min(window, available) points.
std::vector<double> moving_average(std::span<const double> series, int window);

enum class Method {
  kFlat,
  kRandom,       // mean of the draw budget (single-draw expectation)
  kRandomBest,   // best of the draw budget
  kDdqn,
  kDdqnGa,
  kDqnColumn,
  kDdqnColumn,
  kPso,            // quantized
  kPsoContinuous,
};

std::string to_string(Method method);
Method method_from_string(const std::string& name);

enum class ExperimentKind {
  kSingleRun,
  kSweepSteps,
  kSweepSize,
  kCompareMethods,
  kActionSpace,
  kOracleCheck,
};

std::string to_string(ExperimentKind kind);
ExperimentKind kind_from_string(const std::string& name);

struct ExperimentConfig {
  std::string profile = "small";
  SystemConfig system;
  AgentConfig ddqn;
  AgentConfig ddqn_ga;
  PsoParams pso;

  ExperimentKind kind = ExperimentKind::kSingleRun;
  std::vector<std::uint64_t> seeds = {1};
  std::filesystem::path out_dir = "results";
  std::vector<Method> methods = {Method::kFlat, Method::kRandomBest, Method::kDdqn, Method::kDdqnGa};
  std::vector<int> steps_sweep = {1, 3, 5, 7};
  std::vector<int> size_sweep = {3, 4, 5};
  std::vector<int> resolution_sweep = {1, 2, 3};
  std::vector<ControlScheme> schemes = {ControlScheme::kElement, ControlScheme::kColumn,
                                        ControlScheme::kGroup10, ControlScheme::kProposed};
  int smoothing_window = 50;
  int final_window = 100;
  // Random-search draws; non-positive means T * I / 10.
  int random_draws = 0;
  bool record_wall_time = false;
  // Worker cap; 0 defers to RIS_SIM_THREADS, then the hardware.
  int threads = 0;

  /// Config built from a named profile with every other field at its default.
  static ExperimentConfig from_profile(const std::string& name);

  /// Throws std::invalid_argument with a "field: message" text.
  void validate() const;
};

struct SummaryRow {
  std::string method;
  std::uint64_t seed = 0;
  int n_side = 0;
  int resolution_bits = 0;
  int steps_per_episode = 0;
  double final_rate_bps = 0.0;
  double best_rate_bps = 0.0;
  int episodes = 0;
  double wall_seconds = 0.0;
};

struct RunOutcome {
  SummaryRow row;
  std::optional<TrainReport> report;
  std::vector<double> episode_rates;
  PhaseConfig best_phases;
};

/// One (method, seed) run on the seed's channel realization.
RunOutcome run_method(Method method, const SystemConfig& system, const AgentConfig& ddqn,
                      const AgentConfig& ddqn_ga, const PsoParams& pso, std::uint64_t seed,
                      int final_window = 100, int random_draws = 0);

struct ExperimentResult {
  std::vector<SummaryRow> rows;
  std::vector<std::filesystem::path> files;
};

/// Runs the configured experiment and writes its CSVs plus the resolved
/// config into `out_dir`. Files written by a failed run are removed.
ExperimentResult run_experiment(const ExperimentConfig& config);

// CSV headers.
inline constexpr const char* kTraceHeader = "episode,step,epsilon,action,reward,sum_rate_bps,loss";
inline constexpr const char* kSummaryHeader =
    "method,seed,n_side,resolution_bits,steps_per_episode,final_rate_bps,best_rate_bps,episodes,"
    "wall_seconds";
inline constexpr const char* kActionSpaceHeader = "scheme,n_side,resolution_bits,size";

std::string format_number(double value);
void write_trace_csv(const std::filesystem::path& path, const TrainReport& report);
void write_summary_csv(const std::filesystem::path& path, const std::vector<SummaryRow>& rows);

/// Worker count: min(requested or RIS_SIM_THREADS or hardware, jobs), >= 1.
int resolve_threads(int requested, std::size_t jobs);

// ---------------------------------------------------------------------------
// Config file (YAML)

/// Parses a config file. `profile_override` replaces the file's `profile`
/// key before the file's own values are applied.
ExperimentConfig load_experiment_config(const std::filesystem::path& path,
                                        const std::optional<std::string>& profile_override = {});
ExperimentConfig parse_experiment_config(const std::string& yaml_text,
                                         const std::optional<std::string>& profile_override = {});
/// Resolved config as YAML, readable by parse_experiment_config.
std::string dump_experiment_config(const ExperimentConfig& config);

}  // namespace risopt

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

#include "risopt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

namespace risopt {

std::string to_string(Method method) {
  switch (method) {
    case Method::kFlat: return "flat";
    case Method::kRandom: return "random";
    case Method::kRandomBest: return "random-best";
    case Method::kDdqn: return "ddqn";
    case Method::kDdqnGa: return "ddqn-ga";
    case Method::kDqnColumn: return "dqn-column";
    case Method::kDdqnColumn: return "ddqn-column";
    case Method::kPso: return "pso";
    case Method::kPsoContinuous: return "pso-continuous";
  }
  throw std::logic_error("unknown method");
}

Method method_from_string(const std::string& name) {
  for (Method m : {Method::kFlat, Method::kRandom, Method::kRandomBest, Method::kDdqn,
                   Method::kDdqnGa, Method::kDqnColumn, Method::kDdqnColumn, Method::kPso,
                   Method::kPsoContinuous})
    if (to_string(m) == name) return m;
  throw std::invalid_argument(
      "unknown method '" + name +
      "' (expected flat, random, random-best, ddqn, ddqn-ga, dqn-column, ddqn-column, pso or "
      "pso-continuous)");
}

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kSingleRun: return "single-run";
    case ExperimentKind::kSweepSteps: return "sweep-steps";
    case ExperimentKind::kSweepSize: return "sweep-size";
    case ExperimentKind::kCompareMethods: return "compare-methods";
    case ExperimentKind::kActionSpace: return "action-space";
    case ExperimentKind::kOracleCheck: return "oracle-check";
  }
  throw std::logic_error("unknown experiment kind");
}

ExperimentKind kind_from_string(const std::string& name) {
  for (ExperimentKind k : {ExperimentKind::kSingleRun, ExperimentKind::kSweepSteps,
                           ExperimentKind::kSweepSize, ExperimentKind::kCompareMethods,
                           ExperimentKind::kActionSpace, ExperimentKind::kOracleCheck})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown experiment kind '" + name + "'");
}

ExperimentConfig ExperimentConfig::from_profile(const std::string& name) {
  const Profile p = risopt::profile(name);
  ExperimentConfig cfg;
  cfg.profile = p.name;
  cfg.system = p.system;
  cfg.ddqn = p.ddqn;
  cfg.ddqn_ga = p.ddqn_ga;
  return cfg;
}

void ExperimentConfig::validate() const {
  auto wrap = [](const std::string& field, auto&& fn) {
    try {
      fn();
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(field + ": " + e.what());
    }
  };
  wrap("system", [&] { system.validate(); });
  wrap("ddqn", [&] { ddqn.validate(); });
  wrap("ddqn_ga", [&] { ddqn_ga.validate(); });
  wrap("pso", [&] { pso.validate(); });
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (seeds.empty()) fail("experiment.seeds: must not be empty");
  if (kind != ExperimentKind::kActionSpace && methods.empty())
    fail("experiment.methods: must not be empty");
  if (kind == ExperimentKind::kSweepSteps) {
    if (steps_sweep.empty()) fail("experiment.steps_sweep: must not be empty");
    for (int t : steps_sweep)
      if (t < 1) fail("experiment.steps_sweep: entries must be >= 1");
  }
  if (kind == ExperimentKind::kSweepSize || kind == ExperimentKind::kActionSpace) {
    if (size_sweep.empty()) fail("experiment.size_sweep: must not be empty");
    for (int s : size_sweep)
      if (s < 1) fail("experiment.size_sweep: entries must be >= 1");
  }
  if (kind == ExperimentKind::kActionSpace) {
    if (resolution_sweep.empty()) fail("experiment.resolution_sweep: must not be empty");
    for (int b : resolution_sweep)
      if (b < 1) fail("experiment.resolution_sweep: entries must be >= 1");
    if (schemes.empty()) fail("experiment.schemes: must not be empty");
  }
  if (kind == ExperimentKind::kOracleCheck &&
      system.n_elements * system.resolution_bits > kMaxExhaustiveBits)
    fail("system.n_elements: oracle-check needs N * resolution_bits <= " +
         std::to_string(kMaxExhaustiveBits));
  if (smoothing_window < 1) fail("experiment.smoothing_window: must be >= 1");
  if (final_window < 1) fail("experiment.final_window: must be >= 1");
  if (threads < 0) fail("experiment.threads: must be >= 0");
  if (out_dir.empty()) fail("experiment.out: must not be empty");
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  // Shortest text that parses back to the same double.
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void write_trace_csv(const std::filesystem::path& path, const TrainReport& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << kTraceHeader << '\n';
  for (const StepRecord& r : report.steps)
    out << r.episode << ',' << r.step << ',' << format_number(r.epsilon) << ',' << r.action << ','
        << format_number(r.reward) << ',' << format_number(r.sum_rate_bps) << ','
        << format_number(r.loss) << '\n';
}

void write_summary_csv(const std::filesystem::path& path, const std::vector<SummaryRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << kSummaryHeader << '\n';
  for (const SummaryRow& r : rows)
    out << r.method << ',' << r.seed << ',' << r.n_side << ',' << r.resolution_bits << ','
        << r.steps_per_episode << ',' << format_number(r.final_rate_bps) << ','
        << format_number(r.best_rate_bps) << ',' << r.episodes << ','
        << format_number(r.wall_seconds) << '\n';
}

int resolve_threads(int requested, std::size_t jobs) {
  long cap = requested;
  if (cap <= 0) {
    if (const char* env = std::getenv("RIS_SIM_THREADS")) cap = std::strtol(env, nullptr, 10);
  }
  if (cap <= 0) cap = static_cast<long>(std::thread::hardware_concurrency());
  if (cap <= 0) cap = 1;
  return static_cast<int>(std::max<long>(1, std::min<long>(cap, static_cast<long>(std::max<std::size_t>(jobs, 1)))));
}

RunOutcome run_method(Method method, const SystemConfig& system, const AgentConfig& ddqn,
                      const AgentConfig& ddqn_ga, const PsoParams& pso, std::uint64_t seed,
                      int final_window, int random_draws) {
  const ChannelPair ch = realize_channels(system, seed);
  RunOutcome out;
  out.row.method = to_string(method);
  out.row.seed = seed;
  out.row.n_side = system.side();
  out.row.resolution_bits = system.resolution_bits;
  out.row.steps_per_episode = ddqn.n_steps;
  const int draws = random_draws > 0 ? random_draws : std::max(1, ddqn.n_steps * ddqn.n_episodes / 10);

  auto from_report = [&](TrainReport report) {
    out.row.final_rate_bps = report.final_rate_mean(final_window);
    out.row.best_rate_bps = report.best_rate_bps;
    out.row.episodes = static_cast<int>(report.episodes.size());
    out.episode_rates.reserve(report.episodes.size());
    for (const auto& e : report.episodes) out.episode_rates.push_back(e.final_rate_bps);
    out.best_phases = report.best_phases;
    out.report = std::move(report);
  };

  switch (method) {
    case Method::kFlat: {
      Rng rng = make_rng(seed, stream::kBaseline);
      out.best_phases = baseline_static(StaticKind::kFlat, system, rng);
      out.row.final_rate_bps = out.row.best_rate_bps = sum_rate(out.best_phases, ch, system).rate_bps;
      break;
    }
    case Method::kRandom:
    case Method::kRandomBest: {
      Rng rng = make_rng(seed, stream::kBaseline);
      const RandomSearchResult r = random_search(ch, system, draws, rng);
      out.best_phases = r.best;
      out.row.best_rate_bps = r.best_rate_bps;
      out.row.final_rate_bps = method == Method::kRandom ? r.mean_rate_bps : r.best_rate_bps;
      out.row.episodes = draws;
      break;
    }
    case Method::kDdqn: {
      Rng rng = make_rng(seed, stream::kAgent);
      from_report(ddqn_train(ddqn, system, ch, rng));
      break;
    }
    case Method::kDdqnGa: {
      Rng rng = make_rng(seed, stream::kAgent);
      out.row.steps_per_episode = ddqn_ga.n_steps;
      from_report(ddqn_ga_train(ddqn_ga, system, ch, rng));
      break;
    }
    case Method::kDqnColumn:
    case Method::kDdqnColumn: {
      Rng rng = make_rng(seed, stream::kAgent);
      const auto variant = method == Method::kDqnColumn ? EnumVariant::kDqn : EnumVariant::kDdqn;
      // Single-step episodes; the budget matches the environment steps of the
      // accumulated-action agents.
      out.row.steps_per_episode = 1;
      from_report(columnwise_enum_train(variant, ddqn, system, ch, ddqn.n_episodes * ddqn.n_steps, rng));
      break;
    }
    case Method::kPso:
    case Method::kPsoContinuous: {
      Rng rng = make_rng(seed, stream::kBaseline);
      const PsoResult r = pso_optimize(ch, system, pso, rng);
      const double rate = method == Method::kPso ? r.quantized_rate_bps : r.continuous_rate_bps;
      out.row.final_rate_bps = out.row.best_rate_bps = rate;
      out.row.episodes = pso.iterations;
      out.best_phases = r.quantized;
      out.episode_rates = r.best_trace_bps;
      break;
    }
  }
  return out;
}

namespace {

struct Job {
  Method method;
  SystemConfig system;
  AgentConfig ddqn;
  AgentConfig ddqn_ga;
  std::uint64_t seed;
  std::string suffix;
};

class OutputTracker {
 public:
  explicit OutputTracker(std::filesystem::path dir) : dir_(std::move(dir)) {
    created_dir_ = !std::filesystem::exists(dir_);
    std::filesystem::create_directories(dir_);
  }

  std::filesystem::path claim(const std::string& name) {
    std::lock_guard lock(mu_);
    files_.push_back(dir_ / name);
    return files_.back();
  }

  void rollback() {
    std::error_code ec;
    for (const auto& f : files_) std::filesystem::remove(f, ec);
    if (created_dir_ && std::filesystem::is_empty(dir_, ec)) std::filesystem::remove(dir_, ec);
  }

  const std::vector<std::filesystem::path>& files() const { return files_; }

 private:
  std::filesystem::path dir_;
  bool created_dir_ = false;
  std::mutex mu_;
  std::vector<std::filesystem::path> files_;
};

std::vector<RunOutcome> run_jobs(const std::vector<Job>& jobs, const ExperimentConfig& config,
                                 OutputTracker& tracker) {
  std::vector<RunOutcome> results(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;

  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      {
        std::lock_guard lock(error_mu);
        if (error) return;
      }
      try {
        const Job& job = jobs[i];
        const auto start = std::chrono::steady_clock::now();
        RunOutcome r = run_method(job.method, job.system, job.ddqn, job.ddqn_ga, config.pso,
                                  job.seed, config.final_window, config.random_draws);
        if (config.record_wall_time)
          r.row.wall_seconds =
              std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (r.report) {
          const std::string name =
              "trace_" + to_string(job.method) + "_s" + std::to_string(job.seed) + job.suffix + ".csv";
          write_trace_csv(tracker.claim(name), *r.report);
          r.report.reset();
        }
        results[i] = std::move(r);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };

  const int n_threads = resolve_threads(config.threads, jobs.size());
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return results;
}

double sample_std(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

void write_aggregate(const std::filesystem::path& path, const std::vector<SummaryRow>& rows) {
  // Group key in order of first appearance.
  std::vector<std::string> order;
  std::map<std::string, std::vector<const SummaryRow*>> groups;
  for (const auto& r : rows) {
    const std::string key = r.method + ',' + std::to_string(r.n_side) + ',' +
                            std::to_string(r.resolution_bits) + ',' + std::to_string(r.steps_per_episode);
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(&r);
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "method,n_side,resolution_bits,steps_per_episode,runs,mean_final_rate_bps,"
         "std_final_rate_bps,mean_best_rate_bps,std_best_rate_bps\n";
  for (const auto& key : order) {
    const auto& g = groups[key];
    std::vector<double> finals, bests;
    for (const auto* r : g) {
      finals.push_back(r->final_rate_bps);
      bests.push_back(r->best_rate_bps);
    }
    double mf = 0.0, mb = 0.0;
    for (double x : finals) mf += x;
    for (double x : bests) mb += x;
    mf /= static_cast<double>(finals.size());
    mb /= static_cast<double>(bests.size());
    out << key << ',' << g.size() << ',' << format_number(mf) << ','
        << format_number(sample_std(finals, mf)) << ',' << format_number(mb) << ','
        << format_number(sample_std(bests, mb)) << '\n';
  }
}

void write_curves(const std::filesystem::path& path, const std::vector<Job>& jobs,
                  const std::vector<RunOutcome>& results, int window) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "method,episode,mean_rate_bps,smoothed_rate_bps\n";
  std::vector<Method> order;
  for (const auto& j : jobs)
    if (std::find(order.begin(), order.end(), j.method) == order.end()) order.push_back(j.method);
  for (Method m : order) {
    std::vector<double> mean;
    int runs = 0;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      if (jobs[i].method != m || results[i].episode_rates.empty()) continue;
      const auto& rates = results[i].episode_rates;
      if (mean.empty()) mean.assign(rates.size(), 0.0);
      for (std::size_t e = 0; e < std::min(mean.size(), rates.size()); ++e) mean[e] += rates[e];
      ++runs;
    }
    if (runs == 0) continue;
    for (double& x : mean) x /= runs;
    const auto smooth = moving_average(mean, window);
    for (std::size_t e = 0; e < mean.size(); ++e)
      out << to_string(m) << ',' << e + 1 << ',' << format_number(mean[e]) << ','
          << format_number(smooth[e]) << '\n';
  }
}

void write_action_space(const std::filesystem::path& path, const ExperimentConfig& config) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << kActionSpaceHeader << '\n';
  for (ControlScheme s : config.schemes)
    for (int side : config.size_sweep)
      for (int bits : config.resolution_sweep) {
        if (s == ControlScheme::kGroup10 && (side * side) % 10 != 0) continue;
        out << to_string(s) << ',' << side << ',' << bits << ',' << action_space_size(s, side, bits)
            << '\n';
      }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  OutputTracker tracker(config.out_dir);
  ExperimentResult result;
  try {
    {
      std::ofstream echo(tracker.claim("effective_config.yaml"));
      echo << dump_experiment_config(config);
    }

    if (config.kind == ExperimentKind::kActionSpace) {
      write_action_space(tracker.claim("action_space.csv"), config);
      result.files = tracker.files();
      return result;
    }

    std::vector<Job> jobs;
    auto add_jobs = [&](const SystemConfig& sys, const AgentConfig& ddqn, const AgentConfig& ga,
                        const std::string& suffix) {
      for (Method m : config.methods)
        for (std::uint64_t seed : config.seeds) jobs.push_back({m, sys, ddqn, ga, seed, suffix});
    };
    switch (config.kind) {
      case ExperimentKind::kSweepSteps:
        for (int t : config.steps_sweep) {
          AgentConfig d = config.ddqn, g = config.ddqn_ga;
          d.n_steps = g.n_steps = t;
          add_jobs(config.system, d, g, "_T" + std::to_string(t));
        }
        break;
      case ExperimentKind::kSweepSize:
        for (int side : config.size_sweep) {
          SystemConfig sys = config.system;
          sys.n_elements = side * side;
          add_jobs(sys, config.ddqn, config.ddqn_ga, "_side" + std::to_string(side));
        }
        break;
      default:
        add_jobs(config.system, config.ddqn, config.ddqn_ga, "");
        break;
    }

    std::vector<RunOutcome> outcomes = run_jobs(jobs, config, tracker);
    for (const auto& o : outcomes) result.rows.push_back(o.row);
    write_summary_csv(tracker.claim("summary.csv"), result.rows);

    if (config.kind != ExperimentKind::kSingleRun)
      write_aggregate(tracker.claim("aggregate.csv"), result.rows);
    if (config.kind == ExperimentKind::kCompareMethods)
      write_curves(tracker.claim("curves.csv"), jobs, outcomes, config.smoothing_window);
    if (config.kind == ExperimentKind::kOracleCheck) {
      std::ofstream out(tracker.claim("oracle.csv"));
      out << "method,seed,oracle_rate_bps,best_rate_bps,final_rate_bps,found_optimum\n";
      std::map<std::uint64_t, double> oracle;
      for (std::uint64_t seed : config.seeds)
        oracle[seed] = exhaustive_oracle(realize_channels(config.system, seed), config.system).best_rate_bps;
      for (const auto& r : result.rows) {
        const double opt = oracle[r.seed];
        out << r.method << ',' << r.seed << ',' << format_number(opt) << ','
            << format_number(r.best_rate_bps) << ',' << format_number(r.final_rate_bps) << ','
            << (r.best_rate_bps >= opt * (1.0 - 1e-12) ? 1 : 0) << '\n';
      }
    }
  } catch (...) {
    tracker.rollback();
    throw;
  }
  result.files = tracker.files();
  return result;
}

}  // namespace risopt

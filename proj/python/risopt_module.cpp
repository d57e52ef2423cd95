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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "risopt/harness.hpp"

namespace py = pybind11;
using namespace risopt;

namespace {

Rng rng_for(std::uint64_t seed, std::uint64_t stream_id) { return make_rng(seed, stream_id); }

}  // namespace

PYBIND11_MODULE(_risopt, m) {
  m.doc() = "RIS discrete phase-shift optimization core";

  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::enum_<PathLossKind>(m, "PathLossKind")
      .value("FREE_SPACE", PathLossKind::kFreeSpace)
      .value("ITU_INDOOR", PathLossKind::kItuIndoor);
  py::enum_<PrecoderNorm>(m, "PrecoderNorm")
      .value("COLUMN", PrecoderNorm::kColumn)
      .value("MATRIX", PrecoderNorm::kMatrix);

  py::class_<PathLossModel>(m, "PathLossModel")
      .def(py::init<>())
      .def_readwrite("kind", &PathLossModel::kind)
      .def_readwrite("distance_coefficient", &PathLossModel::distance_coefficient)
      .def_readwrite("floor_loss_db", &PathLossModel::floor_loss_db)
      .def("loss_db", &PathLossModel::loss_db, py::arg("distance_m"), py::arg("freq_hz"));

  py::class_<Room>(m, "Room")
      .def(py::init<>())
      .def_readwrite("length", &Room::length)
      .def_readwrite("width", &Room::width)
      .def_readwrite("height", &Room::height);

  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init<>())
      .def_readwrite("n_elements", &SystemConfig::n_elements)
      .def_readwrite("n_antennas", &SystemConfig::n_antennas)
      .def_readwrite("n_users", &SystemConfig::n_users)
      .def_readwrite("freq_hz", &SystemConfig::freq_hz)
      .def_readwrite("bandwidth_hz", &SystemConfig::bandwidth_hz)
      .def_readwrite("p_max_watt", &SystemConfig::p_max_watt)
      .def_readwrite("noise_watt", &SystemConfig::noise_watt)
      .def_readwrite("rician_h", &SystemConfig::rician_h)
      .def_readwrite("rician_g", &SystemConfig::rician_g)
      .def_readwrite("resolution_bits", &SystemConfig::resolution_bits)
      .def_readwrite("amplitude", &SystemConfig::amplitude)
      .def_readwrite("room", &SystemConfig::room)
      .def_readwrite("max_node_height", &SystemConfig::max_node_height)
      .def_readwrite("fbs_antenna_spacing", &SystemConfig::fbs_antenna_spacing)
      .def_readwrite("ris_cell_spacing", &SystemConfig::ris_cell_spacing)
      .def_readwrite("path_loss", &SystemConfig::path_loss)
      .def_readwrite("precoder_norm", &SystemConfig::precoder_norm)
      .def_readwrite("kappa", &SystemConfig::kappa)
      .def_property_readonly("side", &SystemConfig::side)
      .def_property_readonly("levels", &SystemConfig::levels)
      .def("validate", &SystemConfig::validate);

  py::class_<EpsilonSchedule>(m, "EpsilonSchedule")
      .def(py::init<>())
      .def_readwrite("eps_init", &EpsilonSchedule::eps_init)
      .def_readwrite("eps_min", &EpsilonSchedule::eps_min)
      .def_readwrite("eps_decay", &EpsilonSchedule::eps_decay)
      .def("value", &EpsilonSchedule::value, py::arg("global_step"));

  py::class_<AgentConfig>(m, "AgentConfig")
      .def(py::init<>())
      .def_static("ddqn_defaults", &AgentConfig::ddqn_defaults)
      .def_static("ddqn_ga_defaults", &AgentConfig::ddqn_ga_defaults)
      .def_readwrite("gamma", &AgentConfig::gamma)
      .def_readwrite("alpha", &AgentConfig::alpha)
      .def_readwrite("epsilon", &AgentConfig::epsilon)
      .def_readwrite("n_replay", &AgentConfig::n_replay)
      .def_readwrite("n_batch", &AgentConfig::n_batch)
      .def_readwrite("n_freq", &AgentConfig::n_freq)
      .def_readwrite("n_episodes", &AgentConfig::n_episodes)
      .def_readwrite("n_steps", &AgentConfig::n_steps)
      .def_readwrite("omega", &AgentConfig::omega)
      .def_readwrite("ga_iterations", &AgentConfig::ga_iterations)
      .def_readwrite("hidden", &AgentConfig::hidden)
      .def_readwrite("reward_in_bps", &AgentConfig::reward_in_bps)
      .def("validate", &AgentConfig::validate);

  py::class_<Profile>(m, "Profile")
      .def_readonly("name", &Profile::name)
      .def_readonly("system", &Profile::system)
      .def_readonly("ddqn", &Profile::ddqn)
      .def_readonly("ddqn_ga", &Profile::ddqn_ga);
  m.def("profile", &profile, py::arg("name"));

  py::class_<ChannelPair>(m, "ChannelPair")
      .def_readonly("g", &ChannelPair::g)
      .def_readonly("h", &ChannelPair::h)
      .def_readonly("g_los", &ChannelPair::g_los)
      .def_readonly("h_los", &ChannelPair::h_los)
      .def_readonly("g_nlos", &ChannelPair::g_nlos)
      .def_readonly("h_nlos", &ChannelPair::h_nlos);
  m.def(
      "realize_channels",
      [](const SystemConfig& cfg, std::uint64_t seed) { return realize_channels(cfg, seed); },
      py::arg("config"), py::arg("seed"));

  py::class_<PhaseConfig>(m, "PhaseConfig")
      .def(py::init([](std::vector<int> indices, int bits) { return PhaseConfig{std::move(indices), bits}; }),
           py::arg("indices"), py::arg("resolution_bits") = 1)
      .def_static("zeros", &PhaseConfig::zeros, py::arg("n_elements"), py::arg("resolution_bits") = 1)
      .def_readwrite("indices", &PhaseConfig::indices)
      .def_readwrite("resolution_bits", &PhaseConfig::resolution_bits)
      .def("phase", &PhaseConfig::phase)
      .def("advance", &PhaseConfig::advance)
      .def("__len__", &PhaseConfig::size)
      .def("__eq__", [](const PhaseConfig& a, const PhaseConfig& b) { return a == b; })
      .def("__repr__", [](const PhaseConfig& p) {
        std::string s = "PhaseConfig([";
        for (int i = 0; i < p.size(); ++i) s += (i ? ", " : "") + std::to_string(p.indices[i]);
        return s + "], resolution_bits=" + std::to_string(p.resolution_bits) + ")";
      });

  py::class_<RateBreakdown>(m, "RateBreakdown")
      .def_readonly("sinr", &RateBreakdown::sinr)
      .def_readonly("spectral_bps_hz", &RateBreakdown::spectral_bps_hz)
      .def_readonly("rate_bps", &RateBreakdown::rate_bps);

  m.def("phase_set", &phase_set, py::arg("resolution_bits"));
  m.def("phases_to_beamforming", &phases_to_beamforming, py::arg("phases"), py::arg("beta") = 1.0);
  m.def("effective_channel", &effective_channel, py::arg("h"), py::arg("phi"), py::arg("g"));
  m.def("rzf_precoder", &rzf_precoder, py::arg("h_ris"), py::arg("kappa"),
        py::arg("norm") = PrecoderNorm::kColumn);
  m.def("sum_rate",
        py::overload_cast<const PhaseConfig&, const ChannelPair&, const SystemConfig&>(&sum_rate),
        py::arg("phases"), py::arg("channels"), py::arg("config"));
  m.def("sum_rate_continuous",
        [](const std::vector<double>& theta, const ChannelPair& ch, const SystemConfig& cfg) {
          return sum_rate(continuous_beamforming(theta, cfg.amplitude), ch, cfg);
        },
        py::arg("theta"), py::arg("channels"), py::arg("config"));

  py::class_<GreedyOutcome>(m, "GreedyOutcome")
      .def_readonly("reward", &GreedyOutcome::reward)
      .def_readonly("trials", &GreedyOutcome::trials);
  m.def(
      "greedy_refine",
      [](PhaseConfig config, int column, int side, double baseline, int iterations,
         const std::function<double(const PhaseConfig&)>& objective) {
        GreedyOutcome out = greedy_refine(config, column, side, baseline, iterations, objective);
        return py::make_tuple(config, out);
      },
      py::arg("config"), py::arg("column"), py::arg("side"), py::arg("baseline_reward"),
      py::arg("iterations"), py::arg("objective"));

  py::class_<RisEnv::Options>(m, "EnvOptions")
      .def(py::init<>())
      .def_readwrite("n_steps", &RisEnv::Options::n_steps)
      .def_readwrite("omega", &RisEnv::Options::omega)
      .def_readwrite("with_refined", &RisEnv::Options::with_refined)
      .def_readwrite("greedy_iterations", &RisEnv::Options::greedy_iterations)
      .def_readwrite("reward_in_bps", &RisEnv::Options::reward_in_bps);
  py::class_<StepResult>(m, "StepResult")
      .def_readonly("state", &StepResult::state)
      .def_readonly("reward", &StepResult::reward)
      .def_readonly("done", &StepResult::done)
      .def_readonly("pre_refine_reward", &StepResult::pre_refine_reward)
      .def_readonly("rate_bps", &StepResult::rate_bps);
  // The env keeps a reference to the channel, so the Python object keeps it alive.
  py::class_<RisEnv>(m, "RisEnv")
      .def(py::init<const ChannelPair&, const SystemConfig&, RisEnv::Options>(), py::arg("channels"),
           py::arg("config"), py::arg("options"), py::keep_alive<1, 2>())
      .def("reset", &RisEnv::reset)
      .def("step", &RisEnv::step, py::arg("action"))
      .def_property_readonly("action_count", &RisEnv::action_count)
      .def_property_readonly("state_size", &RisEnv::state_size)
      .def_property_readonly("phases", &RisEnv::phases)
      .def_property_readonly("refined", &RisEnv::refined)
      .def_property_readonly("best_rate_bps", &RisEnv::best_rate_bps)
      .def_property_readonly("best_phases", &RisEnv::best_phases);

  py::class_<StepRecord>(m, "StepRecord")
      .def_readonly("episode", &StepRecord::episode)
      .def_readonly("step", &StepRecord::step)
      .def_readonly("epsilon", &StepRecord::epsilon)
      .def_readonly("action", &StepRecord::action)
      .def_readonly("reward", &StepRecord::reward)
      .def_readonly("sum_rate_bps", &StepRecord::sum_rate_bps)
      .def_readonly("loss", &StepRecord::loss);
  py::class_<TrainReport>(m, "TrainReport")
      .def_readonly("steps", &TrainReport::steps)
      .def_property_readonly("episode_rates_bps",
                             [](const TrainReport& r) {
                               std::vector<double> out;
                               for (const auto& e : r.episodes) out.push_back(e.final_rate_bps);
                               return out;
                             })
      .def_readonly("best_phases", &TrainReport::best_phases)
      .def_readonly("best_rate_bps", &TrainReport::best_rate_bps)
      .def("final_rate_mean", &TrainReport::final_rate_mean, py::arg("window") = 100);

  m.def(
      "ddqn_train",
      [](const AgentConfig& cfg, const SystemConfig& sys, const ChannelPair& ch, std::uint64_t seed) {
        Rng rng = rng_for(seed, stream::kAgent);
        py::gil_scoped_release release;
        return ddqn_train(cfg, sys, ch, rng);
      },
      py::arg("agent"), py::arg("config"), py::arg("channels"), py::arg("seed"));
  m.def(
      "ddqn_ga_train",
      [](const AgentConfig& cfg, const SystemConfig& sys, const ChannelPair& ch, std::uint64_t seed) {
        Rng rng = rng_for(seed, stream::kAgent);
        py::gil_scoped_release release;
        return ddqn_ga_train(cfg, sys, ch, rng);
      },
      py::arg("agent"), py::arg("config"), py::arg("channels"), py::arg("seed"));

  py::class_<OracleResult>(m, "OracleResult")
      .def_readonly("best", &OracleResult::best)
      .def_readonly("best_rate_bps", &OracleResult::best_rate_bps)
      .def_readonly("evaluations", &OracleResult::evaluations);
  m.def("exhaustive_oracle", &exhaustive_oracle, py::arg("channels"), py::arg("config"));

  py::class_<PsoParams>(m, "PsoParams")
      .def(py::init<>())
      .def_readwrite("swarm_size", &PsoParams::swarm_size)
      .def_readwrite("iterations", &PsoParams::iterations)
      .def_readwrite("inertia", &PsoParams::inertia)
      .def_readwrite("cognitive", &PsoParams::cognitive)
      .def_readwrite("social", &PsoParams::social);
  py::class_<PsoResult>(m, "PsoResult")
      .def_readonly("continuous", &PsoResult::continuous)
      .def_readonly("quantized", &PsoResult::quantized)
      .def_readonly("continuous_rate_bps", &PsoResult::continuous_rate_bps)
      .def_readonly("quantized_rate_bps", &PsoResult::quantized_rate_bps)
      .def_readonly("best_trace_bps", &PsoResult::best_trace_bps);
  m.def(
      "pso_optimize",
      [](const ChannelPair& ch, const SystemConfig& cfg, const PsoParams& pso, std::uint64_t seed) {
        Rng rng = rng_for(seed, stream::kBaseline);
        return pso_optimize(ch, cfg, pso, rng);
      },
      py::arg("channels"), py::arg("config"), py::arg("pso") = PsoParams{}, py::arg("seed") = 0);
  m.def(
      "quantize_phases",
      [](const std::vector<double>& theta, int bits) { return quantize_phases(theta, bits); },
      py::arg("theta"), py::arg("resolution_bits"));
  m.def("decode_column_action", &decode_column_action, py::arg("action"), py::arg("side"),
        py::arg("resolution_bits"));

  m.def(
      "action_space_size",
      [](const std::string& scheme, int n_side, int bits) {
        const std::string digits = action_space_size(scheme_from_string(scheme), n_side, bits);
        return py::int_(py::str(digits));
      },
      py::arg("scheme"), py::arg("n_side"), py::arg("resolution_bits"));
  m.def(
      "moving_average",
      [](const std::vector<double>& series, int window) { return moving_average(series, window); },
      py::arg("series"), py::arg("window"));

  m.def(
      "run_experiment",
      [](const std::string& yaml_text, const std::optional<std::string>& profile) {
        ExperimentConfig cfg = parse_experiment_config(yaml_text, profile);
        ExperimentResult result;
        {
          py::gil_scoped_release release;
          result = run_experiment(cfg);
        }
        std::vector<std::string> files;
        for (const auto& f : result.files) files.push_back(f.string());
        return files;
      },
      py::arg("config_yaml"), py::arg("profile") = py::none(),
      "Runs an experiment described by YAML text and returns the written files.");
}

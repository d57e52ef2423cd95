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

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

#include "risopt/harness.hpp"

namespace risopt {
namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw std::invalid_argument(field + ": " + what);
}

void reject_unknown(const YAML::Node& node, const std::string& section,
                    const std::set<std::string>& allowed) {
  if (!node.IsMap()) field_error(section, "expected a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) field_error(section.empty() ? key : section + "." + key, "unknown key");
  }
}

template <typename T>
void read(const YAML::Node& node, const char* key, const std::string& section, T& out) {
  const YAML::Node v = node[key];
  if (!v) return;
  try {
    out = v.as<T>();
  } catch (const YAML::Exception&) {
    field_error(section + "." + key, "cannot parse value '" + YAML::Dump(v) + "'");
  }
}

template <typename T>
void read_optional(const YAML::Node& node, const char* key, const std::string& section,
                   std::optional<T>& out) {
  const YAML::Node v = node[key];
  if (!v) return;
  if (v.IsNull()) {
    out.reset();
    return;
  }
  T value{};
  read(node, key, section, value);
  out = value;
}

void read_system(const YAML::Node& node, SystemConfig& s) {
  const std::string sec = "system";
  reject_unknown(node, sec,
                 {"n_elements", "n_antennas", "n_users", "freq_hz", "bandwidth_hz", "p_max_watt",
                  "p_max_dbm", "noise_watt", "noise_dbm", "rician_h", "rician_g", "resolution_bits",
                  "amplitude", "room", "max_node_height", "fbs_antenna_spacing", "ris_cell_spacing",
                  "path_loss", "precoder_norm", "kappa"});
  read(node, "n_elements", sec, s.n_elements);
  read(node, "n_antennas", sec, s.n_antennas);
  read(node, "n_users", sec, s.n_users);
  read(node, "freq_hz", sec, s.freq_hz);
  read(node, "bandwidth_hz", sec, s.bandwidth_hz);
  read(node, "p_max_watt", sec, s.p_max_watt);
  read(node, "noise_watt", sec, s.noise_watt);
  if (node["p_max_dbm"]) {
    double dbm = 0;
    read(node, "p_max_dbm", sec, dbm);
    s.p_max_watt = dbm_to_watt(dbm);
  }
  if (node["noise_dbm"]) {
    double dbm = 0;
    read(node, "noise_dbm", sec, dbm);
    s.noise_watt = dbm_to_watt(dbm);
  }
  read(node, "rician_h", sec, s.rician_h);
  read(node, "rician_g", sec, s.rician_g);
  read(node, "resolution_bits", sec, s.resolution_bits);
  read(node, "amplitude", sec, s.amplitude);
  if (const auto room = node["room"]) {
    reject_unknown(room, "system.room", {"length", "width", "height"});
    read(room, "length", "system.room", s.room.length);
    read(room, "width", "system.room", s.room.width);
    read(room, "height", "system.room", s.room.height);
  }
  read(node, "max_node_height", sec, s.max_node_height);
  read_optional(node, "fbs_antenna_spacing", sec, s.fbs_antenna_spacing);
  read_optional(node, "ris_cell_spacing", sec, s.ris_cell_spacing);
  read_optional(node, "kappa", sec, s.kappa);
  if (const auto pl = node["path_loss"]) {
    reject_unknown(pl, "system.path_loss", {"model", "distance_coefficient", "floor_loss_db"});
    std::string model = s.path_loss.kind == PathLossKind::kFreeSpace ? "free-space" : "itu-indoor";
    read(pl, "model", "system.path_loss", model);
    if (model == "free-space")
      s.path_loss.kind = PathLossKind::kFreeSpace;
    else if (model == "itu-indoor")
      s.path_loss.kind = PathLossKind::kItuIndoor;
    else
      field_error("system.path_loss.model", "expected free-space or itu-indoor, got '" + model + "'");
    read(pl, "distance_coefficient", "system.path_loss", s.path_loss.distance_coefficient);
    read(pl, "floor_loss_db", "system.path_loss", s.path_loss.floor_loss_db);
  }
  if (node["precoder_norm"]) {
    std::string norm;
    read(node, "precoder_norm", sec, norm);
    if (norm == "column")
      s.precoder_norm = PrecoderNorm::kColumn;
    else if (norm == "matrix")
      s.precoder_norm = PrecoderNorm::kMatrix;
    else
      field_error("system.precoder_norm", "expected column or matrix, got '" + norm + "'");
  }
}

const std::set<std::string> kAgentKeys = {"gamma",    "alpha",     "eps_init",      "eps_min",
                                          "eps_decay", "n_replay", "n_batch",       "n_freq",
                                          "n_episodes", "n_steps", "omega",         "ga_iterations",
                                          "hidden",   "reward_in_bps"};

void read_agent(const YAML::Node& node, const std::string& sec, AgentConfig& a) {
  reject_unknown(node, sec, kAgentKeys);
  read(node, "gamma", sec, a.gamma);
  read(node, "alpha", sec, a.alpha);
  read(node, "eps_init", sec, a.epsilon.eps_init);
  read(node, "eps_min", sec, a.epsilon.eps_min);
  read(node, "eps_decay", sec, a.epsilon.eps_decay);
  read(node, "n_replay", sec, a.n_replay);
  read(node, "n_batch", sec, a.n_batch);
  read(node, "n_freq", sec, a.n_freq);
  read(node, "n_episodes", sec, a.n_episodes);
  read(node, "n_steps", sec, a.n_steps);
  read(node, "omega", sec, a.omega);
  read(node, "ga_iterations", sec, a.ga_iterations);
  read(node, "hidden", sec, a.hidden);
  read(node, "reward_in_bps", sec, a.reward_in_bps);
}

void read_pso(const YAML::Node& node, PsoParams& p) {
  const std::string sec = "pso";
  reject_unknown(node, sec, {"swarm_size", "iterations", "inertia", "cognitive", "social"});
  read(node, "swarm_size", sec, p.swarm_size);
  read(node, "iterations", sec, p.iterations);
  read(node, "inertia", sec, p.inertia);
  read(node, "cognitive", sec, p.cognitive);
  read(node, "social", sec, p.social);
}

void read_experiment(const YAML::Node& node, ExperimentConfig& c) {
  const std::string sec = "experiment";
  reject_unknown(node, sec,
                 {"kind", "seeds", "out", "methods", "steps_sweep", "size_sweep", "resolution_sweep",
                  "schemes", "smoothing_window", "final_window", "random_draws", "record_wall_time",
                  "threads"});
  try {
    if (node["kind"]) c.kind = kind_from_string(node["kind"].as<std::string>());
  } catch (const std::invalid_argument& e) {
    field_error("experiment.kind", e.what());
  }
  read(node, "seeds", sec, c.seeds);
  if (node["out"]) {
    std::string out;
    read(node, "out", sec, out);
    c.out_dir = out;
  }
  if (node["methods"]) {
    std::vector<std::string> names;
    read(node, "methods", sec, names);
    c.methods.clear();
    try {
      for (const auto& n : names) c.methods.push_back(method_from_string(n));
    } catch (const std::invalid_argument& e) {
      field_error("experiment.methods", e.what());
    }
  }
  read(node, "steps_sweep", sec, c.steps_sweep);
  read(node, "size_sweep", sec, c.size_sweep);
  read(node, "resolution_sweep", sec, c.resolution_sweep);
  if (node["schemes"]) {
    std::vector<std::string> names;
    read(node, "schemes", sec, names);
    c.schemes.clear();
    try {
      for (const auto& n : names) c.schemes.push_back(scheme_from_string(n));
    } catch (const std::invalid_argument& e) {
      field_error("experiment.schemes", e.what());
    }
  }
  read(node, "smoothing_window", sec, c.smoothing_window);
  read(node, "final_window", sec, c.final_window);
  read(node, "random_draws", sec, c.random_draws);
  read(node, "record_wall_time", sec, c.record_wall_time);
  read(node, "threads", sec, c.threads);
}

void emit_agent(YAML::Emitter& e, const AgentConfig& a) {
  e << YAML::BeginMap;
  e << YAML::Key << "gamma" << YAML::Value << a.gamma;
  e << YAML::Key << "alpha" << YAML::Value << a.alpha;
  e << YAML::Key << "eps_init" << YAML::Value << a.epsilon.eps_init;
  e << YAML::Key << "eps_min" << YAML::Value << a.epsilon.eps_min;
  e << YAML::Key << "eps_decay" << YAML::Value << a.epsilon.eps_decay;
  e << YAML::Key << "n_replay" << YAML::Value << a.n_replay;
  e << YAML::Key << "n_batch" << YAML::Value << a.n_batch;
  e << YAML::Key << "n_freq" << YAML::Value << a.n_freq;
  e << YAML::Key << "n_episodes" << YAML::Value << a.n_episodes;
  e << YAML::Key << "n_steps" << YAML::Value << a.n_steps;
  e << YAML::Key << "omega" << YAML::Value << a.omega;
  e << YAML::Key << "ga_iterations" << YAML::Value << a.ga_iterations;
  e << YAML::Key << "hidden" << YAML::Value << YAML::Flow << a.hidden;
  e << YAML::Key << "reward_in_bps" << YAML::Value << a.reward_in_bps;
  e << YAML::EndMap;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& yaml_text,
                                         const std::optional<std::string>& profile_override) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  reject_unknown(root, "", {"profile", "system", "agent", "ddqn", "ddqn_ga", "pso", "experiment"});

  std::string profile_name = "small";
  read(root, "profile", "config", profile_name);
  if (profile_override) profile_name = *profile_override;
  ExperimentConfig cfg;
  try {
    cfg = ExperimentConfig::from_profile(profile_name);
  } catch (const std::invalid_argument& e) {
    field_error("profile", e.what());
  }

  if (root["system"]) read_system(root["system"], cfg.system);
  if (root["agent"]) {
    read_agent(root["agent"], "agent", cfg.ddqn);
    read_agent(root["agent"], "agent", cfg.ddqn_ga);
  }
  if (root["ddqn"]) read_agent(root["ddqn"], "ddqn", cfg.ddqn);
  if (root["ddqn_ga"]) read_agent(root["ddqn_ga"], "ddqn_ga", cfg.ddqn_ga);
  if (root["pso"]) read_pso(root["pso"], cfg.pso);
  if (root["experiment"]) read_experiment(root["experiment"], cfg);
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path,
                                        const std::optional<std::string>& profile_override) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str(), profile_override);
}

std::string dump_experiment_config(const ExperimentConfig& c) {
  YAML::Emitter e;
  e.SetDoublePrecision(17);
  e << YAML::BeginMap;
  e << YAML::Key << "profile" << YAML::Value << c.profile;

  const SystemConfig& s = c.system;
  e << YAML::Key << "system" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "n_elements" << YAML::Value << s.n_elements;
  e << YAML::Key << "n_antennas" << YAML::Value << s.n_antennas;
  e << YAML::Key << "n_users" << YAML::Value << s.n_users;
  e << YAML::Key << "freq_hz" << YAML::Value << s.freq_hz;
  e << YAML::Key << "bandwidth_hz" << YAML::Value << s.bandwidth_hz;
  e << YAML::Key << "p_max_watt" << YAML::Value << s.p_max_watt;
  e << YAML::Key << "noise_watt" << YAML::Value << s.noise_watt;
  e << YAML::Key << "rician_h" << YAML::Value << s.rician_h;
  e << YAML::Key << "rician_g" << YAML::Value << s.rician_g;
  e << YAML::Key << "resolution_bits" << YAML::Value << s.resolution_bits;
  e << YAML::Key << "amplitude" << YAML::Value << s.amplitude;
  e << YAML::Key << "room" << YAML::Value << YAML::Flow << YAML::BeginMap;
  e << YAML::Key << "length" << YAML::Value << s.room.length;
  e << YAML::Key << "width" << YAML::Value << s.room.width;
  e << YAML::Key << "height" << YAML::Value << s.room.height;
  e << YAML::EndMap;
  e << YAML::Key << "max_node_height" << YAML::Value << s.max_node_height;
  e << YAML::Key << "fbs_antenna_spacing" << YAML::Value << s.fbs_spacing();
  e << YAML::Key << "ris_cell_spacing" << YAML::Value << s.ris_spacing();
  e << YAML::Key << "path_loss" << YAML::Value << YAML::Flow << YAML::BeginMap;
  e << YAML::Key << "model" << YAML::Value
    << (s.path_loss.kind == PathLossKind::kFreeSpace ? "free-space" : "itu-indoor");
  e << YAML::Key << "distance_coefficient" << YAML::Value << s.path_loss.distance_coefficient;
  e << YAML::Key << "floor_loss_db" << YAML::Value << s.path_loss.floor_loss_db;
  e << YAML::EndMap;
  e << YAML::Key << "precoder_norm" << YAML::Value
    << (s.precoder_norm == PrecoderNorm::kColumn ? "column" : "matrix");
  e << YAML::Key << "kappa" << YAML::Value << s.regularization();
  e << YAML::EndMap;

  e << YAML::Key << "ddqn" << YAML::Value;
  emit_agent(e, c.ddqn);
  e << YAML::Key << "ddqn_ga" << YAML::Value;
  emit_agent(e, c.ddqn_ga);

  e << YAML::Key << "pso" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "swarm_size" << YAML::Value << c.pso.swarm_size;
  e << YAML::Key << "iterations" << YAML::Value << c.pso.iterations;
  e << YAML::Key << "inertia" << YAML::Value << c.pso.inertia;
  e << YAML::Key << "cognitive" << YAML::Value << c.pso.cognitive;
  e << YAML::Key << "social" << YAML::Value << c.pso.social;
  e << YAML::EndMap;

  e << YAML::Key << "experiment" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "kind" << YAML::Value << to_string(c.kind);
  e << YAML::Key << "seeds" << YAML::Value << YAML::Flow << c.seeds;
  e << YAML::Key << "out" << YAML::Value << c.out_dir.string();
  std::vector<std::string> methods, schemes;
  for (Method m : c.methods) methods.push_back(to_string(m));
  for (ControlScheme s2 : c.schemes) schemes.push_back(to_string(s2));
  e << YAML::Key << "methods" << YAML::Value << YAML::Flow << methods;
  e << YAML::Key << "steps_sweep" << YAML::Value << YAML::Flow << c.steps_sweep;
  e << YAML::Key << "size_sweep" << YAML::Value << YAML::Flow << c.size_sweep;
  e << YAML::Key << "resolution_sweep" << YAML::Value << YAML::Flow << c.resolution_sweep;
  e << YAML::Key << "schemes" << YAML::Value << YAML::Flow << schemes;
  e << YAML::Key << "smoothing_window" << YAML::Value << c.smoothing_window;
  e << YAML::Key << "final_window" << YAML::Value << c.final_window;
  e << YAML::Key << "random_draws" << YAML::Value << c.random_draws;
  e << YAML::Key << "record_wall_time" << YAML::Value << c.record_wall_time;
  e << YAML::Key << "threads" << YAML::Value << c.threads;
  e << YAML::EndMap;
  e << YAML::EndMap;
  return std::string(e.c_str()) + "\n";
}

}  // namespace risopt

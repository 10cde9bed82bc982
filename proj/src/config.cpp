// Copyright 2026 The regvqe Authors.
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

#include "regvqe/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace regvqe {

namespace {

using nlohmann::json;

const std::vector<double> kDefaultLambdaGrid = {0.00,  0.005, 0.020, 0.050, 0.075, 0.099,
                                                0.125, 0.150, 0.175, 0.200, 0.250};

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
  throw ConfigError("config: " + where + ": " + msg);
}

void reject_unknown(const json& obj, const std::string& where,
                    const std::set<std::string>& known) {
  for (const auto& [key, _] : obj.items()) {
    if (!known.contains(key)) fail(where, "unknown key '" + key + "'");
  }
}

template <typename T>
T get_or(const json& obj, const std::string& where, const std::string& key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(where + "." + key, e.what());
  }
}

AnsatzKind parse_ansatz_kind(const std::string& s) {
  if (s == "two_local") return AnsatzKind::TwoLocal;
  if (s == "ry_layer") return AnsatzKind::RyLayer;
  throw ConfigError("config: ansatz.kind must be 'two_local' or 'ry_layer', got '" + s + "'");
}

Entanglement parse_entanglement(const std::string& s) {
  if (s == "linear") return Entanglement::Linear;
  if (s == "full") return Entanglement::Full;
  throw ConfigError("config: ansatz.entanglement must be 'linear' or 'full', got '" + s + "'");
}

ScheduleKind parse_schedule_kind(const std::string& s) {
  if (s == "cosine") return ScheduleKind::Cosine;
  if (s == "constant") return ScheduleKind::Constant;
  if (s == "off") return ScheduleKind::Off;
  throw ConfigError("config: reg.schedule must be cosine|constant|off, got '" + s + "'");
}

OptMethod parse_method(const std::string& s) {
  if (s == "cg") return OptMethod::CG;
  if (s == "lbfgs") return OptMethod::LBFGS;
  throw ConfigError("config: opt.method must be 'cg' or 'lbfgs', got '" + s + "'");
}

InitDistribution parse_init_dist(const std::string& s) {
  if (s == "uniform_symmetric_pi") return InitDistribution::UniformSymmetricPi;
  if (s == "uniform_0_2pi") return InitDistribution::Uniform0To2Pi;
  throw ConfigError(
      "config: sweep.init_distribution must be 'uniform_symmetric_pi' or 'uniform_0_2pi', got '" +
      s + "'");
}

std::string to_string(AnsatzKind k) { return k == AnsatzKind::TwoLocal ? "two_local" : "ry_layer"; }
std::string to_string(Entanglement e) { return e == Entanglement::Linear ? "linear" : "full"; }
std::string to_string(ScheduleKind k) {
  switch (k) {
    case ScheduleKind::Cosine: return "cosine";
    case ScheduleKind::Constant: return "constant";
    case ScheduleKind::Off: return "off";
  }
  return "cosine";
}
std::string to_string(OptMethod m) { return m == OptMethod::CG ? "cg" : "lbfgs"; }
std::string to_string(InitDistribution d) {
  return d == InitDistribution::UniformSymmetricPi ? "uniform_symmetric_pi" : "uniform_0_2pi";
}
std::string to_string(GradientMode m) {
  return m == GradientMode::ParameterShift ? "parameter_shift" : "finite_difference";
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(doc, "top level",
                 {"hamiltonian", "ansatz", "reg", "gradient", "fd", "opt", "sweep", "out_dir"});

  ExperimentConfig cfg;

  // hamiltonian
  if (!doc.contains("hamiltonian")) fail("hamiltonian", "required");
  const json& ham = doc.at("hamiltonian");
  reject_unknown(ham, "hamiltonian", {"path", "rfim"});
  if (ham.contains("path") == ham.contains("rfim"))
    fail("hamiltonian", "exactly one of 'path' or 'rfim' required");
  if (ham.contains("path")) {
    std::filesystem::path p = ham.at("path").get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    cfg.sweep.hamiltonian_path = p;
  } else {
    const json& rf = ham.at("rfim");
    reject_unknown(rf, "hamiltonian.rfim",
                   {"n_qubits", "coupling_j", "field_low", "field_high", "rng_seed"});
    RfimSpec spec;
    spec.n_qubits = get_or(rf, "hamiltonian.rfim", "n_qubits", 12);
    spec.coupling_j = get_or(rf, "hamiltonian.rfim", "coupling_j", 1.0);
    spec.field_low = get_or(rf, "hamiltonian.rfim", "field_low", -0.7032);
    spec.field_high = get_or(rf, "hamiltonian.rfim", "field_high", 0.7032);
    spec.rng_seed = get_or(rf, "hamiltonian.rfim", "rng_seed", std::uint64_t{0});
    cfg.sweep.rfim = spec;
  }

  // ansatz
  const json ansatz = doc.contains("ansatz") ? doc.at("ansatz") : json::object();
  reject_unknown(ansatz, "ansatz", {"kind", "reps", "entanglement"});
  cfg.sweep.ansatz.kind =
      parse_ansatz_kind(get_or<std::string>(ansatz, "ansatz", "kind", "two_local"));
  cfg.sweep.ansatz.reps = get_or(ansatz, "ansatz", "reps",
                                 cfg.sweep.ansatz.kind == AnsatzKind::TwoLocal ? 4 : 0);
  cfg.sweep.ansatz.entanglement =
      parse_entanglement(get_or<std::string>(ansatz, "ansatz", "entanglement", "linear"));
  // n_qubits is resolved from the Hamiltonian at run time

  // reg
  const json reg = doc.contains("reg") ? doc.at("reg") : json::object();
  reject_unknown(reg, "reg", {"lambda0", "schedule"});
  cfg.lambda0 = get_or(reg, "reg", "lambda0", 0.0);
  if (cfg.lambda0 < 0.0) fail("reg.lambda0", "must be non-negative");
  cfg.schedule_kind = parse_schedule_kind(get_or<std::string>(reg, "reg", "schedule", "cosine"));

  // gradient
  const std::string grad = get_or<std::string>(doc, "top level", "gradient", "parameter_shift");
  if (grad == "parameter_shift") {
    cfg.gradient_mode = GradientMode::ParameterShift;
  } else if (grad == "finite_difference") {
    cfg.gradient_mode = GradientMode::FiniteDifference;
  } else {
    fail("gradient", "must be 'parameter_shift' or 'finite_difference'");
  }
  const json fd = doc.contains("fd") ? doc.at("fd") : json::object();
  reject_unknown(fd, "fd", {"step"});
  cfg.fd_step = get_or(fd, "fd", "step", 1e-5);
  if (cfg.fd_step <= 0.0) fail("fd.step", "must be positive");

  // opt
  const json opt = doc.contains("opt") ? doc.at("opt") : json::object();
  reject_unknown(opt, "opt",
                 {"method", "max_iters_a", "max_iters_b", "gtol", "budget", "lbfgs_memory"});
  const OptMethod method = parse_method(get_or<std::string>(opt, "opt", "method", "cg"));
  const int iters_a = get_or(opt, "opt", "max_iters_a", 15);
  const int iters_b = get_or(opt, "opt", "max_iters_b", 10);
  const double gtol = get_or(opt, "opt", "gtol", 1e-2);
  const int memory = get_or(opt, "opt", "lbfgs_memory", 10);
  if (iters_a < 1 || iters_b < 1) fail("opt", "iteration limits must be positive");
  if (gtol <= 0.0) fail("opt.gtol", "must be positive");
  cfg.sweep.pipeline.stage_a = method == OptMethod::CG ? OptimizerConfig::cg(iters_a, gtol)
                                                       : OptimizerConfig::lbfgs(iters_a, gtol, memory);
  cfg.sweep.pipeline.stage_b = method == OptMethod::CG ? OptimizerConfig::cg(iters_b, gtol)
                                                       : OptimizerConfig::lbfgs(iters_b, gtol, memory);
  cfg.sweep.pipeline.eval_budget = get_or(opt, "opt", "budget", std::int64_t{10000});
  if (cfg.sweep.pipeline.eval_budget < 1) fail("opt.budget", "must be positive");
  cfg.sweep.pipeline.schedule.t_a = iters_a;
  cfg.sweep.pipeline.schedule_kind = cfg.schedule_kind;

  // sweep
  const json sweep = doc.contains("sweep") ? doc.at("sweep") : json::object();
  reject_unknown(sweep, "sweep",
                 {"lambda_grid", "n_seeds", "seed_base", "init_distribution", "paired_seeds",
                  "trajectory_seeds", "workers"});
  cfg.sweep.lambda_grid =
      get_or<std::vector<double>>(sweep, "sweep", "lambda_grid", kDefaultLambdaGrid);
  cfg.sweep.n_seeds = get_or(sweep, "sweep", "n_seeds", 100);
  cfg.sweep.seed_base = get_or(sweep, "sweep", "seed_base", std::uint64_t{0});
  cfg.sweep.init_distribution =
      parse_init_dist(get_or<std::string>(sweep, "sweep", "init_distribution",
                                          "uniform_symmetric_pi"));
  cfg.sweep.paired_seeds = get_or(sweep, "sweep", "paired_seeds", true);
  cfg.sweep.trajectory_seeds = get_or(sweep, "sweep", "trajectory_seeds", 10);
  // 0 = unset; the CLI resolves the effective count (flag, then config, then
  // REGVQE_WORKERS, then 1)
  cfg.sweep.workers = get_or(sweep, "sweep", "workers", 0);

  std::string out_dir = get_or<std::string>(doc, "top level", "out_dir", "results");
  std::filesystem::path out = out_dir;
  if (out.is_relative()) out = base_dir / out;
  cfg.sweep.out_dir = out;

  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.has_parent_path() ? path.parent_path() : ".");
}

std::string resolved_config_json(const ExperimentConfig& cfg) {
  json doc;
  if (cfg.sweep.hamiltonian_path) {
    doc["hamiltonian"]["path"] = cfg.sweep.hamiltonian_path->string();
  } else if (cfg.sweep.rfim) {
    const auto& rf = *cfg.sweep.rfim;
    doc["hamiltonian"]["rfim"] = {{"n_qubits", rf.n_qubits},
                                  {"coupling_j", rf.coupling_j},
                                  {"field_low", rf.field_low},
                                  {"field_high", rf.field_high},
                                  {"rng_seed", rf.rng_seed}};
  }
  doc["ansatz"] = {{"kind", to_string(cfg.sweep.ansatz.kind)},
                   {"reps", cfg.sweep.ansatz.reps},
                   {"entanglement", to_string(cfg.sweep.ansatz.entanglement)}};
  doc["reg"] = {{"lambda0", cfg.lambda0}, {"schedule", to_string(cfg.schedule_kind)}};
  doc["gradient"] = to_string(cfg.gradient_mode);
  doc["fd"] = {{"step", cfg.fd_step}};
  doc["opt"] = {{"method", to_string(cfg.sweep.pipeline.stage_a.method)},
                {"max_iters_a", cfg.sweep.pipeline.stage_a.max_iters},
                {"max_iters_b", cfg.sweep.pipeline.stage_b.max_iters},
                {"gtol", cfg.sweep.pipeline.stage_a.grad_tolerance},
                {"budget", cfg.sweep.pipeline.eval_budget},
                {"lbfgs_memory", cfg.sweep.pipeline.stage_a.lbfgs_memory}};
  doc["sweep"] = {{"lambda_grid", cfg.sweep.lambda_grid},
                  {"n_seeds", cfg.sweep.n_seeds},
                  {"seed_base", cfg.sweep.seed_base},
                  {"init_distribution", to_string(cfg.sweep.init_distribution)},
                  {"paired_seeds", cfg.sweep.paired_seeds},
                  {"trajectory_seeds", cfg.sweep.trajectory_seeds},
                  {"workers", cfg.sweep.workers}};
  doc["out_dir"] = cfg.sweep.out_dir.string();
  return doc.dump(2) + "\n";
}

void write_sweep_meta(const std::filesystem::path& path, const ExperimentConfig& cfg,
                      const WeightedPauliSum& h, double ground_energy) {
  json doc = json::parse(resolved_config_json(cfg));
  char hash[24];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(h.content_hash()));
  doc["hamiltonian_hash"] = hash;
  doc["hamiltonian_qubits"] = h.n_qubits();
  doc["ground_energy"] = ground_energy;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << "\n";
}

std::optional<std::uint64_t> read_meta_hash(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    json doc = json::parse(in);
    if (!doc.contains("hamiltonian_hash")) return std::nullopt;
    const std::string s = doc.at("hamiltonian_hash").get<std::string>();
    return std::stoull(s, nullptr, 16);
  } catch (...) {
    return std::nullopt;
  }
}

}  // namespace regvqe

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

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "regvqe/config.hpp"
#include "regvqe/harness.hpp"
#include "regvqe/stats.hpp"

namespace {

using namespace regvqe;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRunFailed = 2;

void print_kv(const char* key, double v) { std::printf("%s=%.17g\n", key, v); }
void print_kv(const char* key, const std::string& v) {
  std::printf("%s=%s\n", key, v.c_str());
}

int resolve_workers(std::optional<int> flag, int config_value) {
  if (flag && *flag > 0) return *flag;
  if (config_value > 0) return config_value;
  if (const char* env = std::getenv("REGVQE_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  return 1;
}

RfimSpec parse_rfim_arg(const std::string& text) {
  RfimSpec spec;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string kv = text.substr(pos, comma - pos);
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos)
      throw ConfigError("--rfim: expected k=v, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const std::string val = kv.substr(eq + 1);
    if (key == "n") {
      spec.n_qubits = std::stoi(val);
    } else if (key == "j") {
      spec.coupling_j = std::stod(val);
    } else if (key == "low") {
      spec.field_low = std::stod(val);
    } else if (key == "high") {
      spec.field_high = std::stod(val);
    } else if (key == "seed") {
      spec.rng_seed = std::stoull(val);
    } else {
      throw ConfigError("--rfim: unknown key '" + key + "'");
    }
    pos = comma + 1;
  }
  return spec;
}

void resolve_ansatz_qubits(ExperimentConfig& cfg, const WeightedPauliSum& h) {
  cfg.sweep.ansatz.n_qubits = h.n_qubits();
  if (cfg.sweep.ansatz.kind == AnsatzKind::RyLayer) cfg.sweep.ansatz.reps = 0;
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed_index,
            std::optional<double> lambda0_override, std::optional<std::string> out_override) {
  ExperimentConfig cfg = load_config(config_path);
  if (out_override) cfg.sweep.out_dir = *out_override;
  const WeightedPauliSum h = resolve_hamiltonian(cfg.sweep);
  resolve_ansatz_qubits(cfg, h);

  std::filesystem::create_directories(cfg.sweep.out_dir);
  GroundEnergyCache cache(cfg.sweep.out_dir / "cache");
  const double e0 = cache.get_or_compute(h);

  const double lambda0 = lambda0_override.value_or(cfg.lambda0);
  const std::uint64_t seed =
      derive_run_seed(cfg.sweep.seed_base, 0, seed_index.value_or(0), true);

  PipelineConfig pipeline = cfg.sweep.pipeline;
  const RunRecord rec = run_single(h, e0, cfg.sweep.ansatz, pipeline, lambda0, seed,
                                   cfg.sweep.init_distribution);

  const auto csv = cfg.sweep.out_dir / "runs.csv";
  const bool fresh = !std::filesystem::exists(csv);
  std::ofstream store(csv, std::ios::app);
  if (fresh) write_runs_csv_header(store);
  append_run_record(store, rec);

  print_kv("lambda0", rec.lambda0);
  std::printf("seed=%llu\n", static_cast<unsigned long long>(rec.seed));
  print_kv("final_energy", rec.final_energy);
  print_kv("delta_e", rec.delta_e);
  print_kv("theta_norm", rec.final_norm);
  std::printf("evals=%lld\n", static_cast<long long>(rec.evals_total));
  print_kv("status", std::string(to_string(rec.status)));
  return rec.status == RunStatus::Failed ? kExitRunFailed : kExitOk;
}

int cmd_sweep(const std::string& config_path, bool resume, std::optional<int> workers_flag,
              std::optional<std::string> out_override) {
  ExperimentConfig cfg = load_config(config_path);
  if (out_override) cfg.sweep.out_dir = *out_override;
  cfg.sweep.workers = resolve_workers(workers_flag, cfg.sweep.workers);

  const WeightedPauliSum h = resolve_hamiltonian(cfg.sweep);
  resolve_ansatz_qubits(cfg, h);

  const auto csv = cfg.sweep.out_dir / "runs.csv";
  if (std::filesystem::exists(csv) && !resume)
    throw ConfigError("results store " + csv.string() + " exists; pass --resume to continue");

  const auto meta_path = cfg.sweep.out_dir / "sweep.meta.json";
  if (auto prev = read_meta_hash(meta_path)) {
    if (*prev != h.content_hash())
      throw ConfigError("store at " + cfg.sweep.out_dir.string() +
                        " was produced from a different Hamiltonian");
  }

  std::filesystem::create_directories(cfg.sweep.out_dir);
  GroundEnergyCache cache(cfg.sweep.out_dir / "cache");
  const double e0 = cache.get_or_compute(h);
  write_sweep_meta(meta_path, cfg, h, e0);

  const std::size_t per_lambda = static_cast<std::size_t>(cfg.sweep.n_seeds);
  std::size_t last_lambda_done = static_cast<std::size_t>(-1);
  const auto progress = [&](std::size_t done, std::size_t total) {
    const std::size_t lam = done / per_lambda;
    if (done == total || (lam != last_lambda_done && done % per_lambda == 0)) {
      std::fprintf(stderr, "progress: %zu/%zu runs\n", done, total);
      last_lambda_done = lam;
    }
  };

  const auto records = run_sweep(cfg.sweep, progress);
  print_kv("runs_csv", csv.string());
  print_kv("meta", meta_path.string());
  std::printf("records=%zu\n", records.size());
  return kExitOk;
}

int cmd_stats(const std::vector<std::string>& run_files, std::optional<std::string> out_dir_opt) {
  std::vector<RunRecord> records;
  std::optional<std::uint64_t> hash;
  std::string hash_owner;
  for (const auto& f : run_files) {
    const auto recs = load_runs_csv(f);
    records.insert(records.end(), recs.begin(), recs.end());
    const auto meta = std::filesystem::path(f).parent_path() / "sweep.meta.json";
    if (auto hh = read_meta_hash(meta)) {
      if (hash && *hash != *hh) {
        char a[24], b[24];
        std::snprintf(a, sizeof a, "%016llx", static_cast<unsigned long long>(*hash));
        std::snprintf(b, sizeof b, "%016llx", static_cast<unsigned long long>(*hh));
        std::fprintf(stderr, "error: mixed Hamiltonian hashes: %s (%s) vs %s (%s)\n", a,
                     hash_owner.c_str(), b, f.c_str());
        return kExitUsage;
      }
      hash = *hh;
      if (hash_owner.empty()) hash_owner = f;
    }
  }
  if (records.empty()) {
    std::fprintf(stderr, "error: no records\n");
    return kExitUsage;
  }

  const std::filesystem::path out_dir =
      out_dir_opt ? std::filesystem::path(*out_dir_opt)
                  : std::filesystem::path(run_files.front()).parent_path();
  std::filesystem::create_directories(out_dir);

  const auto thresholds = threshold_grid();
  const SweepSummary summary = summarize(records, thresholds);

  const auto summary_path = out_dir / "summary.csv";
  std::ofstream(summary_path) << summary_to_csv(summary);
  const auto windows_path = out_dir / "windows.json";
  std::ofstream(windows_path) << windows_to_json(summary);
  for (std::size_t t = 0; t < thresholds.size(); ++t) {
    char name[48];
    std::snprintf(name, sizeof name, "curve_%.1e.csv", thresholds[t]);
    std::ofstream(out_dir / name) << curve_to_csv(summary, t);
  }

  print_kv("summary", summary_path.string());
  print_kv("windows", windows_path.string());
  std::printf("rows=%zu\n", summary.rows.size());
  return kExitOk;
}

int cmd_exact(std::optional<std::string> path, std::optional<std::string> rfim_arg,
              std::optional<std::string> cache_dir) {
  if (path.has_value() == rfim_arg.has_value()) {
    std::fprintf(stderr, "error: pass exactly one of HAMILTONIAN or --rfim\n");
    return kExitUsage;
  }
  const WeightedPauliSum h =
      path ? load_pauli_sum(*path) : generate_rfim(parse_rfim_arg(*rfim_arg));
  double e0 = 0.0;
  if (cache_dir) {
    GroundEnergyCache cache(*cache_dir);
    e0 = cache.get_or_compute(h);
  } else {
    e0 = exact_ground_energy(h);
  }
  print_kv("ground_energy", e0);
  return kExitOk;
}

int cmd_lambda_scale(const std::string& path, std::optional<int> params,
                     const std::string& ansatz_kind, int reps) {
  const WeightedPauliSum h = load_pauli_sum(path);
  int p = 0;
  if (params) {
    p = *params;
  } else {
    AnsatzSpec spec;
    spec.kind = ansatz_kind == "ry_layer" ? AnsatzKind::RyLayer : AnsatzKind::TwoLocal;
    spec.n_qubits = h.n_qubits();
    spec.reps = spec.kind == AnsatzKind::RyLayer ? 0 : reps;
    p = param_count(spec);
  }
  print_kv("abs_coefficient_sum", abs_coefficient_sum(h));
  std::printf("params=%d\n", p);
  print_kv("lambda_scale", lambda_scale(h, p));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularized-VQE experiment driver"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed_index;
  std::optional<double> lambda0_override;
  std::optional<std::string> out_override;
  std::optional<int> workers_flag;
  bool resume = false;
  std::vector<std::string> run_files;
  std::optional<std::string> exact_path, rfim_arg, cache_dir, stats_out;
  std::optional<int> ls_params;
  std::string ls_path, ls_ansatz = "two_local";
  int ls_reps = 4;

  auto* run = app.add_subcommand("run", "Execute one seeded two-stage optimization");
  run->add_option("--config", config_path, "experiment config (JSON)")->required();
  run->add_option("--seed", seed_index, "seed index (default 0)");
  run->add_option("--lambda0", lambda0_override, "override the initial regularization strength");
  run->add_option("--out", out_override, "output directory override");

  auto* sweep = app.add_subcommand("sweep", "Run the full lambda-grid campaign");
  sweep->add_option("--config", config_path, "experiment config (JSON)")->required();
  sweep->add_flag("--resume", resume, "continue an interrupted sweep");
  sweep->add_option("--workers", workers_flag, "parallel workers (default REGVQE_WORKERS or 1)");
  sweep->add_option("--out", out_override, "output directory override");

  auto* stats = app.add_subcommand("stats", "Aggregate runs.csv into summary tables");
  stats->add_option("runs", run_files, "runs.csv file(s)")->required()->expected(-1);
  stats->add_option("--out", stats_out, "output directory (default: beside the first input)");

  auto* exact = app.add_subcommand("exact", "Exact ground-state energy of a Hamiltonian");
  exact->add_option("hamiltonian", exact_path, ".psum file");
  exact->add_option("--rfim", rfim_arg, "RFIM spec, e.g. n=12,j=1,low=-0.7,high=0.7,seed=7");
  exact->add_option("--cache-dir", cache_dir, "ground-energy cache directory");

  auto* lscale = app.add_subcommand("lambda-scale", "Coefficient-sum heuristic for lambda");
  lscale->add_option("hamiltonian", ls_path, ".psum file")->required();
  lscale->add_option("-p,--params", ls_params, "variational parameter count");
  lscale->add_option("--ansatz", ls_ansatz, "two_local|ry_layer (used when -p absent)");
  lscale->add_option("--reps", ls_reps, "TwoLocal repetitions (used when -p absent)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(config_path, seed_index, lambda0_override, out_override);
    if (sweep->parsed()) return cmd_sweep(config_path, resume, workers_flag, out_override);
    if (stats->parsed()) return cmd_stats(run_files, stats_out);
    if (exact->parsed()) return cmd_exact(exact_path, rfim_arg, cache_dir);
    if (lscale->parsed()) return cmd_lambda_scale(ls_path, ls_params, ls_ansatz, ls_reps);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const PauliFormatError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}

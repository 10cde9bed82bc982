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

#include "regvqe/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "regvqe/rng.hpp"

namespace regvqe {

namespace {

constexpr std::string_view kCsvHeader =
    "lambda0,seed,final_energy,final_norm,evals_total,status,delta_e";

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(std::string_view s, const char* what) {
  double v = 0.0;
  if (s == "nan" || s == "-nan") return std::numeric_limits<double>::quiet_NaN();
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw std::runtime_error(std::string("runs.csv: bad ") + what + " field '" + std::string(s) +
                             "'");
  return v;
}

void validate_sweep(const SweepConfig& cfg) {
  if (cfg.hamiltonian_path.has_value() == cfg.rfim.has_value())
    throw std::invalid_argument("sweep needs exactly one Hamiltonian source");
  if (cfg.lambda_grid.empty()) throw std::invalid_argument("lambda grid is empty");
  for (std::size_t i = 0; i < cfg.lambda_grid.size(); ++i) {
    if (cfg.lambda_grid[i] < 0.0) throw std::invalid_argument("lambda grid must be non-negative");
    if (i > 0 && cfg.lambda_grid[i] <= cfg.lambda_grid[i - 1])
      throw std::invalid_argument("lambda grid must be sorted ascending without duplicates");
  }
  if (cfg.n_seeds < 1) throw std::invalid_argument("n_seeds must be positive");
  if (cfg.workers < 1) throw std::invalid_argument("workers must be positive");
}

}  // namespace

std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Converged: return "Converged";
    case RunStatus::BudgetExhausted: return "BudgetExhausted";
    case RunStatus::Failed: return "Failed";
  }
  return "Failed";
}

RunStatus run_status_from_string(std::string_view s) {
  if (s == "Converged") return RunStatus::Converged;
  if (s == "BudgetExhausted") return RunStatus::BudgetExhausted;
  if (s == "Failed") return RunStatus::Failed;
  throw std::runtime_error("unknown run status '" + std::string(s) + "'");
}

std::vector<double> initial_theta(const AnsatzSpec& spec, std::uint64_t seed,
                                  InitDistribution dist) {
  const int p = param_count(spec);
  SplitMix64 rng(seed);
  std::vector<double> theta(p);
  for (int k = 0; k < p; ++k) {
    const double u = rng.next_double();
    theta[k] = dist == InitDistribution::UniformSymmetricPi
                   ? (2.0 * u - 1.0) * std::numbers::pi
                   : u * 2.0 * std::numbers::pi;
  }
  return theta;
}

std::uint64_t derive_run_seed(std::uint64_t seed_base, std::size_t lambda_index,
                              std::size_t seed_index, bool paired) {
  const std::uint64_t stream = paired ? 0 : lambda_index + 1;
  return mix_seed(mix_seed(seed_base, stream), seed_index);
}

WeightedPauliSum resolve_hamiltonian(const SweepConfig& cfg) {
  if (cfg.hamiltonian_path.has_value() == cfg.rfim.has_value())
    throw std::invalid_argument("sweep needs exactly one Hamiltonian source");
  if (cfg.hamiltonian_path) return load_pauli_sum(*cfg.hamiltonian_path);
  return generate_rfim(*cfg.rfim);
}

RunRecord run_single(const WeightedPauliSum& h, double ground_energy, const AnsatzSpec& ansatz,
                     PipelineConfig pipeline, double lambda0, std::uint64_t seed,
                     InitDistribution dist, TwoStageResult* detail) {
  pipeline.schedule.lambda0 = lambda0;

  Objective objective(h, ansatz);
  const auto theta0 = initial_theta(ansatz, seed, dist);
  const auto result = run_two_stage(pipeline, objective, theta0);
  if (detail) *detail = result;

  RunRecord rec;
  rec.lambda0 = lambda0;
  rec.seed = seed;
  rec.evals_total = objective.eval_count();

  const bool failed = result.stage_a.stop == StopReason::NonFinite ||
                      result.stage_b.stop == StopReason::NonFinite ||
                      !std::isfinite(result.stage_b.best_value);
  if (failed) {
    rec.status = RunStatus::Failed;
    rec.final_energy = std::numeric_limits<double>::quiet_NaN();
    rec.final_norm = std::numeric_limits<double>::quiet_NaN();
    rec.delta_e = std::numeric_limits<double>::quiet_NaN();
    return rec;
  }

  rec.status = (result.stage_a.stop == StopReason::EvalBudget ||
                result.stage_b.stop == StopReason::EvalBudget)
                   ? RunStatus::BudgetExhausted
                   : RunStatus::Converged;
  rec.final_energy = result.stage_b.best_value;
  double sq = 0.0;
  for (double v : result.stage_b.best_theta) sq += v * v;
  rec.final_norm = std::sqrt(sq);
  rec.delta_e = rec.final_energy - ground_energy;
  return rec;
}

void write_runs_csv_header(std::ostream& out) { out << kCsvHeader << '\n'; }

void append_run_record(std::ostream& out, const RunRecord& r) {
  out << format_double(r.lambda0) << ',' << r.seed << ',' << format_double(r.final_energy) << ','
      << format_double(r.final_norm) << ',' << r.evals_total << ',' << to_string(r.status) << ','
      << format_double(r.delta_e) << '\n';
}

std::vector<RunRecord> load_runs_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");
  if (line != kCsvHeader)
    throw std::runtime_error(path.string() + ": unexpected header '" + line + "'");
  std::vector<RunRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view sv = line;
    std::size_t pos = 0;
    while (true) {
      const std::size_t c = sv.find(',', pos);
      fields.push_back(sv.substr(pos, c == std::string_view::npos ? c : c - pos));
      if (c == std::string_view::npos) break;
      pos = c + 1;
    }
    if (fields.size() != 7)
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected 7 fields");
    RunRecord r;
    r.lambda0 = parse_double(fields[0], "lambda0");
    std::uint64_t seed = 0;
    auto [p, ec] = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), seed);
    if (ec != std::errc{} || p != fields[1].data() + fields[1].size())
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": bad seed");
    r.seed = seed;
    r.final_energy = parse_double(fields[2], "final_energy");
    r.final_norm = parse_double(fields[3], "final_norm");
    r.evals_total = static_cast<std::int64_t>(parse_double(fields[4], "evals_total"));
    r.status = run_status_from_string(fields[5]);
    r.delta_e = parse_double(fields[6], "delta_e");
    records.push_back(r);
  }
  return records;
}

namespace {

void write_trajectory(const std::filesystem::path& path, const TwoStageResult& result) {
  std::ofstream out(path);
  out << "stage,iter,energy,objective,theta_norm\n";
  const auto dump = [&out](char stage, const StageResult& sr) {
    for (std::size_t i = 0; i < sr.trajectory.size(); ++i) {
      const auto& row = sr.trajectory[i];
      out << stage << ',' << i << ',' << format_double(row.energy) << ','
          << format_double(row.objective) << ',' << format_double(row.theta_norm) << '\n';
    }
  };
  dump('A', result.stage_a);
  dump('B', result.stage_b);
}

}  // namespace

std::vector<RunRecord> run_sweep(const SweepConfig& cfg, const ProgressFn& progress) {
  validate_sweep(cfg);
  const WeightedPauliSum h = resolve_hamiltonian(cfg);

  std::filesystem::create_directories(cfg.out_dir);
  GroundEnergyCache cache(cfg.out_dir / "cache");
  const double e0 = cache.get_or_compute(h);

  const std::size_t n_lambda = cfg.lambda_grid.size();
  const std::size_t n_tasks = n_lambda * static_cast<std::size_t>(cfg.n_seeds);

  // canonical task order: lambda-major, seed-minor
  struct Task {
    std::size_t lambda_index;
    std::size_t seed_index;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  tasks.reserve(n_tasks);
  for (std::size_t li = 0; li < n_lambda; ++li) {
    for (std::size_t si = 0; si < static_cast<std::size_t>(cfg.n_seeds); ++si) {
      tasks.push_back({li, si, derive_run_seed(cfg.seed_base, li, si, cfg.paired_seeds)});
    }
  }

  // resume: skip (lambda0, seed) pairs already in the store
  const auto csv_path = cfg.out_dir / "runs.csv";
  std::vector<std::optional<RunRecord>> done(n_tasks);
  std::size_t n_done = 0;
  if (std::filesystem::exists(csv_path)) {
    std::map<std::pair<double, std::uint64_t>, RunRecord> existing;
    for (const auto& r : load_runs_csv(csv_path)) existing.insert({{r.lambda0, r.seed}, r});
    for (std::size_t i = 0; i < n_tasks; ++i) {
      const auto key = std::make_pair(cfg.lambda_grid[tasks[i].lambda_index], tasks[i].seed);
      if (auto it = existing.find(key); it != existing.end()) {
        done[i] = it->second;
        ++n_done;
      }
    }
  } else {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot create " + csv_path.string());
    write_runs_csv_header(out);
  }

  if (cfg.trajectory_seeds > 0)
    std::filesystem::create_directories(cfg.out_dir / "trajectories");

  std::ofstream store(csv_path, std::ios::app);
  if (!store) throw std::runtime_error("cannot append to " + csv_path.string());

  // Completed records are flushed in canonical order: a record reaches the
  // file only once every earlier task is written. Out-of-order completions
  // wait in `pending`, so the file is always a canonical-order prefix plus
  // whatever a previous interrupted invocation left behind.
  std::vector<std::optional<RunRecord>> pending(n_tasks);
  std::size_t next_to_write = 0;
  while (next_to_write < n_tasks && done[next_to_write].has_value()) ++next_to_write;
  std::size_t completed = n_done;

  const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(n_tasks);
#pragma omp parallel for schedule(dynamic, 1) num_threads(cfg.workers)
  for (std::ptrdiff_t ti = 0; ti < total; ++ti) {
    const std::size_t i = static_cast<std::size_t>(ti);
    if (done[i].has_value()) continue;
    const Task& task = tasks[i];
    const double lambda0 = cfg.lambda_grid[task.lambda_index];

    RunRecord rec;
    try {
      const bool keep_trajectory = static_cast<int>(task.seed_index) < cfg.trajectory_seeds;
      TwoStageResult detail;
      rec = run_single(h, e0, cfg.ansatz, cfg.pipeline, lambda0, task.seed,
                       cfg.init_distribution, keep_trajectory ? &detail : nullptr);
      if (keep_trajectory) {
        char name[64];
        std::snprintf(name, sizeof name, "l%02zu_s%05zu.csv", task.lambda_index,
                      task.seed_index);
        const auto tpath = cfg.out_dir / "trajectories" / name;
        write_trajectory(tpath, detail);
        rec.trajectory_ref = tpath.string();
      }
    } catch (const std::exception&) {
      rec.lambda0 = lambda0;
      rec.seed = task.seed;
      rec.status = RunStatus::Failed;
      rec.final_energy = rec.final_norm = rec.delta_e =
          std::numeric_limits<double>::quiet_NaN();
      rec.evals_total = 0;
    }

#pragma omp critical(regvqe_sweep_store)
    {
      pending[i] = rec;
      ++completed;
      while (next_to_write < n_tasks) {
        if (pending[next_to_write].has_value()) {
          append_run_record(store, *pending[next_to_write]);
          done[next_to_write] = std::move(pending[next_to_write]);
          pending[next_to_write].reset();
          ++next_to_write;
        } else if (done[next_to_write].has_value()) {
          ++next_to_write;  // pre-existing record from a resumed store
        } else {
          break;
        }
      }
      store.flush();
      if (progress) progress(completed, n_tasks);
    }
  }

  std::vector<RunRecord> records;
  records.reserve(n_tasks);
  for (std::size_t i = 0; i < n_tasks; ++i) {
    if (!done[i].has_value()) throw std::runtime_error("internal: sweep task missing");
    records.push_back(*done[i]);
  }
  return records;
}

}  // namespace regvqe

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

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "regvqe/optimize.hpp"
#include "regvqe/pauli.hpp"
#include "regvqe/statevector.hpp"

namespace regvqe {

enum class InitDistribution { UniformSymmetricPi, Uniform0To2Pi };

enum class RunStatus { Converged, BudgetExhausted, Failed };

std::string_view to_string(RunStatus s);
RunStatus run_status_from_string(std::string_view s);

struct RunRecord {
  double lambda0 = 0.0;
  std::uint64_t seed = 0;
  double final_energy = 0.0;  // Stage B best raw energy
  double final_norm = 0.0;    // ||theta||_2 at the Stage B best iterate
  std::int64_t evals_total = 0;
  RunStatus status = RunStatus::Converged;
  double delta_e = 0.0;  // final_energy minus exact ground energy
  std::optional<std::string> trajectory_ref;
};

struct SweepConfig {
  // exactly one Hamiltonian source
  std::optional<std::filesystem::path> hamiltonian_path;
  std::optional<RfimSpec> rfim;

  AnsatzSpec ansatz;
  PipelineConfig pipeline;
  std::vector<double> lambda_grid;  // sorted ascending, unique, non-negative
  int n_seeds = 1;
  std::uint64_t seed_base = 0;
  InitDistribution init_distribution = InitDistribution::UniformSymmetricPi;
  bool paired_seeds = true;  // same theta0 per seed index across the grid
  int workers = 1;
  int trajectory_seeds = 10;  // store trajectories for the first k seed indices
  std::filesystem::path out_dir;
};

/// P iid angles from a counter-based generator; identical inputs give
/// identical vectors on every platform.
std::vector<double> initial_theta(const AnsatzSpec& spec, std::uint64_t seed,
                                  InitDistribution dist);

/// Seed for (lambda index, seed index); independent of the lambda index when
/// paired is true.
std::uint64_t derive_run_seed(std::uint64_t seed_base, std::size_t lambda_index,
                              std::size_t seed_index, bool paired);

/// One seeded two-stage run against a prepared Hamiltonian. When detail is
/// non-null it receives both stage results (trajectories included).
RunRecord run_single(const WeightedPauliSum& h, double ground_energy, const AnsatzSpec& ansatz,
                     PipelineConfig pipeline, double lambda0, std::uint64_t seed,
                     InitDistribution dist, TwoStageResult* detail = nullptr);

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Executes |lambda_grid| x n_seeds runs, appending to <out_dir>/runs.csv in
/// canonical (lambda-major, seed-minor) order as the completed prefix grows.
/// Existing records are never recomputed, so an interrupted sweep resumes.
/// Returns the full record set in canonical order.
std::vector<RunRecord> run_sweep(const SweepConfig& cfg, const ProgressFn& progress = {});

/// runs.csv access, 17-significant-digit round-trip floats.
void write_runs_csv_header(std::ostream& out);
void append_run_record(std::ostream& out, const RunRecord& r);
std::vector<RunRecord> load_runs_csv(const std::filesystem::path& path);

/// Resolves the configured Hamiltonian source.
WeightedPauliSum resolve_hamiltonian(const SweepConfig& cfg);

}  // namespace regvqe

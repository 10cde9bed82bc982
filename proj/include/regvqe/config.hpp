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

#include <filesystem>
#include <stdexcept>
#include <string>

#include "regvqe/harness.hpp"
#include "regvqe/objective.hpp"

namespace regvqe {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fully resolved experiment description: every default made explicit, so
/// the emitted copy reproduces the run byte-for-byte.
struct ExperimentConfig {
  SweepConfig sweep;
  double lambda0 = 0.0;  // single-run default; sweeps use the grid
  ScheduleKind schedule_kind = ScheduleKind::Cosine;
  GradientMode gradient_mode = GradientMode::ParameterShift;
  double fd_step = 1e-5;
};

/// Parses and resolves a JSON config document. Unknown keys are rejected;
/// missing keys take documented defaults.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir);

/// Canonical JSON echo of a resolved config.
std::string resolved_config_json(const ExperimentConfig& cfg);

/// sweep.meta.json: resolved config plus the Hamiltonian hash and ground
/// energy, written next to runs.csv.
void write_sweep_meta(const std::filesystem::path& path, const ExperimentConfig& cfg,
                      const WeightedPauliSum& h, double ground_energy);

/// Hamiltonian hash recorded in a sweep.meta.json, if present.
std::optional<std::uint64_t> read_meta_hash(const std::filesystem::path& path);

}  // namespace regvqe

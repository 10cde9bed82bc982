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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "regvqe/harness.hpp"
#include "regvqe/pauli.hpp"

namespace regvqe {

/// The seven accuracy thresholds 1.5e-1 .. 1.5e-7 Ha.
std::vector<double> threshold_grid();

inline constexpr double kZ95 = 1.959964;

struct WilsonInterval {
  double lower = 0.0;
  double upper = 1.0;
};

/// Wilson score interval for a binomial proportion, clamped to [0, 1].
WilsonInterval wilson_interval(std::int64_t successes, std::int64_t n, double z = kZ95);

/// Type-7 quantile (linear interpolation between order statistics).
/// The input need not be sorted.
double quantile(std::vector<double> values, double q);

struct ThresholdCell {
  std::int64_t successes = 0;
  double rate = 0.0;
  WilsonInterval wilson;
};

struct LambdaRow {
  double lambda0 = 0.0;
  std::int64_t n_runs = 0;
  std::vector<ThresholdCell> per_threshold;
  double median_energy = 0.0;
  double iqr_energy = 0.0;
  double median_norm = 0.0;
  double iqr_norm = 0.0;
};

struct LambdaWindow {
  bool defined = false;     // false when the max success rate is zero
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
  std::vector<std::pair<double, double>> all_windows;  // every qualifying window
};

struct SweepSummary {
  std::vector<double> thresholds;
  std::vector<LambdaRow> rows;          // sorted by lambda0
  std::vector<LambdaWindow> windows;    // one per threshold
};

/// Aggregates records from a single Hamiltonian instance: success counts per
/// threshold with Wilson bounds, type-7 medians/IQRs over finite energies,
/// and the lambda window per threshold.
SweepSummary summarize(std::span<const RunRecord> records, std::span<const double> thresholds);

/// Maximal contiguous sub-grid containing an argmax whose rate is at least
/// 0.9 * max rate. Ties between disjoint windows resolve to the one holding
/// the smallest argmax lambda. Undefined when the max rate is zero.
LambdaWindow lambda_opt_window(std::span<const double> lambda_grid, std::span<const double> rates);

/// Order-of-magnitude reference sum_i |c_i| / P for choosing lambda.
double lambda_scale(const WeightedPauliSum& h, int p);

/// summary.csv: one row per (lambda0, threshold).
std::string summary_to_csv(const SweepSummary& summary);

/// Plot-ready per-threshold curve: lambda0, rate, wilson_lo, wilson_hi.
std::string curve_to_csv(const SweepSummary& summary, std::size_t threshold_index);

/// Window report as a JSON document.
std::string windows_to_json(const SweepSummary& summary);

}  // namespace regvqe

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

#include "regvqe/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace regvqe {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<double> threshold_grid() {
  return {1.5e-1, 1.5e-2, 1.5e-3, 1.5e-4, 1.5e-5, 1.5e-6, 1.5e-7};
}

WilsonInterval wilson_interval(std::int64_t successes, std::int64_t n, double z) {
  if (n <= 0) throw std::invalid_argument("Wilson interval needs n > 0");
  if (successes < 0 || successes > n)
    throw std::invalid_argument("successes out of range [0, n]");
  if (z <= 0.0) throw std::invalid_argument("z must be positive");

  const double nn = static_cast<double>(n);
  const double p_hat = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p_hat + z2 / (2.0 * nn)) / denom;
  const double half =
      (z / denom) * std::sqrt(p_hat * (1.0 - p_hat) / nn + z2 / (4.0 * nn * nn));
  WilsonInterval w;
  w.lower = std::max(0.0, center - half);
  w.upper = std::min(1.0, center + half);
  return w;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile of empty set");
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("quantile level out of [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = q * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = h - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

LambdaWindow lambda_opt_window(std::span<const double> lambda_grid,
                               std::span<const double> rates) {
  if (lambda_grid.size() != rates.size() || lambda_grid.size() < 2)
    throw std::invalid_argument("window detection needs >= 2 grid points");

  LambdaWindow out;
  double s_max = 0.0;
  std::size_t argmax = 0;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (rates[i] > s_max) {
      s_max = rates[i];
      argmax = i;
    }
  }
  if (s_max <= 0.0) return out;  // undefined

  const double cutoff = 0.9 * s_max;
  out.defined = true;
  std::size_t i = 0;
  while (i < rates.size()) {
    if (rates[i] < cutoff) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < rates.size() && rates[j + 1] >= cutoff) ++j;
    const bool has_argmax =
        std::any_of(rates.begin() + i, rates.begin() + j + 1,
                    [s_max](double r) { return r == s_max; });
    if (has_argmax) {
      out.all_windows.emplace_back(lambda_grid[i], lambda_grid[j]);
      // ties between disjoint windows: keep the one with the smallest argmax
      if (i <= argmax && argmax <= j) {
        out.lambda_lo = lambda_grid[i];
        out.lambda_hi = lambda_grid[j];
      }
    }
    i = j + 1;
  }
  return out;
}

SweepSummary summarize(std::span<const RunRecord> records, std::span<const double> thresholds) {
  if (records.empty()) throw std::invalid_argument("no records to summarize");

  std::map<double, std::vector<const RunRecord*>> groups;
  for (const auto& r : records) groups[r.lambda0].push_back(&r);

  SweepSummary summary;
  summary.thresholds.assign(thresholds.begin(), thresholds.end());

  for (const auto& [lambda0, group] : groups) {
    LambdaRow row;
    row.lambda0 = lambda0;
    row.n_runs = static_cast<std::int64_t>(group.size());

    for (double thr : thresholds) {
      ThresholdCell cell;
      for (const auto* r : group) {
        if (r->status != RunStatus::Failed && r->delta_e <= thr) ++cell.successes;
      }
      cell.rate = static_cast<double>(cell.successes) / static_cast<double>(group.size());
      cell.wilson = wilson_interval(cell.successes, row.n_runs);
      row.per_threshold.push_back(cell);
    }

    std::vector<double> energies, norms;
    for (const auto* r : group) {
      if (r->status != RunStatus::Failed && std::isfinite(r->final_energy)) {
        energies.push_back(r->final_energy);
        norms.push_back(r->final_norm);
      }
    }
    if (!energies.empty()) {
      row.median_energy = quantile(energies, 0.5);
      row.iqr_energy = quantile(energies, 0.75) - quantile(energies, 0.25);
      row.median_norm = quantile(norms, 0.5);
      row.iqr_norm = quantile(norms, 0.75) - quantile(norms, 0.25);
    } else {
      row.median_energy = row.iqr_energy = row.median_norm = row.iqr_norm =
          std::numeric_limits<double>::quiet_NaN();
    }
    summary.rows.push_back(std::move(row));
  }

  if (summary.rows.size() >= 2) {
    std::vector<double> grid;
    for (const auto& row : summary.rows) grid.push_back(row.lambda0);
    for (std::size_t t = 0; t < summary.thresholds.size(); ++t) {
      std::vector<double> rates;
      for (const auto& row : summary.rows) rates.push_back(row.per_threshold[t].rate);
      summary.windows.push_back(lambda_opt_window(grid, rates));
    }
  }
  return summary;
}

double lambda_scale(const WeightedPauliSum& h, int p) {
  if (p < 1) throw std::invalid_argument("parameter count must be positive");
  return abs_coefficient_sum(h) / static_cast<double>(p);
}

std::string summary_to_csv(const SweepSummary& summary) {
  std::ostringstream out;
  out << "lambda0,n,thr,successes,rate,wilson_lo,wilson_hi,median_E,iqr_E,median_norm,iqr_norm\n";
  for (const auto& row : summary.rows) {
    for (std::size_t t = 0; t < summary.thresholds.size(); ++t) {
      const auto& cell = row.per_threshold[t];
      out << fmt(row.lambda0) << ',' << row.n_runs << ',' << fmt(summary.thresholds[t]) << ','
          << cell.successes << ',' << fmt(cell.rate) << ',' << fmt(cell.wilson.lower) << ','
          << fmt(cell.wilson.upper) << ',' << fmt(row.median_energy) << ','
          << fmt(row.iqr_energy) << ',' << fmt(row.median_norm) << ',' << fmt(row.iqr_norm)
          << '\n';
    }
  }
  return out.str();
}

std::string curve_to_csv(const SweepSummary& summary, std::size_t threshold_index) {
  if (threshold_index >= summary.thresholds.size())
    throw std::invalid_argument("threshold index out of range");
  std::ostringstream out;
  out << "lambda0,rate,wilson_lo,wilson_hi\n";
  for (const auto& row : summary.rows) {
    const auto& cell = row.per_threshold[threshold_index];
    out << fmt(row.lambda0) << ',' << fmt(cell.rate) << ',' << fmt(cell.wilson.lower) << ','
        << fmt(cell.wilson.upper) << '\n';
  }
  return out.str();
}

std::string windows_to_json(const SweepSummary& summary) {
  nlohmann::json doc = nlohmann::json::array();
  for (std::size_t t = 0; t < summary.windows.size(); ++t) {
    const auto& w = summary.windows[t];
    nlohmann::json entry;
    entry["threshold"] = summary.thresholds[t];
    entry["defined"] = w.defined;
    if (w.defined) {
      entry["lambda_lo"] = w.lambda_lo;
      entry["lambda_hi"] = w.lambda_hi;
      nlohmann::json all = nlohmann::json::array();
      for (const auto& [a, b] : w.all_windows) all.push_back({{"lo", a}, {"hi", b}});
      entry["all_windows"] = all;
    }
    doc.push_back(entry);
  }
  return doc.dump(2) + "\n";
}

}  // namespace regvqe

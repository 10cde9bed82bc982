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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "oracles.hpp"
#include "regvqe/stats.hpp"

using namespace regvqe;

namespace {

RunRecord record_with(double lambda0, double delta_e,
                      RunStatus status = RunStatus::Converged, double energy = 0.0,
                      double norm = 1.0) {
  RunRecord r;
  r.lambda0 = lambda0;
  r.seed = static_cast<std::uint64_t>(delta_e * 1e9) ^ 0x9e37;
  r.delta_e = delta_e;
  r.status = status;
  r.final_energy = energy;
  r.final_norm = norm;
  if (status == RunStatus::Failed) {
    r.delta_e = r.final_energy = r.final_norm = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

// independent Wilson evaluation, straight from the score-interval formula
std::pair<double, double> wilson_reference(double k, double n, double z) {
  const double p = k / n;
  const double c = (p + z * z / (2 * n)) / (1 + z * z / n);
  const double d = z / (1 + z * z / n) * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n));
  return {c - d, c + d};
}

}  // namespace

TEST_CASE("threshold grid is the published ladder") {
  const auto grid = threshold_grid();
  REQUIRE(grid.size() == 7);
  CHECK(grid[0] == 0.15);
  CHECK(grid[6] == 1.5e-7);
  for (std::size_t k = 0; k + 1 < grid.size(); ++k)
    CHECK(grid[k] / grid[k + 1] == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("wilson_interval: zero successes out of 100") {
  const auto w = wilson_interval(0, 100);
  CHECK(w.lower == 0.0);
  CHECK(w.upper == doctest::Approx(0.0369935).epsilon(1e-4));
}

TEST_CASE("wilson_interval: p -> 1 - p symmetry at the boundary") {
  const auto full = wilson_interval(100, 100);
  const auto none = wilson_interval(0, 100);
  CHECK(full.upper == 1.0);
  CHECK(full.lower == doctest::Approx(1.0 - none.upper).epsilon(1e-12));
}

TEST_CASE("wilson_interval: balanced counts against the reference formula") {
  const auto w = wilson_interval(50, 100);
  const auto [lo, hi] = wilson_reference(50, 100, kZ95);
  CHECK(w.lower == doctest::Approx(lo).epsilon(1e-12));
  CHECK(w.upper == doctest::Approx(hi).epsilon(1e-12));
  CHECK(hi - lo == doctest::Approx(0.19).epsilon(0.03));
  CHECK(0.5 - w.lower == doctest::Approx(w.upper - 0.5).epsilon(1e-9));
}

TEST_CASE("wilson_interval contains the point estimate and tightens with n") {
  SplitMix64 rng(101);
  for (int round = 0; round < 50; ++round) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng.next() % 1000);
    const std::int64_t k = static_cast<std::int64_t>(rng.next() % (n + 1));
    const auto w = wilson_interval(k, n);
    const double p = static_cast<double>(k) / static_cast<double>(n);
    CHECK(w.lower <= p + 1e-15);
    CHECK(w.upper >= p - 1e-15);
    CHECK(w.lower >= 0.0);
    CHECK(w.upper <= 1.0);
  }
  double prev_width = 1.0;
  for (std::int64_t n : {10, 1000, 1000000}) {
    const auto w = wilson_interval(n / 2, n);
    CHECK(w.upper - w.lower < prev_width);
    prev_width = w.upper - w.lower;
  }
  CHECK(prev_width < 0.002);
}

TEST_CASE("wilson_interval rejects bad inputs") {
  CHECK_THROWS_AS(wilson_interval(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(wilson_interval(5, 4), std::invalid_argument);
  CHECK_THROWS_AS(wilson_interval(1, 4, 0.0), std::invalid_argument);
}

TEST_CASE("quantile matches the sorted-array oracle") {
  SplitMix64 rng(103);
  for (int round = 0; round < 30; ++round) {
    const std::size_t n = 1 + rng.next() % 40;
    std::vector<double> values(n);
    for (auto& v : values) v = 10.0 * rng.next_double() - 5.0;
    for (double q : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      CHECK(quantile(values, q) == doctest::Approx(oracles::sorted_quantile(values, q))
                                       .epsilon(1e-14));
    }
  }
}

TEST_CASE("summarize: success counting by definition") {
  std::vector<RunRecord> records{
      record_with(0.1, 0.01), record_with(0.1, 0.2), record_with(0.1, 0.001),
      record_with(0.1, 0.0, RunStatus::Failed)};
  const std::vector<double> thresholds{0.15};
  const auto summary = summarize(records, thresholds);
  REQUIRE(summary.rows.size() == 1);
  CHECK(summary.rows[0].n_runs == 4);
  CHECK(summary.rows[0].per_threshold[0].successes == 2);
  CHECK(summary.rows[0].per_threshold[0].rate == 0.5);
}

TEST_CASE("summarize: all-failed group") {
  std::vector<RunRecord> records{record_with(0.0, 0.0, RunStatus::Failed),
                                 record_with(0.0, 0.0, RunStatus::Failed)};
  const auto summary = summarize(records, threshold_grid());
  REQUIRE(summary.rows.size() == 1);
  for (const auto& cell : summary.rows[0].per_threshold) {
    CHECK(cell.successes == 0);
    CHECK(cell.wilson.lower == 0.0);
  }
}

TEST_CASE("summarize: medians and IQR against the brute-force oracle") {
  SplitMix64 rng(107);
  std::vector<RunRecord> records;
  std::vector<double> energies, norms;
  for (int k = 0; k < 37; ++k) {
    const double e = rng.next_double() * 4 - 2;
    const double nn = rng.next_double() * 3;
    energies.push_back(e);
    norms.push_back(nn);
    records.push_back(record_with(0.05, 0.5, RunStatus::Converged, e, nn));
  }
  const auto summary = summarize(records, threshold_grid());
  REQUIRE(summary.rows.size() == 1);
  const auto& row = summary.rows[0];
  CHECK(row.median_energy == doctest::Approx(oracles::sorted_quantile(energies, 0.5)));
  CHECK(row.iqr_energy == doctest::Approx(oracles::sorted_quantile(energies, 0.75) -
                                          oracles::sorted_quantile(energies, 0.25)));
  CHECK(row.median_norm == doctest::Approx(oracles::sorted_quantile(norms, 0.5)));
  CHECK(row.iqr_norm >= 0.0);
}

TEST_CASE("summarize is permutation-invariant") {
  SplitMix64 rng(109);
  std::vector<RunRecord> records;
  for (int k = 0; k < 60; ++k) {
    records.push_back(record_with(k % 3 == 0 ? 0.0 : (k % 3 == 1 ? 0.05 : 0.2),
                                  rng.next_double() * 0.3, RunStatus::Converged,
                                  rng.next_double(), rng.next_double()));
  }
  auto shuffled = records;
  for (std::size_t i = shuffled.size(); i > 1; --i)
    std::swap(shuffled[i - 1], shuffled[rng.next() % i]);
  const auto a = summarize(records, threshold_grid());
  const auto b = summarize(shuffled, threshold_grid());
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    CHECK(a.rows[r].lambda0 == b.rows[r].lambda0);
    CHECK(a.rows[r].median_energy == b.rows[r].median_energy);
    for (std::size_t t = 0; t < a.thresholds.size(); ++t)
      CHECK(a.rows[r].per_threshold[t].successes == b.rows[r].per_threshold[t].successes);
  }
}

TEST_CASE("success rates are monotone under tightening thresholds") {
  SplitMix64 rng(113);
  for (int round = 0; round < 100; ++round) {
    std::vector<RunRecord> records;
    const int n = 5 + static_cast<int>(rng.next() % 40);
    for (int k = 0; k < n; ++k) {
      const double mag = std::pow(10.0, -8.0 * rng.next_double());
      records.push_back(record_with(0.1, mag,
                                    rng.next() % 7 == 0 ? RunStatus::Failed
                                                        : RunStatus::Converged));
    }
    const auto summary = summarize(records, threshold_grid());
    const auto& cells = summary.rows[0].per_threshold;
    for (std::size_t t = 0; t + 1 < cells.size(); ++t)
      CHECK(cells[t].successes >= cells[t + 1].successes);
  }
}

TEST_CASE("lambda_opt_window: plateau around the peak") {
  const std::vector<double> grid{0.0, 0.05, 0.1, 0.15, 0.25};
  const std::vector<double> rates{0.1, 0.5, 0.52, 0.5, 0.2};
  const auto w = lambda_opt_window(grid, rates);
  REQUIRE(w.defined);
  CHECK(w.lambda_lo == 0.05);
  CHECK(w.lambda_hi == 0.15);
}

TEST_CASE("lambda_opt_window: constant rates cover the whole grid") {
  const std::vector<double> grid{0.0, 0.1, 0.2};
  const std::vector<double> rates{0.4, 0.4, 0.4};
  const auto w = lambda_opt_window(grid, rates);
  REQUIRE(w.defined);
  CHECK(w.lambda_lo == 0.0);
  CHECK(w.lambda_hi == 0.2);
}

TEST_CASE("lambda_opt_window: disjoint ties resolve to the first argmax") {
  const std::vector<double> grid{0.0, 0.1, 0.2};
  const std::vector<double> rates{0.5, 0.1, 0.5};
  const auto w = lambda_opt_window(grid, rates);
  REQUIRE(w.defined);
  CHECK(w.lambda_lo == 0.0);
  CHECK(w.lambda_hi == 0.0);
  REQUIRE(w.all_windows.size() == 2);
  CHECK(w.all_windows[1].first == 0.2);
}

TEST_CASE("lambda_opt_window: all-zero rates are undefined") {
  const std::vector<double> grid{0.0, 0.1};
  const std::vector<double> rates{0.0, 0.0};
  CHECK(!lambda_opt_window(grid, rates).defined);
}

TEST_CASE("lambda_opt_window: window is contiguous and contains an argmax") {
  SplitMix64 rng(127);
  for (int round = 0; round < 60; ++round) {
    const std::size_t n = 2 + rng.next() % 9;
    std::vector<double> grid(n), rates(n);
    for (std::size_t i = 0; i < n; ++i) {
      grid[i] = static_cast<double>(i) * 0.05;
      rates[i] = rng.next_double();
    }
    const auto w = lambda_opt_window(grid, rates);
    REQUIRE(w.defined);
    const double s_max = *std::max_element(rates.begin(), rates.end());
    bool contains_argmax = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (grid[i] >= w.lambda_lo && grid[i] <= w.lambda_hi) {
        CHECK(rates[i] >= 0.9 * s_max);
        if (rates[i] == s_max) contains_argmax = true;
      }
    }
    CHECK(contains_argmax);
  }
}

TEST_CASE("lambda_scale on the bundled systems") {
  const auto data = std::filesystem::path(REGVQE_DATA_DIR);
  CHECK(lambda_scale(load_pauli_sum(data / "h2.psum"), 40) ==
        doctest::Approx(0.072).epsilon(0.014));
  CHECK(lambda_scale(load_pauli_sum(data / "lih.psum"), 80) ==
        doctest::Approx(0.0886).epsilon(0.012));
  const auto rfim = generate_rfim({.rng_seed = 7});
  CHECK(lambda_scale(rfim, 12) == doctest::Approx(1.27).epsilon(0.11));
}

TEST_CASE("summary and curve CSV rendering") {
  std::vector<RunRecord> records{record_with(0.0, 0.01), record_with(0.0, 0.3),
                                 record_with(0.1, 0.001), record_with(0.1, 0.002)};
  const std::vector<double> thresholds{0.15, 0.015};
  const auto summary = summarize(records, thresholds);
  const auto csv = summary_to_csv(summary);
  CHECK(csv.substr(0, csv.find('\n')) ==
        "lambda0,n,thr,successes,rate,wilson_lo,wilson_hi,median_E,iqr_E,median_norm,iqr_norm");
  // one row per (lambda, threshold)
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 2);
  const auto curve = curve_to_csv(summary, 0);
  CHECK(curve.substr(0, curve.find('\n')) == "lambda0,rate,wilson_lo,wilson_hi");
  CHECK(std::count(curve.begin(), curve.end(), '\n') == 3);
  const auto windows = windows_to_json(summary);
  CHECK(windows.find("threshold") != std::string::npos);
}

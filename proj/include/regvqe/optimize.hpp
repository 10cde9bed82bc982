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
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "regvqe/objective.hpp"

namespace regvqe {

/// Minimization target: fused value + gradient evaluation, with an
/// evaluation count for budget accounting.
class MinimizationProblem {
 public:
  virtual ~MinimizationProblem() = default;

  virtual double value_and_gradient(std::span<const double> x, std::vector<double>& grad) = 0;

  /// Cost so far, in whatever unit the budget is expressed in.
  virtual std::int64_t evals() const { return calls_; }

 protected:
  std::int64_t calls_ = 0;
};

/// Adapter for plain functions (test landscapes, benchmarks).
class FunctionProblem : public MinimizationProblem {
 public:
  using ValueFn = std::function<double(std::span<const double>)>;
  using GradFn = std::function<std::vector<double>(std::span<const double>)>;

  FunctionProblem(ValueFn f, GradFn g) : f_(std::move(f)), g_(std::move(g)) {}

  double value_and_gradient(std::span<const double> x, std::vector<double>& grad) override {
    ++calls_;
    grad = g_(x);
    return f_(x);
  }

 private:
  ValueFn f_;
  GradFn g_;
};

enum class OptMethod { CG, LBFGS };

struct OptimizerConfig {
  OptMethod method = OptMethod::CG;
  int max_iters = 15;
  double grad_tolerance = 1e-2;  // infinity norm of the gradient
  int lbfgs_memory = 10;
  double wolfe_c1 = 1e-4;
  double wolfe_c2 = 0.4;  // 0.4 for CG, 0.9 for L-BFGS
  int max_linesearch = 40;
  bool gradient_check = false;  // finite-difference check at theta0

  /// Called at the start of each iteration (0-based). Return true when the
  /// objective parameters changed and cached values must be refreshed.
  std::function<bool(int)> on_iteration_start;

  /// Maps (x, f(x)) to the raw metric tracked in the trajectory and used for
  /// best-iterate selection. Defaults to f itself.
  std::function<double(std::span<const double>, double)> raw_value;

  static OptimizerConfig cg(int max_iters, double gtol = 1e-2);
  static OptimizerConfig lbfgs(int max_iters, double gtol = 1e-2, int memory = 10);
};

enum class StopReason { GradTolerance, MaxIterations, EvalBudget, LineSearchFailure, NonFinite };

struct IterationRow {
  double energy = 0.0;     // raw metric (energy in the VQE pipeline)
  double objective = 0.0;  // minimized value, penalty included
  double theta_norm = 0.0;
};

struct StageResult {
  std::vector<double> best_theta;
  double best_value = std::numeric_limits<double>::infinity();  // best raw metric
  int iterations_used = 0;
  std::int64_t evals_used = 0;
  StopReason stop = StopReason::MaxIterations;
  int skipped_curvature_pairs = 0;  // L-BFGS only
  std::vector<IterationRow> trajectory;  // entry 0 is the starting point
};

StageResult minimize(MinimizationProblem& problem, std::span<const double> theta0,
                     const OptimizerConfig& cfg);
StageResult minimize_cg(MinimizationProblem& problem, std::span<const double> theta0,
                        OptimizerConfig cfg);
StageResult minimize_lbfgs(MinimizationProblem& problem, std::span<const double> theta0,
                           OptimizerConfig cfg);

/// Two-stage pipeline: Stage A minimizes E + lambda(t)||theta||^2 with the
/// cosine schedule, Stage B refines E from Stage A's best (by raw energy)
/// iterate with lambda = 0. One evaluation budget spans both stages.
struct PipelineConfig {
  OptimizerConfig stage_a = OptimizerConfig::cg(15);
  OptimizerConfig stage_b = OptimizerConfig::cg(10);
  Schedule schedule;
  ScheduleKind schedule_kind = ScheduleKind::Cosine;
  std::int64_t eval_budget = 10000;
};

struct TwoStageResult {
  StageResult stage_a;
  StageResult stage_b;
};

TwoStageResult run_two_stage(const PipelineConfig& cfg, Objective& objective,
                             std::span<const double> theta0);

/// Optimizer-facing view of an Objective with a fixed-for-now lambda.
/// Caches the last evaluation so that a lambda change between iterations can
/// be folded in without spending quantum evaluations.
class StageProblem : public MinimizationProblem {
 public:
  explicit StageProblem(Objective& obj) : obj_(obj) {}

  void set_lambda(double lambda) { lambda_ = lambda; }
  double lambda() const { return lambda_; }

  double value_and_gradient(std::span<const double> x, std::vector<double>& grad) override;
  std::int64_t evals() const override { return obj_.eval_count(); }

 private:
  Objective& obj_;
  double lambda_ = 0.0;
  std::vector<double> cached_x_;
  double cached_energy_ = 0.0;
  std::vector<double> cached_grad_;
  bool has_cache_ = false;
};

}  // namespace regvqe

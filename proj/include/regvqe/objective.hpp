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
#include <span>
#include <stdexcept>
#include <vector>

#include "regvqe/ansatz.hpp"
#include "regvqe/pauli.hpp"

namespace regvqe {

/// Cosine decay for the regularization strength during Stage A:
///   lambda(t) = (lambda0 / 2) * (1 + cos(pi * t / t_a)),  0 <= t <= t_a,
/// clamped to exactly lambda0 at t = 0 and 0 at t >= t_a.
struct Schedule {
  double lambda0 = 0.0;
  int t_a = 1;
};

double lambda_at(const Schedule& sched, int t);

enum class ScheduleKind { Cosine, Constant, Off };
enum class GradientMode { ParameterShift, FiniteDifference };

/// Thrown by Objective when the evaluation budget would be exceeded.
/// Optimizers catch this and return their best iterate.
class EvalBudgetExhausted : public std::runtime_error {
 public:
  EvalBudgetExhausted() : std::runtime_error("energy evaluation budget exhausted") {}
};

/// Energy E(theta) = <psi(theta)|H|psi(theta)> plus the quadratic penalty
/// lambda * ||theta||^2. Counts every energy evaluation; one instance per
/// optimization run, not shared across threads.
class Objective {
 public:
  Objective(WeightedPauliSum h, AnsatzSpec spec);

  int n_params() const noexcept { return n_params_; }
  const WeightedPauliSum& hamiltonian() const noexcept { return hamiltonian_; }
  const AnsatzSpec& ansatz() const noexcept { return spec_; }

  void set_lambda(double lambda);
  double lambda() const noexcept { return lambda_; }

  void set_eval_budget(std::int64_t budget) { eval_budget_ = budget; }
  std::int64_t eval_count() const noexcept { return eval_count_; }

  GradientMode gradient_mode = GradientMode::ParameterShift;
  double fd_step = 1e-5;

  /// One energy evaluation (increments the counter; throws when the budget
  /// would be exceeded).
  double energy(std::span<const double> theta);

  /// energy(theta) + lambda * sum theta_k^2.
  double regularized(std::span<const double> theta);

  /// dE/dtheta by the configured mode (parameter shift costs exactly 2P
  /// energy evaluations; finite differences likewise).
  std::vector<double> energy_gradient(std::span<const double> theta);

  /// energy_gradient + 2 * lambda * theta.
  std::vector<double> gradient(std::span<const double> theta);

  std::vector<double> parameter_shift_gradient(std::span<const double> theta);
  std::vector<double> finite_difference_gradient(std::span<const double> theta, double step);

 private:
  WeightedPauliSum hamiltonian_;
  std::vector<kernels::CompiledTerm> compiled_;
  AnsatzSpec spec_;
  int n_params_;
  double lambda_ = 0.0;
  std::int64_t eval_count_ = 0;
  std::int64_t eval_budget_ = -1;  // < 0: unlimited

  // gate list built once; rotation angles rewritten per evaluation
  std::vector<Gate> circuit_;
  std::vector<std::size_t> rotation_gates_;  // circuit_ index of parameter k
  StateVector work_;
};

/// Central finite differences of an arbitrary scalar function.
std::vector<double> finite_difference(const std::function<double(std::span<const double>)>& f,
                                      std::span<const double> theta, double step);

double squared_norm(std::span<const double> v);

}  // namespace regvqe

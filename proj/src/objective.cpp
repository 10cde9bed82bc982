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

#include "regvqe/objective.hpp"

#include <cmath>
#include <numbers>

#include "regvqe/statevector.hpp"

namespace regvqe {

double lambda_at(const Schedule& sched, int t) {
  if (t < 0) throw std::invalid_argument("schedule time must be non-negative");
  if (sched.lambda0 < 0.0) throw std::invalid_argument("lambda0 must be non-negative");
  if (sched.t_a < 1) throw std::invalid_argument("t_a must be positive");
  if (t == 0) return sched.lambda0;
  if (t >= sched.t_a) return 0.0;
  const double x = std::numbers::pi * static_cast<double>(t) / static_cast<double>(sched.t_a);
  const double v = 0.5 * sched.lambda0 * (1.0 + std::cos(x));
  return v < 0.0 ? 0.0 : v;
}

double squared_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

Objective::Objective(WeightedPauliSum h, AnsatzSpec spec)
    : hamiltonian_(std::move(h)),
      compiled_(kernels::compile_terms(hamiltonian_)),
      spec_(spec),
      n_params_(regvqe::param_count(spec)),
      work_(spec.n_qubits) {
  if (hamiltonian_.n_qubits() != spec_.n_qubits)
    throw std::invalid_argument("Hamiltonian and ansatz qubit counts differ");
  const std::vector<double> zeros(n_params_, 0.0);
  circuit_ = build_circuit(spec_, zeros);
  for (std::size_t i = 0; i < circuit_.size(); ++i) {
    if (circuit_[i].kind != Gate::Kind::CX) rotation_gates_.push_back(i);
  }
}

void Objective::set_lambda(double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("lambda must be non-negative");
  lambda_ = lambda;
}

double Objective::energy(std::span<const double> theta) {
  if (static_cast<int>(theta.size()) != n_params_)
    throw std::invalid_argument("parameter vector size mismatch");
  if (eval_budget_ >= 0 && eval_count_ >= eval_budget_) throw EvalBudgetExhausted();
  ++eval_count_;
  for (int k = 0; k < n_params_; ++k) circuit_[rotation_gates_[k]].angle = theta[k];
  work_.reset();
  apply_circuit(work_, circuit_);
  return expectation(work_, compiled_, spec_.n_qubits);
}

double Objective::regularized(std::span<const double> theta) {
  return energy(theta) + lambda_ * squared_norm(theta);
}

std::vector<double> Objective::parameter_shift_gradient(std::span<const double> theta) {
  constexpr double kShift = std::numbers::pi / 2.0;
  std::vector<double> shifted(theta.begin(), theta.end());
  std::vector<double> grad(theta.size());
  for (std::size_t k = 0; k < theta.size(); ++k) {
    shifted[k] = theta[k] + kShift;
    const double plus = energy(shifted);
    shifted[k] = theta[k] - kShift;
    const double minus = energy(shifted);
    shifted[k] = theta[k];
    grad[k] = 0.5 * (plus - minus);
  }
  return grad;
}

std::vector<double> Objective::finite_difference_gradient(std::span<const double> theta,
                                                          double step) {
  if (step <= 0.0) throw std::invalid_argument("step must be positive");
  std::vector<double> shifted(theta.begin(), theta.end());
  std::vector<double> grad(theta.size());
  for (std::size_t k = 0; k < theta.size(); ++k) {
    shifted[k] = theta[k] + step;
    const double plus = energy(shifted);
    shifted[k] = theta[k] - step;
    const double minus = energy(shifted);
    shifted[k] = theta[k];
    grad[k] = (plus - minus) / (2.0 * step);
  }
  return grad;
}

std::vector<double> Objective::energy_gradient(std::span<const double> theta) {
  return gradient_mode == GradientMode::ParameterShift
             ? parameter_shift_gradient(theta)
             : finite_difference_gradient(theta, fd_step);
}

std::vector<double> Objective::gradient(std::span<const double> theta) {
  auto g = energy_gradient(theta);
  for (std::size_t k = 0; k < theta.size(); ++k) g[k] += 2.0 * lambda_ * theta[k];
  return g;
}

std::vector<double> finite_difference(const std::function<double(std::span<const double>)>& f,
                                      std::span<const double> theta, double step) {
  if (step <= 0.0) throw std::invalid_argument("step must be positive");
  std::vector<double> shifted(theta.begin(), theta.end());
  std::vector<double> grad(theta.size());
  for (std::size_t k = 0; k < theta.size(); ++k) {
    shifted[k] = theta[k] + step;
    const double plus = f(shifted);
    shifted[k] = theta[k] - step;
    const double minus = f(shifted);
    shifted[k] = theta[k];
    grad[k] = (plus - minus) / (2.0 * step);
  }
  return grad;
}

}  // namespace regvqe

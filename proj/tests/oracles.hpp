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

// Independent reference implementations used only by tests. Everything here
// is built from explicit Kronecker products and brute force, deliberately
// avoiding the bit-mask code paths of the library.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "regvqe/ansatz.hpp"
#include "regvqe/pauli.hpp"
#include "regvqe/rng.hpp"
#include "regvqe/statevector.hpp"

namespace regvqe::oracles {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Dense 2^n x 2^n matrix of a weighted Pauli sum via Kronecker products.
Matrix dense_operator(const WeightedPauliSum& h);

/// Dense unitary of one gate on an n-qubit register.
Matrix dense_gate(const Gate& gate, int n_qubits);

/// |0...0> evolved by dense matrix products.
Vector dense_prepare(const AnsatzSpec& spec, std::span<const double> theta);

/// <psi|H|psi> through the dense matrix.
double dense_expectation(const Vector& psi, const WeightedPauliSum& h);

/// Smallest eigenvalue through the dense matrix.
double dense_ground_energy(const WeightedPauliSum& h);

Vector to_eigen(const StateVector& s);

/// Random normalized state with reproducible amplitudes.
StateVector random_state(int n_qubits, SplitMix64& rng);

/// Random Hamiltonian with n_terms distinct random labels, coefficients in
/// [-1, 1].
WeightedPauliSum random_pauli_sum(int n_qubits, int n_terms, SplitMix64& rng);

std::vector<double> random_theta(int n, SplitMix64& rng, double lo = -3.141592653589793,
                                 double hi = 3.141592653589793);

/// Brute-force minimum of f over a uniform grid on [lo, hi).
double grid_min(const std::function<double(double)>& f, double lo, double hi, int points);

/// Sort-based type-7 quantile, written against the textbook definition.
double sorted_quantile(std::vector<double> values, double q);

double rosenbrock(std::span<const double> x);
std::vector<double> rosenbrock_grad(std::span<const double> x);

}  // namespace regvqe::oracles

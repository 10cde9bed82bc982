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

#include <complex>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "regvqe/kernels.hpp"
#include "regvqe/pauli.hpp"

namespace regvqe {

struct Gate {
  enum class Kind { RY, RZ, CX };

  Kind kind = Kind::RY;
  int qubit = 0;    // target for CX
  int control = -1; // CX only
  double angle = 0.0;

  static Gate ry(int qubit, double angle) { return {Kind::RY, qubit, -1, angle}; }
  static Gate rz(int qubit, double angle) { return {Kind::RZ, qubit, -1, angle}; }
  static Gate cx(int control, int target) { return {Kind::CX, target, control, 0.0}; }
};

/// 2^n complex amplitudes, qubit 0 = least significant index bit.
/// A StateVector is owned by a single optimization run; gate application
/// mutates in place.
class StateVector {
 public:
  explicit StateVector(int n_qubits);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const std::complex<double>> amplitudes() const noexcept { return amps_; }
  std::span<std::complex<double>> amplitudes() noexcept { return amps_; }

  /// Back to |0...0>, without reallocating.
  void reset();

  double norm() const;

 private:
  std::vector<std::complex<double>> amps_;
  int n_qubits_;
};

void apply_gate(StateVector& state, const Gate& gate);
void apply_circuit(StateVector& state, std::span<const Gate> gates);

/// <psi|H|psi> as a real number. Throws if qubit counts mismatch or the
/// accumulated imaginary part exceeds 1e-10 (non-Hermitian input).
double expectation(const StateVector& state, const WeightedPauliSum& h);
double expectation(const StateVector& state, std::span<const kernels::CompiledTerm> terms,
                   int n_qubits);

struct GroundEnergyOptions {
  int max_dense_qubits = 10;      // dense diagonalization up to here
  int max_qubits = 16;            // hard cap
  double lanczos_rel_tol = 1e-10;
  int lanczos_max_iters = 400;
};

/// Smallest eigenvalue of H. Diagonal operators stream over basis states;
/// otherwise dense diagonalization (small n) or matrix-free Lanczos.
double exact_ground_energy(const WeightedPauliSum& h, const GroundEnergyOptions& opts = {});

/// Content-addressed cache of ground energies: one `<hash>.gse` file per
/// Hamiltonian, holding a single decimal value.
class GroundEnergyCache {
 public:
  explicit GroundEnergyCache(std::filesystem::path dir);

  double get_or_compute(const WeightedPauliSum& h, const GroundEnergyOptions& opts = {});
  std::optional<double> lookup(const WeightedPauliSum& h) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace regvqe

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
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "regvqe/pauli.hpp"

namespace regvqe::kernels {

using cdouble = std::complex<double>;

/// Bit-mask form of one weighted Pauli term.
///
/// P acts on basis state |k> as  P|k> = phase(k) |k ^ x_mask>  with
/// phase(k) = i^y_count * (-1)^popcount(k & zy_mask).
struct CompiledTerm {
  double coeff = 0.0;
  std::uint64_t x_mask = 0;   // qubits carrying X or Y
  std::uint64_t zy_mask = 0;  // qubits carrying Z or Y
  int y_count = 0;            // number of Y letters, mod 4 relevant
};

std::vector<CompiledTerm> compile_terms(const WeightedPauliSum& h);

/// Serial reference kernels. These define the semantics; the omp variants
/// must agree within floating-point reduction error.
namespace serial {

void apply_ry(cdouble* amps, std::size_t dim, int qubit, double angle);
void apply_rz(cdouble* amps, std::size_t dim, int qubit, double angle);
void apply_cx(cdouble* amps, std::size_t dim, int control, int target);

cdouble expectation(const cdouble* amps, std::size_t dim, std::span<const CompiledTerm> terms);

/// Minimum of the diagonal <k|H|k> over all basis states; valid only for
/// diagonal (I/Z) operators.
double diagonal_min(std::span<const CompiledTerm> terms, int n_qubits);

/// y = H x, matrix-free.
void apply_hamiltonian(std::span<const CompiledTerm> terms, const cdouble* x, cdouble* y,
                       std::size_t dim);

}  // namespace serial

/// OpenMP kernels. Reductions use a fixed block decomposition so results do
/// not depend on the number of threads.
namespace omp {

void apply_ry(cdouble* amps, std::size_t dim, int qubit, double angle);
void apply_rz(cdouble* amps, std::size_t dim, int qubit, double angle);
void apply_cx(cdouble* amps, std::size_t dim, int control, int target);

cdouble expectation(const cdouble* amps, std::size_t dim, std::span<const CompiledTerm> terms);

double diagonal_min(std::span<const CompiledTerm> terms, int n_qubits);

void apply_hamiltonian(std::span<const CompiledTerm> terms, const cdouble* x, cdouble* y,
                       std::size_t dim);

}  // namespace omp

}  // namespace regvqe::kernels

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

#include <span>
#include <vector>

#include "regvqe/statevector.hpp"

namespace regvqe {

enum class AnsatzKind { TwoLocal, RyLayer };
enum class Entanglement { Linear, Full };

/// Circuit template. TwoLocal alternates rotation layers (Ry then Rz on each
/// qubit) with CX entangling blocks, ending on a rotation layer; RyLayer is a
/// single Ry per qubit.
struct AnsatzSpec {
  AnsatzKind kind = AnsatzKind::TwoLocal;
  int n_qubits = 0;
  int reps = 0;  // entangling-layer repetitions; must be 0 for RyLayer
  Entanglement entanglement = Entanglement::Linear;
};

/// TwoLocal: 2 * n_qubits * (reps + 1); RyLayer: n_qubits.
int param_count(const AnsatzSpec& spec);

/// Gate sequence for the bound circuit. Parameter assignment is layer-major,
/// qubit-minor, Ry before Rz within a layer. Deterministic.
std::vector<Gate> build_circuit(const AnsatzSpec& spec, std::span<const double> theta);

/// |0...0> evolved through build_circuit(spec, theta).
StateVector prepare_state(const AnsatzSpec& spec, std::span<const double> theta);

/// In-place variant reusing the caller's state buffer.
void prepare_state(const AnsatzSpec& spec, std::span<const double> theta, StateVector& state);

}  // namespace regvqe

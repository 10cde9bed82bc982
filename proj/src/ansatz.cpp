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

#include "regvqe/ansatz.hpp"

#include <stdexcept>
#include <string>

namespace regvqe {

namespace {

void validate(const AnsatzSpec& spec) {
  if (spec.n_qubits < 1) throw std::invalid_argument("ansatz needs at least one qubit");
  if (spec.reps < 0) throw std::invalid_argument("reps must be non-negative");
  if (spec.kind == AnsatzKind::RyLayer && spec.reps != 0)
    throw std::invalid_argument("RyLayer has no entangling repetitions");
}

}  // namespace

int param_count(const AnsatzSpec& spec) {
  validate(spec);
  if (spec.kind == AnsatzKind::RyLayer) return spec.n_qubits;
  return 2 * spec.n_qubits * (spec.reps + 1);
}

std::vector<Gate> build_circuit(const AnsatzSpec& spec, std::span<const double> theta) {
  const int expected = param_count(spec);
  if (static_cast<int>(theta.size()) != expected)
    throw std::invalid_argument("parameter vector has " + std::to_string(theta.size()) +
                                " entries, ansatz expects " + std::to_string(expected));

  std::vector<Gate> gates;
  const int n = spec.n_qubits;
  if (spec.kind == AnsatzKind::RyLayer) {
    gates.reserve(n);
    for (int q = 0; q < n; ++q) gates.push_back(Gate::ry(q, theta[q]));
    return gates;
  }

  int p = 0;
  for (int layer = 0; layer <= spec.reps; ++layer) {
    for (int q = 0; q < n; ++q) gates.push_back(Gate::ry(q, theta[p++]));
    for (int q = 0; q < n; ++q) gates.push_back(Gate::rz(q, theta[p++]));
    if (layer == spec.reps) break;
    if (spec.entanglement == Entanglement::Linear) {
      for (int q = 0; q + 1 < n; ++q) gates.push_back(Gate::cx(q, q + 1));
    } else {
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) gates.push_back(Gate::cx(a, b));
    }
  }
  return gates;
}

void prepare_state(const AnsatzSpec& spec, std::span<const double> theta, StateVector& state) {
  if (state.n_qubits() != spec.n_qubits)
    throw std::invalid_argument("state/ansatz qubit mismatch");
  state.reset();
  const auto gates = build_circuit(spec, theta);
  apply_circuit(state, gates);
}

StateVector prepare_state(const AnsatzSpec& spec, std::span<const double> theta) {
  StateVector state(spec.n_qubits);
  prepare_state(spec, theta, state);
  return state;
}

}  // namespace regvqe

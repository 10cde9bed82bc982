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

#include <bit>
#include <cmath>

#include "regvqe/kernels.hpp"

namespace regvqe::kernels {

std::vector<CompiledTerm> compile_terms(const WeightedPauliSum& h) {
  std::vector<CompiledTerm> out;
  out.reserve(h.terms().size());
  for (const auto& t : h.terms()) {
    CompiledTerm ct;
    ct.coeff = t.coefficient;
    const std::string& label = t.pauli.label;
    for (std::size_t q = 0; q < label.size(); ++q) {
      const std::uint64_t bit = 1ull << q;
      switch (label[q]) {
        case 'X': ct.x_mask |= bit; break;
        case 'Y': ct.x_mask |= bit; ct.zy_mask |= bit; ++ct.y_count; break;
        case 'Z': ct.zy_mask |= bit; break;
        default: break;
      }
    }
    out.push_back(ct);
  }
  return out;
}

namespace {

// i^p for p in 0..3
inline cdouble ipow(int p) {
  switch (p & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

inline double parity_sign(std::uint64_t bits) {
  return (std::popcount(bits) & 1) ? -1.0 : 1.0;
}

}  // namespace

namespace serial {

void apply_ry(cdouble* amps, std::size_t dim, int qubit, double angle) {
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  const std::size_t bit = std::size_t{1} << qubit;
  const std::size_t low_mask = bit - 1;
  for (std::size_t p = 0; p < dim / 2; ++p) {
    const std::size_t i0 = ((p & ~low_mask) << 1) | (p & low_mask);
    const std::size_t i1 = i0 | bit;
    const cdouble a0 = amps[i0];
    const cdouble a1 = amps[i1];
    amps[i0] = c * a0 - s * a1;
    amps[i1] = s * a0 + c * a1;
  }
}

void apply_rz(cdouble* amps, std::size_t dim, int qubit, double angle) {
  const cdouble e0 = std::polar(1.0, -0.5 * angle);
  const cdouble e1 = std::polar(1.0, 0.5 * angle);
  const std::size_t bit = std::size_t{1} << qubit;
  for (std::size_t i = 0; i < dim; ++i) {
    amps[i] *= (i & bit) ? e1 : e0;
  }
}

void apply_cx(cdouble* amps, std::size_t dim, int control, int target) {
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  for (std::size_t i = 0; i < dim; ++i) {
    if ((i & cbit) && !(i & tbit)) {
      std::swap(amps[i], amps[i | tbit]);
    }
  }
}

cdouble expectation(const cdouble* amps, std::size_t dim, std::span<const CompiledTerm> terms) {
  cdouble total{0.0, 0.0};
  for (const auto& t : terms) {
    const cdouble pref = ipow(t.y_count);
    cdouble acc{0.0, 0.0};
    if (t.x_mask == 0) {
      double diag = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        diag += parity_sign(k & t.zy_mask) * std::norm(amps[k]);
      }
      acc = {diag, 0.0};
    } else {
      for (std::size_t m = 0; m < dim; ++m) {
        const std::size_t k = m ^ t.x_mask;
        acc += std::conj(amps[m]) * amps[k] * parity_sign(k & t.zy_mask);
      }
      acc *= pref;
    }
    total += t.coeff * acc;
  }
  return total;
}

double diagonal_min(std::span<const CompiledTerm> terms, int n_qubits) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  double best = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    double e = 0.0;
    for (const auto& t : terms) {
      e += t.coeff * parity_sign(k & t.zy_mask);
    }
    if (k == 0 || e < best) best = e;
  }
  return best;
}

void apply_hamiltonian(std::span<const CompiledTerm> terms, const cdouble* x, cdouble* y,
                       std::size_t dim) {
  for (std::size_t m = 0; m < dim; ++m) y[m] = {0.0, 0.0};
  for (const auto& t : terms) {
    const cdouble pref = t.coeff * ipow(t.y_count);
    for (std::size_t m = 0; m < dim; ++m) {
      const std::size_t k = m ^ t.x_mask;
      y[m] += pref * parity_sign(k & t.zy_mask) * x[k];
    }
  }
}

}  // namespace serial
}  // namespace regvqe::kernels

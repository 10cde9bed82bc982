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

namespace regvqe::kernels::omp {

namespace {

// Reduction block size. Partial sums are computed per fixed block and then
// combined in block order, so the result is independent of the thread count.
constexpr std::size_t kBlock = 4096;

// Below this size the parallel-for overhead dominates.
constexpr std::size_t kMinParallelDim = std::size_t{1} << 14;

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

void apply_ry(cdouble* amps, std::size_t dim, int qubit, double angle) {
  if (dim < kMinParallelDim) {
    serial::apply_ry(amps, dim, qubit, angle);
    return;
  }
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  const std::size_t bit = std::size_t{1} << qubit;
  const std::size_t low_mask = bit - 1;
  const std::ptrdiff_t pairs = static_cast<std::ptrdiff_t>(dim / 2);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ps = 0; ps < pairs; ++ps) {
    const std::size_t p = static_cast<std::size_t>(ps);
    const std::size_t i0 = ((p & ~low_mask) << 1) | (p & low_mask);
    const std::size_t i1 = i0 | bit;
    const cdouble a0 = amps[i0];
    const cdouble a1 = amps[i1];
    amps[i0] = c * a0 - s * a1;
    amps[i1] = s * a0 + c * a1;
  }
}

void apply_rz(cdouble* amps, std::size_t dim, int qubit, double angle) {
  if (dim < kMinParallelDim) {
    serial::apply_rz(amps, dim, qubit, angle);
    return;
  }
  const cdouble e0 = std::polar(1.0, -0.5 * angle);
  const cdouble e1 = std::polar(1.0, 0.5 * angle);
  const std::size_t bit = std::size_t{1} << qubit;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(dim);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    amps[i] *= (static_cast<std::size_t>(i) & bit) ? e1 : e0;
  }
}

void apply_cx(cdouble* amps, std::size_t dim, int control, int target) {
  if (dim < kMinParallelDim) {
    serial::apply_cx(amps, dim, control, target);
    return;
  }
  const std::size_t cbit = std::size_t{1} << control;
  const std::size_t tbit = std::size_t{1} << target;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(dim);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t is = 0; is < n; ++is) {
    const std::size_t i = static_cast<std::size_t>(is);
    if ((i & cbit) && !(i & tbit)) {
      std::swap(amps[i], amps[i | tbit]);
    }
  }
}

cdouble expectation(const cdouble* amps, std::size_t dim, std::span<const CompiledTerm> terms) {
  if (dim < kMinParallelDim) {
    return serial::expectation(amps, dim, terms);
  }
  cdouble total{0.0, 0.0};
  const std::size_t n_blocks = (dim + kBlock - 1) / kBlock;
  std::vector<cdouble> partial(n_blocks);
  for (const auto& t : terms) {
    const cdouble pref = ipow(t.y_count);
    if (t.x_mask == 0) {
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t bs = 0; bs < static_cast<std::ptrdiff_t>(n_blocks); ++bs) {
        const std::size_t lo = static_cast<std::size_t>(bs) * kBlock;
        const std::size_t hi = std::min(lo + kBlock, dim);
        double acc = 0.0;
        for (std::size_t k = lo; k < hi; ++k) {
          acc += parity_sign(k & t.zy_mask) * std::norm(amps[k]);
        }
        partial[bs] = {acc, 0.0};
      }
    } else {
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t bs = 0; bs < static_cast<std::ptrdiff_t>(n_blocks); ++bs) {
        const std::size_t lo = static_cast<std::size_t>(bs) * kBlock;
        const std::size_t hi = std::min(lo + kBlock, dim);
        cdouble acc{0.0, 0.0};
        for (std::size_t m = lo; m < hi; ++m) {
          const std::size_t k = m ^ t.x_mask;
          acc += std::conj(amps[m]) * amps[k] * parity_sign(k & t.zy_mask);
        }
        partial[bs] = acc * pref;
      }
    }
    cdouble term_sum{0.0, 0.0};
    for (std::size_t b = 0; b < n_blocks; ++b) term_sum += partial[b];
    total += t.coeff * term_sum;
  }
  return total;
}

double diagonal_min(std::span<const CompiledTerm> terms, int n_qubits) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (dim < kMinParallelDim) {
    return serial::diagonal_min(terms, n_qubits);
  }
  double best = std::numeric_limits<double>::infinity();
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(dim);
#pragma omp parallel for schedule(static) reduction(min : best)
  for (std::ptrdiff_t ks = 0; ks < n; ++ks) {
    const std::size_t k = static_cast<std::size_t>(ks);
    double e = 0.0;
    for (const auto& t : terms) {
      e += t.coeff * parity_sign(k & t.zy_mask);
    }
    if (e < best) best = e;
  }
  return best;
}

void apply_hamiltonian(std::span<const CompiledTerm> terms, const cdouble* x, cdouble* y,
                       std::size_t dim) {
  if (dim < kMinParallelDim) {
    serial::apply_hamiltonian(terms, x, y, dim);
    return;
  }
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(dim);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t m = 0; m < n; ++m) y[m] = {0.0, 0.0};
  for (const auto& t : terms) {
    const cdouble pref = t.coeff * ipow(t.y_count);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ms = 0; ms < n; ++ms) {
      const std::size_t m = static_cast<std::size_t>(ms);
      const std::size_t k = m ^ t.x_mask;
      y[m] += pref * parity_sign(k & t.zy_mask) * x[k];
    }
  }
}

}  // namespace regvqe::kernels::omp

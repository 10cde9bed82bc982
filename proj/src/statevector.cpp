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

#include "regvqe/statevector.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "regvqe/rng.hpp"

namespace regvqe {

namespace {

constexpr double kImagTolerance = 1e-10;

void check_qubit(int qubit, int n_qubits) {
  if (qubit < 0 || qubit >= n_qubits)
    throw std::out_of_range("qubit index " + std::to_string(qubit) + " out of range for " +
                            std::to_string(n_qubits) + " qubits");
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 30) throw std::invalid_argument("unsupported qubit count");
  amps_.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
  amps_[0] = {1.0, 0.0};
}

void StateVector::reset() {
  std::fill(amps_.begin(), amps_.end(), std::complex<double>{0.0, 0.0});
  amps_[0] = {1.0, 0.0};
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void apply_gate(StateVector& state, const Gate& gate) {
  auto* amps = state.amplitudes().data();
  const std::size_t dim = state.dim();
  switch (gate.kind) {
    case Gate::Kind::RY:
      check_qubit(gate.qubit, state.n_qubits());
      kernels::serial::apply_ry(amps, dim, gate.qubit, gate.angle);
      break;
    case Gate::Kind::RZ:
      check_qubit(gate.qubit, state.n_qubits());
      kernels::serial::apply_rz(amps, dim, gate.qubit, gate.angle);
      break;
    case Gate::Kind::CX:
      check_qubit(gate.qubit, state.n_qubits());
      check_qubit(gate.control, state.n_qubits());
      if (gate.control == gate.qubit)
        throw std::invalid_argument("CX control equals target");
      kernels::serial::apply_cx(amps, dim, gate.control, gate.qubit);
      break;
  }
}

void apply_circuit(StateVector& state, std::span<const Gate> gates) {
  for (const auto& g : gates) apply_gate(state, g);
}

double expectation(const StateVector& state, std::span<const kernels::CompiledTerm> terms,
                   int n_qubits) {
  if (n_qubits != state.n_qubits())
    throw std::invalid_argument("qubit count mismatch: state has " +
                                std::to_string(state.n_qubits()) + ", operator has " +
                                std::to_string(n_qubits));
  const auto v =
      kernels::serial::expectation(state.amplitudes().data(), state.dim(), terms);
  if (std::abs(v.imag()) > kImagTolerance)
    throw std::runtime_error("expectation has non-negligible imaginary part " +
                             std::to_string(v.imag()));
  return v.real();
}

double expectation(const StateVector& state, const WeightedPauliSum& h) {
  const auto terms = kernels::compile_terms(h);
  return expectation(state, terms, h.n_qubits());
}

namespace {

double dense_ground_energy(const WeightedPauliSum& h) {
  const auto terms = kernels::compile_terms(h);
  const std::size_t dim = std::size_t{1} << h.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  // column k of P: P|k> = i^y (-1)^popcount((k^x) & zy) |k ^ x>; accumulate terms
  for (const auto& t : terms) {
    std::complex<double> pref{1.0, 0.0};
    switch (t.y_count & 3) {
      case 1: pref = {0.0, 1.0}; break;
      case 2: pref = {-1.0, 0.0}; break;
      case 3: pref = {0.0, -1.0}; break;
      default: break;
    }
    pref *= t.coeff;
    for (std::size_t k = 0; k < dim; ++k) {
      const std::size_t row = k ^ t.x_mask;
      const double sign = (std::popcount(k & t.zy_mask) & 1) ? -1.0 : 1.0;
      m(row, k) += pref * sign;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("dense eigensolver failed");
  return solver.eigenvalues()(0);
}

// Matrix-free Lanczos with full reorthogonalization; smallest Ritz value.
double lanczos_ground_energy(const WeightedPauliSum& h, const GroundEnergyOptions& opts) {
  const auto terms = kernels::compile_terms(h);
  const std::size_t dim = std::size_t{1} << h.n_qubits();
  using Vec = std::vector<std::complex<double>>;

  auto dot = [dim](const Vec& a, const Vec& b) {
    std::complex<double> s{0.0, 0.0};
    for (std::size_t i = 0; i < dim; ++i) s += std::conj(a[i]) * b[i];
    return s;
  };
  auto nrm = [&](const Vec& a) { return std::sqrt(std::abs(dot(a, a))); };

  std::vector<Vec> basis;
  Vec v(dim), w(dim);
  SplitMix64 rng(0x5eedc0de12345678ull);
  for (auto& a : v) a = {rng.next_double() - 0.5, rng.next_double() - 0.5};
  const double v0 = nrm(v);
  for (auto& a : v) a /= v0;

  std::vector<double> alpha, beta;
  double prev = 0.0;
  for (int it = 0; it < opts.lanczos_max_iters; ++it) {
    basis.push_back(v);
    kernels::omp::apply_hamiltonian(terms, v.data(), w.data(), dim);
    const double a = dot(basis.back(), w).real();
    alpha.push_back(a);
    // w -= alpha*v + beta*v_prev, then full reorthogonalization
    for (std::size_t i = 0; i < dim; ++i) w[i] -= a * v[i];
    if (!beta.empty()) {
      const auto& vp = basis[basis.size() - 2];
      const double b = beta.back();
      for (std::size_t i = 0; i < dim; ++i) w[i] -= b * vp[i];
    }
    for (const auto& u : basis) {
      const auto c = dot(u, w);
      for (std::size_t i = 0; i < dim; ++i) w[i] -= c * u[i];
    }

    const std::size_t k = alpha.size();
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      tri(i, i) = alpha[i];
      if (i + 1 < k) tri(i, i + 1) = tri(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(tri, Eigen::EigenvaluesOnly);
    const double lo = solver.eigenvalues()(0);
    if (it > 2 && std::abs(lo - prev) <= opts.lanczos_rel_tol * (std::abs(lo) + 1.0)) {
      return lo;
    }
    prev = lo;

    const double b = nrm(w);
    if (b < 1e-14) return lo;  // exact invariant subspace
    beta.push_back(b);
    for (std::size_t i = 0; i < dim; ++i) v[i] = w[i] / b;
  }
  throw std::runtime_error("Lanczos did not converge within iteration cap");
}

}  // namespace

double exact_ground_energy(const WeightedPauliSum& h, const GroundEnergyOptions& opts) {
  if (h.n_qubits() > opts.max_qubits)
    throw std::invalid_argument("ground energy supported up to " +
                                std::to_string(opts.max_qubits) + " qubits");
  if (h.empty()) return 0.0;
  if (h.is_diagonal()) {
    const auto terms = kernels::compile_terms(h);
    return kernels::omp::diagonal_min(terms, h.n_qubits());
  }
  if (h.n_qubits() <= opts.max_dense_qubits) return dense_ground_energy(h);
  return lanczos_ground_energy(h, opts);
}

GroundEnergyCache::GroundEnergyCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::optional<double> GroundEnergyCache::lookup(const WeightedPauliSum& h) const {
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.gse",
                static_cast<unsigned long long>(h.content_hash()));
  std::ifstream in(dir_ / name);
  if (!in) return std::nullopt;
  double v = 0.0;
  in >> v;
  if (!in) return std::nullopt;
  return v;
}

double GroundEnergyCache::get_or_compute(const WeightedPauliSum& h,
                                         const GroundEnergyOptions& opts) {
  if (auto v = lookup(h)) return *v;
  const double e = exact_ground_energy(h, opts);
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.gse",
                static_cast<unsigned long long>(h.content_hash()));
  const auto tmp = dir_ / (std::string(name) + ".tmp");
  {
    std::ofstream out(tmp);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g\n", e);
    out << buf;
  }
  std::filesystem::rename(tmp, dir_ / name);
  return e;
}

}  // namespace regvqe

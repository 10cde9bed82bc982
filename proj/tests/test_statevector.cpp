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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "oracles.hpp"
#include "regvqe/statevector.hpp"

using namespace regvqe;
using std::numbers::pi;

// Frozen once from dense diagonalization of the bundled files (the
// acceptance suite re-derives them through the Kronecker oracle).
constexpr double kH2GroundEnergy = -2.0059824384190357;
constexpr double kLiHGroundEnergy = 0.055513853018903;

namespace {
std::filesystem::path data_file(const char* name) {
  return std::filesystem::path(REGVQE_DATA_DIR) / name;
}
}  // namespace

TEST_CASE("RY(pi) flips |0> to |1>") {
  StateVector s(1);
  apply_gate(s, Gate::ry(0, pi));
  CHECK(std::abs(s.amplitudes()[0]) < 1e-15);
  CHECK(s.amplitudes()[1].real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(s.amplitudes()[1].imag()) < 1e-15);
}

TEST_CASE("RZ only changes phases") {
  SplitMix64 rng(5);
  StateVector s = oracles::random_state(3, rng);
  std::vector<double> probs;
  for (const auto& a : s.amplitudes()) probs.push_back(std::norm(a));
  apply_gate(s, Gate::rz(1, 0.7315));
  for (std::size_t i = 0; i < s.dim(); ++i)
    CHECK(std::norm(s.amplitudes()[i]) == doctest::Approx(probs[i]).epsilon(1e-13));
}

TEST_CASE("CX truth table") {
  // |10>: qubit 0 set
  StateVector s(2);
  apply_gate(s, Gate::ry(0, pi));
  apply_gate(s, Gate::cx(0, 1));
  CHECK(std::abs(s.amplitudes()[3]) == doctest::Approx(1.0).epsilon(1e-14));  // |11>

  StateVector t(2);  // control clear: no-op
  apply_gate(t, Gate::cx(0, 1));
  CHECK(std::abs(t.amplitudes()[0]) == doctest::Approx(1.0));
}

TEST_CASE("gate application matches the dense oracle") {
  SplitMix64 rng(17);
  for (int round = 0; round < 30; ++round) {
    const int n = 2 + static_cast<int>(rng.next() % 3);
    StateVector s = oracles::random_state(n, rng);
    const auto before = oracles::to_eigen(s);

    Gate g = Gate::ry(0, 0.0);
    switch (rng.next() % 3) {
      case 0: g = Gate::ry(static_cast<int>(rng.next() % n), oracles::random_theta(1, rng)[0]); break;
      case 1: g = Gate::rz(static_cast<int>(rng.next() % n), oracles::random_theta(1, rng)[0]); break;
      default: {
        const int c = static_cast<int>(rng.next() % n);
        int t = static_cast<int>(rng.next() % n);
        if (t == c) t = (t + 1) % n;
        g = Gate::cx(c, t);
      }
    }
    apply_gate(s, g);
    const auto expected = (oracles::dense_gate(g, n) * before).eval();
    const auto got = oracles::to_eigen(s);
    CHECK((expected - got).norm() < 1e-12);
  }
}

TEST_CASE("gate errors") {
  StateVector s(2);
  CHECK_THROWS_AS(apply_gate(s, Gate::ry(2, 0.1)), std::out_of_range);
  CHECK_THROWS_AS(apply_gate(s, Gate::cx(1, 1)), std::invalid_argument);
}

TEST_CASE("norm preserved by long random circuits") {
  SplitMix64 rng(23);
  StateVector s = oracles::random_state(5, rng);
  for (int k = 0; k < 1000; ++k) {
    const int q = static_cast<int>(rng.next() % 5);
    switch (rng.next() % 3) {
      case 0: apply_gate(s, Gate::ry(q, oracles::random_theta(1, rng)[0])); break;
      case 1: apply_gate(s, Gate::rz(q, oracles::random_theta(1, rng)[0])); break;
      default: apply_gate(s, Gate::cx(q, (q + 1) % 5));
    }
  }
  CHECK(std::abs(s.norm() - 1.0) < 1e-10);
}

TEST_CASE("expectation: Z eigenstate") {
  StateVector s(1);
  CHECK(expectation(s, parse_pauli_sum("1.0 Z")) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("expectation: equator state") {
  StateVector s(1);
  apply_gate(s, Gate::ry(0, pi / 2));
  CHECK(std::abs(expectation(s, parse_pauli_sum("1.0 Z"))) < 1e-12);
}

TEST_CASE("expectation matches the dense oracle on random instances") {
  SplitMix64 rng(31);
  for (int round = 0; round < 50; ++round) {
    const int n = 1 + static_cast<int>(rng.next() % 3);
    const auto h = oracles::random_pauli_sum(n, 5, rng);
    const auto s = oracles::random_state(n, rng);
    const double expected = oracles::dense_expectation(oracles::to_eigen(s), h);
    CHECK(std::abs(expectation(s, h) - expected) < 1e-10);
  }
}

TEST_CASE("expectation is linear in the Hamiltonian") {
  SplitMix64 rng(37);
  const auto h1 = oracles::random_pauli_sum(3, 4, rng);
  const auto h2 = oracles::random_pauli_sum(3, 4, rng);
  const double a = 0.75, b = -1.25;
  auto combined = h1.terms();
  for (auto& t : combined) t.coefficient *= a;
  for (auto t : h2.terms()) {
    t.coefficient *= b;
    combined.push_back(t);
  }
  const WeightedPauliSum hc(combined, 3);
  const auto s = oracles::random_state(3, rng);
  CHECK(expectation(s, hc) ==
        doctest::Approx(a * expectation(s, h1) + b * expectation(s, h2)).epsilon(1e-10));
}

TEST_CASE("expectation rejects mismatched qubit counts") {
  StateVector s(2);
  CHECK_THROWS_AS(expectation(s, parse_pauli_sum("1.0 ZZZ")), std::invalid_argument);
}

TEST_CASE("variational bound: expectation never beats the ground energy") {
  SplitMix64 rng(41);
  for (int round = 0; round < 25; ++round) {
    const int n = 1 + static_cast<int>(rng.next() % 3);
    const auto h = oracles::random_pauli_sum(n, 4, rng);
    const double e0 = exact_ground_energy(h);
    const auto s = oracles::random_state(n, rng);
    CHECK(expectation(s, h) >= e0 - 1e-9);
  }
}

TEST_CASE("exact_ground_energy: single Z") {
  CHECK(exact_ground_energy(parse_pauli_sum("1.0 Z")) == doctest::Approx(-1.0));
}

TEST_CASE("exact_ground_energy: degenerate ZZ pair") {
  CHECK(exact_ground_energy(parse_pauli_sum("-1.0 ZZ")) == doctest::Approx(-1.0));
}

TEST_CASE("exact_ground_energy: bundled H2 against the frozen dense value") {
  const auto h = load_pauli_sum(data_file("h2.psum"));
  CHECK(exact_ground_energy(h) == doctest::Approx(kH2GroundEnergy).epsilon(1e-12));
  CHECK(oracles::dense_ground_energy(h) == doctest::Approx(kH2GroundEnergy).epsilon(1e-12));
}

TEST_CASE("exact_ground_energy: bundled LiH against the frozen dense value") {
  const auto h = load_pauli_sum(data_file("lih.psum"));
  CHECK(exact_ground_energy(h) == doctest::Approx(kLiHGroundEnergy).epsilon(1e-10));
}

TEST_CASE("diagonal and dense paths agree on Z-only sums") {
  SplitMix64 rng(43);
  for (int round = 0; round < 10; ++round) {
    const int n = 2 + static_cast<int>(rng.next() % 5);
    std::vector<PauliTerm> terms;
    for (int k = 0; k < 6; ++k) {
      std::string label(n, 'I');
      for (auto& c : label)
        if (rng.next() % 2) c = 'Z';
      terms.push_back({2.0 * rng.next_double() - 1.0, PauliString(label)});
    }
    const WeightedPauliSum h(terms, n);
    REQUIRE(h.is_diagonal());
    CHECK(exact_ground_energy(h) ==
          doctest::Approx(oracles::dense_ground_energy(h)).epsilon(1e-10));
  }
}

TEST_CASE("Lanczos path agrees with dense on a padded operator") {
  // pad a 10-qubit random sum with an identity qubit: same spectrum, but
  // n = 11 routes through Lanczos
  SplitMix64 rng(47);
  const auto h10 = oracles::random_pauli_sum(10, 8, rng);
  std::vector<PauliTerm> padded;
  for (const auto& t : h10.terms()) padded.push_back({t.coefficient, PauliString(t.pauli.label + "I")});
  const WeightedPauliSum h11(padded, 11);
  REQUIRE(!h11.is_diagonal());
  const double via_lanczos = exact_ground_energy(h11);
  const double via_dense = exact_ground_energy(h10);
  CHECK(via_lanczos == doctest::Approx(via_dense).epsilon(1e-9));
}

TEST_CASE("exact_ground_energy rejects oversized operators") {
  std::vector<PauliTerm> terms{{1.0, PauliString(std::string(17, 'Z'))}};
  CHECK_THROWS_AS(exact_ground_energy(WeightedPauliSum(terms, 17)), std::invalid_argument);
}

TEST_CASE("serial and omp kernels agree") {
  SplitMix64 rng(53);
  const int n = 15;  // above the parallel threshold
  StateVector a = oracles::random_state(n, rng);
  StateVector b(n);
  std::copy(a.amplitudes().begin(), a.amplitudes().end(), b.amplitudes().begin());

  kernels::serial::apply_ry(a.amplitudes().data(), a.dim(), 7, 0.413);
  kernels::omp::apply_ry(b.amplitudes().data(), b.dim(), 7, 0.413);
  kernels::serial::apply_rz(a.amplitudes().data(), a.dim(), 3, -1.1);
  kernels::omp::apply_rz(b.amplitudes().data(), b.dim(), 3, -1.1);
  kernels::serial::apply_cx(a.amplitudes().data(), a.dim(), 2, 9);
  kernels::omp::apply_cx(b.amplitudes().data(), b.dim(), 2, 9);
  for (std::size_t i = 0; i < a.dim(); ++i)
    CHECK(a.amplitudes()[i] == b.amplitudes()[i]);  // gates are elementwise: bit-equal

  const auto h = oracles::random_pauli_sum(n, 6, rng);
  const auto terms = kernels::compile_terms(h);
  const auto es = kernels::serial::expectation(a.amplitudes().data(), a.dim(), terms);
  const auto eo = kernels::omp::expectation(b.amplitudes().data(), b.dim(), terms);
  CHECK(std::abs(es - eo) < 1e-12);

  std::vector<PauliTerm> zterms;
  for (int k = 0; k < 5; ++k) {
    std::string label(n, 'I');
    for (auto& c : label)
      if (rng.next() % 3 == 0) c = 'Z';
    zterms.push_back({2.0 * rng.next_double() - 1.0, PauliString(label)});
  }
  const WeightedPauliSum hz(zterms, n);
  const auto zc = kernels::compile_terms(hz);
  CHECK(kernels::serial::diagonal_min(zc, n) == kernels::omp::diagonal_min(zc, n));
}

TEST_CASE("ground-energy cache round-trips and is content-addressed") {
  const auto dir = std::filesystem::temp_directory_path() / "regvqe_gse_test";
  std::filesystem::remove_all(dir);
  GroundEnergyCache cache(dir);
  const auto h = parse_pauli_sum("1.0 Z\n0.25 X");
  CHECK(!cache.lookup(h).has_value());
  const double e = cache.get_or_compute(h);
  REQUIRE(cache.lookup(h).has_value());
  CHECK(*cache.lookup(h) == e);
  CHECK(cache.get_or_compute(h) == e);
  std::filesystem::remove_all(dir);
}

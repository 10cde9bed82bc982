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

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace regvqe {

/// Parse or validation failure with the offending line number when known.
class PauliFormatError : public std::runtime_error {
 public:
  PauliFormatError(std::string msg, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + std::move(msg)
                                    : std::move(msg)),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Tensor product of single-qubit Pauli operators.
///
/// The label holds one of {I, X, Y, Z} per qubit; the leftmost character is
/// qubit 0, which is the least significant bit of a basis-state index.
struct PauliString {
  std::string label;

  PauliString() = default;
  explicit PauliString(std::string lbl);

  int n_qubits() const noexcept { return static_cast<int>(label.size()); }
  bool is_diagonal() const noexcept;  // only I/Z characters

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString& a, const PauliString& b) {
    return a.label <=> b.label;
  }
};

struct PauliTerm {
  double coefficient = 0.0;
  PauliString pauli;

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
};

/// Hermitian operator H = sum_i c_i P_i with real coefficients.
///
/// Terms are canonical after construction: sorted lexicographically by label,
/// duplicates merged by coefficient addition, exact-zero coefficients dropped.
/// Immutable once built; safe to share across threads.
class WeightedPauliSum {
 public:
  explicit WeightedPauliSum(int n_qubits);
  WeightedPauliSum(std::vector<PauliTerm> terms, int n_qubits);

  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }
  int n_qubits() const noexcept { return n_qubits_; }
  bool empty() const noexcept { return terms_.empty(); }
  bool is_diagonal() const noexcept;

  /// FNV-1a hash of the canonical serialization; used for ground-energy
  /// caching and results-store consistency checks.
  std::uint64_t content_hash() const;

  friend bool operator==(const WeightedPauliSum&, const WeightedPauliSum&) = default;

 private:
  std::vector<PauliTerm> terms_;
  int n_qubits_ = 0;
};

/// Uniformly random-field Ising chain, open boundary:
///   H = -J sum_i Z_i Z_{i+1} + sum_i h_i Z_i,  h_i ~ U[field_low, field_high].
/// Defaults place E[sum_i |c_i|] at 15.2192 for n=12.
struct RfimSpec {
  int n_qubits = 12;
  double coupling_j = 1.0;
  double field_low = -0.7032;
  double field_high = 0.7032;
  std::uint64_t rng_seed = 0;
};

WeightedPauliSum parse_pauli_sum(std::string_view text);
WeightedPauliSum load_pauli_sum(const std::filesystem::path& path);
std::string serialize_pauli_sum(const WeightedPauliSum& h);
void save_pauli_sum(const WeightedPauliSum& h, const std::filesystem::path& path);

double abs_coefficient_sum(const WeightedPauliSum& h);
WeightedPauliSum generate_rfim(const RfimSpec& spec);

}  // namespace regvqe

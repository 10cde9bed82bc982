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

#include "regvqe/pauli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "regvqe/rng.hpp"

namespace regvqe {

namespace {

bool valid_pauli_char(char c) { return c == 'I' || c == 'X' || c == 'Y' || c == 'Z'; }

void format_coefficient(char* buf, std::size_t n, double v) {
  std::snprintf(buf, n, "%.17g", v);
}

}  // namespace

PauliString::PauliString(std::string lbl) : label(std::move(lbl)) {
  if (label.empty()) throw PauliFormatError("empty Pauli label");
  for (char c : label) {
    if (!valid_pauli_char(c))
      throw PauliFormatError(std::string("invalid Pauli character '") + c + "' in label " + label);
  }
}

bool PauliString::is_diagonal() const noexcept {
  return label.find_first_of("XY") == std::string::npos;
}

WeightedPauliSum::WeightedPauliSum(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("n_qubits must be positive");
}

WeightedPauliSum::WeightedPauliSum(std::vector<PauliTerm> terms, int n_qubits)
    : terms_(std::move(terms)), n_qubits_(n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("n_qubits must be positive");
  for (const auto& t : terms_) {
    if (t.pauli.n_qubits() != n_qubits_)
      throw PauliFormatError("term " + t.pauli.label + " has " +
                             std::to_string(t.pauli.n_qubits()) + " qubits, expected " +
                             std::to_string(n_qubits_));
    if (!std::isfinite(t.coefficient))
      throw PauliFormatError("non-finite coefficient for term " + t.pauli.label);
  }
  std::sort(terms_.begin(), terms_.end(),
            [](const PauliTerm& a, const PauliTerm& b) { return a.pauli < b.pauli; });
  std::vector<PauliTerm> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().pauli == t.pauli) {
      merged.back().coefficient += t.coefficient;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const PauliTerm& t) { return t.coefficient == 0.0; });
  terms_ = std::move(merged);
}

bool WeightedPauliSum::is_diagonal() const noexcept {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const PauliTerm& t) { return t.pauli.is_diagonal(); });
}

std::uint64_t WeightedPauliSum::content_hash() const {
  return fnv1a64(serialize_pauli_sum(*this));
}

WeightedPauliSum parse_pauli_sum(std::string_view text) {
  std::vector<PauliTerm> terms;
  int n_qubits = -1;
  int header_qubits = -1;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
      line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (line.empty()) continue;

    if (line.front() == '#') {
      constexpr std::string_view kQubits = "# qubits:";
      if (line.substr(0, kQubits.size()) == kQubits && terms.empty() && header_qubits < 0) {
        std::string_view rest = line.substr(kQubits.size());
        while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
        int n = 0;
        auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
        if (ec != std::errc{} || p != rest.data() + rest.size() || n < 1)
          throw PauliFormatError("malformed qubit header", line_no);
        header_qubits = n;
        n_qubits = n;
      }
      continue;
    }

    std::size_t sp = line.find(' ');
    if (sp == std::string_view::npos)
      throw PauliFormatError("expected '<coefficient> <label>'", line_no);
    std::string_view coeff_str = line.substr(0, sp);
    std::string_view label = line.substr(sp + 1);
    while (!label.empty() && label.front() == ' ') label.remove_prefix(1);
    if (label.empty() || label.find(' ') != std::string_view::npos)
      throw PauliFormatError("expected '<coefficient> <label>'", line_no);

    double coeff = 0.0;
    auto [p, ec] = std::from_chars(coeff_str.data(), coeff_str.data() + coeff_str.size(), coeff);
    if (ec != std::errc{} || p != coeff_str.data() + coeff_str.size())
      throw PauliFormatError("non-numeric coefficient '" + std::string(coeff_str) + "'", line_no);
    if (!std::isfinite(coeff)) throw PauliFormatError("non-finite coefficient", line_no);

    PauliString ps;
    try {
      ps = PauliString(std::string(label));
    } catch (const PauliFormatError& e) {
      throw PauliFormatError(e.what(), line_no);
    }
    if (n_qubits < 0) {
      n_qubits = ps.n_qubits();
    } else if (ps.n_qubits() != n_qubits) {
      throw PauliFormatError("label " + std::string(label) + " has " +
                                 std::to_string(ps.n_qubits()) + " qubits, expected " +
                                 std::to_string(n_qubits),
                             line_no);
    }
    terms.push_back({coeff, std::move(ps)});
  }
  if (n_qubits < 0) throw PauliFormatError("no qubit count: file has neither terms nor header");
  return WeightedPauliSum(std::move(terms), n_qubits);
}

WeightedPauliSum load_pauli_sum(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_pauli_sum(ss.str());
}

std::string serialize_pauli_sum(const WeightedPauliSum& h) {
  std::string out = "# qubits: " + std::to_string(h.n_qubits()) + "\n";
  char buf[40];
  for (const auto& t : h.terms()) {
    format_coefficient(buf, sizeof buf, t.coefficient);
    out += buf;
    out += ' ';
    out += t.pauli.label;
    out += '\n';
  }
  return out;
}

void save_pauli_sum(const WeightedPauliSum& h, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << serialize_pauli_sum(h);
}

double abs_coefficient_sum(const WeightedPauliSum& h) {
  double s = 0.0;
  for (const auto& t : h.terms()) s += std::abs(t.coefficient);
  return s;
}

WeightedPauliSum generate_rfim(const RfimSpec& spec) {
  if (spec.n_qubits < 2) throw std::invalid_argument("RFIM needs at least 2 qubits");
  if (spec.field_low > spec.field_high)
    throw std::invalid_argument("RFIM field bounds out of order");

  const int n = spec.n_qubits;
  std::vector<PauliTerm> terms;
  terms.reserve(2 * n - 1);
  for (int i = 0; i + 1 < n; ++i) {
    std::string label(n, 'I');
    label[i] = 'Z';
    label[i + 1] = 'Z';
    terms.push_back({-spec.coupling_j, PauliString(std::move(label))});
  }
  SplitMix64 rng(spec.rng_seed);
  for (int i = 0; i < n; ++i) {
    double h = spec.field_low + rng.next_double() * (spec.field_high - spec.field_low);
    std::string label(n, 'I');
    label[i] = 'Z';
    terms.push_back({h, PauliString(std::move(label))});
  }
  return WeightedPauliSum(std::move(terms), n);
}

}  // namespace regvqe

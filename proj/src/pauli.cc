// Copyright 2026 The stabforms Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stabforms/pauli.h"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace stabforms {

PauliOp::PauliOp(BitVec x_bits, BitVec z_bits, int s)
    : x(std::move(x_bits)), z(std::move(z_bits)), phase(static_cast<uint8_t>(((s % 4) + 4) % 4)) {
  if (x.size() != z.size()) throw std::invalid_argument("PauliOp: x/z size mismatch");
}

PauliOp PauliOp::single(size_t n, size_t q, char kind) {
  PauliOp p = identity(n);
  switch (kind) {
    case 'I':
      break;
    case 'X':
      p.x.set(q, true);
      break;
    case 'Z':
      p.z.set(q, true);
      break;
    case 'Y':
      // Y = -i Z X = i^3 Z X.
      p.x.set(q, true);
      p.z.set(q, true);
      p.phase = 3;
      break;
    default:
      throw std::invalid_argument("PauliOp::single: unknown kind");
  }
  return p;
}

bool PauliOp::is_hermitian() const { return ((phase ^ (x & z).popcount()) & 1) == 0; }

PauliOp PauliOp::adjoint() const {
  // (i^s Z^z X^x)^dagger = i^{-s} (-1)^{wt(x&z)} Z^z X^x.
  int s = (4 - phase + 2 * static_cast<int>((x & z).popcount() & 1)) & 3;
  return PauliOp(x, z, s);
}

PauliOp PauliOp::conj() const { return PauliOp(x, z, (4 - phase) & 3); }

PauliOp PauliOp::tensor(const PauliOp& o) const {
  return PauliOp(x.concat(o.x), z.concat(o.z), (phase + o.phase) & 3);
}

PauliOp PauliOp::embed(size_t n, size_t offset) const {
  if (offset + num_qubits() > n) throw std::invalid_argument("PauliOp::embed: out of range");
  PauliOp out = identity(n);
  for (size_t i = 0; i < num_qubits(); ++i) {
    out.x.set(offset + i, x.get(i));
    out.z.set(offset + i, z.get(i));
  }
  out.phase = phase;
  return out;
}

PauliOp PauliOp::restrict_to(size_t begin, size_t len) const {
  return PauliOp(x.slice(begin, len), z.slice(begin, len), 0);
}

PauliOp operator*(const PauliOp& p, const PauliOp& q) {
  if (p.num_qubits() != q.num_qubits()) throw std::invalid_argument("Pauli product: size mismatch");
  int s = (p.phase + q.phase + 2 * static_cast<int>((p.x & q.z).popcount() & 1)) & 3;
  return PauliOp(p.x ^ q.x, p.z ^ q.z, s);
}

bool commutator(const PauliOp& p, const PauliOp& q) {
  if (p.num_qubits() != q.num_qubits()) throw std::invalid_argument("commutator: size mismatch");
  return p.x.dot(q.z) ^ p.z.dot(q.x);
}

SparsePauli::SparsePauli(std::vector<uint32_t> support, PauliOp op)
    : qubits(std::move(support)), body(std::move(op)) {
  if (qubits.size() != body.num_qubits())
    throw std::invalid_argument("SparsePauli: support/body size mismatch");
  for (size_t i = 0; i + 1 < qubits.size(); ++i)
    if (qubits[i] >= qubits[i + 1])
      throw std::invalid_argument("SparsePauli: support must be strictly increasing");
}

SparsePauli SparsePauli::from_dense(const PauliOp& p) {
  std::vector<uint32_t> support;
  for (size_t i = 0; i < p.num_qubits(); ++i)
    if (p.x.get(i) || p.z.get(i)) support.push_back(static_cast<uint32_t>(i));
  PauliOp body(BitVec(support.size()), BitVec(support.size()), p.phase);
  for (size_t i = 0; i < support.size(); ++i) {
    body.x.set(i, p.x.get(support[i]));
    body.z.set(i, p.z.get(support[i]));
  }
  return SparsePauli(std::move(support), std::move(body));
}

PauliOp SparsePauli::embed(size_t n) const {
  PauliOp out = PauliOp::identity(n);
  for (size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] >= n) throw std::invalid_argument("SparsePauli::embed: support out of range");
    out.x.set(qubits[i], body.x.get(i));
    out.z.set(qubits[i], body.z.get(i));
  }
  out.phase = body.phase;
  return out;
}

SparsePauli parse_pauli(std::string_view text) {
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  int sign = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    bool neg = text[pos] == '-';
    ++pos;
    bool imag = pos < text.size() && text[pos] == 'i';
    if (imag) ++pos;
    sign = (neg ? 2 : 0) + (imag ? 1 : 0);
    if (sign == 3) sign = 3;  // -i
  }
  skip_ws();
  struct Term {
    uint32_t q;
    char kind;
  };
  std::vector<Term> terms;
  bool identity_literal = false;
  while (pos < text.size()) {
    char k = text[pos];
    if (k == 'I' && terms.empty() && !identity_literal) {
      identity_literal = true;
      ++pos;
      skip_ws();
      if (pos != text.size()) throw std::invalid_argument("parse_pauli: I must stand alone");
      break;
    }
    if (k != 'X' && k != 'Y' && k != 'Z')
      throw std::invalid_argument("parse_pauli: expected X, Y or Z term");
    ++pos;
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw std::invalid_argument("parse_pauli: term needs a qubit index");
    if (text[pos] == '0') throw std::invalid_argument("parse_pauli: qubit indices are 1-based");
    uint64_t q = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      q = q * 10 + (text[pos] - '0');
      if (q > (1u << 24)) throw std::invalid_argument("parse_pauli: qubit index too large");
      ++pos;
    }
    terms.push_back({static_cast<uint32_t>(q - 1), k});
    skip_ws();
  }
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.q < b.q; });
  for (size_t i = 0; i + 1 < terms.size(); ++i)
    if (terms[i].q == terms[i + 1].q)
      throw std::invalid_argument("parse_pauli: duplicate qubit index");
  std::vector<uint32_t> support;
  support.reserve(terms.size());
  for (const auto& t : terms) support.push_back(t.q);
  PauliOp body = PauliOp::identity(terms.size());
  int num_y = 0;
  for (size_t i = 0; i < terms.size(); ++i) {
    switch (terms[i].kind) {
      case 'X':
        body.x.set(i, true);
        break;
      case 'Z':
        body.z.set(i, true);
        break;
      case 'Y':
        body.x.set(i, true);
        body.z.set(i, true);
        ++num_y;
        break;
    }
  }
  body.phase = static_cast<uint8_t>((sign + 3 * num_y) & 3);
  return SparsePauli(std::move(support), std::move(body));
}

std::string format_pauli(const SparsePauli& p) {
  // sign * product of single-qubit letters; each Y contributes i^3 to the
  // encoded phase, so the printed sign is i^(phase + #Y).
  int num_y = static_cast<int>((p.body.x & p.body.z).popcount());
  int sign = (p.body.phase + num_y) & 3;
  static const char* kSign[4] = {"+", "+i ", "-", "-i "};
  std::ostringstream out;
  out << kSign[sign];
  if (p.qubits.empty()) {
    out << "I";
    return out.str();
  }
  for (size_t i = 0; i < p.qubits.size(); ++i) {
    bool xb = p.body.x.get(i), zb = p.body.z.get(i);
    char k = xb ? (zb ? 'Y' : 'X') : 'Z';
    if (i) out << ' ';
    out << k << (p.qubits[i] + 1);
  }
  return out.str();
}

std::string format_pauli(const PauliOp& p) { return format_pauli(SparsePauli::from_dense(p)); }

}  // namespace stabforms

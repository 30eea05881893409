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

#ifndef STABFORMS_PAULI_H
#define STABFORMS_PAULI_H

#include <cstdint>
#include <string>
#include <vector>

#include "stabforms/f2linalg.h"

namespace stabforms {

/// An n-qubit Pauli unitary P = i^phase * Z^z * X^x (batch power encoding).
struct PauliOp {
  BitVec x;
  BitVec z;
  uint8_t phase = 0;  // exponent of i, mod 4

  PauliOp() = default;
  PauliOp(BitVec x_bits, BitVec z_bits, int s);

  static PauliOp identity(size_t n) { return PauliOp(BitVec(n), BitVec(n), 0); }
  /// Single-qubit factor ('I', 'X', 'Y' or 'Z') embedded on qubit q of n.
  static PauliOp single(size_t n, size_t q, char kind);

  size_t num_qubits() const { return x.size(); }
  bool is_identity() const { return phase == 0 && x.is_zero() && z.is_zero(); }
  /// Trivial up to phase, i.e. x and z parts are both zero.
  bool is_phase_only() const { return x.is_zero() && z.is_zero(); }
  bool is_hermitian() const;

  PauliOp adjoint() const;
  /// Element-wise complex conjugate; flips the sign of every Y factor.
  PauliOp conj() const;
  PauliOp& mul_phase(int j) {
    phase = static_cast<uint8_t>((phase + j) & 3);
    return *this;
  }

  PauliOp tensor(const PauliOp& o) const;
  /// Embeds into n qubits, placing qubit i of this on qubit offset+i.
  PauliOp embed(size_t n, size_t offset) const;
  /// The factor on qubits [begin, begin+len), with phase 0.
  PauliOp restrict_to(size_t begin, size_t len) const;

  bool operator==(const PauliOp& o) const { return phase == o.phase && x == o.x && z == o.z; }
  bool operator!=(const PauliOp& o) const { return !(*this == o); }
};

PauliOp operator*(const PauliOp& p, const PauliOp& q);
/// 0 when P and Q commute, 1 when they anticommute.
bool commutator(const PauliOp& p, const PauliOp& q);

/// Pauli observable on an explicit, strictly increasing support list.
struct SparsePauli {
  std::vector<uint32_t> qubits;  // 0-based, strictly increasing
  PauliOp body;                  // acts on qubits.size() qubits

  SparsePauli() = default;
  SparsePauli(std::vector<uint32_t> support, PauliOp op);
  static SparsePauli from_dense(const PauliOp& p);

  /// Dense form on n qubits; support out of range is an error.
  PauliOp embed(size_t n) const;
  size_t weight() const { return qubits.size(); }
  uint32_t max_qubit() const { return qubits.empty() ? 0 : qubits.back(); }
};

/// Grammar: SIGN? TERM (SP TERM)*, SIGN in {+, -, +i, -i}, TERM = [XYZ][1-9][0-9]*.
/// Qubit indices are 1-based in the text form. "+I" denotes the identity.
SparsePauli parse_pauli(std::string_view text);
std::string format_pauli(const SparsePauli& p);
std::string format_pauli(const PauliOp& p);

}  // namespace stabforms

#endif  // STABFORMS_PAULI_H

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

#ifndef STABFORMS_CLIFFORD_H
#define STABFORMS_CLIFFORD_H

#include <optional>
#include <utility>
#include <vector>

#include "stabforms/pauli.h"

namespace stabforms {

/// An n-qubit Clifford unitary represented by the (2n+2)x(2n+2) binary
/// tableau M(C): rows hold Z/X images with phase bits, columns hold X/Z
/// preimages with phase bits. Stored column-major (as M(C)^T), so preimage
/// reads are row reads and image reads gather bits across rows.
///
/// Two Clifford operators have equal tableaux exactly when they are equal up
/// to a global phase; operator== compares tableaux.
class CliffordOp {
 public:
  CliffordOp() : CliffordOp(0) {}
  explicit CliffordOp(size_t n);

  static CliffordOp identity(size_t n) { return CliffordOp(n); }
  /// Builds C from per-qubit images (C X_j C^dag, C Z_j C^dag). Throws when
  /// the images are not Hermitian or fail the symplectic commutation pattern.
  static CliffordOp from_images(const std::vector<std::pair<PauliOp, PauliOp>>& xz_images);
  /// U_A with X^a -> X^{Aa} and Z^a -> Z^{A^{-T}a}; throws for singular A.
  static CliffordOp css(const BitMatrix& a);

  size_t num_qubits() const { return n_; }

  PauliOp z_image(size_t k) const;
  PauliOp x_image(size_t k) const;
  PauliOp x_preimage(size_t k) const;
  PauliOp z_preimage(size_t k) const;

  /// C P C^dag for a Hermitian Pauli observable P.
  PauliOp image(const PauliOp& p) const;
  /// C^dag P C for a Hermitian Pauli observable P.
  PauliOp preimage(const PauliOp& p) const;
  PauliOp image(const SparsePauli& p) const { return image(p.embed(n_)); }
  PauliOp preimage(const SparsePauli& p) const { return preimage(p.embed(n_)); }

  CliffordOp inverse() const;
  friend CliffordOp operator*(const CliffordOp& a, const CliffordOp& b);

  /// C <- e^{i pi P / 4} C for Hermitian P.
  void left_mult_exp(const PauliOp& p);
  void left_mult_pauli(const PauliOp& p);
  /// C <- Lambda(P, Q) C for commuting Hermitian P, Q, via the verified
  /// decomposition Lambda(P,Q) ~ e^{-i pi P/4} e^{-i pi Q/4} e^{i pi PQ/4}.
  void left_mult_ctrl_pauli(const PauliOp& p, const PauliOp& q);
  void left_mult_swap(size_t i, size_t j);
  void right_mult_swap(size_t i, size_t j);

  CliffordOp tensor(const CliffordOp& o) const;
  void add_qubits(size_t m);
  /// Removes the trailing m qubits; they must act exactly as identity.
  void remove_qubits(size_t m);

  /// In-place: requires Z_j C|0^n> = C|0^n>; afterwards C Z_j C^dag = Z_j and
  /// C X_j C^dag = X_j while C|0^n> is unchanged up to a global phase.
  void disentangle(size_t j);

  /// Batch conjugation: C X^{A v} C^dag ~ X^{Ax v} Z^{Az v} for all v.
  std::pair<BitMatrix, BitMatrix> batch_x_images(const BitMatrix& a) const;
  /// Batch conjugation: C Z^{A v} C^dag ~ X^{Ax v} Z^{Az v} for all v.
  std::pair<BitMatrix, BitMatrix> batch_z_images(const BitMatrix& a) const;

  /// When C ~ X^a Z^b up to global phase, returns (a, b).
  std::optional<std::pair<BitVec, BitVec>> as_pauli() const;
  /// Element-wise complex conjugate C*.
  CliffordOp conj() const;

  bool operator==(const CliffordOp& o) const { return n_ == o.n_ && t_ == o.t_; }
  bool operator!=(const CliffordOp& o) const { return !(*this == o); }

  /// Row-major M(C) for interchange; inverse of from_tableau_rows.
  BitMatrix tableau_rows() const { return t_.transposed(); }
  static CliffordOp from_tableau_rows(const BitMatrix& rows);

  /// Full consistency check (Hermitian rows, symplectic pattern, phases).
  bool is_valid() const;

 private:
  void debug_check() const;
  PauliOp row_pauli(size_t r) const;
  void set_row_pauli(size_t r, const PauliOp& p);
  PauliOp gather_image(size_t col) const;
  void set_image_phase(size_t col, int s);
  int image_phase(size_t col) const;
  PauliOp image_raw(const PauliOp& p) const;
  PauliOp preimage_raw(const PauliOp& p) const;
  void fill_preimage_phases();

  size_t n_ = 0;
  BitMatrix t_;  // M(C)^T
};

}  // namespace stabforms

#endif  // STABFORMS_CLIFFORD_H

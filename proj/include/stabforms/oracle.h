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

#ifndef STABFORMS_ORACLE_H
#define STABFORMS_ORACLE_H

#include <complex>
#include <vector>

#include "stabforms/circuit.h"

namespace stabforms::oracle {

using cplx = std::complex<double>;

/// Dense state vector on up to 12 qubits; qubit q is bit q of the index.
struct DenseState {
  uint32_t n = 0;
  std::vector<cplx> amp;

  static DenseState zero_state(uint32_t n);
  static DenseState basis_state(uint32_t n, uint64_t b);

  void apply_pauli(const PauliOp& p);
  void apply_exp(const PauliOp& p);
  void apply_ctrl_pauli(const PauliOp& p, const PauliOp& q);
  void apply_swap(uint32_t a, uint32_t b);
  void apply_css(const BitMatrix& m);
  void apply_clifford(const CliffordOp& c);
  /// Inserts a |0> qubit at position pos.
  void alloc(uint32_t pos);
  /// Removes qubit pos; throws when it is not |0> (within tolerance).
  void dealloc(uint32_t pos);

  double norm2() const;
};

/// |<a|b>| with both vectors as given (no normalization).
double overlap_abs(const std::vector<cplx>& a, const std::vector<cplx>& b);
/// True when a = e^{i phi} b for some phase, within tolerance.
bool equal_up_to_phase(const std::vector<cplx>& a, const std::vector<cplx>& b, double tol = 1e-8);

struct Branch {
  BitVec outcomes;
  double probability = 0;  // squared norm of the unnormalized Choi vector
  std::vector<cplx> choi;  // unnormalized
};

struct BranchTree {
  uint32_t n_in = 0, n_out = 0, n_outcomes = 0;
  std::vector<Branch> branches;  // ordered by outcome bits
};

/// Exact branch enumeration of the instrument of c: random bits branch 50/50,
/// measurements branch by projector norms; each branch records the Choi
/// vector of the branch map. Qubit/outcome caps: Choi width <= 12, <= 20
/// outcomes.
BranchTree enumerate_instrument(const StabCircuit& c);

struct EquivalenceResult {
  bool equivalent = false;
  /// Pairs of representative branch indices (into the input trees) matched
  /// after outcome compression.
  std::vector<std::pair<size_t, size_t>> bijection;
};

/// Instrument equivalence after outcome compression: classes of proportional
/// branch maps are matched by ray and by total weight.
EquivalenceResult instruments_equivalent(const BranchTree& t1, const BranchTree& t2,
                                         double tol = 1e-8);

/// Dense 2^n x 2^n matrices for small-n cross-checks.
using Matrix = std::vector<std::vector<cplx>>;
Matrix pauli_matrix(const PauliOp& p);
Matrix clifford_matrix(const CliffordOp& c);
Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix mat_adj(const Matrix& a);
bool mat_equal(const Matrix& a, const Matrix& b, double tol = 1e-8);
bool mat_equal_up_to_phase(const Matrix& a, const Matrix& b, double tol = 1e-8);

}  // namespace stabforms::oracle

#endif  // STABFORMS_ORACLE_H

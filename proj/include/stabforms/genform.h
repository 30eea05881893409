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

#ifndef STABFORMS_GENFORM_H
#define STABFORMS_GENFORM_H

#include "stabforms/circuit.h"
#include "stabforms/sim.h"

namespace stabforms {

/// General form circuit: unencode [n_in, k, L], apply X^{A_x o} Z^{A_z o} to
/// the k inner qubits, encode [n_out, k, R] with syndrome A o, where
/// o = r (+) m ranges over n_O = n_r + (n_in - k) outcome bits.
struct GeneralForm {
  uint32_t n_in = 0, n_out = 0, k = 0, n_r = 0;
  CliffordOp l, r;
  BitMatrix a;    // (n_out - k) x n_O
  BitMatrix a_x;  // k x n_O
  BitMatrix a_z;  // k x n_O
  uint32_t n_o() const { return n_r + (n_in - k); }
};

/// Affine outcome relabelling v = v0 + M o between a circuit and its general
/// form; M is in (n_r, n_m)-split reduced echelon form with full column rank.
struct OutcomeMap {
  BitMatrix m;
  BitVec v0;
};

/// Bipartite normal form of the family {C |F a>}: basis change F, number of
/// Bell pairs k across the cut, local Cliffords d (first n1 qubits) and b
/// (remaining qubits, entering as b*).
struct BipartiteFamilyForm {
  BitMatrix f;
  uint32_t k = 0;
  CliffordOp d;
  CliffordOp b;
};

/// Indicator matrix F (full row rank) for the subgroup of <gens> supported
/// inside the qubit set marked by keep.
BitMatrix support_restricted_subgroup(const std::vector<PauliOp>& gens,
                                      const std::vector<bool>& keep);

/// Basis change turning the given Paulis into a symplectic basis
/// X_1, Z_1, ..., X_m, Z_m; f and f_inv are maintained jointly.
struct SymplecticBasisChange {
  BitMatrix f, f_inv;
  std::vector<PauliOp> basis;  // the transformed operators, in order
};
SymplecticBasisChange symplectic_basis(std::vector<PauliOp> ps);

BipartiteFamilyForm bipartite_family_form(const CliffordOp& c, uint32_t n1);

/// The canonical family state (D (x) B*) applied to |a1>, Bell pairs dressed
/// by X^{a2} Z^{a4}, |a3>; used by tests to pin the circuit identity.
/// Wire order: [a1 (k1)] [bell halves (k)] [a3 (k2)] [bell halves (k)].
StabCircuit bipartite_family_state_circuit(const BipartiteFamilyForm& form, uint32_t n1,
                                           uint32_t n, const BitVec& a);

/// Recovers C from a preparation S of its Choi state (S|0^{2n}> must be the
/// Choi state of a unitary, i.e. have n Bell pairs across the middle cut).
CliffordOp clifford_from_choi(const CliffordOp& state_prep);

std::pair<GeneralForm, OutcomeMap> general_form(const StabCircuit& c);

/// Randomness compression of a general form: same L, R, k; n_r shrinks to the
/// rank of the stacked condition matrices. Actions agree for o' = fwd * o and
/// fwd * bwd = I.
struct Compression {
  GeneralForm g;
  BitMatrix fwd;  // n_O' x n_O
  BitMatrix bwd;  // n_O x n_O'
};
Compression compress(const GeneralForm& g);

/// Outcome-compression map of a circuit's instrument: v -> m*(v + v0); equal
/// labels iff equal branch maps (up to phase).
struct CompressionMap {
  BitMatrix m;
  BitVec v0;
  BitVec label(const BitVec& v) const { return m.mul(v ^ v0); }
};
CompressionMap instrument_compression_map(const StabCircuit& c);

/// Emits the general form literally as a stabilizer circuit: random bits,
/// unencoder, conditional Paulis, encoder. Outcome order is r then m.
StabCircuit realize_general_form(const GeneralForm& g);

}  // namespace stabforms

#endif  // STABFORMS_GENFORM_H

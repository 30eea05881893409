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

#ifndef STABFORMS_CIRCUIT_H
#define STABFORMS_CIRCUIT_H

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "stabforms/clifford.h"
#include "stabforms/pauli.h"

namespace stabforms {

// Stabilizer-circuit IR. Qubit positions and outcome indices are 0-based
// internally; the text format is 1-based.
struct AllocQubit {
  uint32_t pos;
};
struct DeallocQubit {
  uint32_t pos;
};
struct AllocRandomBit {};
struct UnitaryPauli {
  SparsePauli p;
};
/// e^{i pi P / 4}
struct UnitaryExp {
  SparsePauli p;
};
struct UnitaryCtrlPauli {
  SparsePauli p, q;
};
struct UnitarySwap {
  uint32_t a, b;
};
/// |a> -> |A a> on the first rows(A) qubits.
struct UnitaryCss {
  BitMatrix a;
};
/// Applies p when the parity of the listed earlier outcomes equals value.
struct CondPauli {
  SparsePauli p;
  std::vector<uint32_t> outcomes;
  bool value = true;
};
struct Measure {
  SparsePauli p;
  std::optional<SparsePauli> hint;
};

using StabOp = std::variant<AllocQubit, DeallocQubit, AllocRandomBit, UnitaryPauli, UnitaryExp,
                            UnitaryCtrlPauli, UnitarySwap, UnitaryCss, CondPauli, Measure>;

struct StabCircuit {
  uint32_t n_in = 0;
  std::vector<StabOp> ops;
};

struct CircuitInfo {
  uint32_t n_out = 0;
  uint32_t n_outcomes = 0;
  uint32_t n_max = 0;
  uint32_t n_random_bits = 0;  // explicit random-bit allocations only
};

/// Checks every structural invariant (index ranges, outcome references,
/// hermiticity, commuting controlled-Pauli operands). Throws
/// std::invalid_argument mentioning the op index on violation.
CircuitInfo validate(const StabCircuit& c);

StabCircuit parse_circuit(std::string_view text);
std::string format_circuit(const StabCircuit& c);
std::string format_op(const StabOp& op);

/// Sequential composition; b consumes a's outputs as its inputs.
StabCircuit concat(const StabCircuit& a, const StabCircuit& b);

/// Zero-input circuit preparing Bell pairs and applying c to the first half.
/// Outputs are the n_out(c) circuit outputs followed by the n_in kept halves.
StabCircuit choi_circuit(const StabCircuit& c);

/// An [n, k, C] stabilizer code: stabilizer generators are C Z_i C^dag.
struct EncodingSpec {
  uint32_t n = 0;
  uint32_t k = 0;
  CliffordOp c;
};

/// k -> n qubits: allocate n-k random bits m, prepare |m>, apply C.
StabCircuit encoder(const EncodingSpec& spec);
/// n -> k qubits: apply C^dag, destructively Z-measure the first n-k qubits.
StabCircuit unencoder(const EncodingSpec& spec);

/// For P in the normalizer of the code: C^dag P C = Z^g (x) L, exactly.
/// Throws when P is outside the normalizer.
std::pair<BitVec, PauliOp> logical_map(const EncodingSpec& spec, const PauliOp& p);

/// Commutes every conditional Pauli out the back of the circuit; see the
/// returned relation in PauliPropagation.
struct PauliPropagation {
  StabCircuit circuit;  // c with conditional Paulis removed
  BitMatrix a_x, a_z;   // trailing Pauli X^{A_x v + v_x} Z^{A_z v + v_z}
  BitVec v_x, v_z;
  BitMatrix m;  // new outcomes: v' = M v + v0; unit lower-triangular
  BitVec v0;
};
PauliPropagation pauli_propagation(const StabCircuit& c);

/// Exact synthesis of a Clifford into exp/swap/Pauli ops; the op sequence
/// reproduces the tableau of c exactly when accumulated left to right.
std::vector<StabOp> clifford_to_ops(const CliffordOp& c);

/// Accumulates the unitary ops (no alloc/measure/cond) of a circuit into a
/// tableau; used by tests and synthesis checks.
CliffordOp ops_to_clifford(const std::vector<StabOp>& ops, size_t n);

}  // namespace stabforms

#endif  // STABFORMS_CIRCUIT_H

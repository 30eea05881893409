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

#ifndef STABFORMS_LOGICAL_H
#define STABFORMS_LOGICAL_H

#include "stabforms/verify.h"

namespace stabforms {

enum class NotLogicalReason {
  kSyndromeRandom,
  kSyndromeInputDependent,
  kSyndromeDependsOnRandomness,
  kNonzeroOffset,
};

const char* not_logical_reason_name(NotLogicalReason r);

struct LogicalActionResult {
  bool logical = false;
  NotLogicalReason reason = NotLogicalReason::kSyndromeRandom;
  std::string detail;
  /// Correction appended to the circuit itself (output register of c).
  std::optional<Correction> correction;

  /// The logical action as a general form on k_in -> k_out qubits, with
  /// outcome map v = v_l0 + m_l * o_l for the circuit's own outcome vector v.
  GeneralForm gen;
  BitMatrix m_l;
  BitVec v_l0;
  /// Difference data for nonzero input syndrome s_in: the output state gains
  /// X^{d_a_x s} Z^{d_a_z s}, outcomes shift by d_m s, and the output
  /// syndrome is d_a s.
  BitMatrix d_a_x, d_a_z, d_a, d_m;
};

LogicalActionResult logical_action(const StabCircuit& c, const EncodingSpec& in_code,
                                   const EncodingSpec& out_code);

struct LogicalVerifyResult {
  enum class Status { kNotLogical, kNotEquivalent, kTrue } status = Status::kNotLogical;
  LogicalActionResult action;
  ComparisonVerdict cmp;  // populated unless kNotLogical
  // When kTrue: logical action of c at outcome v matches c_ref at v_ref iff
  // m*(v + u) = m_ref*(v_ref + u_ref).
  BitMatrix m, m_ref;
  BitVec u, u_ref;
};

LogicalVerifyResult verify_logical(const StabCircuit& c, const EncodingSpec& in_code,
                                   const EncodingSpec& out_code, const StabCircuit& c_ref);

/// Partition of input-code syndromes by the logical fault they cause:
/// l0_basis spans the harmless syndromes; each completion basis vector w has
/// the fault label (d_a_x w, d_a_z w, outcome-flip m_l^{(-1)} d_m w).
struct SyndromeClassification {
  BitMatrix l0_basis;
  BitMatrix rep_basis;
  BitMatrix rep_fault_x, rep_fault_z, rep_outcome_flip;
};

SyndromeClassification classify_syndromes(const LogicalActionResult& res);

}  // namespace stabforms

#endif  // STABFORMS_LOGICAL_H

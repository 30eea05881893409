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

#ifndef STABFORMS_VERIFY_H
#define STABFORMS_VERIFY_H

#include <optional>
#include <string>

#include "stabforms/genform.h"

namespace stabforms {

/// Relation between two (un)encoding circuits of equivalent codes: the first
/// encoder with syndrome m1 equals C_delta X^{A_x m2} Z^{A_z m2} followed by
/// the second encoder with syndrome m2, where m1 = m0 + A m2.
struct EncodingRelation {
  bool related = false;
  std::string why_not;
  CliffordOp c_delta;
  BitMatrix a, a_x, a_z;
  BitVec m0;
};

EncodingRelation relate_encodings(const EncodingSpec& s1, const EncodingSpec& s2);

enum class FailStage {
  kCodeMismatch,
  kCliffordDiff,
  kPauliDiff,
  kCondOnMeasDiff,
  kCondOnRandDiff,
};

const char* fail_stage_name(FailStage s);

/// Correction ops to append to the first circuit to reach equivalence.
/// Qubit indices address the first circuit's output register; conditional
/// outcome references index its outcome vector.
struct Correction {
  std::vector<StabOp> ops;
  std::string note;
};

struct ComparisonVerdict {
  bool equivalent = false;
  FailStage stage = FailStage::kCodeMismatch;
  std::string reason;
  std::optional<Correction> correction;
  // When equivalent: actions match iff m1*(v1 + u1) = m2*(v2 + u2), and a
  // circuit's own outcomes act identically iff m_j*(v - v') = 0.
  BitMatrix m1, m2;
  BitVec u1, u2;
};

/// Alg.-level comparison of two general form circuits. Correction outcome
/// references use the realized general form's outcome order (r then m).
ComparisonVerdict compare_general_forms(const GeneralForm& g1, const GeneralForm& g2);

/// Whole-circuit comparison via general forms; corrections are re-based onto
/// the first circuit's own outcome vector.
ComparisonVerdict compare_circuits(const StabCircuit& c1, const StabCircuit& c2);

}  // namespace stabforms

#endif  // STABFORMS_VERIFY_H

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

#ifndef STABFORMS_SIM_H
#define STABFORMS_SIM_H

#include "stabforms/circuit.h"

namespace stabforms {

/// Outcome-specific simulation result: the output state for outcome v is
/// co|0^{n_out}>; p_half[l] marks outcomes with conditional probability 1/2.
struct SpecificResult {
  std::vector<bool> p_half;
  CliffordOp co;
  BitVec v;
};

/// Outcome-complete simulation result: for every r, co|A r> is the output
/// state for outcome v0 + M r. M^T is in reduced row echelon form, M has full
/// column rank, and v0 vanishes on the row rank profile of M.
struct CompleteResult {
  std::vector<bool> p_half;
  CliffordOp co;
  BitMatrix a;   // n_out x n_r
  BitMatrix m;   // n_outcomes x n_r
  BitVec v0;
  size_t n_r = 0;
};

/// Simulates a zero-input circuit along the outcome path selected by vtilde
/// (random outcomes take their vtilde bit; deterministic ones are computed).
SpecificResult simulate_specific(const StabCircuit& c, const BitVec& vtilde);

/// Simulates a zero-input circuit over all outcome paths at once.
CompleteResult simulate_complete(const StabCircuit& c);

/// Same contract as simulate_complete, built from n_r + 1 outcome-specific
/// runs.
CompleteResult simulate_complete_via_specific(const StabCircuit& c);

}  // namespace stabforms

#endif  // STABFORMS_SIM_H

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

#ifndef STABFORMS_CODEDEFORM_H
#define STABFORMS_CODEDEFORM_H

#include "stabforms/genform.h"

namespace stabforms {

/// Independent commuting Pauli observables generating a stabilizer group
/// (signs tracked, -I excluded by independence).
struct StabilizerGroup {
  uint32_t n = 0;
  std::vector<PauliOp> gens;

  size_t num_qubits() const { return n; }
  /// Throws when the generators are not Hermitian, commuting and independent.
  void validate() const;
  /// Signed membership test; returns the indicator vector when p is a product
  /// of the generators with matching sign.
  std::optional<BitVec> member(const PauliOp& p) const;
};

/// Ten ordered lists forming a common symplectic basis of S and M:
/// S = <z_delta u z_cap u z_s>, M = <x_delta u z_cap u z_m>.
struct CommonSymplecticBasis {
  uint32_t n = 0;
  std::vector<PauliOp> z_delta, x_delta, z_cap, x_cap, z_s, x_s, z_m, x_m, z, x;

  size_t k_delta() const { return z_delta.size(); }
  size_t k_cap() const { return z_cap.size(); }
  size_t k_s() const { return z_s.size(); }
  size_t k_m() const { return z_m.size(); }
  size_t k_free() const { return z.size(); }
};

/// Throws when the signed intersection of the groups is inconsistent (then no
/// common symplectic basis exists).
CommonSymplecticBasis common_symplectic_basis(const StabilizerGroup& s, const StabilizerGroup& m);

/// Measures x_delta, z_cap, z_m, then applies z_delta_j conditioned on the
/// x_delta_j outcome and x_m_j conditioned on the z_m_j outcome.
StabCircuit build_deformation_circuit(const CommonSymplecticBasis& b);

/// Measures z_delta, z_cap, z_s.
StabCircuit build_syndrome_circuit(const CommonSymplecticBasis& b);

enum class OutcomeRole { kRandom, kZero, kLogical };

struct AnalyticLogicalAction {
  GeneralForm gen;  // zero random bits, zero condition matrices
  /// One role per outcome of the deformation circuit; logical outcomes map,
  /// in order, onto the general form's measurement outcome vector m.
  std::vector<OutcomeRole> roles;
  std::vector<size_t> m_positions;
};

/// Analytic logical action of the deformation circuit for in_code with group
/// S and any out_code with group inside M * (S n M^perp); checked, the error
/// names the violating generator.
AnalyticLogicalAction analytic_logical_action(const CommonSymplecticBasis& b,
                                              const EncodingSpec& in_code,
                                              const EncodingSpec& out_code);

struct TwoGroupForm {
  GeneralForm gen;
  /// Positions of the outcomes of syndrome-then-deformation feeding m.
  std::vector<size_t> m_positions;
  /// The z_cap remeasurement outcomes equal the first-pass ones.
  std::vector<std::pair<size_t, size_t>> redundant_pairs;
  std::vector<size_t> random_positions;
};

/// General form of syndrome extraction followed by the deformation circuit.
TwoGroupForm two_group_general_form(const CommonSymplecticBasis& b);

struct SurgeryInstance {
  StabCircuit circuit;       // two-step lattice surgery
  EncodingSpec code_s;       // [2d, 2] pair of repetition codes
  EncodingSpec code_m;       // [2d, 1] coupled repetition code
  StabCircuit reference;     // measure X1 X2; cond Z1 on outcome 1
  StabilizerGroup group_s, group_m;
  CommonSymplecticBasis basis_sm, basis_ms;
  /// The worked example's explicit choice of basis for (S_d, M_d).
  CommonSymplecticBasis basis_sm_example;
};

SurgeryInstance repetition_surgery(uint32_t d);

/// Deterministic encoding unitary whose first n-k Z images are the given
/// generators.
EncodingSpec encoding_from_group(const StabilizerGroup& g);

/// Completes prescribed Z images (all n) plus a partial set of X images into
/// a full Clifford; missing X images are solved for deterministically.
CliffordOp complete_to_clifford(const std::vector<PauliOp>& z_images,
                                const std::vector<std::optional<PauliOp>>& x_images);

}  // namespace stabforms

#endif  // STABFORMS_CODEDEFORM_H

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

#include "stabforms/logical.h"

#include <stdexcept>

namespace stabforms {

const char* not_logical_reason_name(NotLogicalReason r) {
  switch (r) {
    case NotLogicalReason::kSyndromeRandom:
      return "syndrome-random";
    case NotLogicalReason::kSyndromeInputDependent:
      return "syndrome-input-dependent";
    case NotLogicalReason::kSyndromeDependsOnRandomness:
      return "syndrome-depends-on-circuit-randomness";
    case NotLogicalReason::kNonzeroOffset:
      return "nonzero-offset";
  }
  return "?";
}

namespace {

// Leading row of each column: for a split reduced echelon matrix these are
// the row rank profiles of the left and right parts.
std::vector<size_t> column_leads(const BitMatrix& m, size_t c0, size_t nc) {
  std::vector<size_t> leads;
  for (size_t j = c0; j < c0 + nc; ++j) {
    for (size_t i = 0; i < m.rows(); ++i)
      if (m.get(i, j)) {
        leads.push_back(i);
        break;
      }
  }
  return leads;
}

}  // namespace

LogicalActionResult logical_action(const StabCircuit& c, const EncodingSpec& in_code,
                                   const EncodingSpec& out_code) {
  CircuitInfo info = validate(c);
  if (c.n_in != in_code.n || info.n_out != out_code.n)
    throw std::invalid_argument("logical_action: circuit does not fit the codes");
  uint32_t r_in = in_code.n - in_code.k;
  uint32_t r_out = out_code.n - out_code.k;
  uint32_t n_m_c = info.n_outcomes;

  StabCircuit composite = concat(concat(encoder(in_code), c), unencoder(out_code));
  auto [gen, map] = general_form(composite);
  const BitMatrix& mp = map.m;
  uint32_t n_r_p = gen.n_r;

  LogicalActionResult res;
  // The first r_in random bits of the composite are s_in, so columns
  // [0, r_in) of M' carry the input-syndrome dependence. A syndrome row may
  // depend on nothing else: any other nonzero column means the circuit can
  // leave the code space on some zero-input-syndrome path.
  auto left_leads = column_leads(mp, 0, n_r_p);
  for (uint32_t j = 0; j < r_out; ++j) {
    size_t row = r_in + n_m_c + j;
    BitVec rand_seg = mp.row(row).slice(r_in, n_r_p - r_in);
    BitVec meas_seg = mp.row(row).slice(n_r_p, mp.cols() - n_r_p);
    if (rand_seg.is_zero() && meas_seg.is_zero()) continue;
    bool fresh = false;  // the row is the first appearance of a random bit
    for (size_t l : left_leads) fresh = fresh || l == row;
    if (fresh) {
      res.reason = NotLogicalReason::kSyndromeRandom;
      res.detail = "output syndrome bit " + std::to_string(j + 1) + " is a random outcome";
      return res;
    }
    res.reason = meas_seg.is_zero() ? NotLogicalReason::kSyndromeDependsOnRandomness
                                    : NotLogicalReason::kSyndromeInputDependent;
    res.detail = "output syndrome bit " + std::to_string(j + 1) +
                 (meas_seg.is_zero() ? " depends on random outcomes of the circuit"
                                     : " depends on measured observables");
    // Correct by flipping stabilizer j of the output code conditioned on the
    // circuit outcomes that carry the offending bits: the dependence on the
    // composite's outcomes o_L lifts through v = v_L0 + M_L o_L (at zero
    // input syndrome).
    BitMatrix m_mid(n_m_c, mp.cols() - r_in);
    for (uint32_t i = 0; i < n_m_c; ++i) m_mid.row(i) = mp.row(r_in + i).slice(r_in, mp.cols() - r_in);
    if (rank_of(m_mid) == m_mid.cols()) {
      BitVec c_ol = mp.row(row).slice(r_in, mp.cols() - r_in);
      BitVec mask = left_inverse(m_mid).transposed().mul(c_ol);
      BitVec v_mid = map.v0.slice(r_in, n_m_c);
      Correction corr;
      corr.note = "conditional correction on the circuit's outcomes";
      PauliOp p = out_code.c.image(PauliOp::single(out_code.n, j, 'X'));
      std::vector<uint32_t> refs;
      for (size_t t : mask.support()) refs.push_back(static_cast<uint32_t>(t));
      if (!refs.empty())
        corr.ops.push_back(CondPauli{SparsePauli::from_dense(p), refs, !mask.dot(v_mid)});
      res.correction = std::move(corr);
    }
    return res;
  }
  {
    BitVec off = map.v0.slice(r_in + n_m_c, r_out);
    if (!off.is_zero()) {
      res.reason = NotLogicalReason::kNonzeroOffset;
      res.detail = "output syndrome is nonzero for zero input syndrome";
      Correction corr;
      corr.note = "fixed Pauli correction on the circuit's output register";
      PauliOp fix = PauliOp::identity(out_code.n);
      for (size_t j : off.support())
        fix = fix * out_code.c.image(PauliOp::single(out_code.n, j, 'X'));
      corr.ops.push_back(UnitaryPauli{SparsePauli::from_dense(fix)});
      res.correction = std::move(corr);
      return res;
    }
  }

  res.logical = true;
  res.d_a = BitMatrix(r_out, r_in);
  for (uint32_t j = 0; j < r_out; ++j)
    res.d_a.row(j) = mp.row(r_in + n_m_c + j).slice(0, r_in);
  res.gen = gen;
  res.gen.n_r = n_r_p - r_in;
  res.gen.a = gen.a.cols_slice(r_in, gen.a.cols() - r_in);
  res.gen.a_x = gen.a_x.cols_slice(r_in, gen.a_x.cols() - r_in);
  res.gen.a_z = gen.a_z.cols_slice(r_in, gen.a_z.cols() - r_in);
  res.gen.n_in = in_code.k;
  res.gen.n_out = out_code.k;

  BitMatrix da_t = gen.a.cols_slice(0, r_in);
  BitMatrix dax_t = gen.a_x.cols_slice(0, r_in);
  BitMatrix daz_t = gen.a_z.cols_slice(0, r_in);
  auto [x1, z1] = gen.r.batch_x_images(BitMatrix::vstack(da_t, dax_t));
  auto [x2, z2] = gen.r.batch_z_images(
      BitMatrix::vstack(BitMatrix(out_code.k - gen.k, r_in), daz_t));
  res.d_a_x = x1 + x2;
  res.d_a_z = z1 + z2;

  res.m_l = BitMatrix(n_m_c, mp.cols() - r_in);
  res.d_m = BitMatrix(n_m_c, r_in);
  for (uint32_t i = 0; i < n_m_c; ++i) {
    res.m_l.row(i) = mp.row(r_in + i).slice(r_in, mp.cols() - r_in);
    res.d_m.row(i) = mp.row(r_in + i).slice(0, r_in);
  }
  res.v_l0 = map.v0.slice(r_in, n_m_c);
  return res;
}

LogicalVerifyResult verify_logical(const StabCircuit& c, const EncodingSpec& in_code,
                                   const EncodingSpec& out_code, const StabCircuit& c_ref) {
  CircuitInfo ref_info = validate(c_ref);
  if (c_ref.n_in != in_code.k || ref_info.n_out != out_code.k)
    throw std::invalid_argument("verify_logical: reference register sizes do not match the codes");
  LogicalVerifyResult out;
  out.action = logical_action(c, in_code, out_code);
  if (!out.action.logical) {
    out.status = LogicalVerifyResult::Status::kNotLogical;
    return out;
  }
  auto [g_ref, map_ref] = general_form(c_ref);
  out.cmp = compare_general_forms(out.action.gen, g_ref);
  if (!out.cmp.equivalent) {
    out.status = LogicalVerifyResult::Status::kNotEquivalent;
    return out;
  }
  out.status = LogicalVerifyResult::Status::kTrue;
  BitMatrix ml_inv = left_inverse(out.action.m_l);
  BitMatrix mref_inv = left_inverse(map_ref.m);
  out.m = out.cmp.m1 * ml_inv;
  out.u = out.action.v_l0 ^ out.action.m_l.mul(out.cmp.u1);
  out.m_ref = out.cmp.m2 * mref_inv;
  out.u_ref = map_ref.v0 ^ map_ref.m.mul(out.cmp.u2);
  return out;
}

SyndromeClassification classify_syndromes(const LogicalActionResult& res) {
  if (!res.logical) throw std::invalid_argument("classify_syndromes: result is not logical");
  BitMatrix flip = left_inverse(res.m_l) * res.d_m;
  BitMatrix stacked = BitMatrix::vstack(BitMatrix::vstack(res.d_a_x, res.d_a_z), flip);
  SyndromeClassification out;
  out.l0_basis = kernel_basis(stacked);
  size_t r_in = stacked.cols();
  BitMatrix completed = full_rank_completion(out.l0_basis);
  out.rep_basis = completed.rows_slice(out.l0_basis.rows(), r_in - out.l0_basis.rows());
  BitMatrix reps_t = out.rep_basis.transposed();
  out.rep_fault_x = (res.d_a_x * reps_t).transposed();
  out.rep_fault_z = (res.d_a_z * reps_t).transposed();
  out.rep_outcome_flip = (flip * reps_t).transposed();
  return out;
}

}  // namespace stabforms

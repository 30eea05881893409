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

#include "stabforms/verify.h"

#include <stdexcept>

namespace stabforms {

const char* fail_stage_name(FailStage s) {
  switch (s) {
    case FailStage::kCodeMismatch:
      return "code-mismatch";
    case FailStage::kCliffordDiff:
      return "clifford-diff";
    case FailStage::kPauliDiff:
      return "pauli-diff";
    case FailStage::kCondOnMeasDiff:
      return "cond-on-meas-diff";
    case FailStage::kCondOnRandDiff:
      return "cond-on-rand-diff";
  }
  return "?";
}

EncodingRelation relate_encodings(const EncodingSpec& s1, const EncodingSpec& s2) {
  EncodingRelation rel;
  if (s1.n != s2.n || s1.k != s2.k) {
    rel.why_not = "code dimensions do not match";
    return rel;
  }
  uint32_t n = s1.n, k = s1.k, r = n - k;
  CliffordOp c = s2.c.inverse() * s1.c;
  rel.a = BitMatrix(r, r);
  rel.a_x = BitMatrix(k, r);
  rel.a_z = BitMatrix(k, r);
  rel.m0 = BitVec(r);
  for (uint32_t j = 0; j < r; ++j) {
    PauliOp p = c.z_image(j);
    if (!p.x.is_zero() || !p.z.slice(r, k).is_zero()) {
      rel.why_not = "stabilizer groups differ";
      return rel;
    }
    rel.a.row(j) = p.z.slice(0, r);
    rel.m0.set(j, p.phase == 2);
  }
  std::vector<std::pair<PauliOp, PauliOp>> imgs(k);
  for (uint32_t j = 0; j < k; ++j) {
    PauliOp qz = c.z_image(r + j);
    PauliOp qx = c.x_image(r + j);
    if (!qz.x.slice(0, r).is_zero() || !qx.x.slice(0, r).is_zero())
      throw std::runtime_error("relate_encodings: logical image leaks X onto the syndrome block");
    rel.a_x.row(j) = qz.z.slice(0, r);
    rel.a_z.row(j) = qx.z.slice(0, r);
    imgs[j] = {PauliOp(qx.x.slice(r, k), qx.z.slice(r, k), qx.phase),
               PauliOp(qz.x.slice(r, k), qz.z.slice(r, k), qz.phase)};
  }
  rel.c_delta = CliffordOp::from_images(imgs);
  rel.related = true;
  return rel;
}

namespace {

BitMatrix as_col(const BitVec& v) {
  BitMatrix m(v.size(), 1);
  for (size_t i : v.support()) m.set(i, 0, true);
  return m;
}

// Fabricates a measurement-free general form so compress() can canonicalize a
// set of condition matrices over their random-bit columns.
Compression compress_condition_block(const BitMatrix& b, const BitMatrix& bx,
                                     const BitMatrix& bz, uint32_t k) {
  GeneralForm tmp;
  tmp.n_in = k;
  tmp.n_out = k + static_cast<uint32_t>(b.rows());
  tmp.k = k;
  tmp.n_r = static_cast<uint32_t>(b.cols());
  tmp.a = b;
  tmp.a_x = bx;
  tmp.a_z = bz;
  return compress(tmp);
}

// Builds the output-register Pauli R (basis_j) R^dag for the j-th row of the
// (syndrome | inner-X | inner-Z) block stack.
PauliOp correction_basis_pauli(const GeneralForm& g2, size_t block, size_t j) {
  uint32_t n_out = g2.n_out, k = g2.k;
  PauliOp base = block == 0 ? PauliOp::single(n_out, j, 'X')
                 : block == 1 ? PauliOp::single(n_out, n_out - k + j, 'X')
                              : PauliOp::single(n_out, n_out - k + j, 'Z');
  return g2.r.image(base);
}

void emit_conditional(std::vector<StabOp>& ops, const PauliOp& p, const BitVec& mask,
                      bool value) {
  SparsePauli sp = SparsePauli::from_dense(p);
  if (mask.is_zero()) {
    if (!value) ops.push_back(UnitaryPauli{std::move(sp)});
    return;
  }
  std::vector<uint32_t> refs;
  for (size_t o : mask.support()) refs.push_back(static_cast<uint32_t>(o));
  ops.push_back(CondPauli{std::move(sp), std::move(refs), value});
}

}  // namespace

ComparisonVerdict compare_general_forms(const GeneralForm& g1, const GeneralForm& g2) {
  if (g1.n_in != g2.n_in || g1.n_out != g2.n_out)
    throw std::invalid_argument("compare_general_forms: register sizes differ");
  ComparisonVerdict out;

  EncodingRelation rel_l =
      relate_encodings({g1.n_in, g1.k, g1.l}, {g2.n_in, g2.k, g2.l});
  if (!rel_l.related) {
    out.stage = FailStage::kCodeMismatch;
    out.reason = "input-side codes are not equivalent: " + rel_l.why_not;
    return out;
  }
  EncodingRelation rel_r =
      relate_encodings({g1.n_out, g1.k, g1.r}, {g2.n_out, g2.k, g2.r});
  if (!rel_r.related) {
    out.stage = FailStage::kCodeMismatch;
    out.reason = "output-side codes are not equivalent: " + rel_r.why_not;
    return out;
  }
  uint32_t k = g1.k;
  uint32_t n_m = g1.n_in - k;  // measurement outcomes of either form
  uint32_t n_r1 = g1.n_r, n_r2 = g2.n_r;
  const CliffordOp& c_l = rel_l.c_delta;
  const CliffordOp& c_r = rel_r.c_delta;

  CliffordOp diff = c_l.inverse() * c_r;
  auto pauli_diff = diff.as_pauli();
  if (!pauli_diff) {
    out.stage = FailStage::kCliffordDiff;
    out.reason = "general forms differ by a Clifford unitary on the inner qubits";
    Correction corr;
    corr.note = "Clifford correction on the output register";
    CliffordOp inner = c_l * c_r.inverse();
    CliffordOp u = g2.r * CliffordOp::identity(g2.n_out - k).tensor(inner) * g2.r.inverse();
    auto uops = clifford_to_ops(u);
    corr.ops.insert(corr.ops.end(), uops.begin(), uops.end());
    out.correction = std::move(corr);
    return out;
  }
  BitVec sx0 = pauli_diff->first, sz0 = pauli_diff->second;

  // Consolidate the conditional Paulis of the transformed first circuit.
  BitMatrix ar_inv = invert(rel_r.a);
  BitVec zero_m0(n_r1);
  BitVec m0l_pad = zero_m0.concat(rel_l.m0);
  BitVec delta_s = ar_inv.mul(g1.a.mul(m0l_pad) ^ rel_r.m0);
  BitMatrix i_al = BitMatrix::direct_sum(BitMatrix::identity(n_r1), rel_l.a);
  BitMatrix b = ar_inv * g1.a * i_al;

  BitMatrix left_ax = BitMatrix::hstack(BitMatrix(k, n_r1), rel_l.a_x);
  BitMatrix left_az = BitMatrix::hstack(BitMatrix(k, n_r1), rel_l.a_z);
  BitMatrix bt_x = left_ax + g1.a_x * i_al + rel_r.a_x * b;
  BitMatrix bt_z = left_az + g1.a_z * i_al + rel_r.a_z * b;
  BitVec dst_x = sx0 ^ g1.a_x.mul(m0l_pad) ^ rel_r.a_x.mul(delta_s);
  BitVec dst_z = sz0 ^ g1.a_z.mul(m0l_pad) ^ rel_r.a_z.mul(delta_s);

  // Pull C_L through the conditional Paulis (batch conjugation, phases free).
  BitMatrix full_x = BitMatrix::hstack(bt_x, as_col(dst_x));
  BitMatrix full_z = BitMatrix::hstack(bt_z, as_col(dst_z));
  auto [xx1, zz1] = c_l.batch_x_images(full_x);
  auto [xx2, zz2] = c_l.batch_z_images(full_z);
  BitMatrix conj_x = xx1 + xx2, conj_z = zz1 + zz2;
  uint32_t n_o1 = n_r1 + n_m;
  BitMatrix b_x = conj_x.cols_slice(0, n_o1);
  BitMatrix b_z = conj_z.cols_slice(0, n_o1);
  BitVec ds_x = conj_x.col(n_o1), ds_z = conj_z.col(n_o1);

  // Fixed-outcome check: find r0 with the compressed random block hitting the
  // affine shifts.
  Compression comp1 = compress_condition_block(b.cols_slice(0, n_r1), b_x.cols_slice(0, n_r1),
                                               b_z.cols_slice(0, n_r1), k);
  BitMatrix stacked1 =
      BitMatrix::vstack(BitMatrix::vstack(comp1.g.a, comp1.g.a_x), comp1.g.a_z);
  BitVec rhs = delta_s.concat(ds_x).concat(ds_z);
  auto r0 = solve(stacked1, rhs);
  if (!r0) {
    out.stage = FailStage::kPauliDiff;
    out.reason = "general forms differ by a fixed Pauli on the output register";
    Correction corr;
    corr.note = "Pauli correction on the output register";
    PauliOp p(delta_s.concat(ds_x), BitVec(g2.n_out - k).concat(ds_z), 0);
    if (!p.is_hermitian()) p.mul_phase(1);
    emit_conditional(corr.ops, g2.r.image(p), BitVec(1), false);
    out.correction = std::move(corr);
    return out;
  }

  // All-measurement-outcomes check.
  BitMatrix b_meas = b.cols_slice(n_r1, n_m);
  BitMatrix bx_meas = b_x.cols_slice(n_r1, n_m);
  BitMatrix bz_meas = b_z.cols_slice(n_r1, n_m);
  BitMatrix a2_meas = g2.a.cols_slice(n_r2, n_m);
  BitMatrix a2x_meas = g2.a_x.cols_slice(n_r2, n_m);
  BitMatrix a2z_meas = g2.a_z.cols_slice(n_r2, n_m);
  if (b_meas != a2_meas || bx_meas != a2x_meas || bz_meas != a2z_meas) {
    out.stage = FailStage::kCondOnMeasDiff;
    out.reason = "general forms differ by a Pauli conditioned on measurement outcomes";
    Correction corr;
    corr.note = "conditional Pauli correction (measurement outcomes of circuit 1)";
    BitMatrix al_inv = invert(rel_l.a);
    BitVec shift = al_inv.mul(rel_l.m0);
    const BitMatrix deltas[3] = {b_meas + a2_meas, bx_meas + a2x_meas, bz_meas + a2z_meas};
    for (size_t block = 0; block < 3; ++block) {
      for (size_t j = 0; j < deltas[block].rows(); ++j) {
        const BitVec& row = deltas[block].row(j);
        if (row.is_zero()) continue;
        BitVec cond = al_inv.transposed().mul(row);
        bool c0 = !row.dot(shift);
        BitVec mask(n_r1 + n_m);
        for (size_t t : cond.support()) mask.set(n_r1 + t, true);
        emit_conditional(corr.ops, correction_basis_pauli(g2, block, j), mask, c0);
      }
    }
    out.correction = std::move(corr);
    return out;
  }

  // All-outcomes check (random-bit dependence).
  Compression comp2 =
      compress_condition_block(g2.a.cols_slice(0, n_r2), g2.a_x.cols_slice(0, n_r2),
                               g2.a_z.cols_slice(0, n_r2), k);
  BitMatrix stacked2 =
      BitMatrix::vstack(BitMatrix::vstack(comp2.g.a, comp2.g.a_x), comp2.g.a_z);
  if (stacked1 != stacked2) {
    out.stage = FailStage::kCondOnRandDiff;
    out.reason = "general forms differ by a Pauli conditioned on random bits";
    uint32_t nr_tilde = static_cast<uint32_t>(comp2.g.n_r);
    if (nr_tilde <= n_r1) {
      Correction corr;
      corr.note = "conditional Pauli correction (random bits of circuit 1)";
      auto pad = [&](const BitMatrix& m) {
        return BitMatrix::hstack(m, BitMatrix(m.rows(), n_r1 - nr_tilde));
      };
      const BitMatrix deltas[3] = {b.cols_slice(0, n_r1) + pad(comp2.g.a),
                                   b_x.cols_slice(0, n_r1) + pad(comp2.g.a_x),
                                   b_z.cols_slice(0, n_r1) + pad(comp2.g.a_z)};
      for (size_t block = 0; block < 3; ++block) {
        for (size_t j = 0; j < deltas[block].rows(); ++j) {
          const BitVec& row = deltas[block].row(j);
          if (row.is_zero()) continue;
          BitVec mask(n_r1 + n_m);
          for (size_t t : row.support()) mask.set(t, true);
          emit_conditional(corr.ops, correction_basis_pauli(g2, block, j), mask, true);
        }
      }
      out.correction = std::move(corr);
    } else {
      out.reason += " (not correctable on circuit 1: compressed width exceeds its random bits)";
    }
    return out;
  }

  out.equivalent = true;
  out.m1 = BitMatrix::direct_sum(comp1.fwd, invert(rel_l.a));
  out.m2 = BitMatrix::direct_sum(comp2.fwd, BitMatrix::identity(n_m));
  out.u1 = comp1.bwd.mul(*r0).concat(rel_l.m0);
  out.u2 = BitVec(n_r2 + n_m);
  return out;
}

namespace {

ComparisonVerdict compare_circuits_once(const StabCircuit& c1, const StabCircuit& c2) {
  CircuitInfo i1 = validate(c1), i2 = validate(c2);
  if (c1.n_in != c2.n_in || i1.n_out != i2.n_out)
    throw std::invalid_argument("compare_circuits: register sizes differ");
  auto [g1, map1] = general_form(c1);
  auto [g2, map2] = general_form(c2);
  ComparisonVerdict v = compare_general_forms(g1, g2);
  BitMatrix m1_inv = map1.m.cols() ? left_inverse(map1.m) : BitMatrix(0, map1.m.rows());
  if (v.equivalent) {
    BitMatrix m2_inv = map2.m.cols() ? left_inverse(map2.m) : BitMatrix(0, map2.m.rows());
    BitVec u1 = map1.v0 ^ (map1.m.cols() ? map1.m.mul(v.u1) : BitVec(map1.v0.size()));
    BitVec u2 = map2.v0 ^ (map2.m.cols() ? map2.m.mul(v.u2) : BitVec(map2.v0.size()));
    v.m1 = v.m1 * m1_inv;
    v.m2 = v.m2 * m2_inv;
    v.u1 = std::move(u1);
    v.u2 = std::move(u2);
    return v;
  }
  if (v.correction) {
    // Re-base conditional corrections from general-form outcomes o1 onto the
    // first circuit's outcome vector via o1 = M1^{(-1)}(v1 + v0).
    for (StabOp& op : v.correction->ops) {
      if (auto* cnd = std::get_if<CondPauli>(&op)) {
        BitVec c(map1.m.cols());
        for (uint32_t o : cnd->outcomes) c.set(o, true);
        BitVec lifted = m1_inv.transposed().mul(c);
        bool value = cnd->value ^ lifted.dot(map1.v0);
        if (lifted.is_zero()) {
          if (!value) {
            op = UnitaryPauli{cnd->p};
          } else {
            op = UnitaryPauli{SparsePauli{}};  // never applied; drop below
          }
          continue;
        }
        cnd->outcomes.clear();
        for (size_t o : lifted.support()) cnd->outcomes.push_back(static_cast<uint32_t>(o));
        cnd->value = value;
      }
    }
    std::erase_if(v.correction->ops, [](const StabOp& op) {
      auto* u = std::get_if<UnitaryPauli>(&op);
      return u && u->p.qubits.empty() && u->p.body.phase == 0;
    });
  }
  return v;
}

}  // namespace

ComparisonVerdict compare_circuits(const StabCircuit& c1, const StabCircuit& c2) {
  ComparisonVerdict first = compare_circuits_once(c1, c2);
  if (first.equivalent || !first.correction) return first;
  // A difference can span several comparison stages; the per-stage correction
  // then only advances the failure. Compose corrections until the appended
  // circuit compares Equivalent, and report the composite.
  StabCircuit work = c1;
  std::vector<StabOp> acc;
  ComparisonVerdict cur = first;
  for (int round = 0; round < 8 && !cur.equivalent; ++round) {
    if (!cur.correction) {
      first.correction.reset();
      first.reason += " (appending corrections does not reach equivalence)";
      return first;
    }
    acc.insert(acc.end(), cur.correction->ops.begin(), cur.correction->ops.end());
    work.ops.insert(work.ops.end(), cur.correction->ops.begin(), cur.correction->ops.end());
    cur = compare_circuits_once(work, c2);
  }
  if (cur.equivalent) {
    first.correction->ops = std::move(acc);
  } else {
    first.correction.reset();
    first.reason += " (appending corrections does not reach equivalence)";
  }
  return first;
}

}  // namespace stabforms

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stabforms/verify.h"
#include "test_helpers.h"

using namespace stabforms;
using namespace stabforms::testing;

namespace {

StabCircuit appended(const StabCircuit& c, const std::vector<StabOp>& ops) {
  StabCircuit out = c;
  out.ops.insert(out.ops.end(), ops.begin(), ops.end());
  validate(out);
  return out;
}

// Checks condition (i) of the comparison contract on the oracle: branches of
// c1 and c2 enact the same map exactly when M1(v1+u1) = M2(v2+u2).
void require_outcome_law(const StabCircuit& c1, const StabCircuit& c2,
                         const ComparisonVerdict& v) {
  auto t1 = oracle::enumerate_instrument(c1);
  auto t2 = oracle::enumerate_instrument(c2);
  for (const auto& b1 : t1.branches) {
    for (const auto& b2 : t2.branches) {
      std::vector<oracle::cplx> a = b1.choi, b = b2.choi;
      double na = 0, nb = 0;
      for (auto& x : a) na += std::norm(x);
      for (auto& x : b) nb += std::norm(x);
      for (auto& x : a) x /= std::sqrt(na);
      for (auto& x : b) x /= std::sqrt(nb);
      bool same_map = oracle::equal_up_to_phase(a, b, 1e-7);
      bool same_label = v.m1.mul(b1.outcomes ^ v.u1) == v.m2.mul(b2.outcomes ^ v.u2);
      REQUIRE(same_map == same_label);
    }
  }
}

EncodingSpec rep2_code() {
  CliffordOp c = CliffordOp::from_images({
      {PauliOp::single(2, 1, 'X'), PauliOp(BitVec(2), BitVec::from_string("11"), 0)},
      {PauliOp(BitVec::from_string("11"), BitVec(2), 0), PauliOp::single(2, 0, 'Z')},
  });
  return EncodingSpec{2, 1, c};
}

}  // namespace

TEST_CASE("relate encodings: identical specs") {
  EncodingSpec s = rep2_code();
  EncodingRelation rel = relate_encodings(s, s);
  REQUIRE(rel.related);
  CHECK(rel.c_delta == CliffordOp::identity(1));
  CHECK(rel.a == BitMatrix::identity(1));
  CHECK(rel.m0.is_zero());
  CHECK(rel.a_x.is_zero());
  CHECK(rel.a_z.is_zero());
}

TEST_CASE("relate encodings: sign flip gives m0") {
  EncodingSpec s1 = rep2_code();
  // Same code with the stabilizer sign flipped: conjugate the encoder by X2.
  EncodingSpec s2 = s1;
  s2.c.left_mult_pauli(PauliOp::single(2, 1, 'X'));
  EncodingRelation rel = relate_encodings(s1, s2);
  REQUIRE(rel.related);
  CHECK(rel.m0 == BitVec::from_string("1"));

  // Dense check of the defining identity: C1(|m1> (x) phi) equals
  // C2(|m2> (x) C_delta X^{Ax m2} Z^{Az m2} phi) with m1 = m0 + A m2.
  auto u1 = oracle::clifford_matrix(s1.c);
  auto u2 = oracle::clifford_matrix(s2.c);
  for (int m2 = 0; m2 < 2; ++m2) {
    BitVec m2v(1);
    m2v.set(0, m2);
    BitVec m1v = rel.m0 ^ rel.a.mul(m2v);
    PauliOp dressing(rel.a_x.mul(m2v), rel.a_z.mul(m2v), 0);
    for (int phi = 0; phi < 2; ++phi) {
      oracle::DenseState lhs = oracle::DenseState::basis_state(2, (uint64_t)phi << 1 | m1v.get(0));
      lhs.apply_clifford(s1.c);
      oracle::DenseState rhs = oracle::DenseState::basis_state(1, phi);
      rhs.apply_pauli(dressing);
      rhs.apply_clifford(rel.c_delta);
      // embed |m2> (x) rhs then C2
      oracle::DenseState full = oracle::DenseState::basis_state(2, 0);
      full.amp[0] = 0;
      for (int b = 0; b < 2; ++b) full.amp[(b << 1) | m2] = rhs.amp[b];
      full.apply_clifford(s2.c);
      REQUIRE(oracle::equal_up_to_phase(lhs.amp, full.amp, 1e-7));
    }
  }
}

TEST_CASE("relate encodings: different groups are unrelated") {
  EncodingSpec zz = rep2_code();
  // X1 X2 code: swap the roles of X and Z.
  CliffordOp cx = CliffordOp::from_images({
      {PauliOp::single(2, 1, 'Z'), PauliOp(BitVec::from_string("11"), BitVec(2), 0)},
      {PauliOp(BitVec(2), BitVec::from_string("11"), 0), PauliOp::single(2, 0, 'X')},
  });
  EncodingRelation rel = relate_encodings(zz, EncodingSpec{2, 1, cx});
  CHECK_FALSE(rel.related);
  EncodingRelation dim = relate_encodings(zz, EncodingSpec{2, 2, CliffordOp::identity(2)});
  CHECK_FALSE(dim.related);
}

TEST_CASE("relate encodings: random twists recompose") {
  std::mt19937_64 rng(63);
  for (int it = 0; it < 20; ++it) {
    uint32_t n = 2 + rng() % 3;
    uint32_t k = 1 + rng() % (n - 1);
    CliffordOp c1 = random_clifford(rng, n);
    // Same code, different encoder: twist by a logical Clifford and syndrome
    // permutation-free phases.
    CliffordOp inner = random_clifford(rng, k);
    CliffordOp c2 = c1 * CliffordOp::css(BitMatrix::identity(n - k)).tensor(inner);
    EncodingRelation rel = relate_encodings({n, k, c1}, {n, k, c2});
    REQUIRE(rel.related);
    // Identity on the syndrome part, so A = I and m0 = 0.
    CHECK(rel.a == BitMatrix::identity(n - k));
    CHECK(rel.m0.is_zero());
  }
}

TEST_CASE("compare a circuit with itself") {
  StabCircuit c = parse_circuit("inputs 2\nh 1\ncx 1 2\nmeasure +Z1\nrand\ncond +X2 if o1,o2 == 1\n");
  ComparisonVerdict v = compare_circuits(c, c);
  REQUIRE(v.equivalent);
  require_outcome_law(c, c, v);
}

TEST_CASE("measure X equals conjugated measure Z") {
  StabCircuit a = parse_circuit("inputs 1\nmeasure +X1\n");
  StabCircuit b = parse_circuit("inputs 1\nh 1\nmeasure +Z1\nh 1\n");
  ComparisonVerdict v = compare_circuits(a, b);
  REQUIRE(v.equivalent);
  require_outcome_law(a, b, v);
}

TEST_CASE("teleportation equals the identity wire") {
  StabCircuit tele = parse_circuit(
      "inputs 1\n"
      "alloc 2\nalloc 3\n"
      "h 2\ncx 2 3\n"
      "cx 1 2\nh 1\n"
      "measure +Z1\nmeasure +Z2\n"
      "cond +X3 if o2 == 1\ncond +Z3 if o1 == 1\n"
      "mz! 1\nmz! 1\n");
  StabCircuit wire = parse_circuit("inputs 1\n");
  ComparisonVerdict v = compare_circuits(tele, wire);
  REQUIRE(v.equivalent);
  require_outcome_law(tele, wire, v);
}

TEST_CASE("clifford-stage failure and repair") {
  // An S on an open wire (not collapsed by a measurement) changes the action.
  StabCircuit a = parse_circuit("inputs 1\nrand\ns 1\n");
  StabCircuit b = parse_circuit("inputs 1\nrand\n");
  ComparisonVerdict v = compare_circuits(a, b);
  REQUIRE_FALSE(v.equivalent);
  CHECK(v.stage == FailStage::kCliffordDiff);
  REQUIRE(v.correction.has_value());
  StabCircuit repaired = appended(a, v.correction->ops);
  ComparisonVerdict v2 = compare_circuits(repaired, b);
  CHECK(v2.equivalent);
  CHECK(oracle::instruments_equivalent(oracle::enumerate_instrument(repaired),
                                       oracle::enumerate_instrument(b))
            .equivalent);
}

TEST_CASE("pauli-stage failure and repair") {
  StabCircuit a = parse_circuit("inputs 2\nmeasure +Z1 Z2\npauli +X1\n");
  StabCircuit b = parse_circuit("inputs 2\nmeasure +Z1 Z2\n");
  ComparisonVerdict v = compare_circuits(a, b);
  REQUIRE_FALSE(v.equivalent);
  CHECK(v.stage == FailStage::kPauliDiff);
  REQUIRE(v.correction.has_value());
  StabCircuit repaired = appended(a, v.correction->ops);
  CHECK(compare_circuits(repaired, b).equivalent);
}

TEST_CASE("conditional-on-measurement failure and repair") {
  StabCircuit a = parse_circuit("inputs 2\nmeasure +Z1 Z2\ncond +X1 X2 if o1 == 1\n");
  StabCircuit b = parse_circuit("inputs 2\nmeasure +Z1 Z2\n");
  ComparisonVerdict v = compare_circuits(a, b);
  REQUIRE_FALSE(v.equivalent);
  CHECK(v.stage == FailStage::kCondOnMeasDiff);
  REQUIRE(v.correction.has_value());
  StabCircuit repaired = appended(a, v.correction->ops);
  CHECK(compare_circuits(repaired, b).equivalent);
  CHECK(oracle::instruments_equivalent(oracle::enumerate_instrument(repaired),
                                       oracle::enumerate_instrument(b))
            .equivalent);
}

TEST_CASE("conditional-on-random failure and repair") {
  StabCircuit a = parse_circuit("inputs 1\nrand\ncond +X1 if o1 == 1\nmeasure +Z1\n");
  // The rand-conditioned X changes the branch maps; compare to the plain one.
  StabCircuit b = parse_circuit("inputs 1\nrand\nmeasure +Z1\n");
  ComparisonVerdict v = compare_circuits(a, b);
  REQUIRE_FALSE(v.equivalent);
  REQUIRE(v.correction.has_value());
  StabCircuit repaired = appended(a, v.correction->ops);
  CHECK(compare_circuits(repaired, b).equivalent);
}

TEST_CASE("code-mismatch stage") {
  StabCircuit a = parse_circuit("inputs 1\nmeasure +Z1\n");
  StabCircuit b = parse_circuit("inputs 1\nmeasure +X1\n");
  ComparisonVerdict v = compare_circuits(a, b);
  REQUIRE_FALSE(v.equivalent);
  CHECK(v.stage == FailStage::kCodeMismatch);
  CHECK_FALSE(v.correction.has_value());
}

TEST_CASE("soundness and completeness on a random suite") {
  std::mt19937_64 rng(67);
  int done = 0;
  while (done < 25) {
    RandomCircuitOptions opt;
    opt.max_qubits = 3;
    opt.ops = 9;
    opt.max_branchy_outcomes = 4;
    StabCircuit body = random_circuit(rng, opt);
    StabCircuit c1;
    c1.n_in = 1;
    for (StabOp op : body.ops) {
      if (auto* a = std::get_if<AllocQubit>(&op)) a->pos += 1;
      if (auto* d = std::get_if<DeallocQubit>(&op)) d->pos += 1;
      if (auto* u = std::get_if<UnitaryPauli>(&op))
        for (auto& q : u->p.qubits) q += 1;
      if (auto* e = std::get_if<UnitaryExp>(&op))
        for (auto& q : e->p.qubits) q += 1;
      if (auto* cp = std::get_if<UnitaryCtrlPauli>(&op)) {
        for (auto& q : cp->p.qubits) q += 1;
        for (auto& q : cp->q.qubits) q += 1;
      }
      if (auto* s = std::get_if<UnitarySwap>(&op)) {
        s->a += 1;
        s->b += 1;
      }
      if (auto* cs = std::get_if<UnitaryCss>(&op))
        cs->a = BitMatrix::direct_sum(BitMatrix::identity(1), cs->a);
      if (auto* cnd = std::get_if<CondPauli>(&op))
        for (auto& q : cnd->p.qubits) q += 1;
      if (auto* m = std::get_if<Measure>(&op)) {
        for (auto& q : m->p.qubits) q += 1;
        if (m->hint)
          for (auto& q : m->hint->qubits) q += 1;
      }
      c1.ops.push_back(std::move(op));
    }
    CliffordOp mix = random_clifford(rng, c1.n_in + 0, 3);
    StabCircuit c2 = c1;
    // A transformed twin: conjugate one measurement by a random Clifford.
    bool transformed = false;
    for (size_t i = 0; i < c2.ops.size() && !transformed; ++i) {
      if (auto* m = std::get_if<Measure>(&c2.ops[i])) {
        CircuitInfo info;
        // width at op i:
        uint32_t width = c2.n_in;
        for (size_t t = 0; t < i; ++t) {
          if (std::get_if<AllocQubit>(&c2.ops[t])) ++width;
          if (std::get_if<DeallocQubit>(&c2.ops[t])) --width;
        }
        CliffordOp u = random_clifford(rng, width, 3);
        PauliOp conj = u.image(m->p.embed(width));
        std::vector<StabOp> seq = clifford_to_ops(u.inverse());
        std::vector<StabOp> inv = clifford_to_ops(u);
        std::vector<StabOp> engulfed;
        engulfed.insert(engulfed.end(), inv.begin(), inv.end());
        engulfed.push_back(Measure{SparsePauli::from_dense(conj), {}});
        engulfed.insert(engulfed.end(), seq.begin(), seq.end());
        c2.ops.erase(c2.ops.begin() + i);
        c2.ops.insert(c2.ops.begin() + i, engulfed.begin(), engulfed.end());
        transformed = true;
      }
    }
    try {
      validate(c2);
      ComparisonVerdict v = compare_circuits(c1, c2);
      auto t1 = oracle::enumerate_instrument(c1);
      auto t2 = oracle::enumerate_instrument(c2);
      bool oracle_eq = oracle::instruments_equivalent(t1, t2).equivalent;
      REQUIRE(v.equivalent == oracle_eq);
      REQUIRE(v.equivalent);  // the transformation preserves the instrument
      require_outcome_law(c1, c2, v);
    } catch (const std::invalid_argument&) {
      continue;
    }
    ++done;
  }
}

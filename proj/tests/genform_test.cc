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

#include "stabforms/genform.h"
#include "stabforms/verify.h"
#include "test_helpers.h"

using namespace stabforms;
using namespace stabforms::testing;

namespace {

// Per-outcome instrument equality between a circuit and its general form:
// every oracle branch of c at outcome v matches the realized general form's
// branch at o = M^{(-1)}(v - v0) up to a phase.
void require_genform_matches(const StabCircuit& c, const GeneralForm& g, const OutcomeMap& map) {
  StabCircuit realized = realize_general_form(g);
  auto t1 = oracle::enumerate_instrument(c);
  auto t2 = oracle::enumerate_instrument(realized);
  REQUIRE(t1.branches.size() == t2.branches.size());
  BitMatrix m_inv = map.m.cols() ? left_inverse(map.m) : BitMatrix(0, map.m.rows());
  for (const auto& br : t1.branches) {
    BitVec o = m_inv.mul(br.outcomes ^ map.v0);
    REQUIRE((map.v0 ^ map.m.mul(o)) == br.outcomes);  // v in the affine range
    const oracle::Branch* match = nullptr;
    for (const auto& b2 : t2.branches)
      if (b2.outcomes == o) match = &b2;
    REQUIRE(match != nullptr);
    REQUIRE(std::abs(br.probability / match->probability - 1.0) < 1e-7);
    std::vector<oracle::cplx> a = br.choi, b = match->choi;
    REQUIRE(oracle::equal_up_to_phase(a, b, 1e-7));
  }
}

StabCircuit prepend_random_clifford_layer(std::mt19937_64& rng, StabCircuit c) {
  if (c.n_in == 0) return c;
  CliffordOp u = random_clifford(rng, c.n_in, 4);
  StabCircuit out;
  out.n_in = c.n_in;
  out.ops = clifford_to_ops(u);
  out.ops.insert(out.ops.end(), c.ops.begin(), c.ops.end());
  return out;
}

}  // namespace

TEST_CASE("support restricted subgroup examples") {
  // K = all qubits: the full group.
  std::vector<PauliOp> gens = {PauliOp::single(2, 0, 'Z'), PauliOp::single(2, 1, 'Z')};
  BitMatrix f = support_restricted_subgroup(gens, {true, true});
  CHECK(f.rows() == 2);

  // <Z1 Z2, X1 X2> restricted to qubit 1 alone: trivial.
  std::vector<PauliOp> bell = {PauliOp(BitVec(2), BitVec::from_string("11"), 0),
                               PauliOp(BitVec::from_string("11"), BitVec(2), 0)};
  CHECK(support_restricted_subgroup(bell, {true, false}).rows() == 0);

  // <Z1, Z2> restricted to qubit 2: exactly Z2.
  BitMatrix f2 = support_restricted_subgroup(gens, {false, true});
  REQUIRE(f2.rows() == 1);
  CHECK(f2.row(0) == BitVec::from_string("01"));
}

TEST_CASE("symplectic basis examples and postconditions") {
  std::vector<PauliOp> xz = {PauliOp::single(1, 0, 'X'), PauliOp::single(1, 0, 'Z')};
  auto sb = symplectic_basis(xz);
  CHECK(sb.f == BitMatrix::identity(2));

  std::vector<PauliOp> zx = {PauliOp::single(1, 0, 'Z'), PauliOp::single(1, 0, 'X')};
  auto sb2 = symplectic_basis(zx);
  CHECK(sb2.f == BitMatrix::from_strings({"10", "01"}));  // already a symplectic pair

  std::mt19937_64 rng(51);
  int done = 0;
  while (done < 50) {
    size_t n = 3;
    size_t m = 1 + rng() % 3;
    std::vector<PauliOp> ps;
    for (size_t i = 0; i < 2 * m; ++i) ps.push_back(random_nontrivial_observable(rng, n));
    BitMatrix comm(2 * m, 2 * m);
    for (size_t i = 0; i < 2 * m; ++i)
      for (size_t j = 0; j < 2 * m; ++j) comm.set(i, j, commutator(ps[i], ps[j]));
    if (rank_of(comm) != 2 * m) {
      CHECK_THROWS_AS(symplectic_basis(ps), std::invalid_argument);
      continue;
    }
    auto out = symplectic_basis(ps);
    REQUIRE(out.basis.size() == 2 * m);
    for (size_t i = 0; i < 2 * m; ++i)
      for (size_t j = 0; j < 2 * m; ++j) {
        bool want = (i / 2 == j / 2) && (i != j);
        CHECK(commutator(out.basis[i], out.basis[j]) == want);
      }
    CHECK(out.f * out.f_inv == BitMatrix::identity(2 * m));
    // Rows of f indicate the products that build the basis.
    for (size_t i = 0; i < 2 * m; ++i) {
      PauliOp prod = PauliOp::identity(n);
      for (size_t j : out.f.row(i).support()) prod = prod * ps[j];
      CHECK(prod.x == out.basis[i].x);
      CHECK(prod.z == out.basis[i].z);
    }
    ++done;
  }
}

TEST_CASE("bipartite family form circuit identity") {
  std::mt19937_64 rng(53);
  for (int it = 0; it < 40; ++it) {
    uint32_t n = 2 + rng() % 3;
    uint32_t n1 = rng() % (n + 1);
    auto cd = random_clifford_with_dense(rng, n);
    BipartiteFamilyForm form = bipartite_family_form(cd.c, n1);
    CHECK(form.d.num_qubits() == n1);
    CHECK(form.b.num_qubits() == n - n1);
    // For random a: C|Fa> equals the family circuit state up to phase.
    for (int rep = 0; rep < 4; ++rep) {
      BitVec a(n);
      for (size_t i = 0; i < n; ++i) a.set(i, rng() & 1);
      BitVec fa = form.f.mul(a);
      uint64_t basis = 0;
      for (size_t i = 0; i < n; ++i)
        if (fa.get(i)) basis |= uint64_t{1} << i;
      std::vector<oracle::cplx> lhs(size_t{1} << n);
      for (size_t r = 0; r < lhs.size(); ++r) lhs[r] = cd.u[r][basis];
      StabCircuit fam = bipartite_family_state_circuit(form, n1, n, a);
      auto t = oracle::enumerate_instrument(fam);
      REQUIRE(t.branches.size() == 1);
      REQUIRE(oracle::equal_up_to_phase(lhs, t.branches[0].choi, 1e-7));
    }
  }
}

TEST_CASE("clifford from choi") {
  // Choi of the identity is the Bell state prepared by H + CX.
  StabCircuit bellprep = parse_circuit("inputs 2\nh 1\ncx 1 2\n");
  CliffordOp prep = ops_to_clifford(bellprep.ops, 2);
  CHECK(clifford_from_choi(prep) == CliffordOp::identity(1));

  std::mt19937_64 rng(57);
  for (int it = 0; it < 25; ++it) {
    size_t n = 1 + rng() % 3;
    CliffordOp c = random_clifford(rng, n);
    // Prepare the Choi state: Bell pairs on (j, n+j), then C on the first n.
    CliffordOp prep2 = CliffordOp::identity(2 * n);
    for (size_t j = 0; j < n; ++j) {
      prep2.left_mult_exp(PauliOp::single(2 * n, j, 'Z'));
      prep2.left_mult_exp(PauliOp::single(2 * n, j, 'X'));
      prep2.left_mult_exp(PauliOp::single(2 * n, j, 'Z'));
      prep2.left_mult_ctrl_pauli(PauliOp::single(2 * n, j, 'Z'),
                                 PauliOp::single(2 * n, n + j, 'X'));
    }
    CliffordOp embedded = c.tensor(CliffordOp::identity(n));
    prep2 = embedded * prep2;
    CHECK(clifford_from_choi(prep2) == c);
  }

  // A product state on 2 qubits is not the Choi state of a unitary.
  CHECK_THROWS_AS(clifford_from_choi(CliffordOp::identity(2)), std::invalid_argument);
}

TEST_CASE("general form of tiny circuits") {
  // 1-qubit identity: k = 1, no outcomes, L and R related by a Pauli.
  StabCircuit id1 = parse_circuit("inputs 1\n");
  auto [g, m] = general_form(id1);
  CHECK(g.k == 1);
  CHECK(g.n_r == 0);
  CHECK(m.m.rows() == 0);
  CliffordOp diff = g.r * g.l.inverse();
  CHECK(diff.as_pauli().has_value());
  require_genform_matches(id1, g, m);

  // measure Z: k = 0, one input-dependent outcome.
  StabCircuit mz = parse_circuit("inputs 1\nmeasure +Z1\n");
  auto [g2, m2] = general_form(mz);
  CHECK(g2.k == 0);
  CHECK(g2.n_r == 0);
  CHECK(m2.m == BitMatrix::identity(1));
  require_genform_matches(mz, g2, m2);

  // Teleportation: identity channel with two random outcomes.
  StabCircuit tele = parse_circuit(
      "inputs 1\n"
      "alloc 2\nalloc 3\n"
      "h 2\ncx 2 3\n"
      "cx 1 2\nh 1\n"
      "measure +Z1\nmeasure +Z2\n"
      "cond +X3 if o2 == 1\ncond +Z3 if o1 == 1\n"
      "mz! 1\nmz! 1\n");
  auto [g3, m3] = general_form(tele);
  CHECK(g3.k == 1);
  CHECK(validate(realize_general_form(g3)).n_out == 1);
  require_genform_matches(tele, g3, m3);
}

TEST_CASE("general form matches the oracle on random circuits") {
  std::mt19937_64 rng(59);
  int done = 0;
  while (done < 50) {
    RandomCircuitOptions opt;
    opt.max_qubits = 3;
    opt.ops = 10;
    opt.max_branchy_outcomes = 4;
    StabCircuit body = random_circuit(rng, opt);
    // Give the circuit input qubits by reinterpreting some allocs: instead,
    // prepend input wires: inputs flow through with a random Clifford layer.
    StabCircuit c;
    c.n_in = 1 + rng() % 2;
    for (uint32_t q = 0; q < c.n_in; ++q) {
      // keep inputs live; body acts on extra qubits above them
    }
    for (StabOp op : body.ops) {
      if (auto* a = std::get_if<AllocQubit>(&op)) a->pos += c.n_in;
      if (auto* d = std::get_if<DeallocQubit>(&op)) d->pos += c.n_in;
      if (auto* u = std::get_if<UnitaryPauli>(&op))
        for (auto& q : u->p.qubits) q += c.n_in;
      if (auto* e = std::get_if<UnitaryExp>(&op))
        for (auto& q : e->p.qubits) q += c.n_in;
      if (auto* cp = std::get_if<UnitaryCtrlPauli>(&op)) {
        for (auto& q : cp->p.qubits) q += c.n_in;
        for (auto& q : cp->q.qubits) q += c.n_in;
      }
      if (auto* s = std::get_if<UnitarySwap>(&op)) {
        s->a += c.n_in;
        s->b += c.n_in;
      }
      if (auto* cs = std::get_if<UnitaryCss>(&op)) {
        cs->a = BitMatrix::direct_sum(BitMatrix::identity(c.n_in), cs->a);
      }
      if (auto* cnd = std::get_if<CondPauli>(&op))
        for (auto& q : cnd->p.qubits) q += c.n_in;
      if (auto* ms = std::get_if<Measure>(&op)) {
        for (auto& q : ms->p.qubits) q += c.n_in;
        if (ms->hint)
          for (auto& q : ms->hint->qubits) q += c.n_in;
      }
      c.ops.push_back(std::move(op));
    }
    c = prepend_random_clifford_layer(rng, c);
    // Entangle inputs with the body.
    CircuitInfo info = validate(c);
    if (info.n_out + c.n_in > 5) continue;
    try {
      auto [g, map] = general_form(c);
      require_genform_matches(c, g, map);
      CHECK(g.n_in == c.n_in);
      CHECK(g.n_out == info.n_out);
      if (map.m.cols() > 0)
        CHECK(is_split_echelon(map.m, g.n_r, g.n_in - g.k, true));
    } catch (const std::invalid_argument&) {
      continue;
    }
    ++done;
  }
}

TEST_CASE("compression") {
  // Duplicate random bit: two equal columns collapse into one.
  StabCircuit dup = parse_circuit(
      "inputs 0\nalloc 1\nrand\nrand\n"
      "cond +X1 if o1 == 1\ncond +X1 if o2 == 1\n");
  auto [g, m] = general_form(dup);
  CHECK(g.n_r == 2);
  Compression comp = compress(g);
  CHECK(comp.g.n_r == 1);
  CHECK(comp.fwd * comp.bwd == BitMatrix::identity(comp.fwd.rows()));
  // Idempotence.
  Compression comp2 = compress(comp.g);
  CHECK(comp2.g.n_r == comp.g.n_r);
  CHECK(comp2.g.a == comp.g.a);
  CHECK(comp2.g.a_x == comp.g.a_x);
  CHECK(comp2.g.a_z == comp.g.a_z);

  // Action equality through the compression map on the oracle.
  StabCircuit before = realize_general_form(g);
  StabCircuit after = realize_general_form(comp.g);
  auto t1 = oracle::enumerate_instrument(before);
  auto t2 = oracle::enumerate_instrument(after);
  for (const auto& br : t1.branches) {
    BitVec o2 = comp.fwd.mul(br.outcomes);
    const oracle::Branch* match = nullptr;
    for (const auto& b2 : t2.branches)
      if (b2.outcomes == o2) match = &b2;
    REQUIRE(match != nullptr);
    std::vector<oracle::cplx> a = br.choi, b = match->choi;
    double na = 0, nb = 0;
    for (auto& x : a) na += std::norm(x);
    for (auto& x : b) nb += std::norm(x);
    for (auto& x : a) x /= std::sqrt(na);
    for (auto& x : b) x /= std::sqrt(nb);
    REQUIRE(oracle::equal_up_to_phase(a, b, 1e-7));
  }

  // Edge case: nothing to compress.
  StabCircuit id1 = parse_circuit("inputs 1\n");
  auto [gi, mi] = general_form(id1);
  Compression ci = compress(gi);
  CHECK(ci.g.n_r == 0);
  CHECK(ci.fwd.rows() == ci.fwd.cols());
}

TEST_CASE("instrument compression map groups branches correctly") {
  std::mt19937_64 rng(61);
  int done = 0;
  while (done < 25) {
    RandomCircuitOptions opt;
    opt.max_qubits = 4;
    opt.ops = 12;
    opt.max_branchy_outcomes = 5;
    StabCircuit c = random_circuit(rng, opt);
    CompressionMap cm;
    oracle::BranchTree t;
    try {
      cm = instrument_compression_map(c);
      t = oracle::enumerate_instrument(c);
    } catch (const std::invalid_argument&) {
      continue;
    }
    // Equal labels iff equal (up to phase) normalized branch maps.
    for (size_t i = 0; i < t.branches.size(); ++i)
      for (size_t j = i + 1; j < t.branches.size(); ++j) {
        std::vector<oracle::cplx> a = t.branches[i].choi, b = t.branches[j].choi;
        double na = 0, nb = 0;
        for (auto& x : a) na += std::norm(x);
        for (auto& x : b) nb += std::norm(x);
        for (auto& x : a) x /= std::sqrt(na);
        for (auto& x : b) x /= std::sqrt(nb);
        bool same_map = oracle::equal_up_to_phase(a, b, 1e-7);
        bool same_label = cm.label(t.branches[i].outcomes) == cm.label(t.branches[j].outcomes);
        REQUIRE(same_map == same_label);
      }
    ++done;
  }
}

TEST_CASE("pure-noise random bit vanishes from the compressed label") {
  StabCircuit c = parse_circuit("inputs 0\nalloc 1\nrand\nmeasure +Z1\n");
  CompressionMap cm = instrument_compression_map(c);
  BitVec v0 = BitVec::from_string("00"), v1 = BitVec::from_string("10");
  CHECK(cm.label(v0) == cm.label(v1));  // the noise bit does not matter
}

TEST_CASE("choi stabilizer signs of the general form") {
  // For every outcome o, the Choi state of the general form is stabilized by
  //   R Z_j R^dag (x) I                        with sign (A o)_j,
  //   R Z_{no-k+j} R^dag (x) (L Z_{ni-k+j} L^dag)*  with sign (A_x o)_j,
  //   I (x) (L Z_j L^dag)*                     with sign ((0|I) o)_j,
  //   R X_{no-k+j} R^dag (x) (L X_{ni-k+j} L^dag)*  with sign (A_z o)_j.
  std::mt19937_64 rng(97);
  int done = 0;
  while (done < 50) {
    RandomCircuitOptions opt;
    opt.max_qubits = 3;
    opt.ops = 8;
    opt.max_branchy_outcomes = 3;
    StabCircuit body = random_circuit(rng, opt);
    StabCircuit c;
    c.n_in = 1 + rng() % 2;
    for (StabOp op : body.ops) {
      if (auto* a = std::get_if<AllocQubit>(&op)) a->pos += c.n_in;
      if (auto* d = std::get_if<DeallocQubit>(&op)) d->pos += c.n_in;
      if (auto* u = std::get_if<UnitaryPauli>(&op))
        for (auto& q : u->p.qubits) q += c.n_in;
      if (auto* e = std::get_if<UnitaryExp>(&op))
        for (auto& q : e->p.qubits) q += c.n_in;
      if (auto* cp = std::get_if<UnitaryCtrlPauli>(&op)) {
        for (auto& q : cp->p.qubits) q += c.n_in;
        for (auto& q : cp->q.qubits) q += c.n_in;
      }
      if (auto* s = std::get_if<UnitarySwap>(&op)) {
        s->a += c.n_in;
        s->b += c.n_in;
      }
      if (auto* cs = std::get_if<UnitaryCss>(&op))
        cs->a = BitMatrix::direct_sum(BitMatrix::identity(c.n_in), cs->a);
      if (auto* cnd = std::get_if<CondPauli>(&op))
        for (auto& q : cnd->p.qubits) q += c.n_in;
      if (auto* m = std::get_if<Measure>(&op)) {
        for (auto& q : m->p.qubits) q += c.n_in;
        if (m->hint)
          for (auto& q : m->hint->qubits) q += c.n_in;
      }
      c.ops.push_back(std::move(op));
    }
    c = prepend_random_clifford_layer(rng, c);
    CircuitInfo info;
    GeneralForm g;
    OutcomeMap map;
    try {
      info = validate(c);
      if (info.n_out + c.n_in > 5) continue;
      std::tie(g, map) = general_form(c);
    } catch (const std::invalid_argument&) {
      continue;
    }
    if (g.n_o() > 6) continue;
    StabCircuit realized = realize_general_form(g);
    auto tree = oracle::enumerate_instrument(choi_circuit(realized));
    uint32_t n_tot = g.n_out + g.n_in, k = g.k;
    uint32_t n_m = g.n_in - k;
    for (const auto& br : tree.branches) {
      const BitVec& o = br.outcomes;
      std::vector<oracle::cplx> psi = br.choi;
      double norm2 = 0;
      for (auto& a : psi) norm2 += std::norm(a);
      auto stab_sign = [&](const PauliOp& p) -> int {
        oracle::DenseState st{n_tot, psi};
        st.apply_pauli(p);
        oracle::cplx ip{0, 0};
        for (size_t t = 0; t < psi.size(); ++t) ip += std::conj(psi[t]) * st.amp[t];
        ip /= norm2;
        if (std::abs(ip - oracle::cplx{1, 0}) < 1e-7) return 0;
        if (std::abs(ip + oracle::cplx{1, 0}) < 1e-7) return 1;
        return -1;
      };
      BitVec ao = g.a.mul(o), axo = g.a_x.mul(o), azo = g.a_z.mul(o);
      for (uint32_t j = 0; j < g.n_out - k; ++j) {
        PauliOp p = g.r.image(PauliOp::single(g.n_out, j, 'Z')).embed(n_tot, 0);
        REQUIRE(stab_sign(p) == (int)ao.get(j));
      }
      for (uint32_t j = 0; j < n_m; ++j) {
        PauliOp p = g.l.image(PauliOp::single(g.n_in, j, 'Z')).conj().embed(n_tot, g.n_out);
        REQUIRE(stab_sign(p) == (int)o.get(g.n_r + j));
      }
      for (uint32_t j = 0; j < k; ++j) {
        PauliOp zz = g.r.image(PauliOp::single(g.n_out, g.n_out - k + j, 'Z'))
                         .tensor(g.l.image(PauliOp::single(g.n_in, n_m + j, 'Z')).conj());
        REQUIRE(stab_sign(zz) == (int)axo.get(j));
        PauliOp xx = g.r.image(PauliOp::single(g.n_out, g.n_out - k + j, 'X'))
                         .tensor(g.l.image(PauliOp::single(g.n_in, n_m + j, 'X')).conj());
        REQUIRE(stab_sign(xx) == (int)azo.get(j));
      }
    }
    ++done;
  }
}

TEST_CASE("general form with no output qubits") {
  // Everything measured destructively: n_out = 0, k = 0.
  StabCircuit c = parse_circuit("inputs 2\ncx 1 2\nmz! 1\nmz! 1\n");
  auto [g, map] = general_form(c);
  CHECK(g.n_out == 0);
  CHECK(g.k == 0);
  require_genform_matches(c, g, map);
  // And it composes with the comparator.
  ComparisonVerdict v = compare_circuits(c, realize_general_form(g));
  CHECK(v.equivalent);
}

TEST_CASE("general form of a classical-only circuit") {
  StabCircuit c = parse_circuit("inputs 0\nrand\n");
  auto [g, map] = general_form(c);
  CHECK(g.n_in == 0);
  CHECK(g.n_out == 0);
  CHECK(g.n_r == 1);
  require_genform_matches(c, g, map);
}

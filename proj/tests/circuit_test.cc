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

#include "stabforms/circuit.h"
#include "stabforms/oracle.h"
#include "test_helpers.h"

using namespace stabforms;
using namespace stabforms::testing;

TEST_CASE("validate basics") {
  StabCircuit empty;
  CHECK(validate(empty).n_out == 0);

  StabCircuit bad;
  bad.ops.push_back(Measure{SparsePauli({0}, PauliOp::single(1, 0, 'Z')), {}});
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);  // measure before alloc

  StabCircuit self_ref;
  self_ref.ops.push_back(AllocQubit{0});
  self_ref.ops.push_back(CondPauli{SparsePauli({0}, PauliOp::single(1, 0, 'X')), {0}, true});
  CHECK_THROWS_AS(validate(self_ref), std::invalid_argument);  // references own outcome

  StabCircuit anticommuting;
  anticommuting.n_in = 1;
  anticommuting.ops.push_back(UnitaryCtrlPauli{SparsePauli({0}, PauliOp::single(1, 0, 'Z')),
                                               SparsePauli({0}, PauliOp::single(1, 0, 'X'))});
  CHECK_THROWS_AS(validate(anticommuting), std::invalid_argument);

  StabCircuit non_herm;
  non_herm.n_in = 1;
  PauliOp ix = PauliOp::single(1, 0, 'X');
  ix.mul_phase(1);
  non_herm.ops.push_back(Measure{SparsePauli({0}, ix), {}});
  CHECK_THROWS_AS(validate(non_herm), std::invalid_argument);

  StabCircuit dealloc_oob;
  dealloc_oob.n_in = 1;
  dealloc_oob.ops.push_back(DeallocQubit{1});
  CHECK_THROWS_AS(validate(dealloc_oob), std::invalid_argument);
}

TEST_CASE("parse and format round trips") {
  const char* text =
      "inputs 2\n"
      "# a comment\n"
      "alloc 3\n"
      "rand\n"
      "exp +X1 Z3\n"
      "pauli -Y2\n"
      "cpauli +Z1 ; +X2\n"
      "swap 1 3\n"
      "css rows=10,11\n"
      "cond +X3 if o1 == 1\n"
      "measure +Z1 Z2 hint +X1\n"
      "dealloc 3\n";
  StabCircuit c = parse_circuit(text);
  CircuitInfo info = validate(c);
  CHECK(info.n_out == 2);
  CHECK(info.n_outcomes == 2);
  std::string formatted = format_circuit(c);
  StabCircuit c2 = parse_circuit(formatted);
  CHECK(format_circuit(c2) == formatted);
  CHECK(c2.ops.size() == c.ops.size());

  CHECK(parse_circuit("inputs 0\n").ops.empty());
  StabCircuit one = parse_circuit("inputs 1\nmeasure +Z1\n");
  CHECK(validate(one).n_outcomes == 1);
}

TEST_CASE("parser errors carry line numbers") {
  auto expect_error = [](const char* text, const char* fragment) {
    try {
      parse_circuit(text);
      FAIL_CHECK("expected parse error for: " << text);
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
  };
  expect_error("alloc 1\n", "line 1");
  expect_error("inputs 1\nbogus 3\n", "line 2");
  expect_error("inputs 1\ncond +X1 if o1 == 2\n", "line 2");
  expect_error("inputs 1\nmeasure +i X1\n", "Hermitian");
  expect_error("inputs 1\nexp +X1 X1\n", "duplicate");
}

TEST_CASE("sugar expansions against the dense oracle") {
  // h: |0> -> (|0>+|1>)/sqrt(2) up to phase.
  StabCircuit h = parse_circuit("inputs 0\nalloc 1\nh 1\n");
  auto th = oracle::enumerate_instrument(h);
  REQUIRE(th.branches.size() == 1);
  CHECK(std::abs(std::abs(th.branches[0].choi[0]) - std::sqrt(0.5)) < 1e-9);
  CHECK(std::abs(std::abs(th.branches[0].choi[1]) - std::sqrt(0.5)) < 1e-9);

  // s on |+>: (|0> + i|1>)/sqrt(2) up to a global phase.
  StabCircuit s = parse_circuit("inputs 0\nalloc 1\nh 1\ns 1\n");
  auto ts = oracle::enumerate_instrument(s);
  REQUIRE(ts.branches.size() == 1);
  auto amp = ts.branches[0].choi;
  CHECK(std::abs(amp[1] / amp[0] - oracle::cplx{0, 1}) < 1e-9);

  // cx: |10> -> |11>.
  StabCircuit cx = parse_circuit("inputs 0\nalloc 1\nalloc 2\npauli +X1\ncx 1 2\n");
  auto tcx = oracle::enumerate_instrument(cx);
  REQUIRE(tcx.branches.size() == 1);
  CHECK(std::abs(std::abs(tcx.branches[0].choi[3]) - 1.0) < 1e-9);

  // cz on |11> flips the sign.
  StabCircuit cz = parse_circuit("inputs 0\nalloc 1\nalloc 2\npauli +X1\npauli +X2\ncz 1 2\n");
  auto tcz = oracle::enumerate_instrument(cz);
  REQUIRE(tcz.branches.size() == 1);
  CHECK(std::abs(tcz.branches[0].choi[3] / tcx.branches[0].choi[3] + 1.0) < 1e-9);

  // mz! measures destructively: |+> gives two branches with no output qubit.
  StabCircuit mz = parse_circuit("inputs 0\nalloc 1\nh 1\nmz! 1\n");
  CHECK(validate(mz).n_out == 0);
  auto tmz = oracle::enumerate_instrument(mz);
  CHECK(tmz.branches.size() == 2);
}

TEST_CASE("choi circuit arity and bell state") {
  StabCircuit id1 = parse_circuit("inputs 1\n");
  StabCircuit choi = choi_circuit(id1);
  CircuitInfo info = validate(choi);
  CHECK(choi.n_in == 0);
  CHECK(info.n_out == 2);
  auto t = oracle::enumerate_instrument(choi);
  REQUIRE(t.branches.size() == 1);
  // (|00> + |11>)/sqrt(2)
  CHECK(std::abs(std::abs(t.branches[0].choi[0]) - std::sqrt(0.5)) < 1e-9);
  CHECK(std::abs(std::abs(t.branches[0].choi[3]) - std::sqrt(0.5)) < 1e-9);
  CHECK(std::abs(t.branches[0].choi[1]) < 1e-9);

  StabCircuit mz = parse_circuit("inputs 1\nmeasure +Z1\n");
  CHECK(validate(choi_circuit(mz)).n_out == 2);
  CHECK(validate(choi_circuit(mz)).n_outcomes == 1);

  StabCircuit zero = parse_circuit("inputs 0\nalloc 1\n");
  StabCircuit cz = choi_circuit(zero);
  CHECK(cz.ops.size() == zero.ops.size());
}

TEST_CASE("clifford synthesis round trips") {
  std::mt19937_64 rng(19);
  for (int it = 0; it < 40; ++it) {
    size_t n = 1 + rng() % 5;
    CliffordOp c = random_clifford(rng, n);
    auto ops = clifford_to_ops(c);
    CHECK(ops_to_clifford(ops, n) == c);
    StabCircuit cc;
    cc.n_in = static_cast<uint32_t>(n);
    cc.ops = ops;
    validate(cc);
  }
  CHECK(clifford_to_ops(CliffordOp::identity(3)).empty());
}

TEST_CASE("encoder and unencoder on the repetition pair") {
  // Two-qubit repetition code: stabilizer Z1 Z2, logicals Z1, X1 X2.
  CliffordOp c = CliffordOp::from_images({
      {PauliOp::single(2, 1, 'X'), PauliOp(BitVec(2), BitVec::from_string("11"), 0)},
      {PauliOp(BitVec::from_string("11"), BitVec(2), 0), PauliOp::single(2, 0, 'Z')},
  });
  EncodingSpec spec{2, 1, c};
  StabCircuit enc = encoder(spec);
  CHECK(enc.n_in == 1);
  CHECK(validate(enc).n_out == 2);
  StabCircuit unenc = unencoder(spec);
  CHECK(unenc.n_in == 2);
  CHECK(validate(unenc).n_out == 1);

  // encoder then unencoder acts as the identity instrument on the logical
  // qubit; the unencoder returns the encoder's random syndrome.
  StabCircuit round = concat(enc, unenc);
  StabCircuit wire = parse_circuit("inputs 1\n");
  auto t1 = oracle::enumerate_instrument(round);
  auto t2 = oracle::enumerate_instrument(wire);
  auto eq = oracle::instruments_equivalent(t1, t2);
  CHECK(eq.equivalent);
  // Outcome structure: syndrome out equals syndrome in on every branch.
  for (const auto& br : t1.branches)
    if (br.probability > 1e-12) CHECK(br.outcomes.get(0) == br.outcomes.get(1));
}

TEST_CASE("logical map") {
  CliffordOp c = CliffordOp::from_images({
      {PauliOp::single(2, 1, 'X'), PauliOp(BitVec(2), BitVec::from_string("11"), 0)},
      {PauliOp(BitVec::from_string("11"), BitVec(2), 0), PauliOp::single(2, 0, 'Z')},
  });
  EncodingSpec spec{2, 1, c};
  // Stabilizer generator maps to identity with g = e_1.
  auto [g1, l1] = logical_map(spec, c.z_image(0));
  CHECK(g1 == BitVec::from_string("1"));
  CHECK(l1.is_identity());
  // The logical Z representative Z1 maps to Z.
  auto [g2, l2] = logical_map(spec, PauliOp::single(2, 0, 'Z'));
  CHECK(l2 == PauliOp::single(1, 0, 'Z'));
  // X1 anticommutes with the stabilizer: not in the normalizer.
  CHECK_THROWS_AS(logical_map(spec, PauliOp::single(2, 0, 'X')), std::invalid_argument);

  std::mt19937_64 rng(23);
  for (int it = 0; it < 30; ++it) {
    size_t n = 2 + rng() % 3;
    uint32_t k = 1 + rng() % n;
    CliffordOp enc = random_clifford(rng, n);
    EncodingSpec sp{(uint32_t)n, k, enc};
    // Random normalizer element: product of images of Z_(<=n-k) and any
    // Paulis on the logical block.
    PauliOp pre = PauliOp::identity(n);
    for (size_t j = 0; j < n - k; ++j)
      if (rng() & 1) pre = pre * PauliOp::single(n, j, 'Z');
    for (size_t j = n - k; j < n; ++j) {
      int kind = static_cast<int>(rng() % 4);
      if (kind) pre = pre * PauliOp::single(n, j, "XYZ"[kind - 1]);
    }
    if (!pre.is_hermitian()) pre.mul_phase(1);
    PauliOp p = enc.image(pre);
    auto [g, l] = logical_map(sp, p);
    // Recompose: C (Z^g (x) L) C^dag must equal P.
    PauliOp recomposed = enc.image(PauliOp(BitVec(n - k), g, 0).tensor(l));
    CHECK(recomposed == p);
  }
}

TEST_CASE("pauli propagation") {
  // No conditionals: everything trivial.
  StabCircuit plain = parse_circuit("inputs 0\nalloc 1\nh 1\nmeasure +Z1\n");
  auto pp = pauli_propagation(plain);
  CHECK(pp.a_x.is_zero());
  CHECK(pp.a_z.is_zero());
  CHECK(pp.m == BitMatrix::identity(1));
  CHECK(pp.circuit.ops.size() == plain.ops.size());

  // Single trailing conditional: its row lands in A with the mask.
  StabCircuit tail = parse_circuit("inputs 0\nalloc 1\nrand\ncond +X1 if o1 == 1\n");
  auto pt = pauli_propagation(tail);
  CHECK(pt.a_x == BitMatrix::from_strings({"1"}));
  CHECK(pt.v_x.is_zero());
  CHECK(pt.circuit.ops.size() == 2);

  // cond with == 0 contributes the affine part.
  StabCircuit neg = parse_circuit("inputs 0\nalloc 1\nrand\ncond +X1 if o1 == 0\n");
  auto pn = pauli_propagation(neg);
  CHECK(pn.a_x == BitMatrix::from_strings({"1"}));
  CHECK(pn.v_x == BitVec::from_string("1"));

  // Erroring case: a pending X flip on a deallocated qubit.
  StabCircuit badd = parse_circuit("inputs 0\nalloc 1\nh 1\nmz! 1\n");
  CHECK_THROWS_AS(pauli_propagation(badd), std::invalid_argument);
}

TEST_CASE("pauli propagation matches the oracle on all branches") {
  std::mt19937_64 rng(29);
  int done = 0;
  while (done < 30) {
    RandomCircuitOptions opt;
    opt.max_qubits = 4;
    opt.ops = 12;
    opt.max_branchy_outcomes = 5;
    opt.allow_dealloc = false;
    StabCircuit c = random_circuit(rng, opt);
    PauliPropagation pp;
    try {
      pp = pauli_propagation(c);
    } catch (const std::invalid_argument&) {
      continue;  // pending flip on a deallocated qubit
    }
    CircuitInfo info = validate(c);
    // Build "c' then inverse-affine relabel" and compare instruments: instead
    // check branch by branch that  tail(v) * branch_map(c, v)  equals the
    // branch of c' at v' = Mv + v0 up to phase.
    auto t1 = oracle::enumerate_instrument(c);
    auto t2 = oracle::enumerate_instrument(pp.circuit);
    REQUIRE(t1.branches.size() == t2.branches.size());
    for (const auto& br : t1.branches) {
      BitVec v2 = pp.v0 ^ pp.m.mul(br.outcomes);
      const oracle::Branch* match = nullptr;
      for (const auto& b2 : t2.branches)
        if (b2.outcomes == v2) match = &b2;
      REQUIRE(match != nullptr);
      // Apply the trailing Pauli to the first-branch Choi state.
      PauliOp tailp(pp.a_x.mul(br.outcomes) ^ pp.v_x, pp.a_z.mul(br.outcomes) ^ pp.v_z, 0);
      oracle::DenseState st{
          static_cast<uint32_t>(info.n_out + c.n_in), br.choi};
      st.apply_pauli(tailp.embed(info.n_out + c.n_in, 0));
      CHECK(oracle::equal_up_to_phase(st.amp, match->choi, 1e-7));
    }
    ++done;
  }
}

TEST_CASE("concat shifts outcome references") {
  StabCircuit a = parse_circuit("inputs 1\nmeasure +Z1\n");
  StabCircuit b = parse_circuit("inputs 1\nrand\ncond +X1 if o1 == 1\n");
  StabCircuit ab = concat(a, b);
  CHECK(validate(ab).n_outcomes == 2);
  const auto* cnd = std::get_if<CondPauli>(&ab.ops.back());
  REQUIRE(cnd != nullptr);
  CHECK(cnd->outcomes == std::vector<uint32_t>{1});
}

TEST_CASE("random circuits survive format/parse/validate round trips") {
  std::mt19937_64 rng(31337);
  for (int it = 0; it < 60; ++it) {
    RandomCircuitOptions opt;
    opt.max_qubits = 5;
    opt.ops = 16;
    StabCircuit c = random_circuit(rng, opt);
    StabCircuit back = parse_circuit(format_circuit(c));
    validate(back);
    CHECK(format_circuit(back) == format_circuit(c));
  }
}

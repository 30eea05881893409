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

#include "stabforms/circuit.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace stabforms {

namespace {

[[noreturn]] void fail_at(size_t op_index, const std::string& msg) {
  throw std::invalid_argument("op " + std::to_string(op_index) + ": " + msg);
}

void check_support(const SparsePauli& p, uint32_t cur, size_t i, const char* what) {
  if (!p.qubits.empty() && p.max_qubit() >= cur)
    fail_at(i, std::string(what) + " acts on a qubit that is not allocated");
}

}  // namespace

CircuitInfo validate(const StabCircuit& c) {
  CircuitInfo info;
  uint32_t cur = c.n_in;
  info.n_max = cur;
  uint32_t outcomes = 0;
  for (size_t i = 0; i < c.ops.size(); ++i) {
    const StabOp& op = c.ops[i];
    if (auto* a = std::get_if<AllocQubit>(&op)) {
      if (a->pos > cur) fail_at(i, "alloc position out of range");
      ++cur;
      info.n_max = std::max(info.n_max, cur);
    } else if (auto* d = std::get_if<DeallocQubit>(&op)) {
      if (d->pos >= cur) fail_at(i, "dealloc position out of range");
      --cur;
    } else if (std::get_if<AllocRandomBit>(&op)) {
      ++outcomes;
      ++info.n_random_bits;
    } else if (auto* u = std::get_if<UnitaryPauli>(&op)) {
      check_support(u->p, cur, i, "pauli");
    } else if (auto* e = std::get_if<UnitaryExp>(&op)) {
      check_support(e->p, cur, i, "exp");
      if (!e->p.body.is_hermitian()) fail_at(i, "exp operand is not Hermitian");
    } else if (auto* cp = std::get_if<UnitaryCtrlPauli>(&op)) {
      check_support(cp->p, cur, i, "cpauli");
      check_support(cp->q, cur, i, "cpauli");
      if (!cp->p.body.is_hermitian() || !cp->q.body.is_hermitian())
        fail_at(i, "cpauli operands must be Hermitian");
      if (commutator(cp->p.embed(cur), cp->q.embed(cur)))
        fail_at(i, "cpauli operands must commute");
    } else if (auto* s = std::get_if<UnitarySwap>(&op)) {
      if (s->a >= cur || s->b >= cur || s->a == s->b) fail_at(i, "bad swap indices");
    } else if (auto* cs = std::get_if<UnitaryCss>(&op)) {
      if (cs->a.rows() != cs->a.cols()) fail_at(i, "css matrix must be square");
      if (cs->a.rows() > cur) fail_at(i, "css matrix larger than the register");
      if (rank_of(cs->a) != cs->a.rows()) fail_at(i, "css matrix must be invertible");
    } else if (auto* cnd = std::get_if<CondPauli>(&op)) {
      check_support(cnd->p, cur, i, "cond");
      if (!cnd->p.body.is_hermitian()) fail_at(i, "cond operand is not Hermitian");
      for (size_t k = 0; k < cnd->outcomes.size(); ++k) {
        if (cnd->outcomes[k] >= outcomes) fail_at(i, "cond references a later outcome");
        for (size_t k2 = k + 1; k2 < cnd->outcomes.size(); ++k2)
          if (cnd->outcomes[k] == cnd->outcomes[k2]) fail_at(i, "cond repeats an outcome");
      }
    } else if (auto* m = std::get_if<Measure>(&op)) {
      check_support(m->p, cur, i, "measure");
      if (!m->p.body.is_hermitian()) fail_at(i, "measured observable is not Hermitian");
      if (m->hint) {
        check_support(*m->hint, cur, i, "hint");
        if (!m->hint->body.is_hermitian()) fail_at(i, "hint is not Hermitian");
        if (!commutator(m->p.embed(cur), m->hint->embed(cur)))
          fail_at(i, "hint must anticommute with the measured observable");
      }
      ++outcomes;
    }
  }
  info.n_out = cur;
  info.n_outcomes = outcomes;
  return info;
}

StabCircuit concat(const StabCircuit& a, const StabCircuit& b) {
  CircuitInfo ia = validate(a);
  validate(b);
  if (b.n_in != ia.n_out)
    throw std::invalid_argument("concat: output/input qubit counts do not match");
  StabCircuit out;
  out.n_in = a.n_in;
  out.ops = a.ops;
  for (StabOp op : b.ops) {
    if (auto* cnd = std::get_if<CondPauli>(&op))
      for (auto& o : cnd->outcomes) o += ia.n_outcomes;
    out.ops.push_back(std::move(op));
  }
  return out;
}

namespace {

SparsePauli sp1(uint32_t q, char kind, int extra_phase = 0) {
  PauliOp body = PauliOp::single(1, 0, kind);
  body.mul_phase(extra_phase);
  return SparsePauli({q}, body);
}

void append_hadamard(std::vector<StabOp>& ops, uint32_t q) {
  ops.push_back(UnitaryExp{sp1(q, 'Z')});
  ops.push_back(UnitaryExp{sp1(q, 'X')});
  ops.push_back(UnitaryExp{sp1(q, 'Z')});
}

}  // namespace

StabCircuit choi_circuit(const StabCircuit& c) {
  validate(c);
  StabCircuit out;
  out.n_in = 0;
  uint32_t n = c.n_in;
  for (uint32_t i = 0; i < 2 * n; ++i) out.ops.push_back(AllocQubit{i});
  for (uint32_t j = 0; j < n; ++j) {
    append_hadamard(out.ops, j);
    out.ops.push_back(UnitaryCtrlPauli{sp1(j, 'Z'), sp1(n + j, 'X')});
  }
  // The kept Bell halves sit after all of c's qubits, so c's positional
  // indices carry over unchanged.
  out.ops.insert(out.ops.end(), c.ops.begin(), c.ops.end());
  return out;
}

StabCircuit encoder(const EncodingSpec& spec) {
  if (spec.k > spec.n || spec.c.num_qubits() != spec.n)
    throw std::invalid_argument("encoder: bad code spec");
  StabCircuit out;
  out.n_in = spec.k;
  uint32_t r = spec.n - spec.k;
  for (uint32_t j = 0; j < r; ++j) out.ops.push_back(AllocRandomBit{});
  for (uint32_t j = 0; j < r; ++j) out.ops.push_back(AllocQubit{j});
  for (uint32_t j = 0; j < r; ++j) out.ops.push_back(CondPauli{sp1(j, 'X'), {j}, true});
  auto cops = clifford_to_ops(spec.c);
  out.ops.insert(out.ops.end(), cops.begin(), cops.end());
  return out;
}

StabCircuit unencoder(const EncodingSpec& spec) {
  if (spec.k > spec.n || spec.c.num_qubits() != spec.n)
    throw std::invalid_argument("unencoder: bad code spec");
  StabCircuit out;
  out.n_in = spec.n;
  auto cops = clifford_to_ops(spec.c.inverse());
  out.ops.insert(out.ops.end(), cops.begin(), cops.end());
  for (uint32_t j = 0; j < spec.n - spec.k; ++j) {
    out.ops.push_back(Measure{sp1(0, 'Z'), std::nullopt});
    out.ops.push_back(CondPauli{sp1(0, 'X'), {j}, true});
    out.ops.push_back(DeallocQubit{0});
  }
  return out;
}

std::pair<BitVec, PauliOp> logical_map(const EncodingSpec& spec, const PauliOp& p) {
  PauliOp pre = spec.c.preimage(p);
  uint32_t r = spec.n - spec.k;
  if (!pre.x.slice(0, r).is_zero())
    throw std::invalid_argument("logical_map: operator is outside the code normalizer");
  BitVec g = pre.z.slice(0, r);
  PauliOp l(pre.x.slice(r, spec.k), pre.z.slice(r, spec.k), pre.phase);
  return {std::move(g), std::move(l)};
}

PauliPropagation pauli_propagation(const StabCircuit& c) {
  CircuitInfo info = validate(c);
  PauliPropagation out;
  out.circuit.n_in = c.n_in;
  uint32_t cur = c.n_in;
  uint32_t n_v = info.n_outcomes;
  out.a_x = BitMatrix(cur, n_v);
  out.a_z = BitMatrix(cur, n_v);
  out.v_x = BitVec(cur);
  out.v_z = BitVec(cur);
  uint32_t seen = 0;  // outcomes seen so far
  std::vector<BitVec> m_rows;
  std::vector<bool> v0_bits;

  auto erase_row = [&](BitMatrix& m, uint32_t pos) {
    std::vector<BitVec> rows;
    for (size_t i = 0; i < m.rows(); ++i)
      if (i != pos) rows.push_back(m.row(i));
    m = rows.empty() ? BitMatrix(0, m.cols()) : BitMatrix::from_rows(std::move(rows));
  };
  auto insert_row = [&](BitMatrix& m, uint32_t pos) {
    std::vector<BitVec> rows;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == pos) rows.push_back(BitVec(m.cols()));
      rows.push_back(m.row(i));
    }
    if (pos == m.rows()) rows.push_back(BitVec(m.cols()));
    m = BitMatrix::from_rows(std::move(rows));
  };
  auto erase_bit = [&](BitVec& v, uint32_t pos) {
    BitVec w(v.size() - 1);
    for (size_t i = 0, j = 0; i < v.size(); ++i)
      if (i != pos) w.set(j++, v.get(i));
    v = std::move(w);
  };
  auto insert_bit = [&](BitVec& v, uint32_t pos) {
    BitVec w(v.size() + 1);
    for (size_t i = 0, j = 0; i < v.size() + 1; ++i)
      if (i != pos) w.set(i, v.get(j++));
    v = std::move(w);
  };

  for (size_t i = 0; i < c.ops.size(); ++i) {
    const StabOp& op = c.ops[i];
    if (auto* a = std::get_if<AllocQubit>(&op)) {
      insert_row(out.a_x, a->pos);
      insert_row(out.a_z, a->pos);
      insert_bit(out.v_x, a->pos);
      insert_bit(out.v_z, a->pos);
      ++cur;
      out.circuit.ops.push_back(op);
    } else if (auto* d = std::get_if<DeallocQubit>(&op)) {
      if (!out.a_x.row(d->pos).is_zero() || out.v_x.get(d->pos))
        fail_at(i, "pauli_propagation: conditional X flip pending on a deallocated qubit");
      erase_row(out.a_x, d->pos);
      erase_row(out.a_z, d->pos);
      erase_bit(out.v_x, d->pos);
      erase_bit(out.v_z, d->pos);
      --cur;
      out.circuit.ops.push_back(op);
    } else if (std::get_if<AllocRandomBit>(&op)) {
      BitVec row(n_v);
      row.set(seen, true);
      m_rows.push_back(std::move(row));
      v0_bits.push_back(false);
      ++seen;
      out.circuit.ops.push_back(op);
    } else if (auto* cnd = std::get_if<CondPauli>(&op)) {
      PauliOp p = cnd->p.embed(cur);
      BitVec mask(n_v);
      for (uint32_t o : cnd->outcomes) mask.set(o, true);
      // A_x += x(P) c^T and the affine part for c0.
      for (size_t q : p.x.support()) out.a_x.row(q) ^= mask;
      for (size_t q : p.z.support()) out.a_z.row(q) ^= mask;
      if (!cnd->value) {
        out.v_x ^= p.x;
        out.v_z ^= p.z;
      }
    } else if (auto* m = std::get_if<Measure>(&op)) {
      PauliOp p = m->p.embed(cur);
      BitVec row = out.a_x.transposed().mul(p.z) ^ out.a_z.transposed().mul(p.x);
      row.set(seen, true);
      m_rows.push_back(std::move(row));
      v0_bits.push_back(out.v_x.dot(p.z) ^ out.v_z.dot(p.x));
      ++seen;
      out.circuit.ops.push_back(op);
    } else {
      // Unitary: conjugate the pending Pauli through it, dropping phases.
      CliffordOp u = ops_to_clifford({op}, cur);
      auto [bxz, bzz] = u.batch_x_images(BitMatrix::hstack(
          out.a_x, BitMatrix::from_rows({out.v_x}).transposed()));
      auto [bxx, bzx] = u.batch_z_images(BitMatrix::hstack(
          out.a_z, BitMatrix::from_rows({out.v_z}).transposed()));
      BitMatrix nx = bxz + bxx, nz = bzz + bzx;
      out.a_x = nx.cols_slice(0, n_v);
      out.v_x = nx.col(n_v);
      out.a_z = nz.cols_slice(0, n_v);
      out.v_z = nz.col(n_v);
      out.circuit.ops.push_back(op);
    }
  }
  out.m = m_rows.empty() ? BitMatrix(0, n_v) : BitMatrix::from_rows(std::move(m_rows));
  out.v0 = BitVec(v0_bits.size());
  for (size_t i = 0; i < v0_bits.size(); ++i) out.v0.set(i, v0_bits[i]);
  return out;
}

namespace {

// Elementary gates used by the synthesis loop; all are self-inverse except
// the Z-axis quarter turns, which invert by flipping the exponent sign.
struct Gate {
  enum Kind { kH, kSexp, kSexpInv, kCX, kCZ, kSwap, kX, kZ } kind;
  uint32_t a = 0, b = 0;
};

void apply_gate(CliffordOp& w, const Gate& g) {
  size_t n = w.num_qubits();
  switch (g.kind) {
    case Gate::kH:
      w.left_mult_exp(PauliOp::single(n, g.a, 'Z'));
      w.left_mult_exp(PauliOp::single(n, g.a, 'X'));
      w.left_mult_exp(PauliOp::single(n, g.a, 'Z'));
      break;
    case Gate::kSexp:  // e^{-i pi Z/4} ~ S
      w.left_mult_exp(PauliOp::single(n, g.a, 'Z').mul_phase(2));
      break;
    case Gate::kSexpInv:
      w.left_mult_exp(PauliOp::single(n, g.a, 'Z'));
      break;
    case Gate::kCX:
      w.left_mult_ctrl_pauli(PauliOp::single(n, g.a, 'Z'), PauliOp::single(n, g.b, 'X'));
      break;
    case Gate::kCZ:
      w.left_mult_ctrl_pauli(PauliOp::single(n, g.a, 'Z'), PauliOp::single(n, g.b, 'Z'));
      break;
    case Gate::kSwap:
      w.left_mult_swap(g.a, g.b);
      break;
    case Gate::kX:
      w.left_mult_pauli(PauliOp::single(n, g.a, 'X'));
      break;
    case Gate::kZ:
      w.left_mult_pauli(PauliOp::single(n, g.a, 'Z'));
      break;
  }
}

void emit_inverse(std::vector<StabOp>& ops, const Gate& g) {
  switch (g.kind) {
    case Gate::kH:
      append_hadamard(ops, g.a);
      break;
    case Gate::kSexp:
      ops.push_back(UnitaryExp{sp1(g.a, 'Z')});
      break;
    case Gate::kSexpInv:
      ops.push_back(UnitaryExp{sp1(g.a, 'Z', 2)});
      break;
    case Gate::kCX:
      ops.push_back(UnitaryCtrlPauli{sp1(g.a, 'Z'), sp1(g.b, 'X')});
      break;
    case Gate::kCZ:
      ops.push_back(UnitaryCtrlPauli{sp1(g.a, 'Z'), sp1(g.b, 'Z')});
      break;
    case Gate::kSwap:
      ops.push_back(UnitarySwap{g.a, g.b});
      break;
    case Gate::kX:
      ops.push_back(UnitaryPauli{sp1(g.a, 'X')});
      break;
    case Gate::kZ:
      ops.push_back(UnitaryPauli{sp1(g.a, 'Z')});
      break;
  }
}

}  // namespace

std::vector<StabOp> clifford_to_ops(const CliffordOp& c) {
  size_t n = c.num_qubits();
  CliffordOp w = c;
  std::vector<Gate> gates;
  auto apply = [&](Gate g) {
    apply_gate(w, g);
    gates.push_back(g);
  };

  for (uint32_t j = 0; j < n; ++j) {
    // Reduce W Z_j W^dag to +Z_j.
    PauliOp p = w.z_image(j);
    if (p != PauliOp::single(n, j, 'Z')) {
      bool have_x = false;
      for (size_t t = j; t < n && !have_x; ++t) have_x = p.x.get(t);
      if (!have_x) {
        size_t k = j;
        while (!p.z.get(k)) ++k;
        apply({Gate::kH, (uint32_t)k});
        p = w.z_image(j);
      }
      size_t k = j;
      while (!p.x.get(k)) ++k;
      if (k != j) {
        apply({Gate::kSwap, j, (uint32_t)k});
        p = w.z_image(j);
      }
      for (size_t t = j + 1; t < n; ++t)
        if (p.x.get(t)) apply({Gate::kCX, j, (uint32_t)t});
      p = w.z_image(j);
      if (p.z.get(j)) {
        apply({Gate::kSexp, j});
        p = w.z_image(j);
      }
      for (size_t t = j + 1; t < n; ++t)
        if (p.z.get(t)) apply({Gate::kCZ, j, (uint32_t)t});
      apply({Gate::kH, j});
      p = w.z_image(j);
      if (p.phase == 2) apply({Gate::kX, j});
    }

    // Reduce W X_j W^dag to +X_j while fixing Z_j.
    PauliOp q = w.x_image(j);
    for (size_t t = j + 1; t < n; ++t)
      if (q.x.get(t)) apply({Gate::kCX, j, (uint32_t)t});
    q = w.x_image(j);
    if (q.z.get(j)) {
      apply({Gate::kSexp, j});
      q = w.x_image(j);
    }
    for (size_t t = j + 1; t < n; ++t)
      if (q.z.get(t)) apply({Gate::kCZ, j, (uint32_t)t});
    q = w.x_image(j);
    if (q.phase == 2) apply({Gate::kZ, j});
  }
  if (w != CliffordOp::identity(n))
    throw std::runtime_error("clifford_to_ops: reduction did not reach the identity");

  std::vector<StabOp> out;
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) emit_inverse(out, *it);
  if (ops_to_clifford(out, n) != c)
    throw std::runtime_error("clifford_to_ops: emitted sequence does not reproduce the tableau");
  return out;
}

CliffordOp ops_to_clifford(const std::vector<StabOp>& ops, size_t n) {
  CliffordOp w(n);
  for (const StabOp& op : ops) {
    if (auto* u = std::get_if<UnitaryPauli>(&op)) {
      w.left_mult_pauli(u->p.embed(n));
    } else if (auto* e = std::get_if<UnitaryExp>(&op)) {
      w.left_mult_exp(e->p.embed(n));
    } else if (auto* cp = std::get_if<UnitaryCtrlPauli>(&op)) {
      w.left_mult_ctrl_pauli(cp->p.embed(n), cp->q.embed(n));
    } else if (auto* s = std::get_if<UnitarySwap>(&op)) {
      w.left_mult_swap(s->a, s->b);
    } else if (auto* cs = std::get_if<UnitaryCss>(&op)) {
      CliffordOp u = CliffordOp::css(cs->a);
      if (u.num_qubits() < n) u.add_qubits(n - u.num_qubits());
      w = u * w;
    } else {
      throw std::invalid_argument("ops_to_clifford: not a unitary operation");
    }
  }
  return w;
}

namespace {

std::string pauli_text(const SparsePauli& p) { return format_pauli(p); }

}  // namespace

std::string format_op(const StabOp& op) {
  std::ostringstream s;
  if (auto* a = std::get_if<AllocQubit>(&op)) {
    s << "alloc " << (a->pos + 1);
  } else if (auto* d = std::get_if<DeallocQubit>(&op)) {
    s << "dealloc " << (d->pos + 1);
  } else if (std::get_if<AllocRandomBit>(&op)) {
    s << "rand";
  } else if (auto* u = std::get_if<UnitaryPauli>(&op)) {
    s << "pauli " << pauli_text(u->p);
  } else if (auto* e = std::get_if<UnitaryExp>(&op)) {
    s << "exp " << pauli_text(e->p);
  } else if (auto* cp = std::get_if<UnitaryCtrlPauli>(&op)) {
    s << "cpauli " << pauli_text(cp->p) << " ; " << pauli_text(cp->q);
  } else if (auto* sw = std::get_if<UnitarySwap>(&op)) {
    s << "swap " << (sw->a + 1) << " " << (sw->b + 1);
  } else if (auto* cs = std::get_if<UnitaryCss>(&op)) {
    s << "css rows=";
    auto rows = cs->a.to_strings();
    for (size_t i = 0; i < rows.size(); ++i) s << (i ? "," : "") << rows[i];
  } else if (auto* cnd = std::get_if<CondPauli>(&op)) {
    s << "cond " << pauli_text(cnd->p) << " if ";
    for (size_t i = 0; i < cnd->outcomes.size(); ++i)
      s << (i ? "," : "") << "o" << (cnd->outcomes[i] + 1);
    s << " == " << (cnd->value ? 1 : 0);
  } else if (auto* m = std::get_if<Measure>(&op)) {
    s << "measure " << pauli_text(m->p);
    if (m->hint) s << " hint " << pauli_text(*m->hint);
  }
  return s.str();
}

std::string format_circuit(const StabCircuit& c) {
  std::ostringstream s;
  s << "inputs " << c.n_in << "\n";
  for (const StabOp& op : c.ops) s << format_op(op) << "\n";
  return s.str();
}

namespace {

struct LineParser {
  std::string_view text;
  size_t line_no = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": " + msg);
  }

  static std::string trim(std::string s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
  }

  long parse_int(const std::string& tok, long lo, long hi) const {
    try {
      size_t pos = 0;
      long v = std::stol(tok, &pos);
      if (pos != tok.size() || v < lo || v > hi) fail("bad integer '" + tok + "'");
      return v;
    } catch (const std::invalid_argument&) {
      fail("bad integer '" + tok + "'");
    } catch (const std::out_of_range&) {
      fail("bad integer '" + tok + "'");
    }
  }

  SparsePauli parse_pauli_or_fail(const std::string& text_part) const {
    try {
      return parse_pauli(text_part);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
};

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

}  // namespace

StabCircuit parse_circuit(std::string_view text) {
  StabCircuit c;
  LineParser lp{text};
  std::istringstream stream{std::string(text)};
  std::string raw;
  bool saw_inputs = false;
  uint32_t outcomes = 0;
  while (std::getline(stream, raw)) {
    ++lp.line_no;
    if (auto h = raw.find('#'); h != std::string::npos) raw = raw.substr(0, h);
    std::string line = LineParser::trim(raw);
    if (line.empty()) continue;
    auto toks = split_ws(line);
    const std::string& kw = toks[0];
    if (!saw_inputs) {
      if (kw != "inputs") lp.fail("expected 'inputs N' as the first statement");
      if (toks.size() != 2) lp.fail("expected 'inputs N'");
      c.n_in = (uint32_t)lp.parse_int(toks[1], 0, 1 << 20);
      saw_inputs = true;
      continue;
    }
    if (kw == "inputs") lp.fail("duplicate 'inputs' statement");
    if (kw == "alloc" || kw == "dealloc") {
      if (toks.size() != 2) lp.fail("expected '" + kw + " P'");
      uint32_t pos = (uint32_t)lp.parse_int(toks[1], 1, 1 << 20) - 1;
      if (kw == "alloc")
        c.ops.push_back(AllocQubit{pos});
      else
        c.ops.push_back(DeallocQubit{pos});
    } else if (kw == "rand") {
      if (toks.size() != 1) lp.fail("'rand' takes no arguments");
      c.ops.push_back(AllocRandomBit{});
      ++outcomes;
    } else if (kw == "pauli" || kw == "exp") {
      auto p = lp.parse_pauli_or_fail(line.substr(kw.size()));
      if (kw == "pauli")
        c.ops.push_back(UnitaryPauli{std::move(p)});
      else
        c.ops.push_back(UnitaryExp{std::move(p)});
    } else if (kw == "cpauli") {
      std::string rest = line.substr(kw.size());
      auto semi = rest.find(';');
      if (semi == std::string::npos) lp.fail("cpauli needs ';' between operands");
      auto p = lp.parse_pauli_or_fail(rest.substr(0, semi));
      auto q = lp.parse_pauli_or_fail(rest.substr(semi + 1));
      c.ops.push_back(UnitaryCtrlPauli{std::move(p), std::move(q)});
    } else if (kw == "swap") {
      if (toks.size() != 3) lp.fail("expected 'swap I J'");
      c.ops.push_back(UnitarySwap{(uint32_t)lp.parse_int(toks[1], 1, 1 << 20) - 1,
                                  (uint32_t)lp.parse_int(toks[2], 1, 1 << 20) - 1});
    } else if (kw == "css") {
      if (toks.size() != 2 || toks[1].substr(0, 5) != "rows=") lp.fail("expected 'css rows=...'");
      std::vector<std::string> rows;
      std::string body = toks[1].substr(5);
      size_t start = 0;
      while (start <= body.size()) {
        size_t comma = body.find(',', start);
        rows.push_back(body.substr(start, comma == std::string::npos ? comma : comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      try {
        c.ops.push_back(UnitaryCss{BitMatrix::from_strings(rows)});
      } catch (const std::invalid_argument& e) {
        lp.fail(e.what());
      }
    } else if (kw == "cond") {
      std::string rest = line.substr(kw.size());
      auto ifpos = rest.find(" if ");
      if (ifpos == std::string::npos) lp.fail("cond needs 'if o... == B'");
      auto p = lp.parse_pauli_or_fail(rest.substr(0, ifpos));
      std::string tail = LineParser::trim(rest.substr(ifpos + 4));
      auto eq = tail.find("==");
      if (eq == std::string::npos) lp.fail("cond needs '=='");
      std::string refs = LineParser::trim(tail.substr(0, eq));
      std::string bit = LineParser::trim(tail.substr(eq + 2));
      std::vector<uint32_t> outs;
      size_t start = 0;
      while (start < refs.size()) {
        size_t comma = refs.find(',', start);
        std::string r =
            LineParser::trim(refs.substr(start, comma == std::string::npos ? comma : comma - start));
        if (r.size() < 2 || r[0] != 'o') lp.fail("outcome references look like o3");
        outs.push_back((uint32_t)lp.parse_int(r.substr(1), 1, 1 << 20) - 1);
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      if (outs.empty()) lp.fail("cond needs at least one outcome reference");
      if (bit != "0" && bit != "1") lp.fail("cond target must be 0 or 1");
      c.ops.push_back(CondPauli{std::move(p), std::move(outs), bit == "1"});
    } else if (kw == "measure") {
      std::string rest = line.substr(kw.size());
      auto hintpos = rest.find(" hint ");
      std::optional<SparsePauli> hint;
      if (hintpos != std::string::npos) {
        hint = lp.parse_pauli_or_fail(rest.substr(hintpos + 6));
        rest = rest.substr(0, hintpos);
      }
      c.ops.push_back(Measure{lp.parse_pauli_or_fail(rest), std::move(hint)});
      ++outcomes;
    } else if (kw == "h" || kw == "s") {
      if (toks.size() != 2) lp.fail("expected '" + kw + " q'");
      uint32_t q = (uint32_t)lp.parse_int(toks[1], 1, 1 << 20) - 1;
      if (kw == "h")
        append_hadamard(c.ops, q);
      else
        c.ops.push_back(UnitaryExp{sp1(q, 'Z', 2)});
    } else if (kw == "cx" || kw == "cz") {
      if (toks.size() != 3) lp.fail("expected '" + kw + " a b'");
      uint32_t a = (uint32_t)lp.parse_int(toks[1], 1, 1 << 20) - 1;
      uint32_t b = (uint32_t)lp.parse_int(toks[2], 1, 1 << 20) - 1;
      c.ops.push_back(UnitaryCtrlPauli{sp1(a, 'Z'), sp1(b, kw == "cx" ? 'X' : 'Z')});
    } else if (kw == "mz!") {
      if (toks.size() != 2) lp.fail("expected 'mz! q'");
      uint32_t q = (uint32_t)lp.parse_int(toks[1], 1, 1 << 20) - 1;
      c.ops.push_back(Measure{sp1(q, 'Z'), std::nullopt});
      c.ops.push_back(CondPauli{sp1(q, 'X'), {outcomes}, true});
      c.ops.push_back(DeallocQubit{q});
      ++outcomes;
    } else {
      lp.fail("unknown statement '" + kw + "'");
    }
  }
  if (!saw_inputs) throw std::invalid_argument("line 1: missing 'inputs N'");
  try {
    validate(c);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("circuit invalid: ") + e.what());
  }
  return c;
}

}  // namespace stabforms

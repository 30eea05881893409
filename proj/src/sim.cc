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

#include "stabforms/sim.h"

#include <stdexcept>

#include "stabforms/genform.h"

namespace stabforms {

namespace {

[[noreturn]] void sim_fail(size_t op_index, const std::string& msg) {
  throw std::invalid_argument("op " + std::to_string(op_index) + ": " + msg);
}

// Qubit slots are pre-allocated to the circuit's n_max and recycled;
// deallocation is deferred and resolved at the end through the bipartite
// normal form. pos2slot maps circuit positions to physical slots.
struct SimEngine {
  bool complete;
  const BitVec* vtilde = nullptr;

  uint32_t n_slots = 0;
  CliffordOp co;
  std::vector<uint32_t> pos2slot;
  std::vector<uint32_t> free_slots;

  std::vector<BitVec> a_rows;  // n_slots rows of width n_r (complete mode)
  std::vector<BitVec> m_rows;
  std::vector<bool> v0_bits;
  size_t n_r = 0;

  std::vector<bool> p_half;
  BitVec v;  // specific mode
  size_t outcome_idx = 0;

  explicit SimEngine(bool complete_mode, uint32_t slots, uint32_t n_outcomes)
      : complete(complete_mode), n_slots(slots), co(slots), a_rows(slots), v(n_outcomes) {
    for (uint32_t s = slots; s-- > 0;) free_slots.push_back(s);
  }

  // A^T b as the XOR of rows of A selected by b.
  BitVec at_mul(const BitVec& b) const {
    BitVec acc(n_r);
    for (size_t j : b.support()) acc ^= a_rows[j];
    return acc;
  }

  PauliOp to_slots(const SparsePauli& p) const {
    PauliOp out = PauliOp::identity(n_slots);
    for (size_t i = 0; i < p.qubits.size(); ++i) {
      uint32_t slot = pos2slot[p.qubits[i]];
      out.x.set(slot, p.body.x.get(i));
      out.z.set(slot, p.body.z.get(i));
    }
    out.phase = p.body.phase;
    return out;
  }

  void append_random_column() {
    ++n_r;
    for (auto& row : a_rows) row.resize(n_r);
    BitVec row(n_r);
    row.set(n_r - 1, true);
    m_rows.push_back(std::move(row));
    v0_bits.push_back(false);
  }

  BitVec mt_mask(const std::vector<uint32_t>& outcomes) const {
    BitVec acc(n_r);
    for (uint32_t o : outcomes) {
      BitVec row = m_rows[o];
      row.resize(n_r);
      acc ^= row;
    }
    return acc;
  }

  // Applies P conditioned on the parity of the random bits marked by cond.
  void cond_on_random(const PauliOp& p, const BitVec& cond) {
    PauliOp pt = co.preimage(p);
    for (size_t j : pt.x.support()) a_rows[j] ^= cond;
  }

  void handle_cond(const CondPauli& cnd) {
    PauliOp p = to_slots(cnd.p);
    if (!complete) {
      bool parity = false;
      for (uint32_t o : cnd.outcomes) parity ^= v.get(o);
      if (parity == cnd.value) co.left_mult_pauli(p);
      return;
    }
    bool base = !cnd.value;  // P^{c0+1}
    for (uint32_t o : cnd.outcomes) base ^= v0_bits[o];
    if (base) co.left_mult_pauli(p);
    cond_on_random(p, mt_mask(cnd.outcomes));
  }

  // Measurement of P with a stabilizer-up-to-sign hint P'.
  void measure_with_hint(const PauliOp& p, const PauliOp& hint, size_t op_i) {
    PauliOp pre = co.preimage(hint);
    if (!pre.x.is_zero())
      sim_fail(op_i, "hint Pauli does not stabilize the current state");
    bool alpha_minus = pre.phase == 2;
    PauliOp h = (p * hint).mul_phase(alpha_minus ? 1 : 3);
    if (!h.is_hermitian()) throw std::runtime_error("sim: exp operand not Hermitian");
    co.left_mult_exp(h);
    if (!complete) {
      p_half.push_back(true);
      bool bit = vtilde->get(outcome_idx);
      v.set(outcome_idx, bit);
      ++outcome_idx;
      if (bit) co.left_mult_pauli(hint);
      return;
    }
    BitVec cond = at_mul(pre.z);
    append_random_column();
    p_half.push_back(true);
    cond.resize(n_r);
    cond.set(n_r - 1, true);
    ++outcome_idx;
    cond_on_random(hint, cond);
  }

  void handle_measure(const Measure& m, size_t op_i) {
    PauliOp p = to_slots(m.p);
    if (m.hint) {
      measure_with_hint(p, to_slots(*m.hint), op_i);
      return;
    }
    PauliOp q = co.preimage(p);
    if (q.x.is_zero()) {
      p_half.push_back(false);
      if (q.phase & 1) throw std::runtime_error("sim: deterministic outcome with odd phase");
      bool bit = q.phase == 2;
      if (!complete) {
        v.set(outcome_idx, bit);
      } else {
        m_rows.push_back(at_mul(q.z));
        v0_bits.push_back(bit);
      }
      ++outcome_idx;
      return;
    }
    size_t j = *q.x.first_set();
    measure_with_hint(p, co.z_image(j), op_i);
  }

  void handle_dealloc(uint32_t pos, size_t op_i) {
    uint32_t slot = pos2slot[pos];
    PauliOp q = co.preimage(PauliOp::single(n_slots, slot, 'Z'));
    if (!q.x.is_zero() || q.phase != 0)
      sim_fail(op_i, "deallocated qubit is not deterministically |0>");
    if (complete && !at_mul(q.z).is_zero())
      sim_fail(op_i, "deallocated qubit is not |0> on every outcome path");
    pos2slot.erase(pos2slot.begin() + pos);
    free_slots.push_back(slot);
  }

  void handle_css(const UnitaryCss& cs) {
    // Decompose the invertible matrix into row additions; U_A factors into
    // the matching CNOT sequence.
    BitMatrix w = cs.a;
    size_t d = w.rows();
    std::vector<std::pair<uint32_t, uint32_t>> adds;  // (dst, src): row dst += row src
    for (size_t j = 0; j < d; ++j) {
      if (!w.get(j, j)) {
        size_t i = j + 1;
        while (i < d && !w.get(i, j)) ++i;
        if (i == d) throw std::runtime_error("css: singular matrix slipped through validation");
        w.row_xor(j, i);
        adds.push_back({(uint32_t)j, (uint32_t)i});
      }
      for (size_t i = 0; i < d; ++i)
        if (i != j && w.get(i, j)) {
          w.row_xor(i, j);
          adds.push_back({(uint32_t)i, (uint32_t)j});
        }
    }
    // w reduced to I by L_m ... L_1, so A = L_1^{-1} ... L_m^{-1}; apply the
    // rightmost factor first. L^{-1} = L, and U_{I + e_i e_j^T} = CX(j -> i).
    for (auto it = adds.rbegin(); it != adds.rend(); ++it) {
      uint32_t dst = pos2slot[it->first], src = pos2slot[it->second];
      co.left_mult_ctrl_pauli(PauliOp::single(n_slots, src, 'Z'),
                              PauliOp::single(n_slots, dst, 'X'));
    }
  }

  void run(const StabCircuit& c) {
    for (size_t i = 0; i < c.ops.size(); ++i) {
      const StabOp& op = c.ops[i];
      if (auto* al = std::get_if<AllocQubit>(&op)) {
        uint32_t slot = free_slots.back();
        free_slots.pop_back();
        pos2slot.insert(pos2slot.begin() + al->pos, slot);
      } else if (auto* d = std::get_if<DeallocQubit>(&op)) {
        handle_dealloc(d->pos, i);
      } else if (std::get_if<AllocRandomBit>(&op)) {
        p_half.push_back(true);
        if (!complete) {
          v.set(outcome_idx, vtilde->get(outcome_idx));
        } else {
          append_random_column();
        }
        ++outcome_idx;
      } else if (auto* u = std::get_if<UnitaryPauli>(&op)) {
        co.left_mult_pauli(to_slots(u->p));
      } else if (auto* e = std::get_if<UnitaryExp>(&op)) {
        co.left_mult_exp(to_slots(e->p));
      } else if (auto* cp = std::get_if<UnitaryCtrlPauli>(&op)) {
        co.left_mult_ctrl_pauli(to_slots(cp->p), to_slots(cp->q));
      } else if (auto* s = std::get_if<UnitarySwap>(&op)) {
        std::swap(pos2slot[s->a], pos2slot[s->b]);
      } else if (auto* cs = std::get_if<UnitaryCss>(&op)) {
        handle_css(*cs);
      } else if (auto* cnd = std::get_if<CondPauli>(&op)) {
        handle_cond(*cnd);
      } else if (auto* m = std::get_if<Measure>(&op)) {
        handle_measure(*m, i);
      }
    }
  }

  // Moves the output qubits to the front, then splits off the unused slots
  // with a zero-Bell-pair bipartite normal form (bulk deallocation).
  void finalize(uint32_t n_out) {
    std::vector<uint32_t> wire_slot(n_slots);
    for (uint32_t s = 0; s < n_slots; ++s) wire_slot[s] = s;
    std::vector<uint32_t> target;
    target.reserve(n_slots);
    std::vector<bool> used(n_slots, false);
    for (uint32_t slot : pos2slot) {
      target.push_back(slot);
      used[slot] = true;
    }
    for (uint32_t s = 0; s < n_slots; ++s)
      if (!used[s]) target.push_back(s);
    for (uint32_t i = 0; i < n_slots; ++i) {
      if (wire_slot[i] == target[i]) continue;
      uint32_t j = i + 1;
      while (wire_slot[j] != target[i]) ++j;
      co.left_mult_swap(i, j);
      std::swap(wire_slot[i], wire_slot[j]);
    }

    if (n_out == n_slots) return;
    BipartiteFamilyForm form = bipartite_family_form(co, n_out);
    if (form.k != 0)
      throw std::runtime_error("sim: pending deallocated qubits remain entangled");
    BitMatrix fa = invert(form.f) * BitMatrix::from_rows(a_rows);
    for (size_t i = n_out; i < n_slots; ++i)
      if (!fa.row(i).is_zero())
        throw std::runtime_error("sim: pending deallocated qubits depend on outcomes");
    co = form.d;
    a_rows.clear();
    for (size_t i = 0; i < n_out; ++i) a_rows.push_back(fa.row(i));
    n_slots = n_out;
  }
};

uint32_t checked_prepare(const StabCircuit& c, CircuitInfo& info) {
  info = validate(c);
  if (c.n_in != 0)
    throw std::invalid_argument("simulate: circuit must have no input qubits");
  return std::max(info.n_max, uint32_t{1});
}

}  // namespace

SpecificResult simulate_specific(const StabCircuit& c, const BitVec& vtilde) {
  CircuitInfo info;
  uint32_t slots = checked_prepare(c, info);
  if (vtilde.size() != info.n_outcomes)
    throw std::invalid_argument("simulate_specific: vtilde length mismatch");
  SimEngine eng(false, slots, info.n_outcomes);
  eng.vtilde = &vtilde;
  eng.run(c);
  eng.finalize(info.n_out);
  return SpecificResult{std::move(eng.p_half), std::move(eng.co), std::move(eng.v)};
}

CompleteResult simulate_complete(const StabCircuit& c) {
  CircuitInfo info;
  uint32_t slots = checked_prepare(c, info);
  SimEngine eng(true, slots, info.n_outcomes);
  eng.run(c);
  eng.finalize(info.n_out);
  CompleteResult res;
  res.p_half = std::move(eng.p_half);
  res.co = std::move(eng.co);
  res.n_r = eng.n_r;
  res.a = BitMatrix(info.n_out, eng.n_r);
  for (size_t i = 0; i < eng.a_rows.size(); ++i) res.a.row(i) = eng.a_rows[i];
  res.m = BitMatrix(info.n_outcomes, eng.n_r);
  for (size_t i = 0; i < eng.m_rows.size(); ++i) {
    BitVec row = eng.m_rows[i];
    row.resize(eng.n_r);
    res.m.row(i) = std::move(row);
  }
  res.v0 = BitVec(info.n_outcomes);
  for (size_t i = 0; i < eng.v0_bits.size(); ++i) res.v0.set(i, eng.v0_bits[i]);
  return res;
}

CompleteResult simulate_complete_via_specific(const StabCircuit& c) {
  CircuitInfo info = validate(c);
  BitVec zero(info.n_outcomes);
  SpecificResult base = simulate_specific(c, zero);
  CompleteResult res;
  res.p_half = base.p_half;
  res.co = base.co;
  res.v0 = base.v;
  size_t n_r = 0;
  for (bool h : base.p_half)
    if (h) ++n_r;
  res.n_r = n_r;
  res.a = BitMatrix(info.n_out, n_r);
  res.m = BitMatrix(info.n_outcomes, n_r);
  CliffordOp co_inv = base.co.inverse();
  size_t j = 0;
  for (size_t l = 0; l < base.p_half.size(); ++l) {
    if (!base.p_half[l]) continue;
    BitVec sel(info.n_outcomes);
    sel.set(l, true);
    SpecificResult rj = simulate_specific(c, sel);
    BitVec mcol = rj.v ^ base.v;
    for (size_t i = 0; i < info.n_outcomes; ++i) res.m.set(i, j, mcol.get(i));
    CliffordOp d = co_inv * rj.co;
    for (size_t k = 0; k < info.n_out; ++k) {
      PauliOp pre = d.z_preimage(k);
      if (!pre.x.is_zero() || (pre.phase & 1))
        throw std::runtime_error("simulate_complete_via_specific: branch state is not basis-aligned");
      res.a.set(k, j, pre.phase == 2);
    }
    ++j;
  }
  return res;
}

}  // namespace stabforms

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

#include "stabforms/oracle.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace stabforms::oracle {

namespace {

constexpr double kSqrtHalf = 0.70710678118654752440;
const cplx kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

uint64_t to_mask(const BitVec& v) {
  uint64_t m = 0;
  for (size_t i : v.support()) m |= uint64_t{1} << i;
  return m;
}

}  // namespace

DenseState DenseState::zero_state(uint32_t n) { return basis_state(n, 0); }

DenseState DenseState::basis_state(uint32_t n, uint64_t b) {
  if (n > 12) throw std::invalid_argument("DenseState: qubit cap exceeded");
  DenseState s;
  s.n = n;
  s.amp.assign(uint64_t{1} << n, cplx{0, 0});
  s.amp[b] = 1;
  return s;
}

void DenseState::apply_pauli(const PauliOp& p) {
  uint64_t xm = to_mask(p.x), zm = to_mask(p.z);
  cplx ph = kPhases[p.phase & 3];
  std::vector<cplx> out(amp.size());
  for (uint64_t c = 0; c < amp.size(); ++c) {
    cplx v = amp[c ^ xm];
    if (std::popcount(c & zm) & 1) v = -v;
    out[c] = ph * v;
  }
  amp = std::move(out);
}

void DenseState::apply_exp(const PauliOp& p) {
  DenseState tmp = *this;
  tmp.apply_pauli(p);
  for (uint64_t c = 0; c < amp.size(); ++c)
    amp[c] = kSqrtHalf * (amp[c] + cplx{0, 1} * tmp.amp[c]);
}

void DenseState::apply_ctrl_pauli(const PauliOp& p, const PauliOp& q) {
  DenseState pp = *this, qq = *this, pq = *this;
  pp.apply_pauli(p);
  qq.apply_pauli(q);
  pq.apply_pauli(q);
  pq.apply_pauli(p);
  for (uint64_t c = 0; c < amp.size(); ++c)
    amp[c] = 0.5 * (amp[c] + pp.amp[c] + qq.amp[c] - pq.amp[c]);
}

void DenseState::apply_swap(uint32_t a, uint32_t b) {
  for (uint64_t c = 0; c < amp.size(); ++c) {
    bool ba = (c >> a) & 1, bb = (c >> b) & 1;
    if (ba && !bb) {
      uint64_t d = (c ^ (uint64_t{1} << a)) | (uint64_t{1} << b);
      std::swap(amp[c], amp[d]);
    }
  }
}

void DenseState::apply_css(const BitMatrix& m) {
  size_t d = m.rows();
  std::vector<cplx> out(amp.size(), cplx{0, 0});
  uint64_t low_mask = (uint64_t{1} << d) - 1;
  for (uint64_t c = 0; c < amp.size(); ++c) {
    BitVec a(d);
    for (size_t i = 0; i < d; ++i) a.set(i, (c >> i) & 1);
    BitVec ma = m.mul(a);
    uint64_t target = (c & ~low_mask) | to_mask(ma);
    out[target] += amp[c];
  }
  amp = std::move(out);
}

void DenseState::apply_clifford(const CliffordOp& c) {
  for (const StabOp& op : clifford_to_ops(c)) {
    if (auto* u = std::get_if<UnitaryPauli>(&op))
      apply_pauli(u->p.embed(n));
    else if (auto* e = std::get_if<UnitaryExp>(&op))
      apply_exp(e->p.embed(n));
    else if (auto* cp = std::get_if<UnitaryCtrlPauli>(&op))
      apply_ctrl_pauli(cp->p.embed(n), cp->q.embed(n));
    else if (auto* s = std::get_if<UnitarySwap>(&op))
      apply_swap(s->a, s->b);
  }
}

void DenseState::alloc(uint32_t pos) {
  if (n + 1 > 12) throw std::invalid_argument("DenseState: qubit cap exceeded");
  std::vector<cplx> out(uint64_t{1} << (n + 1), cplx{0, 0});
  uint64_t low = (uint64_t{1} << pos) - 1;
  for (uint64_t c = 0; c < amp.size(); ++c) {
    uint64_t d = (c & low) | ((c & ~low) << 1);
    out[d] = amp[c];
  }
  amp = std::move(out);
  ++n;
}

void DenseState::dealloc(uint32_t pos) {
  uint64_t low = (uint64_t{1} << pos) - 1;
  double leak = 0;
  std::vector<cplx> out(uint64_t{1} << (n - 1), cplx{0, 0});
  for (uint64_t c = 0; c < amp.size(); ++c) {
    if ((c >> pos) & 1) {
      leak += std::norm(amp[c]);
    } else {
      uint64_t d = (c & low) | ((c >> 1) & ~low);
      out[d] = amp[c];
    }
  }
  if (leak > 1e-9) throw std::invalid_argument("oracle: deallocated qubit is not in |0>");
  amp = std::move(out);
  --n;
}

double DenseState::norm2() const {
  double s = 0;
  for (const cplx& a : amp) s += std::norm(a);
  return s;
}

double overlap_abs(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  cplx s{0, 0};
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return std::abs(s);
}

bool equal_up_to_phase(const std::vector<cplx>& a, const std::vector<cplx>& b, double tol) {
  if (a.size() != b.size()) return false;
  double na = 0, nb = 0;
  for (const cplx& v : a) na += std::norm(v);
  for (const cplx& v : b) nb += std::norm(v);
  if (std::abs(na - nb) > tol) return false;
  if (na < tol) return true;
  return std::abs(overlap_abs(a, b) - std::sqrt(na * nb)) < tol * std::sqrt(na * nb) + tol;
}

namespace {

struct Enumerator {
  const std::vector<StabOp>& ops;
  uint32_t n_keep;  // Bell halves kept at the tail
  BranchTree* tree;

  void run(size_t ip, DenseState state, uint32_t cur, std::vector<bool> outcomes) {
    for (; ip < ops.size(); ++ip) {
      const StabOp& op = ops[ip];
      uint32_t total = cur + n_keep;
      if (auto* a = std::get_if<AllocQubit>(&op)) {
        state.alloc(a->pos);
        ++cur;
      } else if (auto* d = std::get_if<DeallocQubit>(&op)) {
        state.dealloc(d->pos);
        --cur;
      } else if (std::get_if<AllocRandomBit>(&op)) {
        DenseState s1 = state;
        for (auto& v : s1.amp) v *= kSqrtHalf;
        auto o1 = outcomes;
        o1.push_back(true);
        run(ip + 1, s1, cur, std::move(o1));
        for (auto& v : state.amp) v *= kSqrtHalf;
        outcomes.push_back(false);
      } else if (auto* u = std::get_if<UnitaryPauli>(&op)) {
        state.apply_pauli(u->p.embed(total));
      } else if (auto* e = std::get_if<UnitaryExp>(&op)) {
        state.apply_exp(e->p.embed(total));
      } else if (auto* cp = std::get_if<UnitaryCtrlPauli>(&op)) {
        state.apply_ctrl_pauli(cp->p.embed(total), cp->q.embed(total));
      } else if (auto* s = std::get_if<UnitarySwap>(&op)) {
        state.apply_swap(s->a, s->b);
      } else if (auto* cs = std::get_if<UnitaryCss>(&op)) {
        state.apply_css(cs->a);
      } else if (auto* cnd = std::get_if<CondPauli>(&op)) {
        bool parity = false;
        for (uint32_t o : cnd->outcomes) parity ^= outcomes[o];
        if (parity == cnd->value) state.apply_pauli(cnd->p.embed(total));
      } else if (auto* m = std::get_if<Measure>(&op)) {
        DenseState flipped = state;
        flipped.apply_pauli(m->p.embed(total));
        DenseState plus = state, minus = state;
        for (uint64_t c = 0; c < state.amp.size(); ++c) {
          plus.amp[c] = 0.5 * (state.amp[c] + flipped.amp[c]);
          minus.amp[c] = 0.5 * (state.amp[c] - flipped.amp[c]);
        }
        if (minus.norm2() > 1e-12) {
          auto o1 = outcomes;
          o1.push_back(true);
          run(ip + 1, std::move(minus), cur, std::move(o1));
        }
        if (plus.norm2() > 1e-12) {
          outcomes.push_back(false);
          state = std::move(plus);
        } else {
          return;
        }
      }
    }
    Branch b;
    b.outcomes = BitVec(outcomes.size());
    for (size_t i = 0; i < outcomes.size(); ++i) b.outcomes.set(i, outcomes[i]);
    b.probability = state.norm2();
    b.choi = std::move(state.amp);
    tree->branches.push_back(std::move(b));
  }
};

}  // namespace

BranchTree enumerate_instrument(const StabCircuit& c) {
  CircuitInfo info = validate(c);
  if (c.n_in + info.n_max > 12)
    throw std::invalid_argument("enumerate_instrument: qubit cap exceeded");
  if (info.n_outcomes > 20) throw std::invalid_argument("enumerate_instrument: outcome cap exceeded");
  BranchTree tree;
  tree.n_in = c.n_in;
  tree.n_out = info.n_out;
  tree.n_outcomes = info.n_outcomes;

  // Bell-pair preparation; circuit qubits first, kept halves at the tail.
  DenseState st = DenseState::zero_state(2 * c.n_in);
  uint32_t n = c.n_in;
  double a = std::pow(0.5, n / 2.0);
  for (uint64_t b = 0; b < st.amp.size(); ++b) {
    uint64_t lo = b & ((uint64_t{1} << n) - 1);
    uint64_t hi = b >> n;
    st.amp[b] = (lo == hi) ? cplx{a, 0} : cplx{0, 0};
  }

  Enumerator en{c.ops, c.n_in, &tree};
  en.run(0, std::move(st), c.n_in, {});
  std::sort(tree.branches.begin(), tree.branches.end(),
            [](const Branch& x, const Branch& y) { return x.outcomes.str() < y.outcomes.str(); });
  return tree;
}

namespace {

struct CompressedClass {
  std::vector<cplx> ray;  // representative (unnormalized)
  double weight = 0;
  size_t rep_index = 0;
};

std::vector<CompressedClass> compress_tree(const BranchTree& t, double tol) {
  std::vector<CompressedClass> classes;
  for (size_t i = 0; i < t.branches.size(); ++i) {
    const Branch& b = t.branches[i];
    double nb = b.probability;
    if (nb < 1e-14) continue;
    bool merged = false;
    for (auto& cl : classes) {
      double nc = 0;
      for (const cplx& v : cl.ray) nc += std::norm(v);
      if (std::abs(overlap_abs(cl.ray, b.choi) - std::sqrt(nc * nb)) < tol * std::sqrt(nc * nb)) {
        cl.weight += nb;
        merged = true;
        break;
      }
    }
    if (!merged) classes.push_back(CompressedClass{b.choi, nb, i});
  }
  return classes;
}

}  // namespace

EquivalenceResult instruments_equivalent(const BranchTree& t1, const BranchTree& t2, double tol) {
  EquivalenceResult res;
  if (t1.n_in != t2.n_in || t1.n_out != t2.n_out) return res;
  auto c1 = compress_tree(t1, tol);
  auto c2 = compress_tree(t2, tol);
  if (c1.size() != c2.size()) return res;
  std::vector<bool> used(c2.size(), false);
  for (const auto& a : c1) {
    double na = 0;
    for (const cplx& v : a.ray) na += std::norm(v);
    bool found = false;
    for (size_t j = 0; j < c2.size(); ++j) {
      if (used[j]) continue;
      const auto& b = c2[j];
      double nb = 0;
      for (const cplx& v : b.ray) nb += std::norm(v);
      if (std::abs(overlap_abs(a.ray, b.ray) - std::sqrt(na * nb)) < tol * std::sqrt(na * nb) &&
          std::abs(a.weight - b.weight) < 1e-9) {
        used[j] = true;
        res.bijection.emplace_back(a.rep_index, b.rep_index);
        found = true;
        break;
      }
    }
    if (!found) return EquivalenceResult{};
  }
  res.equivalent = true;
  return res;
}

Matrix pauli_matrix(const PauliOp& p) {
  size_t dim = size_t{1} << p.num_qubits();
  uint64_t xm = to_mask(p.x), zm = to_mask(p.z);
  Matrix m(dim, std::vector<cplx>(dim, cplx{0, 0}));
  cplx ph = kPhases[p.phase & 3];
  for (uint64_t b = 0; b < dim; ++b) {
    uint64_t c = b ^ xm;
    cplx v = ph;
    if (std::popcount(c & zm) & 1) v = -v;
    m[c][b] = v;
  }
  return m;
}

Matrix clifford_matrix(const CliffordOp& c) {
  uint32_t n = static_cast<uint32_t>(c.num_qubits());
  size_t dim = size_t{1} << n;
  Matrix m(dim, std::vector<cplx>(dim, cplx{0, 0}));
  for (uint64_t b = 0; b < dim; ++b) {
    DenseState st = DenseState::basis_state(n, b);
    st.apply_clifford(c);
    for (uint64_t r = 0; r < dim; ++r) m[r][b] = st.amp[r];
  }
  return m;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  size_t n = a.size();
  Matrix out(n, std::vector<cplx>(n, cplx{0, 0}));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (a[i][k] == cplx{0, 0}) continue;
      for (size_t j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

Matrix mat_adj(const Matrix& a) {
  size_t n = a.size();
  Matrix out(n, std::vector<cplx>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out[i][j] = std::conj(a[j][i]);
  return out;
}

bool mat_equal(const Matrix& a, const Matrix& b, double tol) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j)
      if (std::abs(a[i][j] - b[i][j]) > tol) return false;
  return true;
}

bool mat_equal_up_to_phase(const Matrix& a, const Matrix& b, double tol) {
  cplx phase{0, 0};
  for (size_t i = 0; i < a.size() && phase == cplx{0, 0}; ++i)
    for (size_t j = 0; j < a.size(); ++j)
      if (std::abs(b[i][j]) > tol) {
        phase = a[i][j] / b[i][j];
        break;
      }
  if (std::abs(std::abs(phase) - 1.0) > tol) return false;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j)
      if (std::abs(a[i][j] - phase * b[i][j]) > tol) return false;
  return true;
}

}  // namespace stabforms::oracle

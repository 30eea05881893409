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

#include "stabforms/genform.h"

#include <stdexcept>

namespace stabforms {

namespace {

// Splits a Pauli across the cut at n1 so that left (x) right = p exactly;
// the left factor gets the Hermitian product-of-letters phase convention.
std::pair<PauliOp, PauliOp> split_tensor(const PauliOp& p, size_t n1) {
  size_t n2 = p.num_qubits() - n1;
  BitVec x1 = p.x.slice(0, n1), z1 = p.z.slice(0, n1);
  int s1 = static_cast<int>(3 * (x1 & z1).popcount()) & 3;
  PauliOp left(std::move(x1), std::move(z1), s1);
  PauliOp right(p.x.slice(n1, n2), p.z.slice(n1, n2), (p.phase - s1) & 3);
  return {std::move(left), std::move(right)};
}

PauliOp hermitian_normalize(PauliOp p) {
  if (!p.is_hermitian()) p.mul_phase(1);
  return p;
}

}  // namespace

BitMatrix support_restricted_subgroup(const std::vector<PauliOp>& gens,
                                      const std::vector<bool>& keep) {
  size_t m = gens.size();
  size_t n = gens.empty() ? keep.size() : gens[0].num_qubits();
  std::vector<size_t> outside;
  for (size_t q = 0; q < n; ++q)
    if (!keep[q]) outside.push_back(q);
  BitMatrix a(m, 2 * outside.size());
  for (size_t i = 0; i < m; ++i)
    for (size_t t = 0; t < outside.size(); ++t) {
      a.set(i, t, gens[i].z.get(outside[t]));
      a.set(i, outside.size() + t, gens[i].x.get(outside[t]));
    }
  return kernel_basis(a.transposed());
}

SymplecticBasisChange symplectic_basis(std::vector<PauliOp> ps) {
  size_t m2 = ps.size();
  if (m2 % 2) throw std::invalid_argument("symplectic_basis: odd number of operators");
  SymplecticBasisChange out;
  out.f = BitMatrix::identity(m2);
  out.f_inv = BitMatrix::identity(m2);
  auto add_row = [&](size_t dst, size_t src) {
    out.f.row_xor(dst, src);
    // F <- (I + e_dst e_src^T) F, so F^{-1} column src += column dst.
    for (size_t t = 0; t < m2; ++t)
      if (out.f_inv.get(t, dst)) out.f_inv.row(t).flip(src);
    ps[dst] = ps[dst] * ps[src];
  };
  for (size_t k = 0; k + 1 < m2; k += 2) {
    size_t j = k + 1;
    while (j < m2 && !commutator(ps[k], ps[j])) ++j;
    if (j == m2)
      throw std::invalid_argument("symplectic_basis: commutation matrix is singular");
    if (j != k + 1) {
      out.f.row_swap(k + 1, j);
      std::swap(ps[k + 1], ps[j]);
      for (size_t t = 0; t < m2; ++t) {
        bool tmp = out.f_inv.get(t, k + 1);
        out.f_inv.set(t, k + 1, out.f_inv.get(t, j));
        out.f_inv.set(t, j, tmp);
      }
    }
    for (size_t i = k + 2; i < m2; ++i) {
      bool a = commutator(ps[k], ps[i]);
      bool b = commutator(ps[k + 1], ps[i]);
      // Adjust with the opposite partner so both commutators clear.
      if (b) add_row(i, k);
      if (a) add_row(i, k + 1);
    }
  }
  out.basis = std::move(ps);
  return out;
}

namespace {

// Completes the X images for rows [0, k1) of a local Clifford: seeds come
// from restrictions of the transformed tableau, then commutation against the
// inner symplectic pairs and the earlier completions is repaired.
std::vector<PauliOp> repair_x_completion(std::vector<PauliOp> seeds,
                                         const std::vector<PauliOp>& z_imgs,
                                         const std::vector<PauliOp>& pair_z,
                                         const std::vector<PauliOp>& pair_x) {
  size_t k1 = seeds.size();
  std::vector<PauliOp> done;
  for (size_t j = 0; j < k1; ++j) {
    PauliOp v = seeds[j];
    for (size_t i = 0; i < pair_z.size(); ++i) {
      if (commutator(v, pair_z[i])) v = v * pair_x[i];
      if (commutator(v, pair_x[i])) v = v * pair_z[i];
    }
    for (size_t j2 = 0; j2 < done.size(); ++j2)
      if (commutator(v, done[j2])) v = v * z_imgs[j2];
    done.push_back(hermitian_normalize(std::move(v)));
  }
  return done;
}

}  // namespace

BipartiteFamilyForm bipartite_family_form(const CliffordOp& c, uint32_t n1) {
  size_t n = c.num_qubits();
  if (n1 > n) throw std::invalid_argument("bipartite_family_form: n1 out of range");
  size_t n2 = n - n1;

  std::vector<PauliOp> gens;
  gens.reserve(n);
  for (size_t j = 0; j < n; ++j) gens.push_back(c.z_image(j));
  std::vector<bool> side1(n, false), side2(n, false);
  for (size_t q = 0; q < n1; ++q) side1[q] = true;
  for (size_t q = n1; q < n; ++q) side2[q] = true;
  BitMatrix f1 = support_restricted_subgroup(gens, side1);
  BitMatrix f2 = support_restricted_subgroup(gens, side2);
  size_t k1 = f1.rows(), k2 = f2.rows();
  if (n1 < k1 || n2 < k2 || n1 - k1 != n2 - k2)
    throw std::runtime_error("bipartite_family_form: inconsistent support subgroups");
  size_t k = n1 - k1;

  BitMatrix fhat = full_rank_completion(BitMatrix::vstack(f1, f2));
  std::vector<PauliOp> rest;
  rest.reserve(2 * k);
  {
    CliffordOp chat = c * CliffordOp::css(invert(fhat));
    for (size_t j = k1 + k2; j < n; ++j)
      rest.push_back(chat.z_image(j).restrict_to(0, n1));
  }
  SymplecticBasisChange sb = symplectic_basis(rest);

  BitMatrix mixer = BitMatrix::direct_sum(BitMatrix::identity(k1 + k2), sb.f);
  BitMatrix a = mixer * fhat;
  std::vector<BitVec> finv_rows;
  finv_rows.reserve(n);
  for (size_t j = 0; j < k1; ++j) finv_rows.push_back(a.row(j));
  for (size_t i = 0; i < k; ++i) finv_rows.push_back(a.row(k1 + k2 + 2 * i));
  for (size_t j = 0; j < k2; ++j) finv_rows.push_back(a.row(k1 + j));
  for (size_t i = 0; i < k; ++i) finv_rows.push_back(a.row(k1 + k2 + 2 * i + 1));
  BitMatrix f = n ? invert(BitMatrix::from_rows(std::move(finv_rows))) : BitMatrix(0, 0);

  CliffordOp ct = c * CliffordOp::css(f);

  // Assemble D (side 1) and B* (side 2) images.
  std::vector<PauliOp> dz(n1), dx_pairs, dz_pairs, bz(n2), bx_pairs, bz_pairs;
  for (size_t j = 0; j < k1; ++j) {
    PauliOp p = ct.z_image(j);
    if (!p.x.slice(n1, n2).is_zero() || !p.z.slice(n1, n2).is_zero())
      throw std::runtime_error("bipartite_family_form: side-1 stabilizer leaks across the cut");
    dz[j] = PauliOp(p.x.slice(0, n1), p.z.slice(0, n1), p.phase);
  }
  for (size_t j = 0; j < k2; ++j) {
    PauliOp p = ct.z_image(n1 + j);
    if (!p.x.slice(0, n1).is_zero() || !p.z.slice(0, n1).is_zero())
      throw std::runtime_error("bipartite_family_form: side-2 stabilizer leaks across the cut");
    bz[j] = PauliOp(p.x.slice(n1, n2), p.z.slice(n1, n2), p.phase);
  }
  for (size_t i = 0; i < k; ++i) {
    auto [l, r] = split_tensor(ct.z_image(k1 + i), n1);
    dz[k1 + i] = l;
    bz[k2 + i] = r;
    dz_pairs.push_back(dz[k1 + i]);
    bz_pairs.push_back(bz[k2 + i]);
  }
  std::vector<PauliOp> dx(n1), bx(n2);
  for (size_t i = 0; i < k; ++i) {
    auto [l, r] = split_tensor(ct.z_image(n - k + i), n1);
    dx[k1 + i] = l;
    bx[k2 + i] = r;
    dx_pairs.push_back(l);
    bx_pairs.push_back(r);
  }
  {
    std::vector<PauliOp> seeds;
    for (size_t j = 0; j < k1; ++j)
      seeds.push_back(hermitian_normalize(ct.x_image(j).restrict_to(0, n1)));
    std::vector<PauliOp> zs(dz.begin(), dz.begin() + k1);
    auto fixed = repair_x_completion(std::move(seeds), zs, dz_pairs, dx_pairs);
    for (size_t j = 0; j < k1; ++j) dx[j] = fixed[j];
  }
  {
    std::vector<PauliOp> seeds;
    for (size_t j = 0; j < k2; ++j)
      seeds.push_back(hermitian_normalize(ct.x_image(n1 + j).restrict_to(n1, n2)));
    std::vector<PauliOp> zs(bz.begin(), bz.begin() + k2);
    auto fixed = repair_x_completion(std::move(seeds), zs, bz_pairs, bx_pairs);
    for (size_t j = 0; j < k2; ++j) bx[j] = fixed[j];
  }

  std::vector<std::pair<PauliOp, PauliOp>> d_imgs, b_imgs;
  for (size_t j = 0; j < n1; ++j) d_imgs.emplace_back(dx[j], dz[j]);
  for (size_t j = 0; j < n2; ++j) b_imgs.emplace_back(bx[j], bz[j]);

  BipartiteFamilyForm out;
  out.f = std::move(f);
  out.k = static_cast<uint32_t>(k);
  out.d = CliffordOp::from_images(d_imgs);
  out.b = CliffordOp::from_images(b_imgs).conj();  // stored as B with B* applied
  return out;
}

namespace {

std::vector<StabOp> shift_ops(std::vector<StabOp> ops, uint32_t offset) {
  for (StabOp& op : ops) {
    if (auto* u = std::get_if<UnitaryPauli>(&op)) {
      for (auto& q : u->p.qubits) q += offset;
    } else if (auto* e = std::get_if<UnitaryExp>(&op)) {
      for (auto& q : e->p.qubits) q += offset;
    } else if (auto* cp = std::get_if<UnitaryCtrlPauli>(&op)) {
      for (auto& q : cp->p.qubits) q += offset;
      for (auto& q : cp->q.qubits) q += offset;
    } else if (auto* s = std::get_if<UnitarySwap>(&op)) {
      s->a += offset;
      s->b += offset;
    } else {
      throw std::invalid_argument("shift_ops: only unitary ops supported");
    }
  }
  return ops;
}

SparsePauli single_on(uint32_t q, char kind) {
  return SparsePauli({q}, PauliOp::single(1, 0, kind));
}

}  // namespace

StabCircuit bipartite_family_state_circuit(const BipartiteFamilyForm& form, uint32_t n1,
                                           uint32_t n, const BitVec& a) {
  uint32_t n2 = n - n1, k = form.k, k1 = n1 - k, k2 = n2 - k;
  if (a.size() != n) throw std::invalid_argument("family state: bad vector length");
  StabCircuit c;
  c.n_in = 0;
  for (uint32_t i = 0; i < n; ++i) c.ops.push_back(AllocQubit{i});
  for (uint32_t i = 0; i < k; ++i) {
    uint32_t lhs = k1 + i, rhs = n1 + k2 + i;
    c.ops.push_back(UnitaryExp{single_on(lhs, 'Z')});
    c.ops.push_back(UnitaryExp{single_on(lhs, 'X')});
    c.ops.push_back(UnitaryExp{single_on(lhs, 'Z')});
    c.ops.push_back(UnitaryCtrlPauli{single_on(lhs, 'Z'), single_on(rhs, 'X')});
  }
  // a = (a1 | a2 | a3 | a4): basis bits, X and Z dressing of the left halves.
  for (uint32_t j = 0; j < k1; ++j)
    if (a.get(j)) c.ops.push_back(UnitaryPauli{single_on(j, 'X')});
  for (uint32_t i = 0; i < k; ++i)
    if (a.get(k1 + k + k2 + i)) c.ops.push_back(UnitaryPauli{single_on(k1 + i, 'Z')});
  for (uint32_t i = 0; i < k; ++i)
    if (a.get(k1 + i)) c.ops.push_back(UnitaryPauli{single_on(k1 + i, 'X')});
  for (uint32_t j = 0; j < k2; ++j)
    if (a.get(k1 + k + j)) c.ops.push_back(UnitaryPauli{single_on(n1 + j, 'X')});
  auto dops = clifford_to_ops(form.d);
  c.ops.insert(c.ops.end(), dops.begin(), dops.end());
  auto bops = shift_ops(clifford_to_ops(form.b.conj()), n1);
  c.ops.insert(c.ops.end(), bops.begin(), bops.end());
  return c;
}

CliffordOp clifford_from_choi(const CliffordOp& state_prep) {
  size_t total = state_prep.num_qubits();
  if (total % 2) throw std::invalid_argument("clifford_from_choi: odd qubit count");
  uint32_t n = static_cast<uint32_t>(total / 2);
  BipartiteFamilyForm form = bipartite_family_form(state_prep, n);
  if (form.k != n)
    throw std::invalid_argument("clifford_from_choi: state is not the Choi state of a unitary");
  return form.d * form.b.inverse();
}

std::pair<GeneralForm, OutcomeMap> general_form(const StabCircuit& c) {
  CircuitInfo info = validate(c);
  uint32_t n_in = c.n_in, n_out = info.n_out;

  CompleteResult sim = simulate_complete(choi_circuit(c));
  BipartiteFamilyForm form = bipartite_family_form(sim.co, n_out);
  uint32_t k = form.k;
  uint32_t k1 = n_out - k, k2 = n_in - k;

  BitMatrix g0 = invert(form.f) * sim.a;
  BlockReshape br;
  try {
    br = block_reshape(g0.rows_slice(n_out, k2));
  } catch (const std::invalid_argument&) {
    throw std::runtime_error("general_form: outcome relabelling failed (internal invariant)");
  }

  GeneralForm gf;
  gf.n_in = n_in;
  gf.n_out = n_out;
  gf.k = k;
  gf.n_r = static_cast<uint32_t>(sim.n_r - k2);
  gf.r = form.d;
  gf.l = form.b;
  if (k2 > 0) gf.l = gf.l * CliffordOp::css(br.f).tensor(CliffordOp::identity(k));

  BitMatrix g = g0 * br.r;
  gf.a = g.rows_slice(0, k1);
  gf.a_x = g.rows_slice(k1, k);
  gf.a_z = g.rows_slice(n_out + k2, k);

  OutcomeMap map;
  map.m = sim.m * br.r;
  map.v0 = sim.v0;
  if (map.m.cols() > 0 && !is_split_echelon(map.m, gf.n_r, k2, true))
    throw std::runtime_error("general_form: outcome map lost its split echelon form");
  return {std::move(gf), std::move(map)};
}

Compression compress(const GeneralForm& g) {
  uint32_t n_m = g.n_in - g.k;
  BitMatrix stacked = BitMatrix::vstack(BitMatrix::vstack(g.a, g.a_x), g.a_z);
  BitMatrix tilde = stacked.cols_slice(0, g.n_r);
  auto fac = rref_factor(tilde.transposed());
  BitMatrix f = fac.b_inv.transposed();
  BitMatrix f_inv = fac.b.transposed();
  uint32_t nr2 = static_cast<uint32_t>(fac.rank);

  Compression out;
  out.fwd = BitMatrix::direct_sum(f_inv.rows_slice(0, nr2), BitMatrix::identity(n_m));
  out.bwd = BitMatrix::direct_sum(f.cols_slice(0, nr2), BitMatrix::identity(n_m));
  out.g = g;
  out.g.n_r = nr2;
  out.g.a = g.a * out.bwd;
  out.g.a_x = g.a_x * out.bwd;
  out.g.a_z = g.a_z * out.bwd;
  return out;
}

CompressionMap instrument_compression_map(const StabCircuit& c) {
  auto [gf, map] = general_form(c);
  Compression comp = compress(gf);
  CompressionMap out;
  out.m = map.m.cols() ? comp.fwd * left_inverse(map.m)
                       : BitMatrix(comp.fwd.rows(), map.m.rows());
  out.v0 = map.v0;
  return out;
}

StabCircuit realize_general_form(const GeneralForm& g) {
  StabCircuit out;
  out.n_in = g.n_in;
  uint32_t n_m = g.n_in - g.k;
  for (uint32_t j = 0; j < g.n_r; ++j) out.ops.push_back(AllocRandomBit{});
  auto lops = clifford_to_ops(g.l.inverse());
  out.ops.insert(out.ops.end(), lops.begin(), lops.end());
  for (uint32_t j = 0; j < n_m; ++j) {
    out.ops.push_back(Measure{single_on(0, 'Z'), std::nullopt});
    out.ops.push_back(CondPauli{single_on(0, 'X'), {g.n_r + j}, true});
    out.ops.push_back(DeallocQubit{0});
  }
  auto cond_rows = [&](const BitMatrix& rows, char kind) {
    for (size_t j = 0; j < rows.rows(); ++j) {
      std::vector<uint32_t> mask;
      for (size_t o : rows.row(j).support()) mask.push_back(static_cast<uint32_t>(o));
      if (!mask.empty())
        out.ops.push_back(CondPauli{single_on(static_cast<uint32_t>(j), kind), mask, true});
    }
  };
  cond_rows(g.a_z, 'Z');
  cond_rows(g.a_x, 'X');
  for (uint32_t j = 0; j < g.n_out - g.k; ++j) out.ops.push_back(AllocQubit{j});
  for (size_t j = 0; j < g.a.rows(); ++j) {
    std::vector<uint32_t> mask;
    for (size_t o : g.a.row(j).support()) mask.push_back(static_cast<uint32_t>(o));
    if (!mask.empty())
      out.ops.push_back(CondPauli{single_on(static_cast<uint32_t>(j), 'X'), mask, true});
  }
  auto rops = clifford_to_ops(g.r);
  out.ops.insert(out.ops.end(), rops.begin(), rops.end());
  return out;
}

}  // namespace stabforms

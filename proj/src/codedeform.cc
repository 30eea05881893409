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

#include "stabforms/codedeform.h"

#include <algorithm>
#include <stdexcept>

namespace stabforms {

namespace {

BitVec symplectic_vec(const PauliOp& p) { return p.x.concat(p.z); }
// Row against which [v, p] is a dot product of symplectic vectors.
BitVec form_row(const PauliOp& p) { return p.z.concat(p.x); }

PauliOp hermitize(PauliOp p) {
  if (!p.is_hermitian()) p.mul_phase(1);
  return p;
}

PauliOp pauli_from_vec(const BitVec& v, size_t n) {
  BitVec x = v.slice(0, n), z = v.slice(n, n);
  int s = static_cast<int>(3 * (x & z).popcount()) & 3;
  return PauliOp(std::move(x), std::move(z), s);
}

PauliOp product_by_indicator(size_t n, const std::vector<PauliOp>& gens, const BitVec& ind) {
  PauliOp acc = PauliOp::identity(n);
  for (size_t i : ind.support()) acc = acc * gens[i];
  return acc;
}

BitMatrix indicator_rows(size_t n, const std::vector<PauliOp>& gens) {
  BitMatrix m(gens.size(), 2 * n);
  for (size_t i = 0; i < gens.size(); ++i) m.row(i) = symplectic_vec(gens[i]);
  return m;
}

}  // namespace

void StabilizerGroup::validate() const {
  for (const auto& g : gens) {
    if (g.num_qubits() != num_qubits())
      throw std::invalid_argument("stabilizer group: mixed qubit counts");
    if (!g.is_hermitian()) throw std::invalid_argument("stabilizer group: non-Hermitian generator");
  }
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j)
      if (commutator(gens[i], gens[j]))
        throw std::invalid_argument("stabilizer group: generators do not commute");
  if (rank_of(indicator_rows(num_qubits(), gens)) != gens.size())
    throw std::invalid_argument("stabilizer group: generators are dependent");
}

std::optional<BitVec> StabilizerGroup::member(const PauliOp& p) const {
  if (gens.empty()) return p.is_identity() ? std::optional<BitVec>(BitVec(0)) : std::nullopt;
  auto ind = solve(indicator_rows(n, gens).transposed(), symplectic_vec(p));
  if (!ind) return std::nullopt;
  if (product_by_indicator(n, gens, *ind) != p) return std::nullopt;
  return ind;
}

namespace {

// Rows of `pool` that extend the row space of `base`, via the joint profile.
std::vector<size_t> extension_rows(const BitMatrix& base, const BitMatrix& pool) {
  BitMatrix joint = base.rows() ? BitMatrix::vstack(base, pool) : pool;
  auto profile = row_rank_profile(joint);
  std::vector<size_t> out;
  for (size_t r : profile)
    if (r >= base.rows()) out.push_back(r - base.rows());
  return out;
}

}  // namespace

CliffordOp complete_to_clifford(const std::vector<PauliOp>& z_images,
                                const std::vector<std::optional<PauliOp>>& x_images) {
  size_t n = z_images.size();
  std::vector<std::optional<PauliOp>> xs = x_images;
  xs.resize(n);
  // Solve each missing partner against every fixed element so far.
  for (size_t j = 0; j < n; ++j) {
    if (xs[j]) continue;
    std::vector<BitVec> rows;
    std::vector<bool> rhs_bits;
    for (size_t i = 0; i < n; ++i) {
      rows.push_back(form_row(z_images[i]));
      rhs_bits.push_back(i == j);
      if (xs[i]) {
        rows.push_back(form_row(*xs[i]));
        rhs_bits.push_back(false);
      }
    }
    BitVec rhs(rhs_bits.size());
    for (size_t i = 0; i < rhs_bits.size(); ++i) rhs.set(i, rhs_bits[i]);
    auto v = solve(BitMatrix::from_rows(std::move(rows)), rhs);
    if (!v) throw std::invalid_argument("complete_to_clifford: no symplectic completion exists");
    xs[j] = pauli_from_vec(*v, n);
  }
  std::vector<std::pair<PauliOp, PauliOp>> imgs(n);
  for (size_t j = 0; j < n; ++j) imgs[j] = {*xs[j], z_images[j]};
  return CliffordOp::from_images(imgs);
}

EncodingSpec encoding_from_group(const StabilizerGroup& g) {
  g.validate();
  size_t n = g.n, r = g.gens.size();
  std::vector<PauliOp> zs = g.gens;
  // Symplectic complement of the generators spans the remaining 2(n-r)
  // freedoms; a symplectic basis of it supplies the logical legs.
  BitMatrix rows(r, 2 * n);
  for (size_t i = 0; i < r; ++i) rows.row(i) = form_row(g.gens[i]);
  BitMatrix compl_rows = kernel_basis(rows);
  // The complement contains the group itself; peel the group off first.
  std::vector<size_t> ext = extension_rows(indicator_rows(n, g.gens), compl_rows);
  std::vector<PauliOp> rest;
  for (size_t idx : ext) rest.push_back(pauli_from_vec(compl_rows.row(idx), n));
  if (rest.size() != 2 * (n - r))
    throw std::runtime_error("encoding_from_group: complement has unexpected dimension");
  SymplecticBasisChange sb = symplectic_basis(std::move(rest));
  std::vector<std::optional<PauliOp>> xs(n);
  for (size_t i = 0; i < n - r; ++i) {
    zs.push_back(hermitize(sb.basis[2 * i + 1]));
    xs[r + i] = hermitize(sb.basis[2 * i]);
  }
  EncodingSpec spec;
  spec.n = static_cast<uint32_t>(n);
  spec.k = static_cast<uint32_t>(n - r);
  spec.c = complete_to_clifford(zs, xs);
  return spec;
}

CommonSymplecticBasis common_symplectic_basis(const StabilizerGroup& s,
                                              const StabilizerGroup& m) {
  s.validate();
  m.validate();
  if (s.n != m.n) throw std::invalid_argument("common_symplectic_basis: qubit counts differ");
  size_t n = s.n;
  size_t a = s.gens.size(), bsz = m.gens.size();

  BitMatrix kmat(a, bsz);
  for (size_t i = 0; i < a; ++i)
    for (size_t j = 0; j < bsz; ++j) kmat.set(i, j, commutator(s.gens[i], m.gens[j]));

  BitMatrix ker_s = kernel_basis(kmat.transposed());  // indicators of S n M^perp
  BitMatrix ker_m = kernel_basis(kmat);               // indicators of M n S^perp

  CommonSymplecticBasis out;
  out.n = static_cast<uint32_t>(n);

  // Coset representatives of S/(S n M^perp) and M/(M n S^perp).
  auto coset_reps = [n](const std::vector<PauliOp>& gens, const BitMatrix& ker) {
    BitMatrix pool = BitMatrix::identity(gens.size());
    std::vector<PauliOp> reps;
    for (size_t idx : extension_rows(ker, pool))
      reps.push_back(product_by_indicator(n, gens, pool.row(idx)));
    return reps;
  };
  std::vector<PauliOp> g_reps = coset_reps(s.gens, ker_s);
  std::vector<PauliOp> h_reps = coset_reps(m.gens, ker_m);
  size_t k_delta = g_reps.size();
  if (h_reps.size() != k_delta)
    throw std::runtime_error("common_symplectic_basis: coset spaces differ in size");

  BitMatrix pair(k_delta, k_delta);
  for (size_t i = 0; i < k_delta; ++i)
    for (size_t j = 0; j < k_delta; ++j) pair.set(i, j, commutator(h_reps[i], g_reps[j]));
  BitMatrix pair_inv = invert(pair);
  out.z_delta = g_reps;
  for (size_t j = 0; j < k_delta; ++j)
    out.x_delta.push_back(product_by_indicator(n, h_reps, pair_inv.row(j)));

  // Signed intersection S n M.
  BitMatrix joint = BitMatrix::hstack(indicator_rows(n, s.gens).transposed(),
                                      indicator_rows(n, m.gens).transposed());
  BitMatrix inter = kernel_basis(joint);
  std::vector<BitVec> inter_alpha, inter_beta;
  for (size_t i = 0; i < inter.rows(); ++i) {
    BitVec alpha = inter.row(i).slice(0, a);
    BitVec beta = inter.row(i).slice(a, bsz);
    PauliOp ps = product_by_indicator(n, s.gens, alpha);
    PauliOp pm = product_by_indicator(n, m.gens, beta);
    if (ps != pm)
      throw std::invalid_argument(
          "common_symplectic_basis: groups disagree on the sign of a shared element (" +
          format_pauli(ps) + " vs " + format_pauli(pm) + ")");
    out.z_cap.push_back(ps);
    inter_alpha.push_back(std::move(alpha));
    inter_beta.push_back(std::move(beta));
  }

  // (S n M^perp)/(S n M) and (M n S^perp)/(S n M) representatives.
  {
    BitMatrix base = inter_alpha.empty() ? BitMatrix(0, a) : BitMatrix::from_rows(inter_alpha);
    for (size_t idx : extension_rows(base, ker_s))
      out.z_s.push_back(product_by_indicator(n, s.gens, ker_s.row(idx)));
  }
  {
    BitMatrix base = inter_beta.empty() ? BitMatrix(0, bsz) : BitMatrix::from_rows(inter_beta);
    for (size_t idx : extension_rows(base, ker_m))
      out.z_m.push_back(product_by_indicator(n, m.gens, ker_m.row(idx)));
  }

  // Complete partners for z_cap, z_s, z_m, then a symplectic basis of what
  // remains.
  std::vector<PauliOp> fixed;
  std::vector<size_t> want_partner;  // indices into fixed (the Z side)
  for (size_t i = 0; i < k_delta; ++i) {
    fixed.push_back(out.z_delta[i]);
    fixed.push_back(out.x_delta[i]);
  }
  auto add_unpartnered = [&](const std::vector<PauliOp>& zs) {
    for (const auto& p : zs) {
      want_partner.push_back(fixed.size());
      fixed.push_back(p);
    }
  };
  add_unpartnered(out.z_cap);
  add_unpartnered(out.z_s);
  add_unpartnered(out.z_m);
  std::vector<PauliOp> partners;
  for (size_t t = 0; t < want_partner.size(); ++t) {
    std::vector<BitVec> rows;
    BitVec rhs(fixed.size());
    for (size_t i = 0; i < fixed.size(); ++i) {
      rows.push_back(form_row(fixed[i]));
      if (i == want_partner[t]) rhs.set(i, true);
    }
    auto v = solve(BitMatrix::from_rows(std::move(rows)), rhs);
    if (!v) throw std::runtime_error("common_symplectic_basis: partner completion failed");
    PauliOp partner = pauli_from_vec(*v, n);
    partners.push_back(partner);
    fixed.push_back(partner);
  }
  size_t off = 0;
  for (size_t i = 0; i < out.z_cap.size(); ++i) out.x_cap.push_back(partners[off++]);
  for (size_t i = 0; i < out.z_s.size(); ++i) out.x_s.push_back(partners[off++]);
  for (size_t i = 0; i < out.z_m.size(); ++i) out.x_m.push_back(partners[off++]);

  {
    std::vector<BitVec> rows;
    for (const auto& p : fixed) rows.push_back(form_row(p));
    BitMatrix comp = fixed.empty() ? BitMatrix::identity(2 * n)
                                   : kernel_basis(BitMatrix::from_rows(std::move(rows)));
    std::vector<PauliOp> rest;
    for (size_t i = 0; i < comp.rows(); ++i) rest.push_back(pauli_from_vec(comp.row(i), n));
    SymplecticBasisChange sb = symplectic_basis(std::move(rest));
    for (size_t i = 0; 2 * i + 1 < sb.basis.size(); ++i) {
      out.x.push_back(hermitize(sb.basis[2 * i]));
      out.z.push_back(hermitize(sb.basis[2 * i + 1]));
    }
  }
  if (2 * (out.k_delta() + out.k_cap() + out.k_s() + out.k_m() + out.k_free()) != 2 * n)
    throw std::runtime_error("common_symplectic_basis: element count mismatch");
  return out;
}

StabCircuit build_deformation_circuit(const CommonSymplecticBasis& b) {
  StabCircuit c;
  c.n_in = b.n;
  uint32_t o = 0;
  for (const auto& p : b.x_delta) c.ops.push_back(Measure{SparsePauli::from_dense(p), {}});
  for (const auto& p : b.z_cap) c.ops.push_back(Measure{SparsePauli::from_dense(p), {}});
  for (const auto& p : b.z_m) c.ops.push_back(Measure{SparsePauli::from_dense(p), {}});
  for (size_t j = 0; j < b.k_delta(); ++j)
    c.ops.push_back(CondPauli{SparsePauli::from_dense(b.z_delta[j]), {o + (uint32_t)j}, true});
  o += static_cast<uint32_t>(b.k_delta() + b.k_cap());
  for (size_t j = 0; j < b.k_m(); ++j)
    c.ops.push_back(CondPauli{SparsePauli::from_dense(b.x_m[j]), {o + (uint32_t)j}, true});
  return c;
}

StabCircuit build_syndrome_circuit(const CommonSymplecticBasis& b) {
  StabCircuit c;
  c.n_in = b.n;
  for (const auto& p : b.z_delta) c.ops.push_back(Measure{SparsePauli::from_dense(p), {}});
  for (const auto& p : b.z_cap) c.ops.push_back(Measure{SparsePauli::from_dense(p), {}});
  for (const auto& p : b.z_s) c.ops.push_back(Measure{SparsePauli::from_dense(p), {}});
  return c;
}

AnalyticLogicalAction analytic_logical_action(const CommonSymplecticBasis& b,
                                              const EncodingSpec& in_code,
                                              const EncodingSpec& out_code) {
  uint32_t n = b.n;
  if (in_code.n != n || out_code.n != n)
    throw std::invalid_argument("analytic_logical_action: code sizes do not match the basis");
  uint32_t k = static_cast<uint32_t>(b.k_free());
  uint32_t k_in = in_code.k, k_out = out_code.k;
  if (k_in != n - (b.k_delta() + b.k_cap() + b.k_s()))
    throw std::invalid_argument("analytic_logical_action: in-code rank does not match S");

  StabilizerGroup s_group;
  s_group.n = n;
  s_group.gens = b.z_delta;
  s_group.gens.insert(s_group.gens.end(), b.z_cap.begin(), b.z_cap.end());
  s_group.gens.insert(s_group.gens.end(), b.z_s.begin(), b.z_s.end());
  for (uint32_t j = 0; j < n - k_in; ++j) {
    PauliOp gen = in_code.c.z_image(j);
    if (!s_group.member(gen))
      throw std::invalid_argument("analytic_logical_action: in-code generator " +
                                  format_pauli(gen) + " is not in S");
  }
  StabilizerGroup msp_group;  // M * (S n M^perp)
  msp_group.n = n;
  msp_group.gens = b.x_delta;
  msp_group.gens.insert(msp_group.gens.end(), b.z_cap.begin(), b.z_cap.end());
  msp_group.gens.insert(msp_group.gens.end(), b.z_m.begin(), b.z_m.end());
  msp_group.gens.insert(msp_group.gens.end(), b.z_s.begin(), b.z_s.end());
  for (uint32_t j = 0; j < n - k_out; ++j) {
    PauliOp gen = out_code.c.z_image(j);
    if (!msp_group.member(gen))
      throw std::invalid_argument("analytic_logical_action: out-code generator " +
                                  format_pauli(gen) + " is not inside M*(S n M^perp)");
  }

  // Right Clifford R: syndrome images span the logical image of the combined
  // group; inner legs carry the free pairs.
  std::vector<PauliOp> r_imgs;
  for (const auto& p : msp_group.gens) r_imgs.push_back(logical_map(out_code, p).second);
  std::vector<BitVec> rows;
  for (const auto& p : r_imgs) rows.push_back(symplectic_vec(p));
  auto profile = row_rank_profile(BitMatrix::from_rows(std::move(rows)));
  if (profile.size() != k_out - k)
    throw std::invalid_argument("analytic_logical_action: out-code rank incompatible with M");
  std::vector<PauliOp> r_z;
  for (size_t idx : profile) r_z.push_back(r_imgs[idx]);
  std::vector<std::optional<PauliOp>> r_x(k_out);
  for (uint32_t j = 0; j < k; ++j) {
    r_z.push_back(logical_map(out_code, b.z[j]).second);
    r_x[k_out - k + j] = logical_map(out_code, b.x[j]).second;
  }
  CliffordOp r_cl = complete_to_clifford(r_z, r_x);

  std::vector<PauliOp> l_z;
  std::vector<std::optional<PauliOp>> l_x(k_in);
  for (size_t j = 0; j < b.k_m(); ++j) {
    l_z.push_back(logical_map(in_code, b.z_m[j]).second);
    // x_m commutes with all of S, so it has a logical image; using it keeps
    // the left Clifford pinned to the basis rather than to a solver choice.
    l_x[j] = logical_map(in_code, b.x_m[j]).second;
  }
  for (uint32_t j = 0; j < k; ++j) {
    l_z.push_back(logical_map(in_code, b.z[j]).second);
    l_x[(k_in - k) + j] = logical_map(in_code, b.x[j]).second;
  }
  CliffordOp l_cl = complete_to_clifford(l_z, l_x);

  AnalyticLogicalAction out;
  out.gen.n_in = k_in;
  out.gen.n_out = k_out;
  out.gen.k = k;
  out.gen.n_r = 0;
  out.gen.l = l_cl;
  out.gen.r = r_cl;
  out.gen.a = BitMatrix(k_out - k, k_in - k);
  out.gen.a_x = BitMatrix(k, k_in - k);
  out.gen.a_z = BitMatrix(k, k_in - k);
  for (size_t j = 0; j < b.k_delta(); ++j) out.roles.push_back(OutcomeRole::kRandom);
  for (size_t j = 0; j < b.k_cap(); ++j) out.roles.push_back(OutcomeRole::kZero);
  for (size_t j = 0; j < b.k_m(); ++j) {
    out.m_positions.push_back(out.roles.size());
    out.roles.push_back(OutcomeRole::kLogical);
  }
  return out;
}

TwoGroupForm two_group_general_form(const CommonSymplecticBasis& b) {
  uint32_t n = b.n;
  std::vector<std::pair<PauliOp, PauliOp>> imgs;
  std::vector<PauliOp> zs, xs;
  auto extend = [](std::vector<PauliOp>& dst, const std::vector<PauliOp>& src) {
    dst.insert(dst.end(), src.begin(), src.end());
  };
  extend(zs, b.z_delta);
  extend(zs, b.z_cap);
  extend(zs, b.z_s);
  extend(zs, b.z_m);
  extend(zs, b.z);
  extend(xs, b.x_delta);
  extend(xs, b.x_cap);
  extend(xs, b.x_s);
  extend(xs, b.x_m);
  extend(xs, b.x);
  for (size_t j = 0; j < n; ++j) imgs.emplace_back(xs[j], zs[j]);
  CliffordOp c_b = CliffordOp::from_images(imgs);

  std::vector<StabOp> hs;
  for (uint32_t q = 0; q < b.k_delta(); ++q) {
    hs.push_back(UnitaryExp{SparsePauli({q}, PauliOp::single(1, 0, 'Z'))});
    hs.push_back(UnitaryExp{SparsePauli({q}, PauliOp::single(1, 0, 'X'))});
    hs.push_back(UnitaryExp{SparsePauli({q}, PauliOp::single(1, 0, 'Z'))});
  }
  CliffordOp h_layer = ops_to_clifford(hs, n);

  TwoGroupForm out;
  out.gen.n_in = n;
  out.gen.n_out = n;
  out.gen.k = static_cast<uint32_t>(b.k_free());
  out.gen.n_r = 0;
  out.gen.l = c_b;
  out.gen.r = c_b * h_layer;
  uint32_t n_m = n - out.gen.k;
  BitMatrix mid = BitMatrix::identity(b.k_cap() + b.k_s());
  out.gen.a = BitMatrix::direct_sum(
      BitMatrix::direct_sum(BitMatrix(b.k_delta(), b.k_delta()), mid),
      BitMatrix(b.k_m(), b.k_m()));
  out.gen.a_x = BitMatrix(out.gen.k, n_m);
  out.gen.a_z = BitMatrix(out.gen.k, n_m);

  size_t n_s = b.k_delta() + b.k_cap() + b.k_s();
  for (size_t j = 0; j < n_s; ++j) out.m_positions.push_back(j);
  for (size_t j = 0; j < b.k_m(); ++j)
    out.m_positions.push_back(n_s + b.k_delta() + b.k_cap() + j);
  for (size_t j = 0; j < b.k_cap(); ++j)
    out.redundant_pairs.emplace_back(b.k_delta() + j, n_s + b.k_delta() + j);
  for (size_t j = 0; j < b.k_delta(); ++j) out.random_positions.push_back(n_s + j);
  return out;
}

namespace {

PauliOp chain_x(uint32_t n, const std::vector<uint32_t>& qubits) {
  PauliOp p = PauliOp::identity(n);
  for (uint32_t q : qubits) p.x.set(q, true);
  return p;
}

PauliOp chain_z(uint32_t n, const std::vector<uint32_t>& qubits) {
  PauliOp p = PauliOp::identity(n);
  for (uint32_t q : qubits) p.z.set(q, true);
  return p;
}

}  // namespace

SurgeryInstance repetition_surgery(uint32_t d) {
  if (d < 2) throw std::invalid_argument("repetition_surgery: d must be at least 2");
  uint32_t n = 2 * d;
  auto q = [d](uint32_t row, uint32_t col) { return (row - 1) * d + (col - 1); };

  SurgeryInstance inst;
  inst.group_s.n = n;
  inst.group_m.n = n;
  for (uint32_t i = 1; i <= 2; ++i)
    for (uint32_t j = 1; j < d; ++j)
      inst.group_s.gens.push_back(chain_z(n, {q(i, j), q(i, j + 1)}));
  for (uint32_t j = 1; j <= d; ++j)
    inst.group_m.gens.push_back(chain_x(n, {q(1, j), q(2, j)}));
  for (uint32_t j = 1; j < d; ++j)
    inst.group_m.gens.push_back(chain_z(n, {q(1, j), q(1, j + 1), q(2, j), q(2, j + 1)}));

  // Encoding unitaries from the worked example's symplectic bases.
  std::vector<std::pair<PauliOp, PauliOp>> cs_imgs;
  for (uint32_t i = 1; i <= 2; ++i)
    for (uint32_t j = 1; j < d; ++j) {
      std::vector<uint32_t> xchain;
      for (uint32_t t = 1; t <= j; ++t) xchain.push_back(q(i, t));
      cs_imgs.emplace_back(chain_x(n, xchain), chain_z(n, {q(i, j), q(i, j + 1)}));
    }
  for (uint32_t i = 1; i <= 2; ++i) {
    std::vector<uint32_t> full;
    for (uint32_t t = 1; t <= d; ++t) full.push_back(q(i, t));
    cs_imgs.emplace_back(chain_x(n, full), chain_z(n, {q(i, d)}));
  }
  inst.code_s = EncodingSpec{n, 2, CliffordOp::from_images(cs_imgs)};

  std::vector<std::pair<PauliOp, PauliOp>> cm_imgs;
  for (uint32_t j = 1; j <= d; ++j)
    cm_imgs.emplace_back(chain_z(n, {q(1, j)}), chain_x(n, {q(1, j), q(2, j)}));
  for (uint32_t j = 1; j < d; ++j) {
    std::vector<uint32_t> xchain;
    for (uint32_t t = 1; t <= j; ++t) xchain.push_back(q(2, t));
    cm_imgs.emplace_back(chain_x(n, xchain),
                         chain_z(n, {q(1, j), q(1, j + 1), q(2, j), q(2, j + 1)}));
  }
  {
    std::vector<uint32_t> full;
    for (uint32_t t = 1; t <= d; ++t) full.push_back(q(2, t));
    cm_imgs.emplace_back(chain_x(n, full), chain_z(n, {q(1, d), q(2, d)}));
  }
  inst.code_m = EncodingSpec{n, 1, CliffordOp::from_images(cm_imgs)};

  inst.basis_sm = common_symplectic_basis(inst.group_s, inst.group_m);
  inst.basis_ms = common_symplectic_basis(inst.group_m, inst.group_s);

  // The worked example's explicit basis for (S_d, M_d).
  CommonSymplecticBasis& ex = inst.basis_sm_example;
  ex.n = n;
  for (uint32_t j = 1; j < d; ++j) {
    ex.x_delta.push_back(chain_x(n, {q(1, j), q(2, j)}));
    ex.z_delta.push_back(chain_z(n, {q(1, j), q(1, d)}));
    std::vector<uint32_t> xchain;
    for (uint32_t t = 1; t <= j; ++t) xchain.push_back(q(2, t));
    ex.x_cap.push_back(chain_x(n, xchain));
    ex.z_cap.push_back(chain_z(n, {q(1, j), q(1, j + 1), q(2, j), q(2, j + 1)}));
  }
  ex.x_m.push_back(chain_z(n, {q(1, d)}));
  {
    std::vector<uint32_t> all;
    for (uint32_t i = 1; i <= 2; ++i)
      for (uint32_t t = 1; t <= d; ++t) all.push_back(q(i, t));
    std::sort(all.begin(), all.end());
    ex.z_m.push_back(chain_x(n, all));
  }
  {
    std::vector<uint32_t> row2;
    for (uint32_t t = 1; t <= d; ++t) row2.push_back(q(2, t));
    ex.x.push_back(chain_x(n, row2));
  }
  ex.z.push_back(chain_z(n, {q(1, d), q(2, d)}));
  inst.circuit =
      concat(build_deformation_circuit(inst.basis_sm), build_deformation_circuit(inst.basis_ms));

  inst.reference.n_in = 2;
  inst.reference.ops.push_back(
      Measure{SparsePauli({0, 1}, PauliOp(BitVec::from_string("11"), BitVec(2), 0)), {}});
  inst.reference.ops.push_back(
      CondPauli{SparsePauli({0}, PauliOp::single(1, 0, 'Z')), {0}, true});
  return inst;
}

}  // namespace stabforms

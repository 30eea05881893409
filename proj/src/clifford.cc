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

#include "stabforms/clifford.h"

#include <stdexcept>

namespace stabforms {

namespace {

// Row layout: (x | z | s1 s2), columns of M(C) are rows of the stored t_.
BitVec swap_xz_blocks(const BitVec& v, size_t n) {
  BitVec out(2 * n + 2);
  for (size_t i = 0; i < n; ++i) {
    out.set(i, v.get(n + i));
    out.set(n + i, v.get(i));
  }
  out.set(2 * n, v.get(2 * n));
  out.set(2 * n + 1, v.get(2 * n + 1));
  return out;
}

}  // namespace

CliffordOp::CliffordOp(size_t n) : n_(n), t_(2 * n + 2, 2 * n + 2) {
  for (size_t k = 0; k < n; ++k) {
    t_.set(k, k, true);          // preimage of X_k is X_k
    t_.set(n + k, n + k, true);  // preimage of Z_k is Z_k
  }
}

void CliffordOp::debug_check() const {
#ifndef NDEBUG
  if (n_ <= 8 && !is_valid()) throw std::logic_error("CliffordOp: tableau invariant broken");
#endif
}

PauliOp CliffordOp::row_pauli(size_t r) const {
  const BitVec& row = t_.row(r);
  return PauliOp(row.slice(0, n_), row.slice(n_, n_),
                 static_cast<int>(row.get(2 * n_)) + 2 * static_cast<int>(row.get(2 * n_ + 1)));
}

void CliffordOp::set_row_pauli(size_t r, const PauliOp& p) {
  BitVec row = p.x.concat(p.z);
  row.resize(2 * n_ + 2);
  row.set(2 * n_, p.phase & 1);
  row.set(2 * n_ + 1, (p.phase >> 1) & 1);
  t_.row(r) = std::move(row);
}

PauliOp CliffordOp::gather_image(size_t col) const {
  PauliOp p = PauliOp::identity(n_);
  for (size_t i = 0; i < n_; ++i) {
    p.z.set(i, t_.get(i, col));
    p.x.set(i, t_.get(n_ + i, col));
  }
  p.phase = static_cast<uint8_t>(image_phase(col));
  return p;
}

int CliffordOp::image_phase(size_t col) const {
  return static_cast<int>(t_.get(2 * n_, col)) + 2 * static_cast<int>(t_.get(2 * n_ + 1, col));
}

void CliffordOp::set_image_phase(size_t col, int s) {
  t_.set(2 * n_, col, s & 1);
  t_.set(2 * n_ + 1, col, (s >> 1) & 1);
}

PauliOp CliffordOp::z_image(size_t k) const { return gather_image(k); }
PauliOp CliffordOp::x_image(size_t k) const { return gather_image(n_ + k); }
PauliOp CliffordOp::x_preimage(size_t k) const { return row_pauli(k); }
PauliOp CliffordOp::z_preimage(size_t k) const { return row_pauli(n_ + k); }

PauliOp CliffordOp::image_raw(const PauliOp& p) const {
  PauliOp acc = PauliOp::identity(n_);
  for (size_t k : p.z.support()) acc = acc * z_image(k);
  for (size_t k : p.x.support()) acc = acc * x_image(k);
  return acc.mul_phase(p.phase);
}

PauliOp CliffordOp::preimage_raw(const PauliOp& p) const {
  PauliOp acc = PauliOp::identity(n_);
  for (size_t k : p.z.support()) acc = acc * z_preimage(k);
  for (size_t k : p.x.support()) acc = acc * x_preimage(k);
  return acc.mul_phase(p.phase);
}

PauliOp CliffordOp::image(const PauliOp& p) const {
  if (p.num_qubits() != n_) throw std::invalid_argument("image: qubit count mismatch");
  if (!p.is_hermitian()) throw std::invalid_argument("image: operand is not Hermitian");
  return image_raw(p);
}

PauliOp CliffordOp::preimage(const PauliOp& p) const {
  if (p.num_qubits() != n_) throw std::invalid_argument("preimage: qubit count mismatch");
  if (!p.is_hermitian()) throw std::invalid_argument("preimage: operand is not Hermitian");
  return preimage_raw(p);
}

void CliffordOp::fill_preimage_phases() {
  for (size_t r = 0; r < 2 * n_; ++r) {
    PauliOp p0 = row_pauli(r);
    p0.phase = 0;
    PauliOp img = image_raw(p0);
    PauliOp want =
        r < n_ ? PauliOp::single(n_, r, 'X') : PauliOp::single(n_, r - n_, 'Z');
    if (img.x != want.x || img.z != want.z)
      throw std::runtime_error("CliffordOp: inconsistent tableau while fixing preimage phases");
    t_.row(r).set(2 * n_, (4 - img.phase) & 1);
    t_.row(r).set(2 * n_ + 1, (((4 - img.phase) & 3) >> 1) & 1);
  }
}

CliffordOp CliffordOp::from_images(const std::vector<std::pair<PauliOp, PauliOp>>& xz_images) {
  size_t n = xz_images.size();
  for (const auto& [xi, zi] : xz_images) {
    if (xi.num_qubits() != n || zi.num_qubits() != n)
      throw std::invalid_argument("from_images: image size mismatch");
    if (!xi.is_hermitian() || !zi.is_hermitian())
      throw std::invalid_argument("from_images: images must be Hermitian");
  }
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (commutator(xz_images[i].first, xz_images[j].first) ||
          commutator(xz_images[i].second, xz_images[j].second) ||
          commutator(xz_images[i].first, xz_images[j].second) != (i == j))
        throw std::invalid_argument("from_images: images are not symplectic");
    }
  }
  CliffordOp c(n);
  c.t_ = BitMatrix(2 * n + 2, 2 * n + 2);
  for (size_t j = 0; j < n; ++j) {
    const PauliOp& zi = xz_images[j].second;
    const PauliOp& xi = xz_images[j].first;
    for (size_t r = 0; r < n; ++r) {
      c.t_.set(r, j, zi.z.get(r));
      c.t_.set(n + r, j, zi.x.get(r));
      c.t_.set(r, n + j, xi.z.get(r));
      c.t_.set(n + r, n + j, xi.x.get(r));
    }
    c.set_image_phase(j, zi.phase);
    c.set_image_phase(n + j, xi.phase);
  }
  c.fill_preimage_phases();
  return c;
}

CliffordOp CliffordOp::css(const BitMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("css: matrix not square");
  size_t n = a.rows();
  BitMatrix a_inv = invert(a);  // throws when singular
  CliffordOp c(n);
  c.t_ = BitMatrix(2 * n + 2, 2 * n + 2);
  for (size_t k = 0; k < n; ++k) {
    // preimage of X_k is X^{A^{-1} e_k}, preimage of Z_k is Z^{A^T e_k}
    for (size_t r = 0; r < n; ++r) {
      c.t_.set(k, r, a_inv.get(r, k));
      c.t_.set(n + k, n + r, a.get(k, r));
    }
  }
  return c;
}

CliffordOp CliffordOp::inverse() const {
  CliffordOp out(n_);
  out.t_ = BitMatrix(2 * n_ + 2, 2 * n_ + 2);
  BitMatrix mt = t_.transposed();  // rows of M(C)
  for (size_t k = 0; k < n_; ++k) {
    out.t_.row(k) = swap_xz_blocks(mt.row(n_ + k), n_);
    out.t_.row(n_ + k) = swap_xz_blocks(mt.row(k), n_);
  }
  for (size_t j = 0; j < n_; ++j) {
    // image phases of the inverse are the preimage phases of C
    out.t_.set(2 * n_, j, t_.get(n_ + j, 2 * n_));
    out.t_.set(2 * n_ + 1, j, t_.get(n_ + j, 2 * n_ + 1));
    out.t_.set(2 * n_, n_ + j, t_.get(j, 2 * n_));
    out.t_.set(2 * n_ + 1, n_ + j, t_.get(j, 2 * n_ + 1));
  }
  return out;
}

CliffordOp operator*(const CliffordOp& a, const CliffordOp& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("Clifford product: qubit count mismatch");
  size_t n = a.n_;
  CliffordOp out(n);
  out.t_ = BitMatrix(2 * n + 2, 2 * n + 2);
  for (size_t k = 0; k < n; ++k) {
    out.set_row_pauli(k, b.preimage_raw(a.x_preimage(k)));
    out.set_row_pauli(n + k, b.preimage_raw(a.z_preimage(k)));
  }
  for (size_t j = 0; j < n; ++j) {
    out.set_image_phase(j, a.image_raw(b.z_image(j)).phase);
    out.set_image_phase(n + j, a.image_raw(b.x_image(j)).phase);
  }
  return out;
}

void CliffordOp::left_mult_exp(const PauliOp& p) {
  if (p.num_qubits() != n_) throw std::invalid_argument("left_mult_exp: qubit count mismatch");
  if (!p.is_hermitian()) throw std::invalid_argument("left_mult_exp: P must be Hermitian");
  PauliOp pt = preimage_raw(p);
  PauliOp px = PauliOp(p.x, BitVec(n_), 0);
  PauliOp ptx = preimage_raw(px);

  // Image phases: rows anticommuting with P get s += 1 + s(P) + 2*d.
  BitVec mask = pt.x.concat(pt.z);
  mask.resize(2 * n_ + 2);
  BitVec d = ptx.x.concat(ptx.z);
  d.resize(2 * n_ + 2);
  bool c1 = (1 + p.phase) & 1;
  bool c2 = ((1 + p.phase) >> 1) & 1;
  BitVec& s1 = t_.row(2 * n_);
  BitVec& s2 = t_.row(2 * n_ + 1);
  BitVec upd = d;
  if (c2) upd ^= mask;
  if (c1) upd ^= s1;
  s2 ^= upd & mask;
  if (c1) s1 ^= mask;

  // Preimage rows on supp(P) pick up a factor i * pt.
  for (size_t j : p.z.support()) set_row_pauli(j, (row_pauli(j) * pt).mul_phase(1));
  for (size_t j : p.x.support()) set_row_pauli(n_ + j, (row_pauli(n_ + j) * pt).mul_phase(1));
  debug_check();
}

void CliffordOp::left_mult_pauli(const PauliOp& p) {
  if (p.num_qubits() != n_) throw std::invalid_argument("left_mult_pauli: qubit count mismatch");
  PauliOp pt = preimage_raw(p);
  BitVec mask = pt.x.concat(pt.z);
  mask.resize(2 * n_ + 2);
  t_.row(2 * n_ + 1) ^= mask;  // anticommuting images flip sign
  for (size_t j : p.z.support()) t_.row(j).flip(2 * n_ + 1);
  for (size_t j : p.x.support()) t_.row(n_ + j).flip(2 * n_ + 1);
  debug_check();
}

void CliffordOp::left_mult_ctrl_pauli(const PauliOp& p, const PauliOp& q) {
  if (!p.is_hermitian() || !q.is_hermitian())
    throw std::invalid_argument("left_mult_ctrl_pauli: operands must be Hermitian");
  if (commutator(p, q))
    throw std::invalid_argument("left_mult_ctrl_pauli: operands must commute");
  left_mult_exp(p * q);
  left_mult_exp(PauliOp(q).mul_phase(2));
  left_mult_exp(PauliOp(p).mul_phase(2));
}

void CliffordOp::left_mult_swap(size_t i, size_t j) {
  if (i == j) return;
  t_.row_swap(i, j);
  t_.row_swap(n_ + i, n_ + j);
}

void CliffordOp::right_mult_swap(size_t i, size_t j) {
  if (i == j) return;
  for (size_t r = 0; r < 2 * n_ + 2; ++r) {
    BitVec& row = t_.row(r);
    bool a = row.get(i), b = row.get(j);
    row.set(i, b);
    row.set(j, a);
    a = row.get(n_ + i);
    b = row.get(n_ + j);
    row.set(n_ + i, b);
    row.set(n_ + j, a);
  }
}

CliffordOp CliffordOp::tensor(const CliffordOp& o) const {
  size_t n = n_, l = o.n_, nn = n + l;
  CliffordOp out(nn);
  out.t_ = BitMatrix(2 * nn + 2, 2 * nn + 2);
  for (size_t q = 0; q < n; ++q) {
    out.set_row_pauli(q, x_preimage(q).embed(nn, 0));
    out.set_row_pauli(nn + q, z_preimage(q).embed(nn, 0));
    out.set_image_phase(q, image_phase(q));
    out.set_image_phase(nn + q, image_phase(n_ + q));
  }
  for (size_t q = 0; q < l; ++q) {
    out.set_row_pauli(n + q, o.x_preimage(q).embed(nn, n));
    out.set_row_pauli(nn + n + q, o.z_preimage(q).embed(nn, n));
    out.set_image_phase(n + q, o.image_phase(q));
    out.set_image_phase(nn + n + q, o.image_phase(o.n_ + q));
  }
  return out;
}

void CliffordOp::add_qubits(size_t m) { *this = tensor(CliffordOp(m)); }

void CliffordOp::remove_qubits(size_t m) {
  if (m > n_) throw std::invalid_argument("remove_qubits: too many qubits");
  for (size_t t = n_ - m; t < n_; ++t) {
    if (z_image(t) != PauliOp::single(n_, t, 'Z') || x_image(t) != PauliOp::single(n_, t, 'X'))
      throw std::invalid_argument("remove_qubits: trailing qubits do not act as identity");
  }
  size_t keep = n_ - m;
  CliffordOp out(keep);
  out.t_ = BitMatrix(2 * keep + 2, 2 * keep + 2);
  for (size_t q = 0; q < keep; ++q) {
    PauliOp xp = x_preimage(q), zp = z_preimage(q);
    out.set_row_pauli(q, PauliOp(xp.x.slice(0, keep), xp.z.slice(0, keep), xp.phase));
    out.set_row_pauli(keep + q, PauliOp(zp.x.slice(0, keep), zp.z.slice(0, keep), zp.phase));
    out.set_image_phase(q, image_phase(q));
    out.set_image_phase(keep + q, image_phase(n_ + q));
  }
  *this = out;
}

void CliffordOp::disentangle(size_t j) {
  PauliOp pre = preimage_raw(PauliOp::single(n_, j, 'Z'));
  if (!pre.x.is_zero() || pre.phase != 0)
    throw std::invalid_argument("disentangle: Z_j does not stabilize C|0^n>");
  auto j2 = pre.z.first_set();
  if (!j2) throw std::runtime_error("disentangle: trivial preimage");
  size_t jp = *j2;

  // First make C Z_j C^dag = Z_j while preserving C|0^n>.
  PauliOp a = x_image(jp);
  PauliOp b = z_image(jp) * PauliOp::single(n_, j, 'Z');
  right_mult_swap(j, jp);
  left_mult_ctrl_pauli(a, b);

  // Then make C X_j C^dag = X_j.
  PauliOp xpre = x_preimage(j);
  PauliOp zj_img = z_image(j);
  if (!xpre.z.get(j)) {
    PauliOp b2 = PauliOp::single(n_, j, 'X') * x_image(j);
    left_mult_ctrl_pauli(zj_img, b2);
  } else {
    PauliOp y_mid(BitVec::unit(n_, j), BitVec::unit(n_, j), 1);  // i Z_j X_j
    PauliOp b2 = PauliOp::single(n_, j, 'X') * image_raw(y_mid);
    left_mult_exp(zj_img);
    left_mult_ctrl_pauli(zj_img, b2);
  }
}

std::pair<BitMatrix, BitMatrix> CliffordOp::batch_x_images(const BitMatrix& a) const {
  if (a.rows() != n_) throw std::invalid_argument("batch_x_images: dimension mismatch");
  if (n_ == 0) return {a, a};
  return {t_.submatrix(n_, n_, n_, n_) * a, t_.submatrix(0, n_, n_, n_) * a};
}

std::pair<BitMatrix, BitMatrix> CliffordOp::batch_z_images(const BitMatrix& a) const {
  if (a.rows() != n_) throw std::invalid_argument("batch_z_images: dimension mismatch");
  if (n_ == 0) return {a, a};
  return {t_.submatrix(n_, 0, n_, n_) * a, t_.submatrix(0, 0, n_, n_) * a};
}

std::optional<std::pair<BitVec, BitVec>> CliffordOp::as_pauli() const {
  for (size_t r = 0; r < 2 * n_; ++r) {
    BitVec want(2 * n_ + 2);
    want.set(r, true);
    BitVec got = t_.row(r);
    got.set(2 * n_, false);
    got.set(2 * n_ + 1, false);
    if (got != want) return std::nullopt;
  }
  BitVec a(n_), b(n_);
  for (size_t k = 0; k < n_; ++k) {
    int sz = image_phase(k), sx = image_phase(n_ + k);
    if ((sz & 1) || (sx & 1)) return std::nullopt;
    a.set(k, sz >> 1);
    b.set(k, sx >> 1);
  }
  return std::make_pair(a, b);
}

CliffordOp CliffordOp::conj() const {
  CliffordOp out = *this;
  // s -> -s: flip s2 wherever s1 is set, for images and preimages alike.
  for (size_t r = 0; r < 2 * n_; ++r)
    if (out.t_.get(r, 2 * n_)) out.t_.row(r).flip(2 * n_ + 1);
  BitVec upd = out.t_.row(2 * n_);
  upd.set(2 * n_, false);
  upd.set(2 * n_ + 1, false);
  out.t_.row(2 * n_ + 1) ^= upd;
  return out;
}

CliffordOp CliffordOp::from_tableau_rows(const BitMatrix& rows) {
  if (rows.rows() != rows.cols() || rows.rows() < 2 || rows.rows() % 2 != 0)
    throw std::invalid_argument("from_tableau_rows: bad dimensions");
  size_t n = (rows.rows() - 2) / 2;
  CliffordOp c(n);
  c.t_ = rows.transposed();
  if (!c.is_valid()) throw std::invalid_argument("from_tableau_rows: invalid tableau");
  return c;
}

bool CliffordOp::is_valid() const {
  for (size_t i = 0; i < n_; ++i) {
    if (!x_preimage(i).is_hermitian() || !z_preimage(i).is_hermitian()) return false;
    if (!z_image(i).is_hermitian() || !x_image(i).is_hermitian()) return false;
  }
  for (size_t i = 0; i < n_; ++i)
    for (size_t j = 0; j < n_; ++j) {
      if (commutator(x_preimage(i), x_preimage(j)) || commutator(z_preimage(i), z_preimage(j)) ||
          commutator(x_preimage(i), z_preimage(j)) != (i == j))
        return false;
    }
  // Preimage phases must be consistent with image phases.
  for (size_t r = 0; r < 2 * n_; ++r) {
    PauliOp want = r < n_ ? PauliOp::single(n_, r, 'X') : PauliOp::single(n_, r - n_, 'Z');
    if (image_raw(row_pauli(r)) != want) return false;
  }
  return true;
}

}  // namespace stabforms

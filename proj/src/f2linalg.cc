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

#include "stabforms/f2linalg.h"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace stabforms {

void BitVec::trim() {
  if (n_ & 63) w_.back() &= (uint64_t{1} << (n_ & 63)) - 1;
}

BitVec BitVec::unit(size_t n, size_t i) {
  BitVec v(n);
  if (i >= n) throw std::invalid_argument("BitVec::unit: index out of range");
  v.set(i, true);
  return v;
}

BitVec BitVec::from_string(std::string_view s) {
  BitVec v(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      v.set(i, true);
    else if (s[i] != '0')
      throw std::invalid_argument("BitVec::from_string: bad character");
  }
  return v;
}

BitVec& BitVec::operator^=(const BitVec& o) {
  if (n_ != o.n_) throw std::invalid_argument("BitVec xor: size mismatch");
  for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
  return *this;
}

BitVec& BitVec::operator&=(const BitVec& o) {
  if (n_ != o.n_) throw std::invalid_argument("BitVec and: size mismatch");
  for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
  return *this;
}

size_t BitVec::popcount() const {
  size_t c = 0;
  for (uint64_t w : w_) c += std::popcount(w);
  return c;
}

bool BitVec::is_zero() const {
  for (uint64_t w : w_)
    if (w) return false;
  return true;
}

std::optional<size_t> BitVec::first_set() const {
  for (size_t i = 0; i < w_.size(); ++i)
    if (w_[i]) return (i << 6) + std::countr_zero(w_[i]);
  return std::nullopt;
}

bool BitVec::dot(const BitVec& o) const {
  if (n_ != o.n_) throw std::invalid_argument("BitVec dot: size mismatch");
  uint64_t acc = 0;
  for (size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
  return std::popcount(acc) & 1;
}

void BitVec::resize(size_t n) {
  n_ = n;
  w_.resize((n + 63) / 64, 0);
  trim();
}

BitVec BitVec::slice(size_t begin, size_t len) const {
  if (begin + len > n_) throw std::invalid_argument("BitVec::slice: out of range");
  BitVec out(len);
  for (size_t i = 0; i < len; ++i) out.set(i, get(begin + i));
  return out;
}

BitVec BitVec::concat(const BitVec& tail) const {
  BitVec out(n_ + tail.n_);
  for (size_t i = 0; i < n_; ++i) out.set(i, get(i));
  for (size_t i = 0; i < tail.n_; ++i) out.set(n_ + i, tail.get(i));
  return out;
}

std::string BitVec::str() const {
  std::string s(n_, '0');
  for (size_t i = 0; i < n_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

std::vector<size_t> BitVec::support() const {
  std::vector<size_t> out;
  for (size_t i = 0; i < n_; ++i)
    if (get(i)) out.push_back(i);
  return out;
}

BitMatrix BitMatrix::identity(size_t n) {
  BitMatrix m(n, n);
  for (size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BitMatrix BitMatrix::from_rows(std::vector<BitVec> rows) {
  BitMatrix m;
  m.cols_ = rows.empty() ? 0 : rows[0].size();
  for (const auto& r : rows)
    if (r.size() != m.cols_) throw std::invalid_argument("BitMatrix: ragged rows");
  m.r_ = std::move(rows);
  return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
  std::vector<BitVec> r;
  r.reserve(rows.size());
  for (const auto& s : rows) r.push_back(BitVec::from_string(s));
  return from_rows(std::move(r));
}

void BitMatrix::append_row(BitVec r) {
  if (rows() == 0 && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) throw std::invalid_argument("BitMatrix::append_row: size mismatch");
  r_.push_back(std::move(r));
}

BitVec BitMatrix::col(size_t j) const {
  BitVec v(rows());
  for (size_t i = 0; i < rows(); ++i) v.set(i, get(i, j));
  return v;
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(cols_, rows());
  for (size_t i = 0; i < rows(); ++i)
    for (size_t j : r_[i].support()) t.set(j, i, true);
  return t;
}

BitMatrix BitMatrix::operator*(const BitMatrix& o) const {
  if (cols_ != o.rows()) throw std::invalid_argument("BitMatrix mul: dimension mismatch");
  BitMatrix out(rows(), o.cols());
  for (size_t i = 0; i < rows(); ++i) {
    BitVec acc(o.cols());
    for (size_t k : r_[i].support()) acc ^= o.row(k);
    out.r_[i] = std::move(acc);
  }
  return out;
}

BitVec BitMatrix::mul(const BitVec& v) const {
  if (v.size() != cols_) throw std::invalid_argument("BitMatrix::mul: dimension mismatch");
  BitVec out(rows());
  for (size_t i = 0; i < rows(); ++i) out.set(i, r_[i].dot(v));
  return out;
}

BitMatrix operator+(BitMatrix a, const BitMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("BitMatrix add: dimension mismatch");
  for (size_t i = 0; i < a.rows(); ++i) a.row(i) ^= b.row(i);
  return a;
}

bool BitMatrix::is_zero() const {
  for (const auto& r : r_)
    if (!r.is_zero()) return false;
  return true;
}

BitMatrix BitMatrix::submatrix(size_t r0, size_t c0, size_t nr, size_t nc) const {
  if (r0 + nr > rows() || c0 + nc > cols_)
    throw std::invalid_argument("BitMatrix::submatrix: out of range");
  BitMatrix out(nr, nc);
  for (size_t i = 0; i < nr; ++i) out.r_[i] = r_[r0 + i].slice(c0, nc);
  return out;
}

BitMatrix BitMatrix::hstack(const BitMatrix& a, const BitMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
  BitMatrix out(a.rows(), a.cols() + b.cols());
  for (size_t i = 0; i < a.rows(); ++i) out.r_[i] = a.row(i).concat(b.row(i));
  return out;
}

BitMatrix BitMatrix::vstack(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.cols() && a.rows() != 0 && b.rows() != 0)
    throw std::invalid_argument("vstack: column mismatch");
  BitMatrix out = a.rows() ? a : BitMatrix(0, b.cols());
  for (size_t i = 0; i < b.rows(); ++i) out.append_row(b.row(i));
  return out;
}

BitMatrix BitMatrix::direct_sum(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j : a.row(i).support()) out.set(i, j, true);
  for (size_t i = 0; i < b.rows(); ++i)
    for (size_t j : b.row(i).support()) out.set(a.rows() + i, a.cols() + j, true);
  return out;
}

std::vector<std::string> BitMatrix::to_strings() const {
  std::vector<std::string> out;
  out.reserve(rows());
  for (const auto& r : r_) out.push_back(r.str());
  return out;
}

RrefFactorization rref_factor(const BitMatrix& a) {
  RrefFactorization f;
  size_t m = a.rows(), n = a.cols();
  f.r = a;
  f.b = BitMatrix::identity(m);
  f.b_inv = BitMatrix::identity(m);
  size_t piv = 0;
  for (size_t j = 0; j < n && piv < m; ++j) {
    size_t sel = m;
    for (size_t i = piv; i < m; ++i)
      if (f.r.get(i, j)) {
        sel = i;
        break;
      }
    if (sel == m) continue;
    if (sel != piv) {
      // R <- T R with T a row swap; B <- B T.
      f.r.row_swap(sel, piv);
      f.b_inv.row_swap(sel, piv);
      for (size_t i = 0; i < m; ++i) {
        bool t = f.b.get(i, sel);
        f.b.set(i, sel, f.b.get(i, piv));
        f.b.set(i, piv, t);
      }
    }
    for (size_t i = 0; i < m; ++i) {
      if (i != piv && f.r.get(i, j)) {
        // R_i += R_piv; correspondingly column i of B is added to column piv.
        f.r.row_xor(i, piv);
        f.b_inv.row_xor(i, piv);
        for (size_t t = 0; t < m; ++t)
          if (f.b.get(t, i)) f.b.row(t).flip(piv);
      }
    }
    f.pivots.push_back(j);
    ++piv;
  }
  f.rank = piv;
  return f;
}

BitMatrix kernel_basis(const BitMatrix& a) {
  auto f = rref_factor(a);
  size_t n = a.cols();
  std::vector<bool> is_piv(n, false);
  for (size_t p : f.pivots) is_piv[p] = true;
  BitMatrix out(n - f.rank, n);
  size_t row = 0;
  for (size_t j = 0; j < n; ++j) {
    if (is_piv[j]) continue;
    out.set(row, j, true);
    for (size_t k = 0; k < f.rank; ++k)
      if (f.r.get(k, j)) out.set(row, f.pivots[k], true);
    ++row;
  }
  return out;
}

BitMatrix full_rank_completion(const BitMatrix& a) {
  size_t m = a.rows(), n = a.cols();
  if (m > n) throw std::invalid_argument("full_rank_completion: more rows than columns");
  auto f = rref_factor(a);
  if (f.rank < m) throw std::invalid_argument("full_rank_completion: rows are linearly dependent");
  std::vector<bool> is_piv(n, false);
  for (size_t p : f.pivots) is_piv[p] = true;
  BitMatrix out = a;
  if (out.rows() == 0) out = BitMatrix(0, n);
  for (size_t j = 0; j < n; ++j)
    if (!is_piv[j]) out.append_row(BitVec::unit(n, j));
  return out;
}

BitMatrix invert(const BitMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("invert: matrix not square");
  auto f = rref_factor(a);
  if (f.rank != a.rows()) throw std::invalid_argument("invert: matrix is singular");
  return f.b_inv;
}

BitMatrix left_inverse(const BitMatrix& a) {
  size_t n = a.cols();
  auto f = rref_factor(a);
  if (f.rank != n) throw std::invalid_argument("left_inverse: matrix lacks full column rank");
  return f.b_inv.rows_slice(0, n);
}

BitMatrix right_inverse(const BitMatrix& a) {
  return left_inverse(a.transposed()).transposed();
}

BlockReshape block_reshape(const BitMatrix& a) {
  size_t m = a.rows(), n = a.cols();
  // Work on A with reversed columns so every dependent column depends only on
  // independent columns to its right.
  BitMatrix ar(m, n);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < n; ++j) ar.set(i, j, a.get(i, n - 1 - j));
  auto fac = rref_factor(ar);
  if (fac.rank != m) throw std::invalid_argument("block_reshape: matrix lacks full row rank");
  std::vector<bool> is_piv(n, false);
  for (size_t p : fac.pivots) is_piv[p] = true;

  BitMatrix r = BitMatrix::identity(n);
  for (size_t j = 0; j < n; ++j) {
    if (is_piv[j]) continue;
    for (size_t k = 0; k < m; ++k)
      if (fac.r.get(k, j)) r.set(n - 1 - fac.pivots[k], n - 1 - j, true);
  }
  // New column order: non-pivot columns (in increasing original index), then
  // pivot columns (in increasing original index).
  std::vector<size_t> order;
  for (size_t j = n; j-- > 0;)
    if (!is_piv[j]) order.push_back(n - 1 - j);
  for (size_t j = n; j-- > 0;)
    if (is_piv[j]) order.push_back(n - 1 - j);
  BitMatrix rp(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t jj = 0; jj < n; ++jj) rp.set(i, jj, r.get(i, order[jj]));

  BitMatrix f(m, m);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) f.set(i, j, fac.b.get(i, m - 1 - j));
  return BlockReshape{rp, f};
}

bool is_split_echelon(const BitMatrix& m, size_t n_r, size_t n_m, bool reduced) {
  if (m.cols() != n_r + n_m) throw std::invalid_argument("is_split_echelon: dimension mismatch");
  if (rank_of(m) != m.cols()) return false;
  size_t rows = m.rows();
  auto leading_row = [&](size_t j) -> std::optional<size_t> {
    for (size_t i = 0; i < rows; ++i)
      if (m.get(i, j)) return i;
    return std::nullopt;
  };
  // Left part: columns [0, n_r) as rows of the transpose, in RREF.
  std::vector<size_t> left_leads;
  {
    long prev = -1;
    for (size_t j = 0; j < n_r; ++j) {
      auto l = leading_row(j);
      if (!l) return false;  // full column rank already excludes zero columns
      if ((long)*l <= prev) return false;
      prev = (long)*l;
      left_leads.push_back(*l);
    }
    // Reduced: a leading row of column j has zeros in the other left columns.
    for (size_t j = 0; j < n_r; ++j)
      for (size_t j2 = 0; j2 < n_r; ++j2)
        if (j2 != j && m.get(left_leads[j], j2)) return false;
  }
  // Split condition: left leading rows vanish on the right part.
  for (size_t l : left_leads)
    for (size_t j = n_r; j < n_r + n_m; ++j)
      if (m.get(l, j)) return false;
  // Right part: row echelon form (reduced if requested).
  {
    long prev = -1;
    std::vector<size_t> right_leads;
    for (size_t j = n_r; j < n_r + n_m; ++j) {
      auto l = leading_row(j);
      if (!l) return false;
      if ((long)*l <= prev) return false;
      prev = (long)*l;
      right_leads.push_back(*l);
    }
    if (reduced) {
      for (size_t j = 0; j < n_m; ++j)
        for (size_t j2 = n_r; j2 < n_r + n_m; ++j2)
          if (j2 != n_r + j && m.get(right_leads[j], j2)) return false;
    }
  }
  return true;
}

std::vector<size_t> row_rank_profile(const BitMatrix& a) {
  std::vector<size_t> profile;
  std::vector<BitVec> basis;  // kept in echelon form by leading bit
  for (size_t i = 0; i < a.rows(); ++i) {
    BitVec v = a.row(i);
    for (const auto& b : basis) {
      auto lead = b.first_set();
      if (lead && v.get(*lead)) v ^= b;
    }
    if (!v.is_zero()) {
      profile.push_back(i);
      basis.push_back(v);
      std::sort(basis.begin(), basis.end(), [](const BitVec& x, const BitVec& y) {
        return x.first_set().value_or(SIZE_MAX) < y.first_set().value_or(SIZE_MAX);
      });
    }
  }
  return profile;
}

size_t rank_of(const BitMatrix& a) { return rref_factor(a).rank; }

std::optional<BitVec> solve(const BitMatrix& a, const BitVec& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve: dimension mismatch");
  auto f = rref_factor(a);
  BitVec rb = f.b_inv.mul(b);
  for (size_t i = f.rank; i < a.rows(); ++i)
    if (rb.get(i)) return std::nullopt;
  BitVec x(a.cols());
  for (size_t k = 0; k < f.rank; ++k) x.set(f.pivots[k], rb.get(k));
  return x;
}

}  // namespace stabforms

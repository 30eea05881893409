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

#ifndef STABFORMS_F2LINALG_H
#define STABFORMS_F2LINALG_H

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stabforms {

/// Word-packed bit vector over F2. Bits beyond size() are kept zero.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  static BitVec zeros(size_t n) { return BitVec(n); }
  static BitVec unit(size_t n, size_t i);
  static BitVec from_string(std::string_view s);

  size_t size() const { return n_; }
  bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(size_t i, bool v) {
    uint64_t m = uint64_t{1} << (i & 63);
    if (v)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }
  void flip(size_t i) { w_[i >> 6] ^= uint64_t{1} << (i & 63); }

  BitVec& operator^=(const BitVec& o);
  BitVec& operator&=(const BitVec& o);
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }

  size_t popcount() const;
  bool is_zero() const;
  std::optional<size_t> first_set() const;
  /// Parity of the AND of two vectors, i.e. the F2 inner product.
  bool dot(const BitVec& o) const;

  bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const BitVec& o) const { return !(*this == o); }

  /// Keeps the low bits when shrinking, pads with zeros when growing.
  void resize(size_t n);
  BitVec slice(size_t begin, size_t len) const;
  BitVec concat(const BitVec& tail) const;

  std::string str() const;
  std::vector<size_t> support() const;

 private:
  void trim();
  size_t n_ = 0;
  std::vector<uint64_t> w_;
};

/// Row-major F2 matrix; every row is a BitVec of length cols().
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(size_t rows, size_t cols) : cols_(cols), r_(rows, BitVec(cols)) {}

  static BitMatrix identity(size_t n);
  static BitMatrix zeros(size_t rows, size_t cols) { return BitMatrix(rows, cols); }
  static BitMatrix from_rows(std::vector<BitVec> rows);
  static BitMatrix from_strings(const std::vector<std::string>& rows);

  size_t rows() const { return r_.size(); }
  size_t cols() const { return cols_; }
  BitVec& row(size_t i) { return r_[i]; }
  const BitVec& row(size_t i) const { return r_[i]; }
  bool get(size_t i, size_t j) const { return r_[i].get(j); }
  void set(size_t i, size_t j, bool v) { r_[i].set(j, v); }

  void row_swap(size_t i, size_t j) { std::swap(r_[i], r_[j]); }
  void row_xor(size_t dst, size_t src) { r_[dst] ^= r_[src]; }
  void append_row(BitVec r);

  BitVec col(size_t j) const;
  BitMatrix transposed() const;

  BitMatrix operator*(const BitMatrix& o) const;
  /// Matrix-vector product, computed as the XOR of rows of the transpose
  /// selected by v; implemented row-wise via dot products.
  BitVec mul(const BitVec& v) const;
  friend BitMatrix operator+(BitMatrix a, const BitMatrix& b);

  bool operator==(const BitMatrix& o) const { return cols_ == o.cols_ && r_ == o.r_; }
  bool operator!=(const BitMatrix& o) const { return !(*this == o); }
  bool is_zero() const;

  BitMatrix submatrix(size_t r0, size_t c0, size_t nr, size_t nc) const;
  BitMatrix rows_slice(size_t r0, size_t nr) const { return submatrix(r0, 0, nr, cols_); }
  BitMatrix cols_slice(size_t c0, size_t nc) const { return submatrix(0, c0, rows(), nc); }
  static BitMatrix hstack(const BitMatrix& a, const BitMatrix& b);
  static BitMatrix vstack(const BitMatrix& a, const BitMatrix& b);
  /// Block-diagonal direct sum; zero-dimension blocks pad with zeros.
  static BitMatrix direct_sum(const BitMatrix& a, const BitMatrix& b);

  std::vector<std::string> to_strings() const;

 private:
  size_t cols_ = 0;
  std::vector<BitVec> r_;
};

/// A = B * R with B square invertible and R in reduced row echelon form.
struct RrefFactorization {
  BitMatrix b;
  BitMatrix b_inv;
  BitMatrix r;
  size_t rank = 0;
  std::vector<size_t> pivots;
};

RrefFactorization rref_factor(const BitMatrix& a);

/// Rows form a basis of {v : A v = 0}; row count is cols(A) - rank(A).
BitMatrix kernel_basis(const BitMatrix& a);

/// Appends weight-1 rows on non-pivot columns below A so the result is a
/// square invertible matrix. Throws if the rows of A are linearly dependent.
BitMatrix full_rank_completion(const BitMatrix& a);

BitMatrix invert(const BitMatrix& a);
BitMatrix left_inverse(const BitMatrix& a);
BitMatrix right_inverse(const BitMatrix& a);

/// A R = (0 | F) for full-row-rank A, with F square invertible and R
/// invertible in (cols-rows, rows)-split reduced echelon form.
struct BlockReshape {
  BitMatrix r;
  BitMatrix f;
};

BlockReshape block_reshape(const BitMatrix& a);

bool is_split_echelon(const BitMatrix& m, size_t n_r, size_t n_m, bool reduced);

/// Lexicographically smallest set of linearly independent row indices.
std::vector<size_t> row_rank_profile(const BitMatrix& a);

size_t rank_of(const BitMatrix& a);

/// Some solution x of A x = b, or nullopt when inconsistent.
std::optional<BitVec> solve(const BitMatrix& a, const BitVec& b);

}  // namespace stabforms

#endif  // STABFORMS_F2LINALG_H

#pragma once

// Dense linear algebra over GF(2): word-packed bit vectors and matrices, and a
// Gaussian-elimination solver that returns the lexicographically least
// solution together with a basis of the homogeneous solution space.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace iotahat {

/// Raised for every contract violation in the library (bad input, failed
/// precondition, internal inconsistency).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool v = true) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  BitVector& operator^=(const BitVector& other) {
    if (other.n_ != n_) throw Error("BitVector: size mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

  bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
  }
  bool none() const { return !any(); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  /// Lowest set index, if any.
  std::optional<std::size_t> first() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return std::nullopt;
  }

  template <class F>
  void for_each_set(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t word = words_[w];
      while (word != 0) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(word));
        f(w * 64 + bit);
        word &= word - 1;
      }
    }
  }

  /// Parity of the bitwise AND.
  friend bool dot(const BitVector& a, const BitVector& b) {
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < a.words_.size(); ++w) acc ^= a.words_[w] & b.words_[w];
    return std::popcount(acc) & 1;
  }

  bool operator==(const BitVector&) const = default;

  /// Lexicographic comparison with index 0 most significant.
  friend bool lex_less(const BitVector& a, const BitVector& b) {
    for (std::size_t w = 0; w < a.words_.size(); ++w) {
      const std::uint64_t diff = a.words_[w] ^ b.words_[w];
      if (diff != 0) return ((b.words_[w] >> std::countr_zero(diff)) & 1U) != 0;
    }
    return false;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Row-major bit matrix. Row r holds the coefficients of output coordinate r.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows, BitVector(cols)) {}

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool test(std::size_t r, std::size_t c) const { return data_[r].test(c); }
  void set(std::size_t r, std::size_t c, bool v = true) { data_[r].set(c, v); }
  void flip(std::size_t r, std::size_t c) { data_[r].flip(c); }

  const BitVector& row(std::size_t r) const { return data_[r]; }
  BitVector& row(std::size_t r) { return data_[r]; }

  BitVector column(std::size_t c) const {
    BitVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      if (data_[r].test(c)) v.set(r);
    return v;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const BitVector& r) { return r.none(); });
  }

  BitMatrix transposed() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) data_[r].for_each_set([&](std::size_t c) { t.set(c, r); });
    return t;
  }

  BitMatrix& operator^=(const BitMatrix& other) {
    if (other.rows_ != rows_ || other.cols_ != cols_) throw Error("BitMatrix: shape mismatch");
    for (std::size_t r = 0; r < rows_; ++r) data_[r] ^= other.data_[r];
    return *this;
  }
  friend BitMatrix operator^(BitMatrix a, const BitMatrix& b) { return a ^= b; }

  friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols_ != b.rows_) throw Error("BitMatrix: product shape mismatch");
    BitMatrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      a.data_[r].for_each_set([&](std::size_t k) { out.data_[r] ^= b.data_[k]; });
    return out;
  }

  BitVector apply(const BitVector& v) const {
    BitVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      if (dot(data_[r], v)) out.set(r);
    return out;
  }

  /// Kronecker product; row (i, k) -> i * b.rows + k, column (j, l) -> j * b.cols + l.
  friend BitMatrix kronecker(const BitMatrix& a, const BitMatrix& b) {
    BitMatrix out(a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      a.data_[i].for_each_set([&](std::size_t j) {
        for (std::size_t k = 0; k < b.rows_; ++k)
          b.data_[k].for_each_set([&](std::size_t l) { out.set(i * b.rows_ + k, j * b.cols_ + l); });
      });
    return out;
  }

  std::size_t rank() const {
    std::vector<BitVector> rows = data_;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols_ && rank < rows.size(); ++c) {
      auto it = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(rank), rows.end(),
                             [c](const BitVector& r) { return r.test(c); });
      if (it == rows.end()) continue;
      std::iter_swap(rows.begin() + static_cast<std::ptrdiff_t>(rank), it);
      for (std::size_t r = rank + 1; r < rows.size(); ++r)
        if (rows[r].test(c)) rows[r] ^= rows[rank];
      ++rank;
    }
    return rank;
  }

  /// Inverse of a square matrix, or nullopt when singular.
  std::optional<BitMatrix> inverse() const {
    if (rows_ != cols_) throw Error("BitMatrix: inverse of non-square matrix");
    const std::size_t n = rows_;
    std::vector<BitVector> left = data_;
    std::vector<BitVector> right = identity(n).data_;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (p < n && !left[p].test(c)) ++p;
      if (p == n) return std::nullopt;
      std::swap(left[p], left[c]);
      std::swap(right[p], right[c]);
      for (std::size_t r = 0; r < n; ++r)
        if (r != c && left[r].test(c)) {
          left[r] ^= left[c];
          right[r] ^= right[c];
        }
    }
    BitMatrix inv(n, n);
    inv.data_ = std::move(right);
    return inv;
  }

  bool operator==(const BitMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BitVector> data_;
};

struct F2Solution {
  BitVector assignment;             // lexicographically least solution
  std::vector<BitVector> nullspace;  // basis of the homogeneous solutions
};

/// Affine system  A x = b  over GF(2).
class LinearSystem {
 public:
  explicit LinearSystem(std::size_t unknowns) : unknowns_(unknowns) {}

  std::size_t unknowns() const { return unknowns_; }
  std::size_t equations() const { return rows_.size(); }

  void add_equation(BitVector coefficients, bool rhs) {
    if (coefficients.size() != unknowns_) throw Error("LinearSystem: equation width mismatch");
    if (coefficients.none() && !rhs) return;
    rows_.push_back(std::move(coefficients));
    rhs_.push_back(rhs);
  }

  std::optional<F2Solution> solve() const {
    std::vector<BitVector> rows = rows_;
    std::vector<bool> rhs = rhs_;
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < unknowns_ && rank < rows.size(); ++c) {
      std::size_t p = rank;
      while (p < rows.size() && !rows[p].test(c)) ++p;
      if (p == rows.size()) continue;
      std::swap(rows[p], rows[rank]);
      std::swap(rhs[p], rhs[rank]);
      for (std::size_t r = 0; r < rows.size(); ++r)
        if (r != rank && rows[r].test(c)) {
          rows[r] ^= rows[rank];
          rhs[r] = rhs[r] != rhs[rank];
        }
      pivot_col.push_back(c);
      ++rank;
    }
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (rhs[r]) return std::nullopt;

    std::vector<bool> is_pivot(unknowns_, false);
    for (auto c : pivot_col) is_pivot[c] = true;

    F2Solution sol{BitVector(unknowns_), {}};
    for (std::size_t r = 0; r < rank; ++r)
      if (rhs[r]) sol.assignment.set(pivot_col[r]);
    for (std::size_t f = 0; f < unknowns_; ++f) {
      if (is_pivot[f]) continue;
      BitVector v(unknowns_);
      v.set(f);
      for (std::size_t r = 0; r < rank; ++r)
        if (rows[r].test(f)) v.set(pivot_col[r]);
      sol.nullspace.push_back(std::move(v));
    }

    // Reduce the nullspace basis to distinct, fully cleared leading indices;
    // then greedily clear leading bits of the particular solution.
    auto& basis = sol.nullspace;
    std::vector<std::size_t> lead(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j)
        if (basis[i].test(lead[j])) basis[i] ^= basis[j];
      lead[i] = *basis[i].first();
      for (std::size_t j = 0; j < i; ++j)
        if (basis[j].test(lead[i])) basis[j] ^= basis[i];
    }
    std::vector<std::size_t> order(basis.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lead[a] < lead[b]; });
    for (auto i : order)
      if (sol.assignment.test(lead[i])) sol.assignment ^= basis[i];
    return sol;
  }

 private:
  std::size_t unknowns_;
  std::vector<BitVector> rows_;
  std::vector<bool> rhs_;
};

}  // namespace iotahat

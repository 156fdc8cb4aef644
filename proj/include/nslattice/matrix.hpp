#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nslattice/integer.hpp"
#include "nslattice/lattice.hpp"

namespace nslattice {

/// Square matrix with exact integer entries, stored row-major. Acts on
/// NSClass column vectors: (M u)_i = sum_j M(i, j) u_j.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  explicit IntegerMatrix(std::size_t n) : n_(n), a_(n * n, Integer(0)) {}

  static IntegerMatrix identity(std::size_t n) {
    IntegerMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntegerMatrix from_rows(const std::vector<std::vector<Integer>>& rows) {
    IntegerMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw ValidationError("matrix must be square");
      for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntegerMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<std::vector<Integer>> r;
    for (const auto& row : rows) {
      r.emplace_back();
      for (long x : row) r.back().emplace_back(x);
    }
    return from_rows(r);
  }

  /// Matrix whose j-th column is cols[j].
  static IntegerMatrix from_columns(const std::vector<NSClass>& cols) {
    IntegerMatrix m(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != cols.size()) throw ValidationError("matrix must be square");
      for (std::size_t i = 0; i < cols.size(); ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t size() const { return n_; }
  Integer& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  const std::vector<Integer>& flat() const { return a_; }

  NSClass column(std::size_t j) const {
    NSClass c = NSClass::zero(static_cast<int>(n_));
    for (std::size_t i = 0; i < n_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  std::vector<std::vector<Integer>> rows() const {
    std::vector<std::vector<Integer>> r(n_);
    for (std::size_t i = 0; i < n_; ++i) r[i].assign(a_.begin() + i * n_, a_.begin() + (i + 1) * n_);
    return r;
  }

  IntegerMatrix operator*(const IntegerMatrix& o) const {
    if (o.n_ != n_) throw ValidationError("matrix size mismatch");
    IntegerMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < n_; ++k) {
        const Integer& aik = (*this)(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < n_; ++j) r(i, j) += aik * o(k, j);
      }
    return r;
  }

  NSClass operator*(const NSClass& u) const {
    if (u.size() != n_) throw ValidationError("matrix/class size mismatch");
    NSClass r = NSClass::zero(static_cast<int>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r[i] += (*this)(i, j) * u[j];
    return r;
  }

  IntegerMatrix operator+(const IntegerMatrix& o) const {
    if (o.n_ != n_) throw ValidationError("matrix size mismatch");
    IntegerMatrix r = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
  }

  IntegerMatrix transpose() const {
    IntegerMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  Integer trace() const {
    Integer t = 0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  IntegerMatrix pow(unsigned long e) const {
    IntegerMatrix result = identity(n_);
    IntegerMatrix base = *this;
    while (e > 0) {
      if (e & 1UL) result = result * base;
      e >>= 1;
      if (e > 0) base = base * base;
    }
    return result;
  }

  /// Fraction-free (Bareiss) determinant.
  Integer determinant() const {
    if (n_ == 0) return 1;
    std::vector<Integer> m = a_;
    auto at = [&](std::size_t i, std::size_t j) -> Integer& { return m[i * n_ + j]; };
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n_; ++k) {
      if (at(k, k) == 0) {
        std::size_t p = k + 1;
        while (p < n_ && at(p, k) == 0) ++p;
        if (p == n_) return 0;
        for (std::size_t j = 0; j < n_; ++j) std::swap(at(k, j), at(p, j));
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n_; ++i) {
        for (std::size_t j = k + 1; j < n_; ++j) {
          at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j));
          mpz_divexact(at(i, j).get_mpz_t(), at(i, j).get_mpz_t(), prev.get_mpz_t());
        }
      }
      prev = at(k, k);
    }
    return sign * at(n_ - 1, n_ - 1);
  }

  bool is_unimodular() const {
    Integer d = determinant();
    return d == 1 || d == -1;
  }

  /// Exact inverse over the integers; empty when det is not +-1.
  std::optional<IntegerMatrix> inverse() const {
    if (!is_unimodular()) return std::nullopt;
    std::vector<Rational> m(n_ * 2 * n_);
    const std::size_t w = 2 * n_;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) m[i * w + j] = Rational((*this)(i, j));
      m[i * w + n_ + i] = 1;
    }
    for (std::size_t c = 0; c < n_; ++c) {
      std::size_t p = c;
      while (m[p * w + c] == 0) ++p;
      if (p != c)
        for (std::size_t j = 0; j < w; ++j) std::swap(m[c * w + j], m[p * w + j]);
      Rational pivot = m[c * w + c];
      for (std::size_t j = 0; j < w; ++j) m[c * w + j] /= pivot;
      for (std::size_t i = 0; i < n_; ++i) {
        if (i == c || m[i * w + c] == 0) continue;
        Rational f = m[i * w + c];
        for (std::size_t j = 0; j < w; ++j) m[i * w + j] -= f * m[c * w + j];
      }
    }
    IntegerMatrix inv(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        const Rational& q = m[i * w + n_ + j];
        if (q.get_den() != 1) return std::nullopt;
        inv(i, j) = q.get_num();
      }
    return inv;
  }

  bool is_identity() const { return *this == identity(n_); }

  /// Largest absolute entry.
  Integer max_abs_entry() const {
    Integer best = 0;
    for (const auto& x : a_) best = std::max(best, Integer(abs(x)));
    return best;
  }

  std::string to_string() const {
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < n_; ++i) {
      out << (i ? ",[" : "[");
      for (std::size_t j = 0; j < n_; ++j) out << (j ? "," : "") << (*this)(i, j).get_str();
      out << "]";
    }
    out << "]";
    return out.str();
  }

  friend bool operator==(const IntegerMatrix& x, const IntegerMatrix& y) {
    return x.n_ == y.n_ && x.a_ == y.a_;
  }
  /// Lexicographic on flattened row-major entries.
  friend bool operator<(const IntegerMatrix& x, const IntegerMatrix& y) {
    if (x.n_ != y.n_) return x.n_ < y.n_;
    return std::lexicographical_compare(x.a_.begin(), x.a_.end(), y.a_.begin(), y.a_.end());
  }

 private:
  std::size_t n_ = 0;
  std::vector<Integer> a_;
};

/// Permutation matrix sending e_j to e_{perm[j]}.
inline IntegerMatrix permutation_matrix(const std::vector<int>& perm) {
  IntegerMatrix m(perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) m(static_cast<std::size_t>(perm[j]), j) = 1;
  return m;
}

}  // namespace nslattice

#pragma once

// Degree and indeterminacy calculus for monomial birational self-maps of P^k.
//
// A map is stored as k+1 exponent vectors: component i is the monomial
// x_0^{E[i][0]} ... x_k^{E[i][k]}. Dehomogenizing at x_0 gives the torus
// action y -> y^T with T[i-1][j-1] = E[i][j] - E[0][j] (i, j >= 1); the map
// is birational exactly when det T = +-1.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "nslattice/integer.hpp"
#include "nslattice/matrix.hpp"

namespace nslattice {

using ExponentRow = std::vector<std::int64_t>;

inline constexpr std::int64_t kMaxMapDegree = std::int64_t{1} << 40;

class MonomialMap {
 public:
  /// Validates shape and equal degrees, then clears the common monomial factor.
  static MonomialMap normalize(int k, std::vector<ExponentRow> comps) {
    std::int64_t cleared = 0;
    return normalize(k, std::move(comps), cleared);
  }

  /// As above; `cleared` receives the degree of the removed common factor.
  static MonomialMap normalize(int k, std::vector<ExponentRow> comps, std::int64_t& cleared) {
    if (k < 1) throw ValidationError("monomial map: k must be >= 1");
    if (static_cast<int>(comps.size()) != k + 1)
      throw ValidationError("monomial map: expected k+1 components");
    std::int64_t deg = -1;
    for (const auto& c : comps) {
      if (static_cast<int>(c.size()) != k + 1)
        throw ValidationError("monomial map: each component needs k+1 exponents");
      std::int64_t d = 0;
      for (auto e : c) {
        if (e < 0) throw ValidationError("monomial map: negative exponent");
        d = checked_add(d, e);
      }
      if (deg < 0) deg = d;
      if (d != deg) throw ValidationError("monomial map: components have unequal total degree");
    }
    cleared = 0;
    for (int j = 0; j <= k; ++j) {
      std::int64_t lo = comps[0][j];
      for (const auto& c : comps) lo = std::min(lo, c[j]);
      for (auto& c : comps) c[j] -= lo;
      cleared += lo;
    }
    if (deg - cleared == 0) throw ValidationError("monomial map: constant map after clearing common factor");
    MonomialMap f;
    f.k_ = k;
    f.comps_ = std::move(comps);
    f.degree_ = deg - cleared;
    return f;
  }

  static MonomialMap identity(int k) {
    std::vector<ExponentRow> c(k + 1, ExponentRow(k + 1, 0));
    for (int i = 0; i <= k; ++i) c[i][i] = 1;
    return normalize(k, std::move(c));
  }

  /// Standard Cremona involution: component i is the product of all x_j, j != i.
  static MonomialMap standard_cremona(int k) {
    std::vector<ExponentRow> c(k + 1, ExponentRow(k + 1, 1));
    for (int i = 0; i <= k; ++i) c[i][i] = 0;
    return normalize(k, std::move(c));
  }

  /// [x_0 : ... : x_k] -> [x_{perm[0]} : ... : x_{perm[k]}].
  static MonomialMap coordinate_permutation(const std::vector<int>& perm) {
    int k = static_cast<int>(perm.size()) - 1;
    std::vector<ExponentRow> c(k + 1, ExponentRow(k + 1, 0));
    for (int i = 0; i <= k; ++i) c[i][perm[i]] = 1;
    return normalize(k, std::move(c));
  }

  /// Rehomogenizes the torus map y -> y^T (T is k x k, rows are components
  /// 1..k): each Laurent component is multiplied by the smallest monomial
  /// making every exponent nonnegative.
  static MonomialMap from_torus_matrix(const std::vector<std::vector<std::int64_t>>& t) {
    const int k = static_cast<int>(t.size());
    std::vector<ExponentRow> laurent(k + 1, ExponentRow(k + 1, 0));
    for (int i = 1; i <= k; ++i) {
      if (static_cast<int>(t[i - 1].size()) != k) throw ValidationError("torus matrix must be square");
      std::int64_t s = 0;
      for (int j = 1; j <= k; ++j) {
        laurent[i][j] = t[i - 1][j - 1];
        s = checked_add(s, t[i - 1][j - 1]);
      }
      laurent[i][0] = -s;
    }
    for (int j = 0; j <= k; ++j) {
      std::int64_t lo = 0;
      for (const auto& c : laurent) lo = std::min(lo, c[j]);
      for (auto& c : laurent) c[j] = checked_add(c[j], -lo);
    }
    return normalize(k, std::move(laurent));
  }

  int k() const { return k_; }
  const std::vector<ExponentRow>& components() const { return comps_; }
  /// Common total degree d; f^*H = d H.
  std::int64_t degree() const { return degree_; }

  /// Dehomogenized exponent matrix at x_0 (k x k).
  IntegerMatrix torus_matrix() const {
    IntegerMatrix t(static_cast<std::size_t>(k_));
    for (int i = 1; i <= k_; ++i)
      for (int j = 1; j <= k_; ++j)
        t(i - 1, j - 1) = static_cast<long>(comps_[i][j] - comps_[0][j]);
    return t;
  }

  bool is_birational() const { return torus_matrix().is_unimodular(); }

  bool is_identity() const { return *this == identity(k_); }

  std::string to_string() const {
    std::ostringstream out;
    out << "[";
    for (int i = 0; i <= k_; ++i) {
      if (i) out << " : ";
      bool any = false;
      for (int j = 0; j <= k_; ++j) {
        if (comps_[i][j] == 0) continue;
        if (any) out << "*";
        out << "x" << j;
        if (comps_[i][j] > 1) out << "^" << comps_[i][j];
        any = true;
      }
      if (!any) out << "1";
    }
    out << "]";
    return out.str();
  }

  friend bool operator==(const MonomialMap&, const MonomialMap&) = default;

 private:
  MonomialMap() = default;
  int k_ = 0;
  std::vector<ExponentRow> comps_;
  std::int64_t degree_ = 0;
};

struct Composition {
  MonomialMap map;
  std::int64_t raw_degree = 0;      // deg f * deg g
  std::int64_t cleared_degree = 0;  // degree of the common factor removed
};

/// f o g with the common-factor bookkeeping: raw = normalized + cleared.
inline Composition compose_with_bookkeeping(const MonomialMap& f, const MonomialMap& g) {
  if (f.k() != g.k()) throw ValidationError("compose: maps act on different projective spaces");
  const int k = f.k();
  std::vector<ExponentRow> c(k + 1, ExponentRow(k + 1, 0));
  for (int i = 0; i <= k; ++i)
    for (int j = 0; j <= k; ++j) {
      std::int64_t e = f.components()[i][j];
      if (e == 0) continue;
      for (int s = 0; s <= k; ++s) c[i][s] = checked_add(c[i][s], checked_mul(e, g.components()[j][s]));
    }
  std::int64_t raw = checked_mul(f.degree(), g.degree());
  if (raw > kMaxMapDegree) throw BudgetExceeded("compose: degree exceeds exponent growth guard");
  std::int64_t cleared = 0;
  MonomialMap h = MonomialMap::normalize(k, std::move(c), cleared);
  return Composition{std::move(h), raw, cleared};
}

/// f o g: substitute g's components into f's monomials, then normalize.
inline MonomialMap compose(const MonomialMap& f, const MonomialMap& g) {
  return compose_with_bookkeeping(f, g).map;
}

inline std::int64_t degree(const MonomialMap& f) { return f.degree(); }

/// Inverse through the integer inverse of the torus matrix, verified by composition.
inline MonomialMap inverse(const MonomialMap& f) {
  auto tinv = f.torus_matrix().inverse();
  if (!tinv) throw ValidationError("inverse: torus matrix is not unimodular, map is not birational");
  const int k = f.k();
  std::vector<std::vector<std::int64_t>> t(k, std::vector<std::int64_t>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const Integer& x = (*tinv)(i, j);
      if (!fits_int64(x)) throw BudgetExceeded("inverse: exponent overflow");
      t[i][j] = x.get_si();
    }
  MonomialMap g = MonomialMap::from_torus_matrix(t);
  if (!compose(f, g).is_identity() || !compose(g, f).is_identity())
    throw std::logic_error("inverse: composition check failed for " + f.to_string());
  return g;
}

/// dim Ind(f), -1 when f is a morphism. A point with zero set S is
/// indeterminate iff every component has a positive exponent on S; that
/// stratum has dimension k - |S|.
inline int indeterminacy_dimension(const MonomialMap& f) {
  const int k = f.k();
  const int n = k + 1;
  const auto& comps = f.components();
  std::vector<std::uint64_t> support(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (comps[i][j] > 0) support[i] |= (std::uint64_t{1} << j);
  // Smallest S wins; scanning by size stops at the first hit.
  for (int size = 1; size <= k; ++size) {
    std::uint64_t s = (std::uint64_t{1} << size) - 1;
    const std::uint64_t limit = std::uint64_t{1} << n;
    while (s < limit) {
      bool kills_all = std::all_of(support.begin(), support.end(), [&](std::uint64_t m) { return (m & s) != 0; });
      if (kills_all) {
        int dim = k - size;
        if (dim > k - 2) throw std::logic_error("indeterminacy locus of codimension < 2");
        return dim;
      }
      // next subset with the same popcount
      std::uint64_t c = s & (~s + 1);
      std::uint64_t r = s + c;
      s = (((r ^ s) >> 2) / c) | r;
    }
  }
  return -1;
}

struct TheoremCheck {
  int k = 0;
  std::int64_t degree = 0;
  std::int64_t degree_inverse = 0;
  int ind_dim = -1;
  int ind_dim_inverse = -1;
  bool hypothesis_holds = false;
  bool consistent = true;  // hypothesis holds => both degrees are 1

  std::string verdict() const { return hypothesis_holds ? "hypothesis holds" : "hypothesis fails"; }
  std::string conclusion() const {
    if (!hypothesis_holds) return "theorem silent";
    return consistent ? "automorphism: deg(f) = deg(f^-1) = 1" : "CONTRADICTION: hypothesis holds with degree > 1";
  }
};

/// dim Ind(f) + dim Ind(f^-1) < k - 2, an empty locus satisfying every bound.
inline TheoremCheck theorem_1_1_check(const MonomialMap& f) {
  TheoremCheck r;
  const MonomialMap g = inverse(f);
  r.k = f.k();
  r.degree = f.degree();
  r.degree_inverse = g.degree();
  r.ind_dim = indeterminacy_dimension(f);
  r.ind_dim_inverse = indeterminacy_dimension(g);
  r.hypothesis_holds = r.ind_dim < 0 || r.ind_dim_inverse < 0 || (r.ind_dim + r.ind_dim_inverse < r.k - 2);
  if (r.hypothesis_holds) r.consistent = r.degree == 1 && r.degree_inverse == 1;
  return r;
}

/// deg(f)^l == deg(f^-1)^(k-l).
inline bool degree_identity_check(const MonomialMap& f, int l) {
  if (l < 1 || l > f.k() - 1) throw ValidationError("degree_identity_check: l must lie in [1, k-1]");
  Integer lhs = ipow(Integer(static_cast<long>(f.degree())), static_cast<unsigned long>(l));
  Integer rhs = ipow(Integer(static_cast<long>(inverse(f).degree())), static_cast<unsigned long>(f.k() - l));
  return lhs == rhs;
}

struct DegreeSequence {
  std::vector<std::int64_t> degrees;  // deg f, deg f^2, ..., deg f^n
  double growth_estimate = 0.0;       // deg(f^n)^(1/n)
  int n = 0;
};

inline DegreeSequence degree_sequence(const MonomialMap& f, int n) {
  if (n < 1) throw ValidationError("degree_sequence: n must be >= 1");
  DegreeSequence seq;
  seq.n = n;
  MonomialMap power = f;
  seq.degrees.push_back(power.degree());
  for (int i = 2; i <= n; ++i) {
    power = compose(f, power);
    seq.degrees.push_back(power.degree());
  }
  seq.growth_estimate = std::pow(static_cast<double>(seq.degrees.back()), 1.0 / n);
  return seq;
}

}  // namespace nslattice

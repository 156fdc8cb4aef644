#pragma once

// Neron-Severi lattice of a Picard-rank-one variety V blown up at l distinct
// points, with its top intersection product and the invariant forms
//   Q_d(u_1, ..., u_d) = u_1 ... u_d . K_X^{k-d}.
// Basis order is fixed: (e_0, e_1, ..., e_l), e_0 the pullback of the ample
// generator of NS(V), e_i the class of the i-th exceptional divisor.

#include <cmath>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "nslattice/integer.hpp"

namespace nslattice {

struct BlowupLattice {
  int k = 2;        // dimension of V
  Integer a = 1;    // e_0^k
  Integer kappa = -3;  // K_V = kappa * e_0
  int l = 0;        // number of points

  BlowupLattice() = default;
  BlowupLattice(int k_, Integer a_, Integer kappa_, int l_)
      : k(k_), a(std::move(a_)), kappa(std::move(kappa_)), l(l_) {
    validate();
  }

  /// Projective space P^k blown up at l points (a = 1, kappa = -(k+1)).
  static BlowupLattice projective(int k, int l) {
    return BlowupLattice(k, 1, -(k + 1), l);
  }

  int rank() const { return l + 1; }

  void validate() const {
    if (k < 2) throw ValidationError("lattice: k must be >= 2");
    if (a == 0) throw ValidationError("lattice: a must be nonzero");
    if (l < 0) throw ValidationError("lattice: l must be >= 0");
  }

  /// Self-intersection e_i^k of a basis vector: a for i = 0, (-1)^{k+1} otherwise.
  Integer top_power(int i) const { return i == 0 ? a : Integer(sign_power(k + 1)); }

  friend bool operator==(const BlowupLattice&, const BlowupLattice&) = default;
};

/// A class in NS(X), coordinates (X_0, ..., X_l) in the fixed basis.
struct NSClass {
  std::vector<Integer> coords;

  NSClass() = default;
  explicit NSClass(std::vector<Integer> c) : coords(std::move(c)) {}
  NSClass(std::initializer_list<long> c) {
    coords.reserve(c.size());
    for (long x : c) coords.emplace_back(x);
  }

  static NSClass zero(int rank) { return NSClass(std::vector<Integer>(rank, Integer(0))); }
  static NSClass basis(int rank, int i) {
    auto z = zero(rank);
    z.coords.at(i) = 1;
    return z;
  }

  std::size_t size() const { return coords.size(); }
  const Integer& operator[](std::size_t i) const { return coords[i]; }
  Integer& operator[](std::size_t i) { return coords[i]; }

  NSClass operator+(const NSClass& o) const {
    if (o.size() != size()) throw ValidationError("class length mismatch");
    NSClass r = *this;
    for (std::size_t i = 0; i < size(); ++i) r.coords[i] += o.coords[i];
    return r;
  }

  friend bool operator==(const NSClass&, const NSClass&) = default;
};

inline void require_class_of(const BlowupLattice& lat, const NSClass& u) {
  if (static_cast<int>(u.size()) != lat.rank()) {
    std::ostringstream msg;
    msg << "class length " << u.size() << " does not match lattice rank " << lat.rank();
    throw ValidationError(msg.str());
  }
}

/// Intersection number of the monomial e_0^{n_0} e_1^{n_1} ... e_l^{n_l},
/// sum n_i = k. Distinct basis vectors meet nowhere, so every mixed monomial
/// vanishes.
inline Integer intersect_monomial(const BlowupLattice& lat, std::span<const int> exponents) {
  if (static_cast<int>(exponents.size()) != lat.rank())
    throw ValidationError("exponent vector length does not match lattice rank");
  long total = 0;
  int support = -1;
  int nonzero = 0;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 0) throw ValidationError("negative exponent");
    total += exponents[i];
    if (exponents[i] > 0) {
      support = static_cast<int>(i);
      ++nonzero;
    }
  }
  if (total != lat.k) {
    std::ostringstream msg;
    msg << "exponents sum to " << total << ", expected dimension " << lat.k;
    throw ValidationError(msg.str());
  }
  if (nonzero != 1) return 0;
  return lat.top_power(support);
}

inline Integer intersect_monomial(const BlowupLattice& lat, std::initializer_list<int> exps) {
  std::vector<int> v(exps);
  return intersect_monomial(lat, std::span<const int>(v));
}

/// K_X = pi^* K_V + (k-1) sum E_i.
inline NSClass canonical_class(const BlowupLattice& lat) {
  NSClass kx = NSClass::zero(lat.rank());
  kx[0] = lat.kappa;
  for (int i = 1; i <= lat.l; ++i) kx[i] = lat.k - 1;
  return kx;
}

namespace detail {

/// Sparse expansion of a product of linear forms over the basis. Keys are
/// exponent vectors, values the accumulated coefficient. A monomial whose
/// support already has two distinct basis vectors intersects to zero for
/// every completion, so it is dropped on the spot.
class MonomialExpansion {
 public:
  explicit MonomialExpansion(int rank) : rank_(rank) {
    terms_.emplace(std::vector<int>(rank, 0), Integer(1));
  }

  void multiply(const NSClass& factor) {
    std::map<std::vector<int>, Integer> next;
    for (const auto& [exps, coeff] : terms_) {
      for (int s = 0; s < rank_; ++s) {
        if (factor[s] == 0) continue;
        if (!extends_pure(exps, s)) continue;
        auto e = exps;
        ++e[s];
        auto& slot = next[e];
        slot += coeff * factor[s];
      }
    }
    std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
    terms_ = std::move(next);
  }

  const std::map<std::vector<int>, Integer>& terms() const { return terms_; }

 private:
  static bool extends_pure(const std::vector<int>& exps, int s) {
    for (std::size_t i = 0; i < exps.size(); ++i)
      if (static_cast<int>(i) != s && exps[i] > 0) return false;
    return true;
  }

  int rank_;
  std::map<std::vector<int>, Integer> terms_;
};

}  // namespace detail

/// Q_d(u_1, ..., u_d) = u_1 ... u_d . K_X^{k-d}, by multilinear expansion of
/// the d classes and k-d copies of K_X followed by intersect_monomial.
inline Integer q_d(const BlowupLattice& lat, int d, std::span<const NSClass> classes) {
  if (d < 1 || d > lat.k) {
    std::ostringstream msg;
    msg << "form degree d=" << d << " outside [1, " << lat.k << "]";
    throw ValidationError(msg.str());
  }
  if (static_cast<int>(classes.size()) != d)
    throw ValidationError("q_d expects exactly d classes");
  for (const auto& u : classes) require_class_of(lat, u);

  detail::MonomialExpansion expansion(lat.rank());
  for (const auto& u : classes) expansion.multiply(u);
  const NSClass kx = canonical_class(lat);
  for (int i = d; i < lat.k; ++i) expansion.multiply(kx);

  Integer total = 0;
  for (const auto& [exps, coeff] : expansion.terms())
    total += coeff * intersect_monomial(lat, std::span<const int>(exps));
  return total;
}

inline Integer q_d(const BlowupLattice& lat, int d, std::initializer_list<NSClass> classes) {
  std::vector<NSClass> v(classes);
  return q_d(lat, d, std::span<const NSClass>(v));
}

/// Q_d(u, ..., u).
inline Integer q_d_diagonal(const BlowupLattice& lat, int d, const NSClass& u) {
  std::vector<NSClass> v(static_cast<std::size_t>(d), u);
  return q_d(lat, d, std::span<const NSClass>(v));
}

struct CorollaryBound {
  int k = 0;
  int r = 0;
  bool holds = false;            // k > 2r + 2
  double threshold = 0.0;        // k/2 - 1
  int min_evading_dimension = 0; // ceil(k/2 - 1)

  /// Human-facing summary line.
  std::string text() const {
    std::ostringstream out;
    out << "k>2r+2 " << (holds ? "holds" : "fails") << ": "
        << (holds ? "Aut has finitely many components" : "no finiteness conclusion")
        << "; centers must reach dimension \u2265 " << threshold << "\u2192"
        << min_evading_dimension << " to evade";
    return out.str();
  }
};

/// Blow-ups of centers of dimension <= r over a k-dimensional Picard-rank-one
/// base keep Aut finite-component when k > 2r+2.
inline CorollaryBound corollary_bound_check(int k, int r) {
  if (k < 1) throw ValidationError("corollary: k must be >= 1");
  if (r < 0) throw ValidationError("corollary: r must be >= 0");
  CorollaryBound b;
  b.k = k;
  b.r = r;
  b.holds = k > 2 * r + 2;
  b.threshold = k / 2.0 - 1.0;
  b.min_evading_dimension = (k - 1) / 2;  // ceil((k-2)/2) for k >= 1
  return b;
}

}  // namespace nslattice

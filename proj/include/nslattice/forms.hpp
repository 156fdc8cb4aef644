#pragma once

// Homogeneous integer forms on NS(X) (x) C and the hypersurfaces W_d(X) they cut out.

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nslattice/integer.hpp"
#include "nslattice/lattice.hpp"

namespace nslattice {

/// Sparse homogeneous form. Terms are kept sorted by exponent vector with no
/// zero coefficients and no repeated exponent vectors.
class SymmetricForm {
 public:
  using Exponents = std::vector<int>;
  struct Term {
    Exponents exps;
    Integer coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  SymmetricForm(int nvars, int degree) : nvars_(nvars), degree_(degree) {
    if (nvars < 1) throw ValidationError("form: nvars must be >= 1");
    if (degree < 0) throw ValidationError("form: degree must be >= 0");
  }

  /// Builds a form from arbitrary (exponents, coefficient) pairs, merging
  /// repeats and dropping zeros.
  static SymmetricForm from_terms(int nvars, int degree, const std::vector<Term>& raw) {
    SymmetricForm f(nvars, degree);
    for (const auto& t : raw) f.add(t.exps, t.coeff);
    return f;
  }

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const Exponents& exps, const Integer& coeff) {
    check_exponents(exps);
    if (coeff == 0) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), exps,
                               [](const Term& t, const Exponents& e) { return t.exps < e; });
    if (it != terms_.end() && it->exps == exps) {
      it->coeff += coeff;
      if (it->coeff == 0) terms_.erase(it);
    } else {
      terms_.insert(it, Term{exps, coeff});
    }
  }

  Integer coefficient(const Exponents& exps) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), exps,
                               [](const Term& t, const Exponents& e) { return t.exps < e; });
    return (it != terms_.end() && it->exps == exps) ? it->coeff : Integer(0);
  }

  Integer evaluate(const std::vector<Integer>& point) const {
    if (static_cast<int>(point.size()) != nvars_)
      throw ValidationError("form: point dimension mismatch");
    Integer total = 0;
    for (const auto& t : terms_) {
      Integer m = t.coeff;
      for (int i = 0; i < nvars_; ++i)
        if (t.exps[i] > 0) m *= ipow(point[i], static_cast<unsigned long>(t.exps[i]));
      total += m;
    }
    return total;
  }

  /// d/dX_var, computed on the term list.
  SymmetricForm partial(int var) const {
    if (var < 0 || var >= nvars_) throw ValidationError("form: variable index out of range");
    SymmetricForm g(nvars_, std::max(0, degree_ - 1));
    for (const auto& t : terms_) {
      if (t.exps[var] == 0) continue;
      auto e = t.exps;
      --e[var];
      g.add(e, t.coeff * t.exps[var]);
    }
    return g;
  }

  /// Every term is c_i X_i^d.
  bool is_diagonal() const {
    return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) {
      return std::count_if(t.exps.begin(), t.exps.end(), [](int e) { return e > 0; }) <= 1 ||
             degree_ == 0;
    });
  }

  /// Human-readable rendering, e.g. "X0^3+X1^3-4*X0*X1^2".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    // Highest monomial first reads naturally (X0^3 before X1^3).
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& t = *it;
      Integer c = t.coeff;
      bool negative = c < 0;
      if (negative) c = -c;
      if (negative)
        out << "-";
      else if (!first)
        out << "+";
      first = false;
      bool constant = std::all_of(t.exps.begin(), t.exps.end(), [](int e) { return e == 0; });
      bool wrote = false;
      if (c != 1 || constant) {
        out << c.get_str();
        wrote = true;
      }
      for (int i = 0; i < nvars_; ++i) {
        if (t.exps[i] == 0) continue;
        if (wrote) out << "*";
        out << "X" << i;
        if (t.exps[i] > 1) out << "^" << t.exps[i];
        wrote = true;
      }
    }
    return out.str();
  }

  friend bool operator==(const SymmetricForm&, const SymmetricForm&) = default;

 private:
  void check_exponents(const Exponents& exps) const {
    if (static_cast<int>(exps.size()) != nvars_)
      throw ValidationError("form: exponent vector length must equal nvars");
    int total = 0;
    for (int e : exps) {
      if (e < 0) throw ValidationError("form: negative exponent");
      total += e;
    }
    if (total != degree_) throw ValidationError("form: exponent vector does not sum to degree");
  }

  int nvars_;
  int degree_;
  std::vector<Term> terms_;
};

/// The defining form of W_d(X): u -> Q_d(u, ..., u) expanded in X_0..X_l.
/// The coefficient of X^alpha is multinomial(alpha) * Q_d on the basis tuple
/// listing e_i alpha_i times. Multisets carrying two distinct indices pair to
/// zero in this lattice and are skipped.
inline SymmetricForm w_d_polynomial(const BlowupLattice& lat, int d) {
  if (d < 1 || d > lat.k) {
    std::ostringstream msg;
    msg << "form degree d=" << d << " outside [1, " << lat.k << "]";
    throw ValidationError(msg.str());
  }
  const int n = lat.rank();
  SymmetricForm f(n, d);
  for (int i = 0; i < n; ++i) {
    std::vector<NSClass> tuple(static_cast<std::size_t>(d), NSClass::basis(n, i));
    std::vector<int> exps(n, 0);
    exps[i] = d;
    f.add(exps, multinomial(exps) * q_d(lat, d, std::span<const NSClass>(tuple)));
  }
  return f;
}

/// Smoothness of a diagonal hypersurface sum c_i X_i^d = 0 in P^{n-1}.
/// For d >= 2 the gradient (d c_i X_i^{d-1}) has a projective zero exactly when
/// some c_i = 0, realised at that coordinate point. A degree-1 form is smooth
/// as soon as it is nonzero.
inline bool is_smooth_diagonal(const SymmetricForm& f) {
  if (f.degree() < 1) throw ValidationError("is_smooth_diagonal: degree must be >= 1");
  if (!f.is_diagonal())
    throw ValidationError("is_smooth_diagonal: form is not diagonal; use singular_point_search");
  if (f.is_zero()) return false;
  if (f.degree() == 1) return true;
  return static_cast<int>(f.terms().size()) == f.nvars();
}

struct SingularSearchResult {
  std::optional<std::vector<Integer>> witness;
  long height_bound = 0;
  long points_examined = 0;

  /// Absence of a witness says nothing about smoothness beyond the bound.
  std::string verdict() const {
    if (witness) return "singular point found";
    std::ostringstream out;
    out << "no witness up to height " << height_bound << " (not a smoothness proof)";
    return out.str();
  }
};

/// Searches primitive integer points [x_0 : ... : x_{n-1}] with |x_i| <= bound,
/// first nonzero coordinate positive, for a common zero of f and its partials.
inline SingularSearchResult singular_point_search(const SymmetricForm& f, long height_bound) {
  if (height_bound < 1) throw ValidationError("singular_point_search: height_bound must be >= 1");
  const int n = f.nvars();
  std::vector<SymmetricForm> grad;
  grad.reserve(n);
  for (int i = 0; i < n; ++i) grad.push_back(f.partial(i));

  SingularSearchResult result;
  result.height_bound = height_bound;
  std::vector<long> x(n, -height_bound);
  std::vector<Integer> point(n);
  while (true) {
    int lead = 0;
    while (lead < n && x[lead] == 0) ++lead;
    bool canonical = lead < n && x[lead] > 0;
    if (canonical) {
      Integer g = 0;
      for (int i = 0; i < n; ++i) {
        point[i] = x[i];
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), point[i].get_mpz_t());
      }
      if (g == 1) {
        ++result.points_examined;
        bool singular = f.evaluate(point) == 0 &&
                        std::all_of(grad.begin(), grad.end(),
                                    [&](const SymmetricForm& g2) { return g2.evaluate(point) == 0; });
        if (singular) {
          result.witness = point;
          return result;
        }
      }
    }
    int i = n - 1;
    while (i >= 0 && x[i] == height_bound) {
      x[i] = -height_bound;
      --i;
    }
    if (i < 0) break;
    ++x[i];
  }
  return result;
}

}  // namespace nslattice

#pragma once

// Spectral side of lattice actions: characteristic polynomials, finite-order
// certificates and certified spectral radii (log of which bounds entropy).

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nslattice/integer.hpp"
#include "nslattice/lattice.hpp"
#include "nslattice/matrix.hpp"

namespace nslattice {

/// Dense univariate polynomial, coefficients lowest degree first, no trailing zeros.
template <typename Coeff>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Coeff> c) : c_(std::move(c)) { trim(); }
  Poly(std::initializer_list<long> c) {
    for (long x : c) c_.emplace_back(x);
    trim();
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Coeff>& coeffs() const { return c_; }
  Coeff coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Coeff(0); }
  const Coeff& leading() const { return c_.back(); }

  template <typename X>
  X evaluate(const X& x) const {
    X r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + X(*it);
    return r;
  }

  Poly derivative() const {
    std::vector<Coeff> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
    return Poly(std::move(d));
  }

  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Coeff> r(c_.size() + o.c_.size() - 1, Coeff(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(r));
  }

  Poly operator-(const Poly& o) const {
    std::vector<Coeff> r(std::max(c_.size(), o.c_.size()), Coeff(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return Poly(std::move(r));
  }

  Poly operator-() const {
    auto r = c_;
    for (auto& x : r) x = -x;
    return Poly(std::move(r));
  }

  std::string to_string(const char* var = "t") const {
    if (c_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      Coeff c = c_[i];
      if (c == 0) continue;
      bool neg = c < 0;
      if (neg) c = -c;
      out << (neg ? "-" : (first ? "" : "+"));
      if (c != 1 || i == 0) out << c;
      if (i > 0) out << (c != 1 ? "*" : "") << var << (i > 1 ? "^" + std::to_string(i) : "");
      first = false;
    }
    return out.str();
  }

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Coeff> c_;
};

using IntPoly = Poly<Integer>;
using RatPoly = Poly<Rational>;

/// Quotient and remainder over Q.
inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  std::vector<Rational> quo(std::max(0, a.degree() - b.degree() + 1), Rational(0));
  const int db = b.degree();
  for (int i = a.degree(); i >= db; --i) {
    if (rem[i] == 0) continue;
    Rational f = rem[i] / b.leading();
    quo[i - db] = f;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.coeff(j);
  }
  rem.resize(std::max(0, db));
  return {RatPoly(std::move(quo)), RatPoly(std::move(rem))};
}

/// Exact division of integer polynomials; empty when b does not divide a over Z.
inline std::optional<IntPoly> exact_divide(const IntPoly& a, const IntPoly& b) {
  std::vector<Integer> rem = a.coeffs();
  if (a.degree() < b.degree()) {
    if (a.is_zero()) return IntPoly();
    return std::nullopt;
  }
  std::vector<Integer> quo(a.degree() - b.degree() + 1, Integer(0));
  const int db = b.degree();
  for (int i = a.degree(); i >= db; --i) {
    if (rem[i] == 0) continue;
    if (!mpz_divisible_p(rem[i].get_mpz_t(), b.leading().get_mpz_t())) return std::nullopt;
    Integer f = rem[i] / b.leading();
    quo[i - db] = f;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.coeff(j);
  }
  for (int i = 0; i < db; ++i)
    if (rem[i] != 0) return std::nullopt;
  return IntPoly(std::move(quo));
}

inline RatPoly to_rational(const IntPoly& p) {
  std::vector<Rational> c;
  for (const auto& x : p.coeffs()) c.emplace_back(x);
  return RatPoly(std::move(c));
}

/// det(tI - M), monic of degree n, by Faddeev-LeVerrier (all divisions exact).
inline IntPoly char_poly(const IntegerMatrix& m) {
  const std::size_t n = m.size();
  std::vector<Integer> c(n + 1, Integer(0));
  c[n] = 1;
  IntegerMatrix mk(n);  // M_0 = 0
  const IntegerMatrix id = IntegerMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    IntegerMatrix next = m * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    Integer t = (m * mk).trace();
    Integer q;
    mpz_divexact_ui(q.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(k));
    c[n - k] = -q;
  }
  return IntPoly(std::move(c));
}

inline long euler_phi(long m) {
  long result = m;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

/// Phi_m, built from t^m - 1 = prod_{d | m} Phi_d.
inline IntPoly cyclotomic(long m) {
  std::vector<Integer> c(static_cast<std::size_t>(m + 1), Integer(0));
  c[0] = -1;
  c[m] = 1;
  IntPoly p(std::move(c));
  for (long d = 1; d < m; ++d)
    if (m % d == 0) p = *exact_divide(p, cyclotomic(d));
  return p;
}

/// Indices m with phi(m) <= n; phi(m) >= sqrt(m/2) caps the search at 2n^2.
inline std::vector<long> cyclotomic_indices_up_to_degree(int n) {
  std::vector<long> out;
  for (long m = 1; m <= 2L * n * n + 2; ++m)
    if (euler_phi(m) <= n) out.push_back(m);
  return out;
}

struct FiniteOrderReport {
  bool cyclotomic_char_poly = false;  // every root a root of unity (Kronecker)
  bool power_certificate = false;     // M^N = I for N = lcm of the cyclotomic indices
  std::optional<unsigned long> order;
  std::vector<long> cyclotomic_factors;  // with multiplicity

  bool finite() const { return cyclotomic_char_poly && power_certificate; }
};

/// Finite order needs both: the characteristic polynomial is a product of
/// cyclotomic factors, and the matrix is killed by t^N - 1 (no Jordan blocks).
inline FiniteOrderReport finite_order_report(const IntegerMatrix& m) {
  FiniteOrderReport r;
  const int n = static_cast<int>(m.size());
  IntPoly rest = char_poly(m);
  for (long idx : cyclotomic_indices_up_to_degree(n)) {
    IntPoly phi = cyclotomic(idx);
    while (rest.degree() >= phi.degree()) {
      auto q = exact_divide(rest, phi);
      if (!q) break;
      rest = *q;
      r.cyclotomic_factors.push_back(idx);
    }
  }
  r.cyclotomic_char_poly = rest.degree() == 0;
  if (!r.cyclotomic_char_poly) return r;

  unsigned long exponent = 1;
  for (long idx : r.cyclotomic_factors) exponent = std::lcm(exponent, static_cast<unsigned long>(idx));
  r.power_certificate = m.pow(exponent).is_identity();
  if (r.power_certificate) {
    for (unsigned long d = 1; d <= exponent; ++d)
      if (exponent % d == 0 && m.pow(d).is_identity()) {
        r.order = d;
        break;
      }
  }
  return r;
}

inline bool is_finite_order(const IntegerMatrix& m) { return finite_order_report(m).finite(); }

namespace detail {

/// All roots of sum c_i z^i strictly inside the unit disk, by the Schur-Cohn
/// recursion c -> (c_m c - c_0 c*) / z on integer coefficients.
inline bool schur_stable(std::vector<Integer> c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  if (c.empty()) return false;
  while (c.size() > 1) {
    const std::size_t m = c.size() - 1;
    if (abs(c[0]) >= abs(c[m])) return false;
    std::vector<Integer> next(m);
    for (std::size_t i = 1; i <= m; ++i) next[i - 1] = c[m] * c[i] - c[0] * c[m - i];
    Integer g = 0;
    for (const auto& x : next) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
      for (auto& x : next) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    c = std::move(next);
  }
  return true;
}

}  // namespace detail

/// True iff every root of p has modulus < radius (radius > 0).
inline bool roots_inside_disk(const IntPoly& p, const Rational& radius) {
  if (radius <= 0) return false;
  const int n = p.degree();
  if (n <= 0) return true;
  const Integer& u = radius.get_num();
  const Integer& v = radius.get_den();
  std::vector<Integer> c(n + 1);
  for (int i = 0; i <= n; ++i)
    c[i] = p.coeff(i) * ipow(u, static_cast<unsigned long>(i)) * ipow(v, static_cast<unsigned long>(n - i));
  return detail::schur_stable(std::move(c));
}

/// |root| < 1 + max |a_i / a_n|.
inline Rational cauchy_bound(const IntPoly& p) {
  Rational best = 0;
  for (int i = 0; i < p.degree(); ++i) best = std::max(best, Rational(abs(p.coeff(i)), abs(p.leading())));
  best.canonicalize();
  return best + 1;
}

inline double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

struct RadiusInterval {
  Rational lo;  // radius >= lo
  Rational hi;  // radius < hi
  IntPoly char_poly;

  double lo_double() const { return down(lo.get_d()); }
  double hi_double() const { return up(hi.get_d()); }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }

  /// Entropy bound max(0, log radius), rounded outward.
  std::pair<double, double> entropy() const {
    double l = lo_double() <= 1.0 ? 0.0 : std::max(0.0, down(std::log(lo_double())));
    double h = hi_double() <= 1.0 ? 0.0 : up(std::log(hi_double()));
    return {l, h};
  }
};

/// Certified interval of width <= tol for the largest root modulus of p.
inline RadiusInterval root_modulus_interval(const IntPoly& p, const Rational& tol) {
  if (tol <= 0) throw ValidationError("spectral_radius: tol must be positive");
  RadiusInterval r{Rational(0), cauchy_bound(p), p};
  if (p.degree() <= 0) {
    r.hi = tol;
    return r;
  }
  while (r.hi - r.lo > tol) {
    Rational mid = (r.lo + r.hi) / 2;
    mid.canonicalize();
    if (roots_inside_disk(p, mid))
      r.hi = mid;
    else
      r.lo = mid;
  }
  return r;
}

inline RadiusInterval spectral_radius(const IntegerMatrix& m, const Rational& tol) {
  return root_modulus_interval(char_poly(m), tol);
}

// Real root isolation by Sturm sequences. Used as an independent route to the
// dominant real eigenvalue.

inline RatPoly squarefree_part(const RatPoly& p) {
  RatPoly a = p, b = p.derivative();
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = b;
    b = r;
  }
  if (a.degree() <= 0) return p;
  return divmod(p, a).first;
}

class SturmSequence {
 public:
  explicit SturmSequence(const IntPoly& p) {
    RatPoly sf = squarefree_part(to_rational(p));
    chain_.push_back(sf);
    chain_.push_back(sf.derivative());
    while (!chain_.back().is_zero()) {
      auto r = divmod(chain_[chain_.size() - 2], chain_.back()).second;
      if (r.is_zero()) break;
      chain_.push_back(-r);
    }
  }

  /// Distinct real roots in (a, b].
  int count(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }

 private:
  int variations(const Rational& x) const {
    int v = 0, last = 0;
    for (const auto& q : chain_) {
      int s = sgn(q.evaluate(x));
      if (s == 0) continue;
      if (last != 0 && s != last) ++v;
      last = s;
    }
    return v;
  }
  std::vector<RatPoly> chain_;
};

/// Interval (lo, hi] of width <= tol holding the largest real root, if any.
inline std::optional<std::pair<Rational, Rational>> largest_real_root(const IntPoly& p, const Rational& tol) {
  if (p.degree() <= 0) return std::nullopt;
  SturmSequence s(p);
  Rational bound = cauchy_bound(p);
  Rational lo = -bound, hi = bound;
  if (s.count(lo, hi) == 0) return std::nullopt;
  while (hi - lo > tol) {
    Rational mid = (lo + hi) / 2;
    mid.canonicalize();
    if (s.count(mid, hi) > 0)
      lo = mid;
    else
      hi = mid;
  }
  return std::make_pair(lo, hi);
}

/// u -> u + (u.r) r on the surface lattice (k = 2). Requires r.r = -2 and
/// r.K = 0, so the result is an involutive isometry fixing K.
inline IntegerMatrix reflection(const BlowupLattice& surface, const NSClass& root) {
  if (surface.k != 2) throw ValidationError("reflection: lattice must be a surface lattice (k = 2)");
  require_class_of(surface, root);
  if (q_d(surface, 2, {root, root}) != -2) throw ValidationError("reflection: root must satisfy r.r = -2");
  if (q_d(surface, 2, {root, canonical_class(surface)}) != 0)
    throw ValidationError("reflection: root must be orthogonal to K");
  const int n = surface.rank();
  IntegerMatrix m = IntegerMatrix::identity(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    Integer pairing = q_d(surface, 2, {NSClass::basis(n, j), root});
    if (pairing == 0) continue;
    for (int i = 0; i < n; ++i) m(i, j) += pairing * root[i];
  }
  return m;
}

/// Product R_1 R_2 ... R_m of the reflections in the given roots.
inline IntegerMatrix reflection_product(const BlowupLattice& surface, const std::vector<NSClass>& roots) {
  IntegerMatrix m = IntegerMatrix::identity(static_cast<std::size_t>(surface.rank()));
  for (const auto& r : roots) m = m * reflection(surface, r);
  return m;
}

/// Simple roots e_0 - e_1 - e_2 - e_3, e_i - e_{i+1} of P^2 blown up at n points.
inline std::vector<NSClass> coxeter_simple_roots(int points) {
  if (points < 3) throw ValidationError("coxeter_simple_roots: need at least 3 points");
  const int n = points + 1;
  std::vector<NSClass> roots;
  NSClass r0 = NSClass::zero(n);
  r0[0] = 1;
  r0[1] = r0[2] = r0[3] = -1;
  roots.push_back(r0);
  for (int i = 1; i < points; ++i) {
    NSClass r = NSClass::zero(n);
    r[i] = 1;
    r[i + 1] = -1;
    roots.push_back(r);
  }
  return roots;
}

}  // namespace nslattice

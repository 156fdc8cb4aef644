#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace nslattice {

/// Exact integer used for every lattice coordinate, coefficient and matrix entry.
using Integer = mpz_class;
using Rational = mpq_class;

/// Thrown on malformed input: dimension mismatches, out-of-range arguments,
/// schema violations in JSON documents.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a search or iteration exceeds its configured resource budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Integer ipow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

/// (-1)^e as an int.
constexpr int sign_power(long e) { return (e % 2 == 0) ? 1 : -1; }

inline bool fits_int64(const Integer& z) {
  return mpz_fits_slong_p(z.get_mpz_t()) != 0 &&
         sizeof(long) == sizeof(std::int64_t);
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

/// d! / (a_0! a_1! ... a_{n-1}!) for an exponent vector summing to d.
inline Integer multinomial(const std::vector<int>& exps) {
  unsigned long total = 0;
  Integer denom = 1;
  for (int e : exps) {
    total += static_cast<unsigned long>(e);
    denom *= factorial(static_cast<unsigned long>(e));
  }
  return factorial(total) / denom;
}

// Checked int64 arithmetic for exponent bookkeeping in monomial maps.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw BudgetExceeded("exponent overflow");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw BudgetExceeded("exponent overflow");
  return r;
}

}  // namespace nslattice

// Coxeter element of E_10 acting on P^2 blown up at 10 points.

#include <iostream>

#include "nslattice/nslattice.hpp"

int main() {
  using namespace nslattice;
  const auto surface = BlowupLattice::projective(2, 10);
  const auto w = reflection_product(surface, coxeter_simple_roots(10));
  const auto p = char_poly(w);
  const auto radius = spectral_radius(w, Rational(1, 1000000000));
  std::cout.precision(12);
  std::cout << "char poly: " << p.to_string() << "\n"
            << "spectral radius in [" << radius.lo_double() << ", " << radius.hi_double() << "]\n"
            << "entropy in [" << radius.entropy().first << ", " << radius.entropy().second << "]\n";
}

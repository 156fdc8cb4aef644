// P^3 blown up at two points: the top form is a Fermat cubic, so the
// integer isometries form a finite group.

#include <iostream>

#include "nslattice/nslattice.hpp"

int main() {
  using namespace nslattice;
  const auto lat = BlowupLattice::projective(3, 2);
  const auto w3 = w_d_polynomial(lat, 3);
  std::cout << "W_3: " << w3.to_string() << " = 0, smooth: " << std::boolalpha << is_smooth_diagonal(w3) << "\n";

  for (bool fix : {false, true}) {
    auto res = enumerate_isometries(lat, EnumerationOptions{1, fix, kDefaultNodeBudget});
    auto closure = group_closure_probe(res.matrices, 100);
    std::cout << (fix ? "fixing K_X: " : "all:        ") << res.matrices.size() << " matrices, group "
              << closure.describe() << "\n";
  }
}

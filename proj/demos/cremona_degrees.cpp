#include <iostream>

#include "nslattice/nslattice.hpp"

int main() {
  using namespace nslattice;
  for (const auto& [name, f] : Corpus::builtin().maps()) {
    auto tc = theorem_1_1_check(f);
    auto seq = degree_sequence(f, 6);
    std::cout << name << " " << f.to_string() << "  deg " << tc.degree << "/" << tc.degree_inverse << "  dim Ind "
              << tc.ind_dim << "/" << tc.ind_dim_inverse << "  " << tc.verdict() << "  degrees";
    for (auto d : seq.degrees) std::cout << " " << d;
    std::cout << "\n";
  }
}

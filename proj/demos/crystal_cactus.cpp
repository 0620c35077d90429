// Builds B(omega1 + omega2) for A2, prints its weights and the partial Schutzenberger involutions.

#include "ccl/cactus.hpp"

#include <iostream>

int main() {
  using namespace ccl;
  auto B = share(generate_crystal(RootSystem::build("A2"), make_weight({1, 1})));
  InternalCactus act(B);
  std::cout << "B(1,1) has " << B->size() << " elements\n";
  for (int b = 0; b < B->size(); ++b) std::cout << "  " << b << ": wt " << to_string(B->wt[b]) << "\n";
  for (const NodeSet& J : {NodeSet{0}, NodeSet{1}, NodeSet{0, 1}}) {
    std::cout << "xi_{";
    for (std::size_t k = 0; k < J.size(); ++k) std::cout << (k ? "," : "") << J[k] + 1;
    std::cout << "}:";
    for (int x : act.xi(J)) std::cout << " " << x;
    std::cout << "\n";
  }
  std::cout << "internal cactus relations: " << (check_internal_relations(act).ok ? "hold" : "fail") << "\n";
}

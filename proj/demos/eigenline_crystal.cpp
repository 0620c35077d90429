// Crystal structure on the shift-of-argument eigenlines of the sl3 adjoint representation, and
// the transport of sl2 V(1) (x) V(1) eigenlines from z = infinity to z = 0.

#include "ccl/monodromy.hpp"

#include <iostream>

int main() {
  using namespace ccl;
  Engine eng(1);
  const auto E = irrep_eigenline_crystal("sl3", {1, 1}, {1.0, 1.0}, eng);
  const auto B = generate_crystal(RootSystem::build("A2"), make_weight({1, 1}));
  std::cout << "eigenline crystal: " << E.crystal->size() << " lines, normal "
            << (check_normal(*E.crystal).ok ? "yes" : "no") << ", isomorphic to B(1,1) "
            << (find_isomorphism(*E.crystal, B) ? "yes" : "no") << "\n";
  std::cout << crystal_dot(*E.crystal);

  const auto E1 = irrep_eigenline_crystal("sl2", {1}, {1.0}, eng);
  const auto T = tensor_transport("sl2", {1}, {1}, E1, E1, {1.0}, eng);
  std::cout << "p_inf,0 on E(1) x E(1):";
  for (int x : T.map) std::cout << " " << x;
  std::cout << "\ncrystal isomorphism: " << (T.iso.ok ? "yes" : "no") << ", min fidelity " << eng.diag.min_fidelity << "\n";
}

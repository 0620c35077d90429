// Monodromy of the external generators s_12, s_23, s_13 on the two Gaudin eigenlines of
// E(1,1,1)^1 for sl2, next to the crystal permutations they are compared with.

#include "ccl/verify.hpp"

#include <iostream>

int main() {
  using namespace ccl;
  VerifyOptions opt;
  opt.seed = 7;
  for (auto [p, q] : {std::pair{1, 2}, std::pair{2, 3}, std::pair{1, 3}}) {
    const auto r = verify_external({{1}, 3, 1, p, q}, opt);
    std::cout << r.id << ": monodromy " << nlohmann::json(*r.monodromy_perm).dump() << ", crystal "
              << nlohmann::json(*r.crystal_perm).dump() << " -> " << verdict_name(r.verdict) << "\n";
  }
}

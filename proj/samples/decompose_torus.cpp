// Enumerates a small torus, computes the characters both ways and rebuilds Z.
#include <iostream>

#include "potts/oracle.hpp"
#include "potts/transfer.hpp"

int main() {
  using namespace potts;
  const TorusGraph g = build_torus(LatticeKind::kTriangular, 2, 3, BigRat(3, 7));
  const FixedQ mode(BigRat(5, 2));

  const auto table = restricted_partition_functions(g, mode);
  std::cout << g.describe() << ", Q = 5/2, v = 3/7\n";
  for (const auto& [key, z] : table.z) std::cout << "  Z(" << key.first << "," << key.second << ") = " << z << "\n";

  const auto oracle = characters_from_Z(table, g.width(), mode);
  const auto transfer = transfer_characters(g, mode);
  for (int l = 0; l <= g.width(); ++l) {
    std::cout << "  K_" << l << ": enumeration " << oracle.level[l] << ", transfer " << transfer.level[l] << "\n";
  }

  const auto z = z_total_from_characters(oracle, mode);
  std::cout << "  Z = " << table.total() << ", from characters " << z << "\n";
  return z == table.total() ? 0 : 1;
}

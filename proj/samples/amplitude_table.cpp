// Prints the amplitudes b(l, D_k) for small l and checks the sum rule.
#include <iostream>

#include "potts/numtheory.hpp"

int main() {
  using namespace potts;
  for (int l = 1; l <= 6; ++l) {
    std::cout << "l = " << l << "  (" << nt::distinct_amplitude_count(l) << " distinct)\n";
    for (int k = 1; k <= l; ++k) {
      std::cout << "  D_" << k << ": " << nt::amplitude_character(l, k) << "\n";
    }
    std::cout << "  sum = " << nt::amplitude_sum_rule(l) << "  b(l) = " << nt::b_level(l) << "\n";
  }
}

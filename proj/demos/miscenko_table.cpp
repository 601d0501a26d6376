// Prints alpha_ij and beta_kl of the universal law in the Miscenko basis.

#include <cstdlib>
#include <iostream>

#include <cobord/cobord.hpp>

int main(int argc, char** argv) {
  int order = argc > 1 ? std::atoi(argv[1]) : 5;
  auto law = cobord::FormalGroupLaw::miscenko(order);
  std::cout << "g(u) = " << law.log().to_string() << "\n";
  std::cout << "ubar(u) = " << law.inverse().to_string() << "\n\n";
  for (int i = 1; i < order; ++i)
    for (int j = i; i + j <= order; ++j) std::cout << "alpha(" << i << "," << j << ") = " << law.alpha(i, j).to_string() << "\n";
  std::cout << "\n";
  for (const auto& [kl, c] : cobord::b_series(law).beta)
    if (kl.first <= kl.second) std::cout << "beta(" << kl.first << "," << kl.second << ") = " << c.to_string() << "\n";
}

// Klein bottle: simplicial Euler characteristic against the index ledger.

#include <fstream>
#include <iostream>

#include <cobord/localize.hpp>

int main(int argc, char** argv) {
  std::string path = argc > 1 ? argv[1] : std::string(COBORD_DATA_DIR) + "/klein_bottle.txt";
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    return 1;
  }
  auto k = cobord::parse_simplicial_complex(in);
  auto f = k.f_vector();
  std::cout << "f-vector:";
  for (auto x : f) std::cout << " " << x;
  std::cout << "\nchi = " << k.euler_characteristic() << ", after subdivision "
            << k.barycentric_subdivision().euler_characteristic() << "\n";
  auto check = cobord::klein_index_check(k);
  std::cout << check.statement << (check.passed ? "  [ok]" : "  [mismatch]") << "\n";
  return check.passed ? 0 : 1;
}

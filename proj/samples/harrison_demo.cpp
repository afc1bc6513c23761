// Harrison cohomology of Λ(x,y), dx = y, against the derivation complex,
// plus a staircase reduction of one 3-cocycle.
#include <iostream>

#include "dghopf/dghopf.hpp"

using namespace dghopf;
using Q = Rational;

int main(int argc, char** argv) {
  int top = argc > 1 ? std::stoi(argv[1]) : 6;
  auto H = acyclic_example<Q>(top);

  auto rep = iso2_check(H, std::nullopt, 4);
  std::cout << "window: internal degree <= " << rep.d_max << "\n";
  std::cout << " n  Harr  Der  exact-window\n";
  for (const auto& d : rep.degrees)
    std::cout << " " << d.n << "  " << d.harrison_dim << "     " << d.derivation_dim << "    "
              << (d.window_exact ? "yes" : "no") << "\n";

  ComplexWindow w;
  w.theory = Theory::harrison;
  auto hc = harrison_complex(H.algebra, w);
  auto ker = kernel_basis(hc->restricted_matrix(3));
  if (ker.empty()) return 0;
  std::map<int, Q> acc;
  for (const auto& k : ker)
    for (const auto& [j, x] : k)
      for (const auto& [i, y] : hc->basis(3)[static_cast<std::size_t>(j)]) acc[i] += x * y;
  auto f = hc->complex().from_vector(from_map(acc), 3);
  auto st = staircase_reduce(*hc, f, 3);
  std::cout << "staircase on a 3-cocycle: " << (st.ok ? "reduced" : st.failure) << " in " << st.steps << " steps\n";
  return st.ok ? 0 : 1;
}

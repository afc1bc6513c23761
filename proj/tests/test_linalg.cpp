#include "catch_amalgamated.hpp"

#include <random>

#include "oracles.hpp"

using namespace dghopf;

namespace {

template <Field K>
SparseMatrix<K> random_matrix(std::mt19937_64& rng, int rows, int cols, int density_pct, int spread) {
  SparseMatrix<K> M(rows, cols);
  for (int j = 0; j < cols; ++j) {
    std::map<int, K> col;
    for (int i = 0; i < rows; ++i)
      if (static_cast<int>(rng() % 100) < density_pct) col[i] = K(static_cast<long>(rng() % (2 * spread + 1)) - spread);
    M.set_col(j, from_map(col));
  }
  return M;
}

// Low-rank product so that kernels and dependent columns occur.
template <Field K>
SparseMatrix<K> random_low_rank(std::mt19937_64& rng, int rows, int cols, int inner) {
  auto A = random_matrix<K>(rng, rows, inner, 60, 3);
  auto B = random_matrix<K>(rng, inner, cols, 60, 3);
  return A.multiply(B);
}

template <Field K>
void check_against_dense(std::mt19937_64& rng, int trials) {
  for (int t = 0; t < trials; ++t) {
    int rows = 1 + static_cast<int>(rng() % 9), cols = 1 + static_cast<int>(rng() % 9);
    auto M = (t % 2) ? random_matrix<K>(rng, rows, cols, 40, 4)
                     : random_low_rank<K>(rng, rows, cols, 1 + static_cast<int>(rng() % 4));
    int r = rank(M);
    CHECK(r == oracle::dense_rank(oracle::to_dense(M)));
    auto ker = kernel_basis(M);
    CHECK(static_cast<int>(ker.size()) == cols - r);
    for (const auto& k : ker) CHECK(M.apply(k).empty());
    // kernel vectors are independent
    Echelon<K> e;
    for (const auto& k : ker) CHECK(e.insert(k));
    // a target in the image is solved exactly
    std::map<int, K> x;
    for (int j = 0; j < cols; ++j) x[j] = K(static_cast<long>(rng() % 5) - 2);
    auto b = M.apply(from_map(x));
    auto sol = solve(M, b);
    REQUIRE(sol.solvable);
    CHECK(M.apply(sol.x) == b);
    // a random target: solvable iff the ranks agree with the dense oracle
    std::map<int, K> y;
    for (int i = 0; i < rows; ++i) y[i] = K(static_cast<long>(rng() % 7) - 3);
    auto c = from_map(y);
    auto s2 = solve(M, c);
    auto dense = oracle::to_dense(M);
    for (int i = 0; i < rows; ++i) dense[static_cast<std::size_t>(i)].push_back(get(c, i));
    int aug = oracle::dense_rank(dense);
    CHECK(s2.rank_augmented == aug);
    CHECK(s2.solvable == (aug == r));
    if (s2.solvable) CHECK(M.apply(s2.x) == c);
  }
}

}  // namespace

TEST_CASE("sparse elimination agrees with dense Gauss-Jordan over Q") {
  std::mt19937_64 rng(11);
  check_against_dense<Rational>(rng, 300);
}

TEST_CASE("sparse elimination agrees with dense Gauss-Jordan over F_p") {
  for (std::uint32_t p : {2u, 3u, 5u, 101u}) {
    ModP::Scope s(p);
    std::mt19937_64 rng(p);
    check_against_dense<ModP>(rng, 150);
  }
}

TEST_CASE("fraction-free elimination keeps entries small on a Hilbert-like matrix") {
  int n = 6;
  SparseMatrix<Rational> M(n, n);
  for (int j = 0; j < n; ++j) {
    std::map<int, Rational> col;
    for (int i = 0; i < n; ++i) col[i] = Rational(1) / Rational(i + j + 1);
    M.set_col(j, from_map(col));
  }
  CHECK(rank(M) == n);
  CHECK(oracle::dense_rank(oracle::to_dense(M)) == n);
}

TEST_CASE("canonical scaling") {
  SparseVec<Rational> v{{1, Rational::parse("-2/3")}, {4, Rational::parse("4/9")}};
  auto c = canonical_scaling(v);
  CHECK(c[0].second.str() == "3");
  CHECK(c[1].second.str() == "-2");
  ModP::Scope s(5);
  SparseVec<ModP> w{{0, ModP(3)}, {2, ModP(1)}};
  auto cw = canonical_scaling(w);
  CHECK(cw[0].second.is_one());
  CHECK(cw[1].second == ModP(2));
}

#include "catch_amalgamated.hpp"

#include <random>

#include "oracles.hpp"

using namespace dghopf;
using Q = Rational;

namespace {

std::shared_ptr<AssembledComplex<Q>> harrison(const DGHopfPresentation<Q>& H) {
  ComplexWindow w;
  w.theory = Theory::harrison;
  return harrison_complex(H.algebra, w);
}

SparseVec<Q> to_ambient(const std::vector<SparseVec<Q>>& basis, const SparseVec<Q>& coords) {
  std::map<int, Q> acc;
  for (const auto& [j, x] : coords)
    for (const auto& [i, y] : basis[static_cast<std::size_t>(j)]) acc[i] += x * y;
  return from_map(acc);
}

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("shuffles") {
  for (int r = 0; r <= 4; ++r)
    for (int s = 0; s <= 4; ++s) {
      auto sh = shuffles(r, s);
      CHECK(static_cast<long>(sh.size()) == binomial(r + s, r));
      for (const auto& sigma : sh) {
        for (int i = 0; i + 1 < r; ++i) CHECK(sigma[i] < sigma[i + 1]);
        for (int i = r; i + 1 < r + s; ++i) CHECK(sigma[i] < sigma[i + 1]);
        CHECK((permutation_parity(sigma) ? -1 : 1) == oracle::permutation_sign(sigma));
      }
    }
}

TEST_CASE("Harrison subspace is stable under D") {
  for (auto H : {exterior_example<Q>(1), exterior_example<Q>(2), acyclic_example<Q>(6)}) {
    auto hc = harrison(H);
    for (int r = 1; r <= 4; ++r) {
      Echelon<Q> next;
      for (const auto& v : hc->basis(r + 1)) next.insert(v);
      for (const auto& v : hc->basis(r)) {
        INFO(H.name << " r = " << r);
        CHECK(next.contains(hc->matrix(r).apply(v)));
      }
    }
  }
}

TEST_CASE("Harrison 2-cochains are graded-symmetric") {
  auto H = acyclic_example<Q>(6);
  auto hc = harrison(H);
  const auto& cx = hc->complex();
  const auto& b = *H.basis();
  for (int r = 1; r <= 4; ++r)
    for (const auto& v : hc->basis(r)) {
      auto f = cx.from_vector(v, r);
      for (const auto& [t, g] : f) {
        if (t.m != 2) continue;
        for (const auto& [s, col] : g.columns()) {
          Word sw{s[1], s[0]};
          Q sg = sign<Q>(static_cast<long>(b.degree(s[0])) * b.degree(s[1]));
          for (const auto& [tw, c] : col) CHECK(g.entry(sw, tw) * sg == c);
        }
      }
    }
}

TEST_CASE("Harrison cohomology on the examples") {
  auto hc = harrison(acyclic_example<Q>(6));
  const int basis_dim[] = {6, 12, 15, 13, 6};
  const int ambient[] = {6, 20, 34, 34, 20};
  const int H[] = {1, 0, 0, 0, 0};
  for (int r = 1; r <= 5; ++r) {
    INFO("r = " << r);
    CHECK(static_cast<int>(hc->basis(r).size()) == basis_dim[r - 1]);
    CHECK(hc->space(r).dim == ambient[r - 1]);
    CHECK(cohomology(*hc, r).dimension == H[r - 1]);
  }
  auto h1 = harrison(exterior_example<Q>(1));
  CHECK(cohomology(*h1, 1).dimension == 1);
  for (int r = 2; r <= 4; ++r) CHECK(cohomology(*h1, r).dimension == 0);
  auto h2 = harrison(exterior_example<Q>(2));
  CHECK(h2->basis(1).size() == 5);
  CHECK(cohomology(*h2, 1).dimension == 4);
  CHECK(h2->basis(2).size() == 3);
  CHECK(h2->space(2).dim == 6);
  CHECK(cohomology(*h2, 2).dimension == 2);
  for (int r = 3; r <= 4; ++r) CHECK(cohomology(*h2, r).dimension == 0);
}

TEST_CASE("derivations: kernel of del_B equals the Leibniz solutions") {
  struct Row {
    const char* name;
    DGHopfPresentation<Q> H;
    int dims[5];
  };
  Row rows[] = {{"acyclic", acyclic_example<Q>(6), {1, 2, 2, 2, 2}},
                {"lambda1", exterior_example<Q>(1), {0, 1, 1, 0, 0}},
                {"lambda2", exterior_example<Q>(2), {0, 2, 4, 2, 0}}};
  for (const auto& row : rows)
    for (int p = -2; p <= 2; ++p) {
      auto D = derivation_space(row.H.algebra, p);
      INFO(row.name << " p = " << p);
      CHECK(D.computations_agree);
      CHECK(D.dim_kernel == row.dims[p + 2]);
      CHECK(D.dim_leibniz == row.dims[p + 2]);
    }
}

TEST_CASE("derivation basis satisfies Leibniz and ad(d) squares to zero") {
  auto H = acyclic_example<Q>(6);
  const auto& A = H.algebra;
  const auto& b = *A.basis;
  for (int p = -1; p <= 2; ++p) {
    auto D = derivation_space(A, p);
    for (const auto& theta : D.basis) {
      for (int x = 0; x < b.size(); ++x)
        for (int y = 0; y < b.size(); ++y) {
          if (b.degree(x) + b.degree(y) + p > b.top_degree() || b.degree(x) + b.degree(y) > b.top_degree()) continue;
          WordVec<Q> lhs = theta.apply(A.mu.apply(Word{x, y}));
          WordVec<Q> rhs;
          for (const auto& [w, c] : theta.apply(Word{x})) add_scaled(rhs, A.mu.apply(Word{w[0], y}), c);
          for (const auto& [w, c] : theta.apply(Word{y}))
            add_scaled(rhs, A.mu.apply(Word{x, w[0]}), c * sign<Q>(static_cast<long>(p) * b.degree(x)));
          CHECK(lhs == rhs);
        }
      auto ad2 = ad_differential(A, ad_differential(A, theta));
      ad2 = ad2.restrict_sources([&](const Word& s) { return b.degree(s) + p + 2 <= b.top_degree(); });
      CHECK(ad2.is_zero());
    }
  }
}

TEST_CASE("iso2: Harrison cohomology equals the derivation complex") {
  struct Row {
    DGHopfPresentation<Q> H;
    int dims[4];
  };
  Row rows[] = {{acyclic_example<Q>(6), {1, 0, 0, 0}},
                {exterior_example<Q>(1), {1, 0, 0, 0}},
                {exterior_example<Q>(2), {4, 2, 0, 0}}};
  for (const auto& row : rows) {
    auto rep = iso2_check(row.H, std::nullopt, 4);
    INFO(row.H.name);
    CHECK(rep.passed());
    for (const auto& d : rep.degrees) {
      CHECK(d.window_exact);
      CHECK(d.harrison_dim == row.dims[d.n - 1]);
      CHECK(d.derivation_dim == row.dims[d.n - 1]);
    }
  }
}

TEST_CASE("Harrison columns are exact at rows 2 and 3") {
  auto hc = harrison(acyclic_example<Q>(6));
  const int expect[5][2] = {{4, 3}, {3, 2}, {2, 1}, {1, 0}, {0, 0}};
  for (int p = 0; p <= 4; ++p)
    for (int m = 2; m <= 3; ++m) {
      auto c = harrison_column_exactness(*hc, p, m);
      INFO("p = " << p << " m = " << m);
      CHECK(c.exact());
      CHECK(c.kernel_dim == expect[p][m - 2]);
    }
}

TEST_CASE("staircase reduction of Harrison cocycles") {
  auto hc = harrison(acyclic_example<Q>(6));
  const auto& cx = hc->complex();
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 5; ++n) {
    auto ker = kernel_basis(hc->restricted_matrix(n));
    REQUIRE_FALSE(ker.empty());
    for (int trial = 0; trial < 5; ++trial) {
      SparseVec<Q> coords;
      std::map<int, Q> acc;
      for (const auto& k : ker) {
        Q c(static_cast<long>(rng() % 7) - 3);
        for (const auto& [i, x] : k) acc[i] += c * x;
      }
      coords = from_map(acc);
      if (coords.empty()) continue;
      auto f = cx.from_vector(to_ambient(hc->basis(n), coords), n);
      int top = 0;
      for (const auto& [t, g] : f)
        if (!g.is_zero()) top = std::max(top, t.m);
      auto res = staircase_reduce(*hc, f, n);
      INFO("n = " << n << " trial " << trial << ": " << res.failure);
      CHECK(res.ok);
      CHECK(res.postconditions_verified);
      CHECK(res.steps >= 1);
      CHECK(res.steps <= top - 1);
      for (const auto& [t, g] : res.reduced)
        if (!g.is_zero()) CHECK((t.m == 1 && t.p == n - 1));
    }
  }
}

TEST_CASE("staircase rejects a non-cocycle") {
  auto hc = harrison(acyclic_example<Q>(6));
  const auto& basis = hc->basis(2);
  SparseVec<Q> v;
  for (const auto& b : basis)
    if (!hc->matrix(2).apply(b).empty()) {
      v = b;
      break;
    }
  REQUIRE_FALSE(v.empty());
  auto res = staircase_reduce(*hc, hc->complex().from_vector(v, 2), 2);
  CHECK_FALSE(res.ok);
  CHECK(res.failure == "input is not a cocycle");
}

TEST_CASE("the Harrison complex needs characteristic zero and commutativity") {
  {
    ModP::Scope s(3);
    auto H = fp_trunc_example<ModP>(3);
    ComplexWindow w;
    w.theory = Theory::harrison;
    CHECK_THROWS_AS(harrison_complex(H.algebra, w), FieldError);
    CHECK_THROWS_AS(iso2_check(H, std::nullopt, 2), FieldError);
  }
  auto H = exterior_example<Q>(2);
  const auto& b = *H.basis();
  H.algebra.mu.add(Word{b.index("x1"), b.index("x2")}, Word{b.index("x1x2")}, Q(1));
  ComplexWindow w;
  w.theory = Theory::harrison;
  CHECK_THROWS_AS(harrison_complex(H.algebra, w), ValidationError);
}

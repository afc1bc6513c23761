#include "catch_amalgamated.hpp"

#include "oracles.hpp"

using namespace dghopf;
using Q = Rational;

namespace {

using oracle::Entry;
using oracle::column_entries;
using oracle::plane_agrees;

template <Field K>
SparseMatrix<K> product(const SparseMatrix<K>& A, const SparseMatrix<K>& B) {
  return A.multiply(B);
}

ComplexWindow window(Theory t) {
  ComplexWindow w;
  w.theory = t;
  return w;
}

// Every column of the unsigned component matrix equals the map-composition
// oracle applied to the corresponding basis cochain.
template <Field K>
void check_against_oracle(const DGHopfPresentation<K>& H, const CochainComplex<K>& cx, int r) {
  oracle::TripleOracle<K> orc(H);
  const std::pair<unsigned, oracle::Part> parts[] = {{1u, oracle::Part::d}, {2u, oracle::Part::del},
                                                     {4u, oracle::Part::delta}};
  const auto& S = cx.space(r);
  const auto& S1 = cx.space(r + 1);
  for (const auto& [mask, part] : parts) {
    auto M = cx.assemble_differential(r, mask, false).matrix;
    for (int j = 0; j < S.dim; ++j) {
      auto [tri, s, t] = S.locate(j);
      GradedMap<K> f = cx.empty_component(tri);
      f.add(s, t, K(1));
      auto g = orc.apply(part, f);
      Tridegree out = tri;
      if (part == oracle::Part::d) out.p += 1;
      else if (part == oracle::Part::del) out.m += 1;
      else out.n += 1;
      std::map<Entry, K> want;
      for (const auto& [s2, v] : g.columns())
        for (const auto& [t2, c] : v) {
          const auto* b = S1.block(out);
          REQUIRE(b);
          REQUIRE(b->index(s2, t2) >= 0);
          want[{out, s2, t2}] = c;
        }
      INFO("r = " << r << " column " << j << " at " << tri.str() << " part mask " << mask);
      CHECK(column_entries(cx, M, r, j) == want);
    }
  }
}

}  // namespace

TEST_CASE("D squares to zero on lambda2 for all three theories") {
  auto H = exterior_example<Q>(2);
  CochainComplex<Q> hopf(H, window(Theory::hopf));
  CochainComplex<Q> hoch(H.algebra, window(Theory::hochschild));
  CochainComplex<Q> cart(H.coalgebra, window(Theory::cartier));
  for (const auto* cx : {&hopf, &hoch, &cart})
    for (int r = 0; r <= 4; ++r) {
      auto a = cx->assemble_differential(r);
      auto b = cx->assemble_differential(r + 1);
      INFO(theory_name(cx->theory()) << " r = " << r);
      CHECK_FALSE(a.normalization_leak);
      CHECK(product(b.matrix, a.matrix).is_zero());
      CHECK(oracle::dense_zero(oracle::dense_product(oracle::to_dense(b.matrix), oracle::to_dense(a.matrix))));
    }
}

TEST_CASE("component differentials square to zero and commute") {
  auto H = exterior_example<Q>(2);
  CochainComplex<Q> cx(H, window(Theory::hopf));
  for (int r = 0; r <= 4; ++r) {
    SparseMatrix<Q> P[3] = {cx.assemble_differential(r, 1u, false).matrix, cx.assemble_differential(r, 2u, false).matrix,
                            cx.assemble_differential(r, 4u, false).matrix};
    SparseMatrix<Q> P1[3] = {cx.assemble_differential(r + 1, 1u, false).matrix,
                             cx.assemble_differential(r + 1, 2u, false).matrix,
                             cx.assemble_differential(r + 1, 4u, false).matrix};
    for (int i = 0; i < 3; ++i) {
      INFO("r = " << r << " part " << i);
      CHECK(product(P1[i], P[i]).is_zero());
      for (int j = i + 1; j < 3; ++j) {
        auto c = product(P1[i], P[j]);
        auto d = product(P1[j], P[i]);
        CHECK(oracle::to_dense(c) == oracle::to_dense(d));
      }
    }
  }
}

TEST_CASE("component differentials match the map-composition oracle") {
  auto H = exterior_example<Q>(2);
  CochainComplex<Q> cx(H, window(Theory::hopf));
  for (int r = 0; r <= 3; ++r) check_against_oracle(H, cx, r);
  auto H1 = exterior_example<Q>(1);
  CochainComplex<Q> cx1(H1, window(Theory::hopf));
  for (int r = 0; r <= 3; ++r) check_against_oracle(H1, cx1, r);
}

TEST_CASE("Hochschild complex with explicit coefficients matches the oracle") {
  auto A = acyclic_example<Q>(5).algebra;
  auto M = regular_bimodule(A);
  CochainComplex<Q> cx(A, window(Theory::hochschild), M);
  for (int r = -1; r <= 3; ++r) {
    const auto& S = cx.space(r);
    auto Md = cx.assemble_differential(r, 1u, false).matrix;
    auto Mdel = cx.assemble_differential(r, 2u, false).matrix;
    const auto& S1 = cx.space(r + 1);
    for (int j = 0; j < S.dim; ++j) {
      auto [tri, s, t] = S.locate(j);
      GradedMap<Q> f = cx.empty_component(tri);
      f.add(s, t, Q(1));
      auto expect = [&](const GradedMap<Q>& g, Tridegree out) {
        std::map<Entry, Q> want;
        for (const auto& [s2, v] : g.columns()) {
          if (!A.basis->positive(s2)) continue;
          for (const auto& [t2, c] : v) {
            if (A.basis->degree(t2) > cx.degree_cap()) continue;
            const auto* b = S1.block(out);
            REQUIRE(b);
            REQUIRE(b->index(s2, t2) >= 0);
            want[{out, s2, t2}] = c;
          }
        }
        return want;
      };
      INFO("r = " << r << " at " << tri.str());
      CHECK(column_entries(cx, Md, r, j) == expect(oracle::hochschild_d(A, M, f), {tri.p + 1, tri.m, 1}));
      CHECK(column_entries(cx, Mdel, r, j) == expect(oracle::hochschild_del(A, M, f), {tri.p, tri.m + 1, 1}));
    }
  }
}

TEST_CASE("specialization: the triple complex at n = 1 and m = 1") {
  for (auto H : {exterior_example<Q>(1), exterior_example<Q>(2), exterior_example<Q>(3)}) {
    CochainComplex<Q> hopf(H, window(Theory::hopf));
    CochainComplex<Q> hoch(H.algebra, window(Theory::hochschild));
    CochainComplex<Q> cart(H.coalgebra, window(Theory::cartier));
    auto n1 = [](const Tridegree& t) { return t.n == 1; };
    auto m1 = [](const Tridegree& t) { return t.m == 1; };
    for (int r = 0; r <= 4; ++r) {
      INFO(H.name << " r = " << r);
      // unsigned components: d_C, ∂_C at n = 1 are d_B, ∂_B; d_C, δ_C at m = 1 are d_Ω, δ_Ω
      CHECK(plane_agrees(hoch, hopf, r, 1u, false, n1));
      CHECK(plane_agrees(hoch, hopf, r, 2u, false, n1));
      CHECK(plane_agrees(cart, hopf, r, 1u, false, m1));
      CHECK(plane_agrees(cart, hopf, r, 4u, false, m1));
      // with the sign prefactors the n = 1 plane reproduces D_B exactly
      CHECK(plane_agrees(hoch, hopf, r, 3u, true, n1));
    }
  }
}

TEST_CASE("identity cochain: del_B(id) = mu and delta_Omega(id) = Delta") {
  for (auto H : {exterior_example<Q>(1), exterior_example<Q>(2)}) {
    INFO(H.name);
    const auto& b = H.basis();
    auto id = normalize(GradedMap<Q>::identity(b, 1));
    CochainComplex<Q> hoch(H.algebra, window(Theory::hochschild));
    CochainComplex<Q> cart(H.coalgebra, window(Theory::cartier));
    CochainComplex<Q> hopf(H, window(Theory::hopf));
    Tridegree t{0, 1, 1};
    auto mu = normalize(H.mu());
    auto delta = normalize(H.delta());
    CHECK(hoch.apply_part(Part::del, t, id).value.at({0, 2, 1}) == mu);
    CHECK(cart.apply_part(Part::delta, t, id).value.at({0, 1, 2}) == delta);
    CHECK(hopf.apply_part(Part::del, t, id).value.at({0, 2, 1}) == mu);
    CHECK(hopf.apply_part(Part::delta, t, id).value.at({0, 1, 2}) == delta);
    CHECK(hopf.apply_part(Part::d, t, id).value.at({1, 1, 1}).is_zero());
  }
}

TEST_CASE("hand-expanded values on small examples") {
  auto H = exterior_example<Q>(2);
  const auto& b = *H.basis();
  int x1 = b.index("x1"), x2 = b.index("x2"), x12 = b.index("x1x2");
  CochainComplex<Q> hoch(H.algebra, window(Theory::hochschild));
  // f(x1x2) = x1, p = -1: ∂_B(f)(x1⊗x2) = -x1
  GradedMap<Q> f(H.basis(), 1, 1, -1);
  f.add(Word{x12}, Word{x1}, Q(1));
  auto g = hoch.apply_part(Part::del, {-1, 1, 1}, f).value.at({-1, 2, 1});
  CHECK(g.entry(Word{x1, x2}, Word{x1}) == Q(-1));

  // Λ(x): λ²(x⊗1⊗1) = x⊗1 + 1⊗x
  auto L = exterior_example<Q>(1);
  int x = L.basis()->index("x");
  auto lam = interior_bimodule_power(L, 2).first.apply(Word{x, 0, 0});
  CHECK(lam.size() == 2);
  CHECK(lam.at(Word{x, 0}) == Q(1));
  CHECK(lam.at(Word{0, x}) == Q(1));
}

TEST_CASE("empty windows on Lambda(x)") {
  auto L = exterior_example<Q>(1);
  CochainComplex<Q> cx(L, window(Theory::hopf));
  for (Tridegree t : {Tridegree{1, 1, 1}, Tridegree{0, 2, 1}, Tridegree{0, 1, 2}})
    CHECK(cx.space(2).block(t) == nullptr);
  CHECK(cx.space(2).dim == 0);
}

TEST_CASE("prefactors at (0,2,1) are +, -, +") {
  auto H = exterior_example<Q>(2);
  CochainComplex<Q> cx(H, window(Theory::hopf));
  // D from (0,1,1) into (0,2,1) is the ∂ part with prefactor (-1)^{1} = -1
  auto signed_del = cx.assemble_differential(1, 2u, true).matrix;
  auto raw_del = cx.assemble_differential(1, 2u, false).matrix;
  const auto& S1 = cx.space(2);
  const auto* blk = S1.block({0, 2, 1});
  REQUIRE(blk);
  for (int j = 0; j < raw_del.cols(); ++j)
    for (const auto& [i, c] : raw_del.col(j))
      if (i >= blk->offset && i < blk->offset + blk->dim) CHECK(get(signed_del.col(j), i) == -c);
}

TEST_CASE("windows on truncated presentations") {
  auto A = acyclic_example<Q>(4);
  ComplexWindow w;
  w.d_max = 6;
  CHECK_THROWS_AS(CochainComplex<Q>(A, w), WindowError);
  ComplexWindow inf;
  inf.q = std::nullopt;
  CHECK_THROWS_AS(CochainComplex<Q>(A, inf), WindowError);
  inf.m_max = 3;
  inf.n_max = 3;
  CHECK_NOTHROW(CochainComplex<Q>(A, inf));
}

TEST_CASE("total differential reports clipping") {
  auto H = exterior_example<Q>(2);
  ComplexWindow w;
  w.n_max = 1;
  CochainComplex<Q> cx(H, w);
  const auto& b = *H.basis();
  TotalCochain<Q> f;
  GradedMap<Q> g(H.basis(), 1, 1, 0);
  g.add(Word{b.index("x1")}, Word{b.index("x1")}, Q(1));
  f.emplace(Tridegree{0, 1, 1}, g);
  auto res = cx.total_differential(f);
  CHECK(res.clipped);
  CHECK_FALSE(res.clipped_at.empty());
  CHECK(is_zero(cx.total_differential(TotalCochain<Q>{}).value));
}

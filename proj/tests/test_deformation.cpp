#include "catch_amalgamated.hpp"

#include <random>

#include "oracles.hpp"

using namespace dghopf;
using Q = Rational;

namespace {

TotalCochain<Q> random_two_cochain(const DeformationContext<Q>& ctx, std::mt19937_64& rng) {
  const auto& S = ctx.complex().space(2);
  std::map<int, Q> v;
  for (int i = 0; i < S.dim; ++i)
    if (rng() % 4 == 0) v[i] = Q(static_cast<long>(rng() % 5) - 2);
  return ctx.complex().from_vector(from_map(v), 2);
}

bool same(const TotalCochain<Q>& a, const TotalCochain<Q>& b) { return is_zero(combine(a, Q(1), b, Q(-1))); }

}  // namespace

TEST_CASE("linear part of the residuals is D_C") {
  for (auto H : {exterior_example<Q>(2), exterior_example<Q>(3)}) {
    DeformationContext<Q> ctx(H);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
      auto x = random_two_cochain(ctx, rng);
      auto D = ctx.trivial(1);
      DeformationContext<Q>::install(D, 1, x);
      INFO(H.name << " trial " << trial);
      CHECK(same(ctx.assemble(ctx.residuals(D, 1)), ctx.D_C(x)));
    }
  }
}

TEST_CASE("first-order deformations are exactly the 2-cocycles") {
  DeformationContext<Q> ctx(exterior_example<Q>(2));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto x = random_two_cochain(ctx, rng);
    auto D = ctx.trivial(1);
    DeformationContext<Q>::install(D, 1, x);
    CHECK(ctx.check(D).passed() == is_zero(ctx.D_C(x)));
  }
  for (int trial = 0; trial < 10; ++trial) {
    auto z = ctx.random_cocycle(rng);
    auto D = ctx.trivial(1);
    DeformationContext<Q>::install(D, 1, z);
    CHECK(ctx.check(D).passed());
    CHECK(same(ctx.infinitesimal(D), z));
  }
}

TEST_CASE("gauge inverse and composition") {
  DeformationContext<Q> ctx(exterior_example<Q>(2));
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    auto g = ctx.random_gauge(4, rng);
    auto h = ctx.inverse(g);
    auto e1 = ctx.compose_gauges(g, h);
    auto e2 = ctx.compose_gauges(h, g);
    auto id = ctx.identity_gauge(4);
    for (int k = 0; k <= 4; ++k) {
      CHECK(e1.phi[static_cast<std::size_t>(k)] == id.phi[static_cast<std::size_t>(k)]);
      CHECK(e2.phi[static_cast<std::size_t>(k)] == id.phi[static_cast<std::size_t>(k)]);
    }
    // transporting by g then g⁻¹ is the identity
    auto D = ctx.random_deformation(3, rng);
    auto back = ctx.apply_gauge(ctx.apply_gauge(D, g), h);
    for (int k = 0; k <= 3; ++k) {
      CHECK(back.mu[static_cast<std::size_t>(k)] == D.mu[static_cast<std::size_t>(k)]);
      CHECK(back.delta[static_cast<std::size_t>(k)] == D.delta[static_cast<std::size_t>(k)]);
      CHECK(back.d[static_cast<std::size_t>(k)] == D.d[static_cast<std::size_t>(k)]);
    }
  }
}

TEST_CASE("rigidity: scrambled trivial deformations are trivialized") {
  DeformationContext<Q> ctx(exterior_example<Q>(2));
  CHECK(cohomology(ctx.assembled(), 2).dimension == 0);
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    auto D = ctx.apply_gauge(ctx.trivial(4), ctx.random_gauge(4, rng));
    REQUIRE(ctx.check(D).passed());
    auto res = ctx.trivialize(D);
    CHECK(res.trivialized);
    CHECK(ctx.is_trivial(ctx.apply_gauge(D, res.gauge)));
  }
}

TEST_CASE("obstructions are cocycles and extensions validate") {
  DeformationContext<Q> ctx(exterior_example<Q>(2));
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    int k = 1 + static_cast<int>(rng() % 3);
    auto D = ctx.random_deformation(k, rng);
    auto o = ctx.obstruction(D, k + 1);
    CHECK(o.cocycle);
    CHECK(is_zero(ctx.D_C(o.residual)));
    auto ext = ctx.extend(D);
    REQUIRE(ext.extended);
    CHECK(ctx.check(ext.deformation).passed());
    CHECK(is_zero(ctx.assemble(ctx.residuals(ext.deformation, k + 1))));
  }
}

TEST_CASE("gauge covariance of the infinitesimal") {
  DeformationContext<Q> ctx(exterior_example<Q>(2));
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    auto D = ctx.random_deformation(2, rng);
    auto g = ctx.random_gauge(2, rng);
    auto E = ctx.apply_gauge(D, g);
    TotalCochain<Q> phi1{{Tridegree{0, 1, 1}, g.phi[1]}};
    auto diff = combine(ctx.infinitesimal(D), Q(1), ctx.infinitesimal(E), Q(-1));
    CHECK(same(diff, ctx.D_C(phi1)));
  }
}

TEST_CASE("deformation errors") {
  CHECK_THROWS_AS(DeformationContext<Q>(acyclic_example<Q>(6)), DeformationError);
  DeformationContext<Q> ctx(exterior_example<Q>(2));
  CHECK_THROWS_AS(ctx.infinitesimal(ctx.trivial(0)), DeformationError);
  std::mt19937_64 rng(1);
  TotalCochain<Q> x;
  do x = random_two_cochain(ctx, rng);
  while (is_zero(ctx.D_C(x)));
  auto D = ctx.trivial(1);
  DeformationContext<Q>::install(D, 1, x);
  CHECK_FALSE(ctx.check(D).passed());
  CHECK_THROWS_AS(ctx.infinitesimal(D), DeformationError);
  CHECK_THROWS_AS(ctx.obstruction(D, 2), DeformationError);
}

TEST_CASE("Lambda(x) deformations are trivial") {
  DeformationContext<Q> ctx(exterior_example<Q>(1));
  std::mt19937_64 rng(2);
  auto D = ctx.random_deformation(3, rng);
  CHECK(ctx.is_trivial(D));
  CHECK(ctx.trivialize(D).trivialized);
}

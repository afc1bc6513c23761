#ifndef DGHOPF_EXAMPLES_HPP
#define DGHOPF_EXAMPLES_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hopf.hpp"

namespace dghopf {

struct GeneratorSpec {
  std::string name;
  int degree;
  std::optional<int> nilpotency;  // g^nilpotency = 0 (even generators only)
};

// d on a generator: list of (exponent vector, coefficient string).
using GeneratorDifferential = std::vector<std::pair<std::vector<int>, std::string>>;

/*
 * Graded-commutative monomial Hopf algebra on the given generators,
 * every generator primitive, d extended as a derivation. Odd generators
 * square to zero. With truncated = true the basis is the slice of degree
 * <= top_degree of an infinite-dimensional algebra.
 */
template <Field K>
DGHopfPresentation<K> monomial_hopf_algebra(const std::string& name, const std::vector<GeneratorSpec>& gens,
                                            const std::map<int, GeneratorDifferential>& diff, int top_degree,
                                            bool truncated) {
  using Exps = std::vector<int>;
  const int ng = static_cast<int>(gens.size());
  auto mono_degree = [&](const Exps& e) {
    int s = 0;
    for (int i = 0; i < ng; ++i) s += e[i] * gens[i].degree;
    return s;
  };
  auto max_exp = [&](int i) {
    if (gens[i].degree % 2 == 1) return 1;
    if (gens[i].nilpotency) return *gens[i].nilpotency - 1;
    return top_degree / gens[i].degree;
  };

  // enumerate monomials of degree <= top
  std::vector<Exps> monos;
  Exps cur(static_cast<std::size_t>(ng), 0);
  std::function<void(int, int)> rec = [&](int i, int deg) {
    if (i == ng) {
      monos.push_back(cur);
      return;
    }
    for (int e = 0; e <= max_exp(i) && deg + e * gens[i].degree <= top_degree; ++e) {
      cur[i] = e;
      rec(i + 1, deg + e * gens[i].degree);
    }
    cur[i] = 0;
  };
  rec(0, 0);
  std::stable_sort(monos.begin(), monos.end(), [&](const Exps& a, const Exps& b) {
    int da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db;
    return a > b;  // x1 before x2, x1x2 before x1x3
  });

  auto label = [&](const Exps& e) {
    std::string s;
    for (int i = 0; i < ng; ++i) {
      if (e[i] == 0) continue;
      s += gens[i].name;
      if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? std::string("1") : s;
  };

  std::vector<GradedBasis::Element> elems;
  std::map<Exps, int> index;
  for (std::size_t i = 0; i < monos.size(); ++i) {
    elems.push_back({label(monos[i]), mono_degree(monos[i])});
    index[monos[i]] = static_cast<int>(i);
  }
  auto basis = std::make_shared<const GradedBasis>(elems, top_degree);

  // product of monomials: (sign, exps) or nullopt when zero / out of range
  auto mono_mul = [&](const Exps& a, const Exps& b) -> std::optional<std::pair<int, Exps>> {
    Exps r(static_cast<std::size_t>(ng));
    for (int i = 0; i < ng; ++i) {
      r[i] = a[i] + b[i];
      if (r[i] > max_exp(i) && (gens[i].degree % 2 == 1 || gens[i].nilpotency)) return std::nullopt;
    }
    if (mono_degree(r) > top_degree) return std::nullopt;
    long odd = 0;
    for (int j = 0; j < ng; ++j)
      for (int i = j + 1; i < ng; ++i)
        odd += static_cast<long>(b[j]) * a[i] * gens[j].degree * gens[i].degree;
    return std::make_pair((odd % 2) ? -1 : 1, r);
  };

  GradedMap<K> mu(basis, 2, 1, 0);
  for (const auto& a : monos)
    for (const auto& b : monos)
      if (auto p = mono_mul(a, b)) mu.add(Word{index[a], index[b]}, Word{index[p->second]}, K(p->first));

  // Δ(m): product over the generator factors of (g⊗1 + 1⊗g)
  GradedMap<K> delta(basis, 1, 2, 0);
  for (const auto& m : monos) {
    std::map<std::pair<Exps, Exps>, K> acc;
    Exps zero(static_cast<std::size_t>(ng), 0);
    acc[{zero, zero}] = K(1);
    for (int g = 0; g < ng; ++g) {
      for (int rep = 0; rep < m[g]; ++rep) {
        Exps eg = zero;
        eg[g] = 1;
        std::map<std::pair<Exps, Exps>, K> next;
        auto put = [&](const Exps& l, const Exps& r, const K& c) {
          if (c.is_zero()) return;
          auto [it, ins] = next.try_emplace({l, r}, c);
          if (!ins) {
            it->second += c;
            if (it->second.is_zero()) next.erase(it);
          }
        };
        for (const auto& [lr, c] : acc) {
          const auto& [l, r] = lr;
          // (l⊗r)(g⊗1) = (-1)^{|r||g|} lg⊗r
          if (auto p = mono_mul(l, eg)) {
            long s = static_cast<long>(mono_degree(r)) * gens[g].degree;
            put(p->second, r, c * K(p->first) * sign<K>(s));
          }
          // (l⊗r)(1⊗g) = l⊗rg
          if (auto p = mono_mul(r, eg)) put(l, p->second, c * K(p->first));
        }
        acc = std::move(next);
      }
    }
    for (const auto& [lr, c] : acc) delta.add(Word{index[m]}, Word{index[lr.first], index[lr.second]}, c);
  }

  // d(m) = Σ ± f₁…d(fᵢ)…f_r over the factor sequence
  std::vector<std::map<Exps, K>> dgen(static_cast<std::size_t>(ng));
  for (const auto& [g, terms] : diff)
    for (const auto& [e, c] : terms) {
      Exps ee = e;
      ee.resize(static_cast<std::size_t>(ng), 0);
      dgen[static_cast<std::size_t>(g)][ee] += K::parse(c);
    }
  GradedMap<K> d(basis, 1, 1, 1);
  for (const auto& m : monos) {
    std::vector<int> factors;
    for (int g = 0; g < ng; ++g)
      for (int rep = 0; rep < m[g]; ++rep) factors.push_back(g);
    std::map<Exps, K> out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      long pre_deg = 0;
      Exps prefix(static_cast<std::size_t>(ng), 0), suffix(static_cast<std::size_t>(ng), 0);
      for (std::size_t j = 0; j < i; ++j) {
        prefix[factors[j]] += 1;
        pre_deg += gens[factors[j]].degree;
      }
      for (std::size_t j = i + 1; j < factors.size(); ++j) suffix[factors[j]] += 1;
      // prefix and suffix are products of generators in canonical order,
      // so as monomials they carry no reordering sign themselves.
      for (const auto& [e, c] : dgen[static_cast<std::size_t>(factors[i])]) {
        auto p1 = mono_mul(prefix, e);
        if (!p1) continue;
        auto p2 = mono_mul(p1->second, suffix);
        if (!p2) continue;
        K v = c * K(p1->first) * K(p2->first) * sign<K>(pre_deg);
        out[p2->second] += v;
      }
    }
    for (const auto& [e, c] : out)
      if (!c.is_zero()) d.add(Word{index[m]}, Word{index.at(e)}, c);
  }

  DGHopfPresentation<K> H;
  H.name = name;
  H.algebra = {basis, mu, d, truncated};
  H.coalgebra = {basis, delta, d, truncated};
  H.antipode = compute_antipode(mu, delta);
  for (int g = 0; g < ng; ++g) {
    Exps e(static_cast<std::size_t>(ng), 0);
    e[g] = 1;
    if (index.count(e)) H.generators.push_back(index[e]);
  }
  return H;
}

template <Field K>
DGHopfPresentation<K> exterior_example(int n) {
  std::vector<GeneratorSpec> gens;
  if (n == 1) gens.push_back({"x", 1, {}});
  else
    for (int i = 1; i <= n; ++i) gens.push_back({"x" + std::to_string(i), 1, {}});
  return monomial_hopf_algebra<K>("lambda" + std::to_string(n), gens, {}, n, false);
}

// Λ(x,y), |x|=1, |y|=2, dx=y, as its slice of degree <= top.
template <Field K>
DGHopfPresentation<K> acyclic_example(int top_degree) {
  std::vector<GeneratorSpec> gens{{"x", 1, {}}, {"y", 2, {}}};
  std::map<int, GeneratorDifferential> diff{{0, {{{0, 1}, "1"}}}};
  return monomial_hopf_algebra<K>("acyclic", gens, diff, top_degree, true);
}

// k[x]/(x^p), |x| = 2, x primitive.
template <Field K>
DGHopfPresentation<K> fp_trunc_example(int p) {
  std::vector<GeneratorSpec> gens{{"x", 2, p}};
  return monomial_hopf_algebra<K>("fp-trunc", gens, {}, 2 * (p - 1), false);
}

}  // namespace dghopf

#endif

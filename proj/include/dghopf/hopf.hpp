#ifndef DGHOPF_HOPF_HPP
#define DGHOPF_HOPF_HPP

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "graded.hpp"

namespace dghopf {

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <Field K>
struct DGAlgebraPresentation {
  BasisPtr basis;
  GradedMap<K> mu;  // H⊗H -> H, unit rows included
  GradedMap<K> d;   // H -> H, degree +1
  // The basis is the degree <= top slice of a larger algebra; products
  // and differentials landing above the top degree are unknown, not zero.
  bool truncated = false;
};

template <Field K>
struct DGCoalgebraPresentation {
  BasisPtr basis;
  GradedMap<K> delta;  // H -> H⊗H, counit parts included
  GradedMap<K> d;
  bool truncated = false;
};

template <Field K>
struct DGHopfPresentation {
  std::string name;
  DGAlgebraPresentation<K> algebra;
  DGCoalgebraPresentation<K> coalgebra;
  GradedMap<K> antipode;
  std::optional<GradedMap<K>> supplied_antipode;
  std::vector<int> generators;  // declared free graded-commutative generators

  const BasisPtr& basis() const { return algebra.basis; }
  const GradedMap<K>& mu() const { return algebra.mu; }
  const GradedMap<K>& delta() const { return coalgebra.delta; }
  const GradedMap<K>& d() const { return algebra.d; }
  bool truncated() const { return algebra.truncated; }
  int top_degree() const { return basis()->top_degree(); }
};

template <Field K>
GradedMap<K> unit_map(const BasisPtr& b) {
  GradedMap<K> eta(b, 0, 1, 0);
  eta.add(Word{}, Word{0}, K(1));
  return eta;
}

template <Field K>
GradedMap<K> counit_map(const BasisPtr& b) {
  GradedMap<K> eps(b, 1, 0, 0);
  eps.add(Word{0}, Word{}, K(1));
  return eps;
}

/*
 * Dense lookup tables for μ, Δ, d, used by the word-level operators.
 */
template <Field K>
class StructureTables {
 public:
  using Pair = std::pair<int, K>;
  struct Split {
    int left, right;
    K coeff;
  };

  StructureTables() = default;
  StructureTables(const GradedMap<K>& mu, const GradedMap<K>& delta, const GradedMap<K>& d) : basis_(mu.source_basis()) {
    n_ = basis_->size();
    mu_.assign(static_cast<std::size_t>(n_ * n_), {});
    delta_.assign(static_cast<std::size_t>(n_), {});
    d_.assign(static_cast<std::size_t>(n_), {});
    for (const auto& [s, v] : mu.columns())
      for (const auto& [t, c] : v) mu_[static_cast<std::size_t>(s[0] * n_ + s[1])].push_back({t[0], c});
    for (const auto& [s, v] : delta.columns())
      for (const auto& [t, c] : v) delta_[static_cast<std::size_t>(s[0])].push_back({t[0], t[1], c});
    for (const auto& [s, v] : d.columns())
      for (const auto& [t, c] : v) d_[static_cast<std::size_t>(s[0])].push_back({t[0], c});
  }
  explicit StructureTables(const DGHopfPresentation<K>& h) : StructureTables(h.mu(), h.delta(), h.d()) {}

  const GradedBasis& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  int size() const { return n_; }
  int deg(int i) const { return basis_->degree(i); }
  const std::vector<Pair>& mu(int a, int b) const { return mu_[static_cast<std::size_t>(a * n_ + b)]; }
  const std::vector<Split>& delta(int a) const { return delta_[static_cast<std::size_t>(a)]; }
  const std::vector<Pair>& d(int a) const { return d_[static_cast<std::size_t>(a)]; }

 private:
  BasisPtr basis_;
  int n_ = 0;
  std::vector<std::vector<Pair>> mu_;
  std::vector<std::vector<Split>> delta_;
  std::vector<std::vector<Pair>> d_;
};

// ---------------------------------------------------------------------------
// Validation reports

struct AxiomResult {
  std::string name;
  bool passed = true;
  std::size_t residual_entries = 0;
  std::string first_residual;  // empty when passed
};

struct ValidityReport {
  std::vector<AxiomResult> axioms;
  bool passed() const {
    for (const auto& a : axioms)
      if (!a.passed) return false;
    return true;
  }
  const AxiomResult* first_failure() const {
    for (const auto& a : axioms)
      if (!a.passed) return &a;
    return nullptr;
  }
  void append(const ValidityReport& o) { axioms.insert(axioms.end(), o.axioms.begin(), o.axioms.end()); }
};

namespace detail {

// Residual restricted to sources whose outputs stay inside the known
// degree range: source degree + shift <= cap.
template <Field K>
AxiomResult residual_result(const std::string& name, const GradedMap<K>& residual, std::optional<int> cap, int shift) {
  GradedMap<K> r = residual;
  if (cap) {
    const auto& b = *residual.source_basis();
    r = residual.restrict_sources([&](const Word& s) { return b.degree(s) + shift <= *cap; });
  }
  AxiomResult a;
  a.name = name;
  a.passed = r.is_zero();
  a.residual_entries = r.nnz();
  if (auto e = r.first_nonzero()) a.first_residual = r.describe_entry(*e);
  return a;
}

}  // namespace detail

template <Field K>
ValidityReport validate_dga(const DGAlgebraPresentation<K>& A) {
  const auto& b = A.basis;
  std::optional<int> cap;
  if (A.truncated) cap = b->top_degree();
  auto id1 = GradedMap<K>::identity(b, 1);
  const auto& mu = A.mu;
  const auto& d = A.d;
  auto eta = unit_map<K>(b);
  ValidityReport rep;
  rep.axioms.push_back(detail::residual_result<K>(
      "associativity", compose(mu, tensor_of_maps(mu, id1)) - compose(mu, tensor_of_maps(id1, mu)), cap, 0));
  rep.axioms.push_back(
      detail::residual_result<K>("left unit", compose(mu, tensor_of_maps(eta, id1)) - id1, cap, 0));
  rep.axioms.push_back(
      detail::residual_result<K>("right unit", compose(mu, tensor_of_maps(id1, eta)) - id1, cap, 0));
  rep.axioms.push_back(detail::residual_result<K>("d squared", compose(d, d), cap, 2));
  rep.axioms.push_back(detail::residual_result<K>("d of unit", compose(d, eta), cap, 1));
  auto leibniz = compose(d, mu) - compose(mu, tensor_of_maps(d, id1) + tensor_of_maps(id1, d));
  rep.axioms.push_back(detail::residual_result<K>("Leibniz rule", leibniz, cap, 1));
  return rep;
}

template <Field K>
ValidityReport validate_dgc(const DGCoalgebraPresentation<K>& C) {
  const auto& b = C.basis;
  std::optional<int> cap;
  if (C.truncated) cap = b->top_degree();
  auto id1 = GradedMap<K>::identity(b, 1);
  const auto& D = C.delta;
  const auto& d = C.d;
  auto eps = counit_map<K>(b);
  ValidityReport rep;
  rep.axioms.push_back(detail::residual_result<K>(
      "coassociativity", compose(tensor_of_maps(D, id1), D) - compose(tensor_of_maps(id1, D), D), cap, 0));
  rep.axioms.push_back(
      detail::residual_result<K>("left counit", compose(tensor_of_maps(eps, id1), D) - id1, cap, 0));
  rep.axioms.push_back(
      detail::residual_result<K>("right counit", compose(tensor_of_maps(id1, eps), D) - id1, cap, 0));
  rep.axioms.push_back(detail::residual_result<K>("d squared (coalgebra)", compose(d, d), cap, 2));
  auto coder = compose(D, d) - compose(tensor_of_maps(d, id1) + tensor_of_maps(id1, d), D);
  rep.axioms.push_back(detail::residual_result<K>("coderivation rule", coder, cap, 1));
  return rep;
}

/*
 * S(1) = 1 and, for |x| > 0, μ(1⊗S)Δ(x) = 0 solved for S(x): the
 * 1⊗x term of Δ(x) contributes S(x) itself, all other terms involve S on
 * strictly lower degrees.
 */
template <Field K>
GradedMap<K> compute_antipode(const GradedMap<K>& mu, const GradedMap<K>& delta) {
  const auto& b = mu.source_basis();
  GradedMap<K> S(b, 1, 1, 0);
  std::vector<WordVec<K>> val(static_cast<std::size_t>(b->size()));
  val[0][Word{0}] = K(1);
  std::vector<int> order(static_cast<std::size_t>(b->size()));
  for (int i = 0; i < b->size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return b->degree(x) < b->degree(y); });
  for (int x : order) {
    if (x == 0) continue;
    WordVec<K> acc;
    for (const auto& [t, c] : delta.apply(Word{x})) {
      if (t[0] == 0) continue;  // 1⊗y terms: counit law leaves only 1⊗x
      for (const auto& [u, e] : val[static_cast<std::size_t>(t[1])])
        add_scaled(acc, mu.apply(Word{t[0], u[0]}), c * e);
    }
    WordVec<K> sx;
    add_scaled(sx, acc, K(-1));
    val[static_cast<std::size_t>(x)] = sx;
  }
  for (int x = 0; x < b->size(); ++x) S.add_column(Word{x}, val[static_cast<std::size_t>(x)]);
  return S;
}

template <Field K>
ValidityReport validate_hopf(const DGHopfPresentation<K>& H) {
  ValidityReport rep = validate_dga(H.algebra);
  rep.append(validate_dgc(H.coalgebra));
  const auto& b = H.basis();
  std::optional<int> cap;
  if (H.truncated()) cap = b->top_degree();
  auto id1 = GradedMap<K>::identity(b, 1);
  const auto& mu = H.mu();
  const auto& D = H.delta();
  auto eta = unit_map<K>(b);
  auto eps = counit_map<K>(b);
  auto swap23 = permutation_map<K>(b, transposition(4, 2, 3));
  auto bialg = compose(D, mu) - compose(compose(tensor_of_maps(mu, mu), swap23), tensor_of_maps(D, D));
  rep.axioms.push_back(detail::residual_result<K>("bialgebra compatibility", bialg, cap, 0));
  rep.axioms.push_back(
      detail::residual_result<K>("counit multiplicative", compose(eps, mu) - tensor_of_maps(eps, eps), cap, 0));
  rep.axioms.push_back(detail::residual_result<K>(
      "unit comultiplicative", compose(D, eta) - tensor_of_maps(eta, eta), cap, 0));
  // The antipode is always recomputed from μ and Δ.
  auto S = compute_antipode(mu, D);
  auto ee = compose(eta, eps);
  rep.axioms.push_back(detail::residual_result<K>(
      "antipode left", compose(compose(mu, tensor_of_maps(S, id1)), D) - ee, cap, 0));
  rep.axioms.push_back(detail::residual_result<K>(
      "antipode right", compose(compose(mu, tensor_of_maps(id1, S)), D) - ee, cap, 0));
  auto swap12 = permutation_map<K>(b, transposition(2, 1, 2));
  auto anti = compose(S, mu) - compose(compose(mu, tensor_of_maps(S, S)), swap12);
  rep.axioms.push_back(detail::residual_result<K>("antipode antimultiplicative", anti, cap, 0));
  rep.axioms.push_back(
      detail::residual_result<K>("antipode commutes with d", compose(S, H.d()) - compose(H.d(), S), cap, 1));
  if (!(S == H.antipode)) {
    rep.axioms.push_back(detail::residual_result<K>("stored antipode matches recursion", S - H.antipode, cap, 0));
  }
  if (H.supplied_antipode) {
    rep.axioms.push_back(
        detail::residual_result<K>("supplied antipode agrees", *H.supplied_antipode - S, cap, 0));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// A(n) and C(m) relation sums

template <Field K>
struct AnFamily {
  BasisPtr basis;
  std::vector<GradedMap<K>> maps;  // maps[l-1] = μ^(l), degree 2-l
};

template <Field K>
struct CmFamily {
  BasisPtr basis;
  std::vector<GradedMap<K>> maps;  // maps[l-1] = Δ^(l), degree 2-l
};

template <Field K>
AnFamily<K> strict_an_family(const DGAlgebraPresentation<K>& A, int n) {
  AnFamily<K> f{A.basis, {}};
  for (int l = 1; l <= n; ++l) {
    if (l == 1) f.maps.push_back(A.d);
    else if (l == 2) f.maps.push_back(A.mu);
    else f.maps.emplace_back(A.basis, l, 1, 2 - l);
  }
  return f;
}

template <Field K>
CmFamily<K> strict_cm_family(const DGCoalgebraPresentation<K>& C, int m) {
  CmFamily<K> f{C.basis, {}};
  for (int l = 1; l <= m; ++l) {
    if (l == 1) f.maps.push_back(C.d);
    else if (l == 2) f.maps.push_back(C.delta);
    else f.maps.emplace_back(C.basis, 1, l, 2 - l);
  }
  return f;
}

struct RelationResidual {
  int ell;
  bool zero;
  std::size_t entries;
  std::string first_residual;
};

namespace detail {
inline long an_sign_exponent(int i, int k, int ell) { return static_cast<long>(i) + i * k + ell * k + k; }

template <Field K>
RelationResidual finish_relation(int ell, const GradedMap<K>& r) {
  RelationResidual out{ell, r.is_zero(), r.nnz(), {}};
  if (auto e = r.first_nonzero()) out.first_residual = r.describe_entry(*e);
  return out;
}
}  // namespace detail

// Σ_{j+k=ℓ+1} Σ_{0<=i<j} (-1)^{i+ik+ℓk+k} μ^(j)∘(1^{⊗i}⊗μ^(k)⊗1^{⊗(j-i-1)})
template <Field K>
GradedMap<K> an_relation(const AnFamily<K>& fam, int ell) {
  GradedMap<K> total(fam.basis, ell, 1, 3 - ell);
  auto get = [&](int l) -> std::optional<GradedMap<K>> {
    if (l < 1 || l > static_cast<int>(fam.maps.size())) return std::nullopt;
    return fam.maps[static_cast<std::size_t>(l - 1)];
  };
  for (int j = 1; j <= ell; ++j) {
    int k = ell + 1 - j;
    auto mj = get(j), mk = get(k);
    if (!mj || !mk || mj->is_zero() || mk->is_zero()) continue;
    for (int i = 0; i < j; ++i) {
      auto term = compose(*mj, sandwich(*mk, i, j - i - 1));
      total += term.scaled(sign<K>(detail::an_sign_exponent(i, k, ell)));
    }
  }
  return total;
}

template <Field K>
GradedMap<K> cm_relation(const CmFamily<K>& fam, int ell) {
  GradedMap<K> total(fam.basis, 1, ell, 3 - ell);
  auto get = [&](int l) -> std::optional<GradedMap<K>> {
    if (l < 1 || l > static_cast<int>(fam.maps.size())) return std::nullopt;
    return fam.maps[static_cast<std::size_t>(l - 1)];
  };
  for (int j = 1; j <= ell; ++j) {
    int k = ell + 1 - j;
    auto dj = get(j), dk = get(k);
    if (!dj || !dk || dj->is_zero() || dk->is_zero()) continue;
    for (int i = 0; i < j; ++i) {
      auto term = compose(sandwich(*dk, i, j - i - 1), *dj);
      total += term.scaled(sign<K>(detail::an_sign_exponent(i, k, ell)));
    }
  }
  return total;
}

template <Field K>
std::vector<RelationResidual> check_an_relations(const AnFamily<K>& fam, int n) {
  std::vector<RelationResidual> out;
  for (int ell = 1; ell <= n; ++ell) out.push_back(detail::finish_relation(ell, an_relation(fam, ell)));
  return out;
}

template <Field K>
std::vector<RelationResidual> check_cm_relations(const CmFamily<K>& fam, int m) {
  std::vector<RelationResidual> out;
  for (int ell = 1; ell <= m; ++ell) out.push_back(detail::finish_relation(ell, cm_relation(fam, ell)));
  return out;
}

// ---------------------------------------------------------------------------
// Interior tensor powers, word level (recursive definitions).
//   λⁿ(a⊗t) = Σ ± a'·t₁ ⊗ λⁿ⁻¹(a''⊗t₂…tₙ)
//   ρⁿ(t⊗a) = Σ ± ρⁿ⁻¹(t₁…tₙ₋₁⊗a') ⊗ tₙ·a''
//   λₘ(w)   = Σ ± w₁'·h ⊗ w₁'' ⊗ v       where λₘ₋₁(w₂…wₘ) = Σ h⊗v
//   ρₘ(w)   = Σ ± v ⊗ wₘ' ⊗ h·wₘ''       where ρₘ₋₁(w₁…wₘ₋₁) = Σ v⊗h
// with λ⁰ = ρ⁰ = ε and λ₀ = ρ₀ = η.

template <Field K>
WordVec<K> lambda_up(const StructureTables<K>& T, int a, const Word& t) {
  WordVec<K> out;
  if (t.empty()) {
    if (a == 0) out[Word{}] = K(1);
    return out;
  }
  if (t.size() == 1) {
    for (const auto& [o, c] : T.mu(a, t[0])) add_term(out, Word{o}, c);
    return out;
  }
  Word rest = slice(t, 1, t.size());
  for (const auto& sp : T.delta(a)) {
    const auto& prod = T.mu(sp.left, t[0]);
    if (prod.empty()) continue;
    K s = sp.coeff * sign<K>(static_cast<long>(T.deg(sp.right)) * T.deg(t[0]));
    auto tail = lambda_up(T, sp.right, rest);
    for (const auto& [o, c] : prod)
      for (const auto& [w, e] : tail) add_term(out, concat(Word{o}, w), s * c * e);
  }
  return out;
}

template <Field K>
WordVec<K> rho_up(const StructureTables<K>& T, const Word& t, int a) {
  WordVec<K> out;
  if (t.empty()) {
    if (a == 0) out[Word{}] = K(1);
    return out;
  }
  if (t.size() == 1) {
    for (const auto& [o, c] : T.mu(t[0], a)) add_term(out, Word{o}, c);
    return out;
  }
  std::size_t n = t.size();
  Word head = slice(t, 0, n - 1);
  for (const auto& sp : T.delta(a)) {
    const auto& prod = T.mu(t[n - 1], sp.right);
    if (prod.empty()) continue;
    K s = sp.coeff * sign<K>(static_cast<long>(T.deg(t[n - 1])) * T.deg(sp.left));
    auto front = rho_up(T, head, sp.left);
    for (const auto& [w, e] : front)
      for (const auto& [o, c] : prod) add_term(out, concat(w, Word{o}), s * c * e);
  }
  return out;
}

template <Field K>
WordVec<K> lambda_down(const StructureTables<K>& T, const Word& w) {
  WordVec<K> out;
  if (w.empty()) {
    out[Word{0}] = K(1);
    return out;
  }
  if (w.size() == 1) {
    for (const auto& sp : T.delta(w[0])) add_term(out, Word{sp.left, sp.right}, sp.coeff);
    return out;
  }
  auto inner = lambda_down(T, slice(w, 1, w.size()));
  for (const auto& sp : T.delta(w[0])) {
    for (const auto& [hv, e] : inner) {
      int h = hv[0];
      const auto& prod = T.mu(sp.left, h);
      if (prod.empty()) continue;
      K s = sp.coeff * e * sign<K>(static_cast<long>(T.deg(sp.right)) * T.deg(h));
      Word tail = slice(hv, 1, hv.size());
      for (const auto& [o, c] : prod) {
        Word r{o, sp.right};
        r.insert(r.end(), tail.begin(), tail.end());
        add_term(out, r, s * c);
      }
    }
  }
  return out;
}

template <Field K>
WordVec<K> rho_down(const StructureTables<K>& T, const Word& w) {
  WordVec<K> out;
  if (w.empty()) {
    out[Word{0}] = K(1);
    return out;
  }
  if (w.size() == 1) {
    for (const auto& sp : T.delta(w[0])) add_term(out, Word{sp.left, sp.right}, sp.coeff);
    return out;
  }
  std::size_t m = w.size();
  auto inner = rho_down(T, slice(w, 0, m - 1));
  for (const auto& [vh, e] : inner) {
    int h = vh.back();
    Word v = slice(vh, 0, vh.size() - 1);
    for (const auto& sp : T.delta(w[m - 1])) {
      const auto& prod = T.mu(h, sp.right);
      if (prod.empty()) continue;
      K s = sp.coeff * e * sign<K>(static_cast<long>(T.deg(h)) * T.deg(sp.left));
      for (const auto& [o, c] : prod) {
        Word r = v;
        r.push_back(sp.left);
        r.push_back(o);
        add_term(out, r, s * c);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Interior tensor powers as maps, built from the displayed products:
//   λⁿ = μ^{⊗n} ∘ σ ∘ Π_{i=n}^{2n-2} (Δ⊗1^{⊗(3n-i-2)})
//   λₘ = Π_{i=m}^{2m-2} (μ⊗1^{⊗i}) ∘ σ⁻¹ ∘ Δ^{⊗m}
// σ is the interleave with images (1 3 5 … 2n-1 2 4 … 2n). Products are
// written with i ascending from left to right, so the i = 2n-2 factor is
// applied first; it is the only one whose source is H⊗H^{⊗n}.

inline std::vector<int> interleave_permutation(int n) {
  std::vector<int> s(static_cast<std::size_t>(2 * n));
  for (int k = 0; k < n; ++k) {
    s[k] = 2 * k;
    s[n + k] = 2 * k + 1;
  }
  return s;
}

template <Field K>
GradedMap<K> tensor_power_of_map(const GradedMap<K>& f, int n) {
  GradedMap<K> r = f;
  for (int i = 1; i < n; ++i) r = tensor_of_maps(r, f);
  return r;
}

template <Field K>
std::pair<GradedMap<K>, GradedMap<K>> interior_bimodule_power(const DGHopfPresentation<K>& H, int n) {
  if (n < 1) throw ShapeError("interior_bimodule_power needs n >= 1");
  const auto& b = H.basis();
  if (n == 1) return {H.mu(), H.mu()};
  auto sigma = permutation_map<K>(b, interleave_permutation(n));
  auto mun = tensor_power_of_map(H.mu(), n);
  // left: h⊗t₁…tₙ -> h₁…hₙ⊗t₁…tₙ
  GradedMap<K> left = GradedMap<K>::identity(b, n + 1);
  for (int i = 2 * n - 2; i >= n; --i)
    left = compose(sandwich(H.delta(), 0, 3 * n - i - 2), left);
  GradedMap<K> lam = compose(compose(mun, sigma), left);
  // right: t₁…tₙ⊗h -> t₁…tₙ⊗h₁…hₙ
  GradedMap<K> right = GradedMap<K>::identity(b, n + 1);
  for (int i = 2 * n - 2; i >= n; --i) {
    int before = 3 * n - i - 2;  // factors left of the one being split
    right = compose(sandwich(H.delta(), before, 0), right);
  }
  GradedMap<K> rho = compose(compose(mun, sigma), right);
  return {lam, rho};
}

template <Field K>
std::pair<GradedMap<K>, GradedMap<K>> interior_bicomodule_power(const DGHopfPresentation<K>& H, int m) {
  if (m < 1) throw ShapeError("interior_bicomodule_power needs m >= 1");
  const auto& b = H.basis();
  if (m == 1) return {H.delta(), H.delta()};
  auto sinv = permutation_map<K>(b, inverse_permutation(interleave_permutation(m)));
  auto dm = tensor_power_of_map(H.delta(), m);
  GradedMap<K> lam = compose(sinv, dm);
  for (int i = 2 * m - 2; i >= m; --i) lam = compose(sandwich(H.mu(), 0, i), lam);
  GradedMap<K> rho = compose(sinv, dm);
  for (int i = 2 * m - 2; i >= m; --i) rho = compose(sandwich(H.mu(), i, 0), rho);
  return {lam, rho};
}

// Word-level operators materialized over every word of the source arity.
template <Field K>
GradedMap<K> lambda_up_map(const StructureTables<K>& T, int n) {
  GradedMap<K> f(T.basis_ptr(), n + 1, n, 0);
  for (const auto& w : T.basis().words(n + 1)) f.add_column(w, lambda_up(T, w[0], slice(w, 1, w.size())));
  return f;
}
template <Field K>
GradedMap<K> rho_up_map(const StructureTables<K>& T, int n) {
  GradedMap<K> f(T.basis_ptr(), n + 1, n, 0);
  for (const auto& w : T.basis().words(n + 1)) f.add_column(w, rho_up(T, slice(w, 0, w.size() - 1), w.back()));
  return f;
}
template <Field K>
GradedMap<K> lambda_down_map(const StructureTables<K>& T, int m) {
  GradedMap<K> f(T.basis_ptr(), m, m + 1, 0);
  for (const auto& w : T.basis().words(m)) f.add_column(w, lambda_down(T, w));
  return f;
}
template <Field K>
GradedMap<K> rho_down_map(const StructureTables<K>& T, int m) {
  GradedMap<K> f(T.basis_ptr(), m, m + 1, 0);
  for (const auto& w : T.basis().words(m)) f.add_column(w, rho_down(T, w));
  return f;
}

// Graded commutativity μ = μ∘(1,2), needed by the Harrison complex.
template <Field K>
bool is_graded_commutative(const DGAlgebraPresentation<K>& A) {
  auto swap12 = permutation_map<K>(A.basis, transposition(2, 1, 2));
  auto r = A.mu - compose(A.mu, swap12);
  if (A.truncated) {
    const auto& b = *A.basis;
    r = r.restrict_sources([&](const Word& s) { return b.degree(s) <= b.top_degree(); });
  }
  return r.is_zero();
}

}  // namespace dghopf

#endif

#ifndef DGHOPF_DEFORMATION_HPP
#define DGHOPF_DEFORMATION_HPP

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cohomology.hpp"
#include "resolutions.hpp"

namespace dghopf {

class DeformationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/*
 * d_t = Σ tᵏ d_k, μ_t = Σ tᵏ μ_k, Δ_t = Σ tᵏ Δ_k modulo t^{N+1}.
 * Index 0 holds the base structure; higher coefficients are normalized
 * cochains in tridegrees (1,1,1), (0,2,1), (0,1,2).
 */
template <Field K>
struct TruncatedDeformation {
  std::shared_ptr<const DGHopfPresentation<K>> base;
  std::vector<GradedMap<K>> d, mu, delta;

  int order() const { return static_cast<int>(d.size()) - 1; }
};

// φ_t = 1 + Σ tᵏ φ_k, index 0 is the identity.
template <Field K>
struct GaugeTransformation {
  std::vector<GradedMap<K>> phi;
  int order() const { return static_cast<int>(phi.size()) - 1; }
};

struct DeformationCheck {
  std::string condition;  // empty when valid
  int order = 0;
  bool passed() const { return condition.empty(); }
};

enum class ClassStatus { cocycle_verified, exact_with_witness, nonzero_class };

inline std::string class_status_name(ClassStatus s) {
  switch (s) {
    case ClassStatus::cocycle_verified: return "cocycle-verified";
    case ClassStatus::exact_with_witness: return "exact-with-witness";
    case ClassStatus::nonzero_class: return "nonzero-class";
  }
  return "";
}

template <Field K>
struct ObstructionClass {
  int order = 0;
  TotalCochain<K> residual;  // total degree 3
  bool cocycle = false;
  ClassStatus status = ClassStatus::cocycle_verified;
  SparseVec<K> witness;  // D_C(witness) = -residual when exact
  int rank_boundaries = 0;
  int rank_augmented = 0;
};

template <Field K>
struct ExtendResult {
  bool extended = false;
  TruncatedDeformation<K> deformation;
  ObstructionClass<K> obstruction;
};

template <Field K>
struct TrivializeResult {
  bool trivialized = false;
  GaugeTransformation<K> gauge;
  int blocking_order = 0;           // first order whose coefficient is not a coboundary
  TotalCochain<K> blocking_class;   // that coefficient
  int rank_boundaries = 0;
  int rank_augmented = 0;
};

// Residuals of the six structure conditions at one power of t.
template <Field K>
struct OrderResiduals {
  GradedMap<K> dd, assoc, coassoc, bialg, der, coder;
};

/*
 * Deformation theory of one d.g. Hopf algebra over the restricted q = 3
 * window of its total complex.
 */
template <Field K>
class DeformationContext {
 public:
  explicit DeformationContext(DGHopfPresentation<K> H)
      : base_(std::make_shared<const DGHopfPresentation<K>>(std::move(H))) {
    if (base_->truncated())
      throw DeformationError("deformations of truncated presentations are not supported: products above the top "
                             "degree are unknown");
    ComplexWindow w;
    cx_ = std::make_shared<const CochainComplex<K>>(*base_, w);
    ac_ = std::make_shared<AssembledComplex<K>>(cx_);
    const auto& b = base_->basis();
    id_ = GradedMap<K>::identity(b, 1);
    p23_ = permutation_map<K>(b, {0, 2, 1, 3});
  }

  const DGHopfPresentation<K>& base() const { return *base_; }
  const CochainComplex<K>& complex() const { return *cx_; }
  const AssembledComplex<K>& assembled() const { return *ac_; }

  TruncatedDeformation<K> trivial(int N) const {
    TruncatedDeformation<K> D;
    D.base = base_;
    const auto& b = base_->basis();
    D.d.push_back(base_->d());
    D.mu.push_back(base_->mu());
    D.delta.push_back(base_->delta());
    for (int k = 1; k <= N; ++k) {
      D.d.emplace_back(b, 1, 1, 1);
      D.mu.emplace_back(b, 2, 1, 0);
      D.delta.emplace_back(b, 1, 2, 0);
    }
    return D;
  }

  GaugeTransformation<K> identity_gauge(int N) const {
    GaugeTransformation<K> g;
    g.phi.push_back(id_);
    for (int k = 1; k <= N; ++k) g.phi.emplace_back(base_->basis(), 1, 1, 0);
    return g;
  }

  // ---------------------------------------------------------------------
  // Residuals

  // t^k coefficients, optionally leaving out the order-k coefficients.
  OrderResiduals<K> residuals(const TruncatedDeformation<K>& D, int k, bool without_top = false) const {
    const auto& b = base_->basis();
    auto at = [&](const std::vector<GradedMap<K>>& v, int a) -> const GradedMap<K>& {
      return v[static_cast<std::size_t>(a)];
    };
    auto use = [&](int a) { return !(without_top && a == k); };
    OrderResiduals<K> R{GradedMap<K>(b, 1, 1, 2), GradedMap<K>(b, 3, 1, 0), GradedMap<K>(b, 1, 3, 0),
                        GradedMap<K>(b, 2, 2, 0), GradedMap<K>(b, 2, 1, 1), GradedMap<K>(b, 1, 2, 1)};
    for (int a = 0; a <= k; ++a) {
      int c = k - a;
      if (!use(a) || !use(c)) continue;
      R.dd += compose(at(D.d, a), at(D.d, c));
      R.assoc += compose(at(D.mu, a), tensor_of_maps(at(D.mu, c), id_)) -
                 compose(at(D.mu, a), tensor_of_maps(id_, at(D.mu, c)));
      R.coassoc += compose(tensor_of_maps(at(D.delta, c), id_), at(D.delta, a)) -
                   compose(tensor_of_maps(id_, at(D.delta, c)), at(D.delta, a));
      auto dder = tensor_of_maps(at(D.d, a), id_) + tensor_of_maps(id_, at(D.d, a));
      R.der += compose(at(D.d, a), at(D.mu, c)) - compose(at(D.mu, c), dder);
      R.coder += compose(at(D.delta, c), at(D.d, a)) - compose(dder, at(D.delta, c));
      R.bialg += compose(at(D.delta, a), at(D.mu, c));
    }
    for (int a = 0; a <= k; ++a)
      for (int c = 0; a + c <= k; ++c)
        for (int e = 0; a + c + e <= k; ++e) {
          int f = k - a - c - e;
          if (!use(a) || !use(c) || !use(e) || !use(f)) continue;
          R.bialg -= compose(tensor_of_maps(at(D.mu, a), at(D.mu, c)),
                             compose(p23_, tensor_of_maps(at(D.delta, e), at(D.delta, f))));
        }
    return R;
  }

  // All six conditions modulo t^{N+1}; the first violation is reported.
  DeformationCheck check(const TruncatedDeformation<K>& D) const {
    for (int k = 0; k <= D.order(); ++k) {
      auto R = residuals(D, k);
      const std::pair<const char*, const GradedMap<K>*> parts[] = {
          {"d_t squared", &R.dd},       {"associativity", &R.assoc}, {"coassociativity", &R.coassoc},
          {"bialgebra compatibility", &R.bialg}, {"derivation", &R.der}, {"coderivation", &R.coder}};
      for (const auto& [name, g] : parts)
        if (!g->is_zero()) return {name, k};
    }
    return {};
  }

  // Total 3-cochain assembled from the residuals.
  TotalCochain<K> assemble(const OrderResiduals<K>& R) const {
    TotalCochain<K> f;
    auto put = [&](Tridegree t, const GradedMap<K>& g, int s) {
      auto n = normalize(g);
      if (!n.is_zero()) f.emplace(t, n.scaled(K(s)));
    };
    put({2, 1, 1}, R.dd, -1);
    put({1, 2, 1}, R.der, -1);
    put({1, 1, 2}, R.coder, -1);
    put({0, 3, 1}, R.assoc, 1);
    put({0, 2, 2}, R.bialg, -1);
    put({0, 1, 3}, R.coassoc, -1);
    return f;
  }

  // d₁ + μ₁ + Δ₁, or the order-k coefficients in general.
  TotalCochain<K> coefficient(const TruncatedDeformation<K>& D, int k) const {
    TotalCochain<K> f;
    auto put = [&](Tridegree t, const GradedMap<K>& g) {
      if (!g.is_zero()) f.emplace(t, g);
    };
    put({1, 1, 1}, D.d[static_cast<std::size_t>(k)]);
    put({0, 2, 1}, D.mu[static_cast<std::size_t>(k)]);
    put({0, 1, 2}, D.delta[static_cast<std::size_t>(k)]);
    return f;
  }

  TotalCochain<K> infinitesimal(const TruncatedDeformation<K>& D) const {
    if (D.order() < 1) throw DeformationError("a deformation of order 0 has no infinitesimal");
    auto c = check(D);
    if (!c.passed()) throw DeformationError("invalid deformation: " + c.condition + " fails at order t^" +
                                            std::to_string(c.order));
    auto x = coefficient(D, 1);
    if (!is_zero(D_C(x))) throw DeformationError("the infinitesimal is not a cocycle");
    return x;
  }

  TotalCochain<K> D_C(const TotalCochain<K>& f) const {
    auto r = cx_->total_differential(f);
    if (r.clipped || r.normalization_leak) throw DeformationError("D_C left the window");
    return r.value;
  }

  // ---------------------------------------------------------------------
  // Obstructions and extension

  // Obstruction to the order-k coefficients of D (which must satisfy all
  // conditions below t^k); D may be of order k-1 or higher.
  ObstructionClass<K> obstruction(const TruncatedDeformation<K>& D, int k) const {
    if (k < 1) throw DeformationError("obstructions start at order 1");
    TruncatedDeformation<K> lower = truncate(D, k - 1);
    auto c = check(lower);
    if (!c.passed())
      throw DeformationError("precondition fails: " + c.condition + " at order t^" + std::to_string(c.order));
    auto ext = truncate(lower, k);
    ObstructionClass<K> o;
    o.order = k;
    o.residual = assemble(residuals(ext, k, true));
    o.cocycle = is_zero(D_C(o.residual));
    if (!o.cocycle) throw DeformationError("obstruction at order " + std::to_string(k) + " is not a cocycle");
    SparseVec<K> target = scale(cx_->to_vector(o.residual, 3), K(-1));
    auto sol = solve_coboundary(*ac_, target, 3);
    o.rank_boundaries = sol.rank_boundaries;
    o.rank_augmented = sol.rank_augmented;
    if (sol.solved) {
      o.status = ClassStatus::exact_with_witness;
      o.witness = sol.witness;
    } else {
      o.status = ClassStatus::nonzero_class;
    }
    return o;
  }

  // Installs order-k coefficients solving D_C(x_k) = -o_k, plus an
  // optional cocycle, and re-validates modulo t^{k+1}.
  ExtendResult<K> extend(const TruncatedDeformation<K>& D, const TotalCochain<K>* extra_cocycle = nullptr) const {
    int k = D.order() + 1;
    ExtendResult<K> res;
    res.obstruction = obstruction(D, k);
    if (res.obstruction.status == ClassStatus::nonzero_class) return res;
    auto x = cx_->from_vector(res.obstruction.witness, 2);
    if (extra_cocycle) x = combine(x, K(1), *extra_cocycle, K(1));
    auto E = truncate(D, k);
    install(E, k, x);
    auto c = check(E);
    if (!c.passed())
      throw DeformationError("extension failed to validate: " + c.condition + " at order t^" + std::to_string(c.order));
    res.extended = true;
    res.deformation = std::move(E);
    return res;
  }

  // ---------------------------------------------------------------------
  // Gauge transformations

  // ψ = φ⁻¹ as a power series.
  GaugeTransformation<K> inverse(const GaugeTransformation<K>& g) const {
    GaugeTransformation<K> h;
    h.phi.push_back(id_);
    for (int k = 1; k <= g.order(); ++k) {
      GradedMap<K> s(base_->basis(), 1, 1, 0);
      for (int i = 1; i <= k; ++i)
        s -= compose(g.phi[static_cast<std::size_t>(i)], h.phi[static_cast<std::size_t>(k - i)]);
      h.phi.push_back(std::move(s));
    }
    return h;
  }

  // (g∘h)_t = φ^g_t ∘ φ^h_t
  GaugeTransformation<K> compose_gauges(const GaugeTransformation<K>& g, const GaugeTransformation<K>& h) const {
    int N = std::min(g.order(), h.order());
    GaugeTransformation<K> r;
    for (int k = 0; k <= N; ++k) {
      GradedMap<K> s(base_->basis(), 1, 1, 0);
      for (int i = 0; i <= k; ++i)
        s += compose(g.phi[static_cast<std::size_t>(i)], h.phi[static_cast<std::size_t>(k - i)]);
      r.phi.push_back(std::move(s));
    }
    return r;
  }

  /*
   * d' = φ⁻¹ d φ, μ' = φ⁻¹ μ (φ⊗φ), Δ' = (φ⊗φ)⁻¹ Δ φ modulo t^{N+1}.
   * The three defining identities are verified on the result.
   */
  TruncatedDeformation<K> apply_gauge(const TruncatedDeformation<K>& D, const GaugeTransformation<K>& g) const {
    const int N = D.order();
    if (g.order() < N) throw DeformationError("gauge order below deformation order");
    auto h = inverse(g);
    const auto& b = base_->basis();
    auto P = [](const auto& v, int i) -> const GradedMap<K>& { return v[static_cast<std::size_t>(i)]; };
    TruncatedDeformation<K> E;
    E.base = D.base;
    for (int k = 0; k <= N; ++k) {
      GradedMap<K> dk(b, 1, 1, 1), mk(b, 2, 1, 0), ck(b, 1, 2, 0);
      for (int a = 0; a <= k; ++a)
        for (int c = 0; a + c <= k; ++c) {
          int e = k - a - c;
          dk += compose(P(h.phi, a), compose(P(D.d, c), P(g.phi, e)));
          // the pair (φ_i ⊗ φ_j) splits e further
          for (int i = 0; i <= e; ++i) {
            auto pp = tensor_of_maps(P(g.phi, i), P(g.phi, e - i));
            mk += compose(P(h.phi, a), compose(P(D.mu, c), pp));
            auto qq = tensor_of_maps(P(h.phi, i), P(h.phi, e - i));
            ck += compose(qq, compose(P(D.delta, c), P(g.phi, a)));
          }
        }
      if (k == 0) {
        E.d.push_back(base_->d());
        E.mu.push_back(base_->mu());
        E.delta.push_back(base_->delta());
        if (!(dk == base_->d()) || !(mk == base_->mu()) || !(ck == base_->delta()))
          throw DeformationError("gauge transformation does not start with the identity");
        continue;
      }
      E.d.push_back(strip(dk, "d"));
      E.mu.push_back(strip(mk, "μ"));
      E.delta.push_back(strip(ck, "Δ"));
    }
    verify_equivalence(D, E, g);
    return E;
  }

  // d_t φ_t = φ_t d'_t, μ_t (φ_t⊗φ_t) = φ_t μ'_t, Δ_t φ_t = (φ_t⊗φ_t) Δ'_t
  void verify_equivalence(const TruncatedDeformation<K>& D, const TruncatedDeformation<K>& E,
                          const GaugeTransformation<K>& g) const {
    const auto& b = base_->basis();
    auto P = [](const auto& v, int i) -> const GradedMap<K>& { return v[static_cast<std::size_t>(i)]; };
    for (int k = 0; k <= D.order(); ++k) {
      GradedMap<K> r1(b, 1, 1, 1), r2(b, 2, 1, 0), r3(b, 1, 2, 0);
      for (int a = 0; a <= k; ++a) {
        int c = k - a;
        r1 += compose(P(D.d, a), P(g.phi, c)) - compose(P(g.phi, c), P(E.d, a));
        r2 -= compose(P(g.phi, c), P(E.mu, a));
        r3 += compose(P(D.delta, a), P(g.phi, c));
        for (int i = 0; i <= c; ++i) {
          auto pp = tensor_of_maps(P(g.phi, i), P(g.phi, c - i));
          r2 += compose(P(D.mu, a), pp);
          r3 -= compose(pp, P(E.delta, a));
        }
      }
      if (!r1.is_zero() || !r2.is_zero() || !r3.is_zero())
        throw DeformationError("gauge identities fail at order t^" + std::to_string(k));
    }
  }

  bool is_trivial(const TruncatedDeformation<K>& D) const {
    for (int k = 1; k <= D.order(); ++k)
      if (!is_zero(coefficient(D, k))) return false;
    return true;
  }

  /*
   * Order by order: with the coefficients below n already zero, the order-n
   * coefficient x_n is a cocycle; solve D_C(φ_n) = x_n and apply 1 + tⁿφ_n.
   */
  TrivializeResult<K> trivialize(const TruncatedDeformation<K>& D) const {
    const int N = D.order();
    auto c = check(D);
    if (!c.passed())
      throw DeformationError("invalid deformation: " + c.condition + " fails at order t^" + std::to_string(c.order));
    TrivializeResult<K> res;
    res.gauge = identity_gauge(N);
    auto cur = D;
    for (int n = 1; n <= N; ++n) {
      auto x = coefficient(cur, n);
      if (is_zero(x)) continue;
      auto sol = solve_coboundary(*ac_, cx_->to_vector(x, 2), 2);
      res.rank_boundaries = sol.rank_boundaries;
      res.rank_augmented = sol.rank_augmented;
      if (!sol.solved) {
        res.blocking_order = n;
        res.blocking_class = x;
        return res;
      }
      auto phi = cx_->from_vector(sol.witness, 1);
      auto step = identity_gauge(N);
      if (auto it = phi.find(Tridegree{0, 1, 1}); it != phi.end()) step.phi[static_cast<std::size_t>(n)] = it->second;
      cur = apply_gauge(cur, step);
      res.gauge = compose_gauges(res.gauge, step);
    }
    if (!is_trivial(apply_gauge(D, res.gauge))) throw DeformationError("composed gauge does not trivialize");
    res.trivialized = true;
    return res;
  }

  // ---------------------------------------------------------------------
  // Random generation (seeded, small integer coefficients)

  GaugeTransformation<K> random_gauge(int N, std::mt19937_64& rng, int spread = 2) const {
    auto g = identity_gauge(N);
    const auto& S = cx_->space(1);
    for (int k = 1; k <= N; ++k) {
      std::map<int, K> v;
      for (int i = 0; i < S.dim; ++i) v[i] = K(static_cast<long>(rng() % (2 * spread + 1)) - spread);
      auto f = cx_->from_vector(from_map(v), 1);
      if (auto it = f.find(Tridegree{0, 1, 1}); it != f.end()) g.phi[static_cast<std::size_t>(k)] = it->second;
    }
    return g;
  }

  // Random combination of a cocycle basis of total degree 2.
  TotalCochain<K> random_cocycle(std::mt19937_64& rng, int spread = 2) const {
    if (cocycles_.empty()) {
      ac_->matrix(2);
      cocycles_ = kernel_basis(ac_->restricted_matrix(2));
      if (cocycles_.empty()) cocycles_.push_back({});
    }
    std::map<int, K> acc;
    for (const auto& z : cocycles_) {
      K c(static_cast<long>(rng() % (2 * spread + 1)) - spread);
      for (const auto& [i, x] : z) acc[i] += c * x;
    }
    return cx_->from_vector(from_map(acc), 2);
  }

  // Valid to order N: random infinitesimal, then extensions plus random cocycles.
  TruncatedDeformation<K> random_deformation(int N, std::mt19937_64& rng) const {
    auto D = trivial(0);
    for (int k = 1; k <= N; ++k) {
      auto z = random_cocycle(rng);
      auto r = extend(D, &z);
      if (!r.extended) throw DeformationError("random deformation blocked at order " + std::to_string(k));
      D = std::move(r.deformation);
    }
    return D;
  }

  static TruncatedDeformation<K> truncate(const TruncatedDeformation<K>& D, int N) {
    TruncatedDeformation<K> E;
    E.base = D.base;
    const auto& b = D.base->basis();
    for (int k = 0; k <= N; ++k) {
      if (k <= D.order()) {
        E.d.push_back(D.d[static_cast<std::size_t>(k)]);
        E.mu.push_back(D.mu[static_cast<std::size_t>(k)]);
        E.delta.push_back(D.delta[static_cast<std::size_t>(k)]);
      } else {
        E.d.emplace_back(b, 1, 1, 1);
        E.mu.emplace_back(b, 2, 1, 0);
        E.delta.emplace_back(b, 1, 2, 0);
      }
    }
    return E;
  }

  // Overwrite the order-k coefficients with the components of x.
  static void install(TruncatedDeformation<K>& D, int k, const TotalCochain<K>& x) {
    const auto& b = D.base->basis();
    auto get = [&](Tridegree t, int m, int n, int p) {
      auto it = x.find(t);
      return it == x.end() ? GradedMap<K>(b, m, n, p) : it->second;
    };
    D.d[static_cast<std::size_t>(k)] = get({1, 1, 1}, 1, 1, 1);
    D.mu[static_cast<std::size_t>(k)] = get({0, 2, 1}, 2, 1, 0);
    D.delta[static_cast<std::size_t>(k)] = get({0, 1, 2}, 1, 2, 0);
  }

 private:
  GradedMap<K> strip(const GradedMap<K>& g, const char* what) const {
    auto n = normalize(g);
    if (!(n == g)) throw DeformationError(std::string("transported ") + what + " is not normalized");
    return n;
  }

  std::shared_ptr<const DGHopfPresentation<K>> base_;
  std::shared_ptr<const CochainComplex<K>> cx_;
  std::shared_ptr<AssembledComplex<K>> ac_;
  GradedMap<K> id_, p23_;
  mutable std::vector<SparseVec<K>> cocycles_;
};

}  // namespace dghopf

#endif

// Independent reference computations for the tests: dense elimination,
// brute-force permutation signs, and the cochain differentials written
// out as compositions of maps.
#ifndef DGHOPF_TESTS_ORACLES_HPP
#define DGHOPF_TESTS_ORACLES_HPP

#include <functional>
#include <utility>
#include <vector>

#include "dghopf/dghopf.hpp"

namespace oracle {

using namespace dghopf;

template <Field K>
using Dense = std::vector<std::vector<K>>;  // row major

template <Field K>
Dense<K> to_dense(const SparseMatrix<K>& M) {
  Dense<K> D(static_cast<std::size_t>(M.rows()), std::vector<K>(static_cast<std::size_t>(M.cols()), K(0)));
  for (int j = 0; j < M.cols(); ++j)
    for (const auto& [i, c] : M.col(j)) D[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c;
  return D;
}

// Textbook Gauss-Jordan elimination.
template <Field K>
int dense_rank(Dense<K> A) {
  if (A.empty()) return 0;
  std::size_t rows = A.size(), cols = A[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && A[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(A[piv], A[r]);
    K inv = A[r][c].inverse();
    for (auto& x : A[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || A[i][c].is_zero()) continue;
      K f = A[i][c];
      for (std::size_t k = 0; k < cols; ++k) A[i][k] -= f * A[r][k];
    }
    ++r;
  }
  return static_cast<int>(r);
}

template <Field K>
Dense<K> dense_product(const Dense<K>& A, const Dense<K>& B) {
  std::size_t n = A.size(), k = B.size(), m = B.empty() ? 0 : B[0].size();
  Dense<K> C(n, std::vector<K>(m, K(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      if (!A[i][l].is_zero())
        for (std::size_t j = 0; j < m; ++j) C[i][j] += A[i][l] * B[l][j];
  return C;
}

template <Field K>
bool dense_zero(const Dense<K>& A) {
  for (const auto& r : A)
    for (const auto& x : r)
      if (!x.is_zero()) return false;
  return true;
}

// Sign of moving factors by a sequence of adjacent swaps (bubble sort on
// the target positions), one Koszul sign per swap.
inline int brute_force_sign(const std::vector<int>& sigma, const std::vector<int>& degrees) {
  std::vector<std::pair<int, int>> f;  // (target position, degree)
  for (std::size_t i = 0; i < sigma.size(); ++i) f.push_back({sigma[i], degrees[i]});
  int s = 1;
  for (std::size_t pass = 0; pass < f.size(); ++pass)
    for (std::size_t i = 0; i + 1 < f.size(); ++i)
      if (f[i].first > f[i + 1].first) {
        if ((f[i].second & 1) && (f[i + 1].second & 1)) s = -s;
        std::swap(f[i], f[i + 1]);
      }
  return s;
}

inline int permutation_sign(const std::vector<int>& sigma) {
  std::vector<int> ones(sigma.size(), 1);
  return brute_force_sign(sigma, ones);
}

// ---------------------------------------------------------------------------
// The three component differentials of the triple complex, as
// compositions of maps (λⁿ, ρⁿ, λₘ, ρₘ from the closed forms).

enum class Part { d, del, delta };

template <Field K>
struct TripleOracle {
  const DGHopfPresentation<K>& H;
  std::map<int, std::pair<GradedMap<K>, GradedMap<K>>> up, down;

  explicit TripleOracle(const DGHopfPresentation<K>& h) : H(h) {}

  const std::pair<GradedMap<K>, GradedMap<K>>& bimod(int n) {
    auto it = up.find(n);
    if (it == up.end()) it = up.emplace(n, interior_bimodule_power(H, n)).first;
    return it->second;
  }
  const std::pair<GradedMap<K>, GradedMap<K>>& bicomod(int m) {
    auto it = down.find(m);
    if (it == down.end()) it = down.emplace(m, interior_bicomodule_power(H, m)).first;
    return it->second;
  }

  // d_C f = (-1)^p f∘d₍ₘ₋₂₎ - d₍ₙ₋₂₎∘f
  GradedMap<K> d(const GradedMap<K>& f) {
    int p = f.degree(), m = f.source_arity(), n = f.target_arity();
    const auto& b = H.basis();
    GradedMap<K> r = compose(internal_diff(b, H.d(), n - 2), f).scaled(K(-1));
    if (m >= 1) r += compose(f, internal_diff(b, H.d(), m - 2)).scaled(sign<K>(p));
    return normalize(r);
  }

  // ∂_C f = λⁿ∘(1⊗f) - f∘∂₍ₘ₋₁₎ + (-1)^{m+1} ρⁿ∘(f⊗1)
  GradedMap<K> del(const GradedMap<K>& f) {
    int m = f.source_arity(), n = f.target_arity();
    auto id = GradedMap<K>::identity(H.basis(), 1);
    const auto& [lam, rho] = bimod(n);
    GradedMap<K> r = compose(lam, tensor_of_maps(id, f)) + compose(rho, tensor_of_maps(f, id)).scaled(sign<K>(m + 1));
    if (m >= 1) r -= compose(f, bar_diff(H.algebra, m - 1));
    return normalize(r);
  }

  // δ_C f = (1⊗f)∘λₘ - δ₍ₙ₋₂₎∘f + (-1)^{n+1} (f⊗1)∘ρₘ
  GradedMap<K> delta(const GradedMap<K>& f) {
    int m = f.source_arity(), n = f.target_arity();
    auto id = GradedMap<K>::identity(H.basis(), 1);
    const auto& [lam, rho] = bicomod(m);
    GradedMap<K> r = compose(tensor_of_maps(id, f), lam) + compose(tensor_of_maps(f, id), rho).scaled(sign<K>(n + 1));
    if (n >= 1) r -= compose(cobar_diff(H.coalgebra, n - 2), f);
    return normalize(r);
  }

  GradedMap<K> apply(Part part, const GradedMap<K>& f) {
    switch (part) {
      case Part::d: return d(f);
      case Part::del: return del(f);
      case Part::delta: return delta(f);
    }
    return f;
  }
};

// Hochschild differentials with bimodule coefficients: d_B, ∂_B.
template <Field K>
GradedMap<K> hochschild_d(const DGAlgebraPresentation<K>& A, const Bimodule<K>& M, const GradedMap<K>& f) {
  int p = f.degree(), m = f.source_arity();
  GradedMap<K> r = compose(M.d, f).scaled(K(-1));
  if (m >= 1) r += compose(f, internal_diff(A.basis, A.d, m - 2)).scaled(sign<K>(p));
  return r;
}

template <Field K>
GradedMap<K> hochschild_del(const DGAlgebraPresentation<K>& A, const Bimodule<K>& M, const GradedMap<K>& f) {
  int p = f.degree(), m = f.source_arity();
  const auto& sb = *A.basis;
  GradedMap<K> r(A.basis, m + 1, M.basis, 1, p);
  for (const auto& u : sb.words(m + 1)) {
    WordVec<K> col;
    // λ(1⊗f): u₀·f(u₁…), Koszul sign (-1)^{p|u₀|}
    for (const auto& [t, c] : f.apply(slice(u, 1, u.size())))
      for (const auto& [o, e] : M.left(u[0], t[0])) add_term(col, Word{o}, sign<K>(static_cast<long>(p) * sb.degree(u[0])) * c * e);
    for (const auto& [t, c] : f.apply(slice(u, 0, m)))
      for (const auto& [o, e] : M.right(t[0], u[m])) add_term(col, Word{o}, sign<K>(m + 1) * c * e);
    r.add_column(u, col);
  }
  if (m >= 1) r -= compose(f, bar_diff(A, m - 1));
  return r;
}

// ---------------------------------------------------------------------------
// Entrywise comparison of two assembled differentials on a shared plane.

using Entry = std::tuple<Tridegree, Word, Word>;

template <Field K>
std::map<Entry, K> column_entries(const CochainComplex<K>& cx, const SparseMatrix<K>& M, int r, int j) {
  std::map<Entry, K> out;
  const auto& S1 = cx.space(r + 1);
  for (const auto& [i, c] : M.col(j)) out[S1.locate(i)] = c;
  return out;
}

// Columns of `a` agree with the matching columns of `b`, restricted to
// the rows of `b` lying in `a`'s plane; the bases must match too.
template <Field K>
bool plane_agrees(const CochainComplex<K>& a, const CochainComplex<K>& b, int r, unsigned mask, bool prefactors,
                  const std::function<bool(const Tridegree&)>& in_plane) {
  auto Ma = a.assemble_differential(r, mask, prefactors).matrix;
  auto Mb = b.assemble_differential(r, mask, prefactors).matrix;
  const auto& Sa = a.space(r);
  const auto& Sb = b.space(r);
  for (const auto& blk : Sa.blocks) {
    const auto* other = Sb.block(blk.tri);
    if (!other || other->dim != blk.dim || other->sources != blk.sources) return false;
  }
  for (const auto& blk : Sb.blocks)
    if (in_plane(blk.tri) && !Sa.block(blk.tri)) return false;
  for (int j = 0; j < Sa.dim; ++j) {
    auto [tri, s, t] = Sa.locate(j);
    int jb = Sb.block(tri)->index(s, t);
    auto ea = column_entries(a, Ma, r, j);
    auto eb = column_entries(b, Mb, r, jb);
    for (auto it = eb.begin(); it != eb.end();) it = in_plane(std::get<0>(it->first)) ? std::next(it) : eb.erase(it);
    if (ea != eb) return false;
  }
  return true;
}

}  // namespace oracle

#endif

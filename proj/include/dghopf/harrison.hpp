#ifndef DGHOPF_HARRISON_HPP
#define DGHOPF_HARRISON_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cohomology.hpp"

namespace dghopf {

template <Field K>
void require_characteristic_zero(const char* what) {
  if (K::characteristic() != 0)
    throw FieldError(std::string(what) + " needs a field of characteristic 0; the shuffle argument fails over " +
                     K::name());
}

// ---------------------------------------------------------------------------
// Shuffles

// (r, s)-shuffles as image lists: the first r factors keep their order,
// as do the last s.
inline std::vector<std::vector<int>> shuffles(int r, int s) {
  std::vector<std::vector<int>> out;
  int m = r + s;
  std::vector<int> pos(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) pos[i] = i;
  while (true) {
    std::vector<int> sigma(static_cast<std::size_t>(m));
    std::vector<char> used(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < r; ++i) {
      sigma[i] = pos[i];
      used[pos[i]] = 1;
    }
    int k = r;
    for (int j = 0; j < m; ++j)
      if (!used[j]) sigma[k++] = j;
    out.push_back(std::move(sigma));
    int i = r - 1;
    while (i >= 0 && pos[i] == m - r + i) --i;
    if (i < 0) break;
    ++pos[i];
    for (int j = i + 1; j < r; ++j) pos[j] = pos[j - 1] + 1;
  }
  return out;
}

inline int permutation_parity(const std::vector<int>& sigma) {
  int inv = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    for (std::size_t j = i + 1; j < sigma.size(); ++j)
      if (sigma[i] > sigma[j]) ++inv;
  return inv & 1;
}

// Σ_σ (-1)^σ σ·u over (r, m-r)-shuffles, Koszul signs from the action.
template <Field K>
WordVec<K> shuffle_sum(const GradedBasis& b, const Word& u, int r) {
  WordVec<K> out;
  for (const auto& sigma : shuffles(r, static_cast<int>(u.size()) - r)) {
    auto [w, ks] = permute_word(sigma, u, b);
    add_term(out, w, K(ks) * sign<K>(permutation_parity(sigma)));
  }
  return out;
}

/*
 * Harrison cochains in one Hochschild block: f with f(Σ(-1)^σ σ·u) = 0
 * for every split. Per source degree the admissible row functionals are
 * the annihilator of the shuffle sums; each is paired with every target.
 */
template <Field K>
std::vector<SparseVec<K>> harrison_block_basis(const CochainBlock& blk, const GradedBasis& b) {
  require_characteristic_zero<K>("the Harrison complex");
  std::vector<SparseVec<K>> out;
  std::map<int, std::vector<int>> by_degree;  // source degree -> source indices
  for (std::size_t i = 0; i < blk.sources.size(); ++i) by_degree[blk.source_degree[i]].push_back(static_cast<int>(i));
  const int m = blk.tri.m;
  for (const auto& [ds, idx] : by_degree) {
    std::map<Word, int> local;
    for (std::size_t j = 0; j < idx.size(); ++j) local[blk.sources[static_cast<std::size_t>(idx[j])]] = static_cast<int>(j);
    Echelon<K> rows;
    for (int si : idx)
      for (int r = 1; r < m; ++r) {
        std::map<int, K> v;
        for (const auto& [w, c] : shuffle_sum<K>(b, blk.sources[static_cast<std::size_t>(si)], r)) v[local.at(w)] += c;
        rows.insert(from_map(v));
      }
    // annihilator: kernel of the matrix whose rows span the shuffle sums
    SparseMatrix<K> M(rows.rank(), static_cast<int>(idx.size()));
    std::vector<std::map<int, K>> cols(idx.size());
    for (std::size_t k = 0; k < rows.rows().size(); ++k)
      for (const auto& [j, c] : rows.rows()[k]) cols[static_cast<std::size_t>(j)][static_cast<int>(k)] = c;
    for (std::size_t j = 0; j < idx.size(); ++j) M.set_col(static_cast<int>(j), from_map(cols[j]));
    auto ann = kernel_basis(M);
    const auto& tg = blk.targets(idx.front());
    for (const auto& y : ann)
      for (const auto& t : tg) {
        SparseVec<K> v;
        for (const auto& [j, c] : y) v.emplace_back(blk.index(blk.sources[static_cast<std::size_t>(idx[j])], t), c);
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b2) { return a.first < b2.first; });
        out.push_back(std::move(v));
      }
  }
  return out;
}

template <Field K>
std::vector<SparseVec<K>> harrison_subspace(const CochainComplex<K>& cx, int r) {
  std::vector<SparseVec<K>> out;
  for (const auto& blk : cx.space(r).blocks) {
    auto v = harrison_block_basis<K>(blk, *cx.source_basis());
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

// Harrison complex of a graded-commutative algebra with coefficients in itself.
template <Field K>
std::shared_ptr<AssembledComplex<K>> harrison_complex(const DGAlgebraPresentation<K>& A, ComplexWindow w) {
  require_characteristic_zero<K>("the Harrison complex");
  w.theory = Theory::harrison;
  auto cx = std::make_shared<const CochainComplex<K>>(A, w);
  auto ac = std::make_shared<AssembledComplex<K>>(cx);
  ac->set_subspace([cx](int r) { return harrison_subspace<K>(*cx, r); });
  return ac;
}

// ---------------------------------------------------------------------------
// Derivations

template <Field K>
struct DerivationSpace {
  int degree = 0;
  std::vector<GradedMap<K>> basis;  // via ker ∂_B
  int dim_kernel = 0;               // dim ker ∂_B on 1-cochains
  int dim_leibniz = 0;              // dim of solutions of the Leibniz equations
  bool computations_agree = false;
};

/*
 * Degree-p derivations A -> A on the window (sources of degree <= cap - p),
 * computed twice: as ker ∂_B on normalized 1-cochains, and by solving the
 * Leibniz equations θ(ab) = θ(a)b + (-1)^{p|a|} aθ(b) directly.
 */
template <Field K>
DerivationSpace<K> derivation_space(const DGAlgebraPresentation<K>& A, int p, std::optional<int> d_max = std::nullopt) {
  ComplexWindow w;
  w.theory = Theory::hochschild;
  w.q = std::nullopt;
  w.m_max = 2;
  w.d_max = d_max;
  CochainComplex<K> cx(A, w, regular_bimodule(A));
  const int cap = cx.degree_cap();
  Tridegree t1{p, 1, 1}, t2{p, 2, 1};
  auto b1 = cx.make_block(t1, cap);
  DerivationSpace<K> out;
  out.degree = p;

  // (a) kernel of ∂_B; rows are the (a⊗b, t) pairs that occur
  std::map<std::pair<Word, Word>, int> row;
  std::vector<SparseVec<K>> dcols(static_cast<std::size_t>(b1.dim));
  for (std::size_t si = 0; si < b1.sources.size(); ++si) {
    const auto& tg = b1.targets(static_cast<int>(si));
    for (std::size_t ti = 0; ti < tg.size(); ++ti) {
      GradedMap<K> e = cx.empty_component(t1);
      e.add(b1.sources[si], tg[ti], K(1));
      auto res = cx.apply_part(Part::del, t1, e, true);
      std::map<int, K> col;
      for (const auto& [s, v] : res.value.at(t2).columns())
        for (const auto& [t, c] : v) col[row.try_emplace({s, t}, static_cast<int>(row.size())).first->second] += c;
      dcols[static_cast<std::size_t>(b1.source_offset[si]) + ti] = from_map(col);
    }
  }
  SparseMatrix<K> Dm(static_cast<int>(row.size()), b1.dim);
  for (int j = 0; j < b1.dim; ++j) Dm.set_col(j, std::move(dcols[static_cast<std::size_t>(j)]));
  auto ker = kernel_basis(Dm);
  out.dim_kernel = static_cast<int>(ker.size());

  // (b) Leibniz equations, straight from the multiplication table
  StructureTables<K> T(A.mu, GradedMap<K>(A.basis, 1, 2, 0), A.d);
  const auto& B = *A.basis;
  std::map<std::pair<int, int>, int> unknown;  // (source element, target element) -> column
  std::vector<std::pair<int, int>> unknowns;
  for (int s = 1; s < B.size(); ++s)
    for (int t = 0; t < B.size(); ++t)
      if (B.degree(t) == B.degree(s) + p && B.degree(t) <= cap) {
        unknown[{s, t}] = static_cast<int>(unknowns.size());
        unknowns.push_back({s, t});
      }
  std::vector<std::map<int, K>> cols(unknowns.size());
  int row_base = 0;
  for (int a = 1; a < B.size(); ++a)
    for (int b = 1; b < B.size(); ++b) {
      if (B.degree(a) + B.degree(b) + p > cap) continue;
      if (A.truncated && B.degree(a) + B.degree(b) > B.top_degree()) continue;
      // θ(ab)
      std::map<std::pair<int, int>, K> eq;  // (unknown col, output element) -> coeff
      for (const auto& [o, c] : T.mu(a, b))
        for (int t = 0; t < B.size(); ++t)
          if (auto it = unknown.find({o, t}); it != unknown.end()) eq[{it->second, t}] += c;
      // -θ(a)·b
      for (int t = 0; t < B.size(); ++t)
        if (auto it = unknown.find({a, t}); it != unknown.end())
          for (const auto& [o, c] : T.mu(t, b)) eq[{it->second, o}] -= c;
      // -(-1)^{p|a|} a·θ(b)
      K sa = sign<K>(static_cast<long>(p) * B.degree(a));
      for (int t = 0; t < B.size(); ++t)
        if (auto it = unknown.find({b, t}); it != unknown.end())
          for (const auto& [o, c] : T.mu(a, t)) eq[{it->second, o}] -= sa * c;
      for (const auto& [key, c] : eq)
        if (!c.is_zero()) cols[static_cast<std::size_t>(key.first)][row_base + key.second] += c;
      row_base += B.size();
    }
  SparseMatrix<K> L(row_base, static_cast<int>(unknowns.size()));
  for (std::size_t j = 0; j < unknowns.size(); ++j) L.set_col(static_cast<int>(j), from_map(cols[j]));
  auto lker = kernel_basis(L);
  out.dim_leibniz = static_cast<int>(lker.size());

  // compare the two spans in (source, target) coordinates
  auto as_map = [&](const SparseVec<K>& v, bool from_block) {
    GradedMap<K> g(A.basis, 1, 1, p);
    for (const auto& [j, c] : v) {
      if (from_block) {
        int si = static_cast<int>(std::upper_bound(b1.source_offset.begin(), b1.source_offset.end(), j) -
                                  b1.source_offset.begin()) - 1;
        const auto& tg = b1.targets(si);
        g.add(b1.sources[static_cast<std::size_t>(si)], tg[static_cast<std::size_t>(j - b1.source_offset[si])], c);
      } else {
        g.add(Word{unknowns[static_cast<std::size_t>(j)].first}, Word{unknowns[static_cast<std::size_t>(j)].second}, c);
      }
    }
    return g;
  };
  std::map<std::pair<int, int>, int> coord;
  auto to_coords = [&](const GradedMap<K>& g) {
    std::map<int, K> v;
    for (const auto& [s, col] : g.columns())
      for (const auto& [t, c] : col) {
        auto key = std::make_pair(s[0], t[0]);
        auto it = coord.try_emplace(key, static_cast<int>(coord.size())).first;
        v[it->second] += c;
      }
    return from_map(v);
  };
  Echelon<K> ea;
  for (const auto& k : ker) {
    out.basis.push_back(as_map(k, true));
    ea.insert(to_coords(out.basis.back()));
  }
  bool agree = out.dim_kernel == out.dim_leibniz;
  for (const auto& k : lker)
    if (!ea.contains(to_coords(as_map(k, false)))) agree = false;
  out.computations_agree = agree;
  return out;
}

// [d, θ] = d∘θ - (-1)^{|θ|} θ∘d
template <Field K>
GradedMap<K> ad_differential(const DGAlgebraPresentation<K>& A, const GradedMap<K>& theta) {
  return compose(A.d, theta) - compose(theta, A.d).scaled(sign<K>(theta.degree()));
}

// ---------------------------------------------------------------------------
// Leibniz extension from generator values

/*
 * Factorizations b = λ⁻¹ g·c with g a declared generator, used to extend
 * maps on generators to derivations. Throws if some positive basis
 * element is neither a generator nor a single-term product g·c.
 */
template <Field K>
struct GeneratorFactorization {
  std::vector<int> generators;
  std::map<int, std::tuple<int, int, K>> factor;  // b -> (g, c, λ) with μ(g,c) = λ b
};

template <Field K>
GeneratorFactorization<K> factor_by_generators(const DGAlgebraPresentation<K>& A, const std::vector<int>& gens) {
  StructureTables<K> T(A.mu, GradedMap<K>(A.basis, 1, 2, 0), A.d);
  const auto& B = *A.basis;
  GeneratorFactorization<K> f;
  f.generators = gens;
  for (int b = 1; b < B.size(); ++b) {
    if (std::find(gens.begin(), gens.end(), b) != gens.end()) continue;
    bool found = false;
    for (int g : gens) {
      for (int c = 1; c < B.size() && !found; ++c) {
        const auto& pr = T.mu(g, c);
        if (pr.size() == 1 && pr[0].first == b && B.degree(c) < B.degree(b)) {
          f.factor[b] = {g, c, pr[0].second};
          found = true;
        }
      }
      if (found) break;
    }
    if (!found) throw ValidationError("basis element " + B.label(b) + " is not a monomial in the generators");
  }
  return f;
}

// θ(g) given on generators; extended to sources of degree <= cap - p.
template <Field K>
GradedMap<K> extend_derivation(const DGAlgebraPresentation<K>& A, const GeneratorFactorization<K>& F,
                               const std::map<int, WordVec<K>>& on_generators, int p, int cap) {
  StructureTables<K> T(A.mu, GradedMap<K>(A.basis, 1, 2, 0), A.d);
  const auto& B = *A.basis;
  std::vector<int> order;
  for (int b = 1; b < B.size(); ++b)
    if (B.degree(b) + p <= cap) order.push_back(b);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return B.degree(x) < B.degree(y); });
  std::map<int, WordVec<K>> val;
  for (int b : order) {
    if (auto it = on_generators.find(b); it != on_generators.end()) {
      val[b] = it->second;
      continue;
    }
    if (std::find(F.generators.begin(), F.generators.end(), b) != F.generators.end()) {
      val[b] = {};
      continue;
    }
    const auto& [g, c, lam] = F.factor.at(b);
    WordVec<K> v;
    K inv = lam.inverse();
    for (const auto& [w, x] : val[g])
      for (const auto& [o, y] : T.mu(w[0], c)) add_term(v, Word{o}, inv * x * y);
    K sg = sign<K>(static_cast<long>(p) * B.degree(g));
    for (const auto& [w, x] : val[c])
      for (const auto& [o, y] : T.mu(g, w[0])) add_term(v, Word{o}, inv * sg * x * y);
    val[b] = v;
  }
  GradedMap<K> theta(A.basis, 1, 1, p);
  for (const auto& [b, v] : val)
    for (const auto& [w, x] : v)
      if (B.degree(w) <= cap) theta.add(Word{b}, w, x);
  return theta;
}

// ---------------------------------------------------------------------------
// Staircase reduction

template <Field K>
struct StaircaseResult {
  bool ok = false;
  std::string failure;          // failing bidegree when a column solve fails
  TotalCochain<K> reduced;      // concentrated in bidegree (n-1, 1)
  TotalCochain<K> witness;      // f - reduced = D(witness)
  int steps = 0;
  bool postconditions_verified = false;
};

/*
 * Push a total n-cocycle of the restricted Harrison window down to
 * bidegree (n-1, 1), one column solve per step: the top component
 * f_{p,m} (m >= 2) is ∂-closed, so f_{p,m} = (-1)^{p+1} ∂_B g with g
 * Harrison in bidegree (p, m-1), and f - D(g) has lower top arity.
 */
template <Field K>
StaircaseResult<K> staircase_reduce(const AssembledComplex<K>& hc, const TotalCochain<K>& f, int n) {
  const auto& cx = hc.complex();
  StaircaseResult<K> out;
  auto Df = cx.total_differential(f);
  if (!is_zero(Df.value)) {
    out.failure = "input is not a cocycle";
    return out;
  }
  // ∂-only matrix between degrees n-1 and n, with the D prefactors
  auto del = cx.assemble_differential(n - 1, 2u, true).matrix;
  const auto& Hb = hc.basis(n - 1);
  const auto& S0 = cx.space(n - 1);
  TotalCochain<K> cur = f, wit;
  while (true) {
    int top = 0;
    for (const auto& [t, g] : cur)
      if (!g.is_zero()) top = std::max(top, t.m);
    if (top <= 1) break;
    Tridegree tt{n - top, top, 1};
    Tridegree src{n - top, top - 1, 1};
    const CochainBlock* sb = S0.block(src);
    TotalCochain<K> piece{{tt, cur.at(tt)}};
    SparseVec<K> target = cx.to_vector(piece, n);
    // Harrison basis vectors supported in the source block
    std::vector<SparseVec<K>> cols;
    if (sb)
      for (const auto& v : Hb)
        if (!v.empty() && v.front().first >= sb->offset && v.front().first < sb->offset + sb->dim) cols.push_back(v);
    SparseMatrix<K> M(del.rows(), static_cast<int>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) M.set_col(static_cast<int>(j), del.apply(cols[j]));
    auto sol = solve(M, target);
    if (!sol.solvable) {
      out.failure = "column not exact at bidegree " + std::to_string(tt.p) + "," + std::to_string(tt.m);
      return out;
    }
    std::map<int, K> gx;
    for (const auto& [j, c] : sol.x)
      for (const auto& [i, y] : cols[static_cast<std::size_t>(j)]) gx[i] += c * y;
    auto g = cx.from_vector(from_map(gx), n - 1);
    auto Dg = cx.total_differential(g);
    cur = combine(cur, K(1), Dg.value, K(-1));
    wit = combine(wit, K(1), g, K(1));
    ++out.steps;
  }
  out.reduced = cur;
  out.witness = wit;
  // postconditions: concentration, and f - g = D(witness)
  bool concentrated = true;
  for (const auto& [t, g] : cur)
    if (!g.is_zero() && !(t.m == 1 && t.p == n - 1)) concentrated = false;
  auto Dw = cx.total_differential(wit);
  auto diff = combine(combine(f, K(1), cur, K(-1)), K(1), Dw.value, K(-1));
  out.postconditions_verified = concentrated && is_zero(diff) && !Dw.clipped;
  out.ok = out.postconditions_verified;
  if (!out.ok) out.failure = "postcondition check failed";
  return out;
}

// Column exactness of ∂_B on the Harrison window: ker = im at (p, m).
template <Field K>
struct ColumnExactness {
  int p = 0, m = 0;
  int kernel_dim = 0;
  int image_rank = 0;
  bool exact() const { return kernel_dim == image_rank; }
};

template <Field K>
ColumnExactness<K> harrison_column_exactness(const AssembledComplex<K>& hc, int p, int m) {
  const auto& cx = hc.complex();
  ColumnExactness<K> out{p, m, 0, 0};
  const int r = p + m;
  auto pick = [&](int deg, const Tridegree& t) {
    std::vector<SparseVec<K>> cols;
    const CochainBlock* b = cx.space(deg).block(t);
    if (!b) return cols;
    for (const auto& v : hc.basis(deg))
      if (!v.empty() && v.front().first >= b->offset && v.front().first < b->offset + b->dim) cols.push_back(v);
    return cols;
  };
  auto del_out = cx.assemble_differential(r, 2u, true).matrix;
  auto here = pick(r, {p, m, 1});
  SparseMatrix<K> Mo(del_out.rows(), static_cast<int>(here.size()));
  for (std::size_t j = 0; j < here.size(); ++j) Mo.set_col(static_cast<int>(j), del_out.apply(here[j]));
  out.kernel_dim = static_cast<int>(here.size()) - rank(Mo);
  if (m >= 2) {
    auto del_in = cx.assemble_differential(r - 1, 2u, true).matrix;
    auto below = pick(r - 1, {p, m - 1, 1});
    SparseMatrix<K> Mi(del_in.rows(), static_cast<int>(below.size()));
    for (std::size_t j = 0; j < below.size(); ++j) Mi.set_col(static_cast<int>(j), del_in.apply(below[j]));
    out.image_rank = rank(Mi);
  }
  return out;
}

// ---------------------------------------------------------------------------
// The comparison H̃arr^n(A;A;3) ≅ H(Hom^{n-1}(V, A), ad d)

struct Iso2Degree {
  int n = 0;
  int harrison_dim = 0;
  int derivation_dim = 0;
  bool window_exact = false;
  bool agree() const { return harrison_dim == derivation_dim; }
};

struct Iso2Report {
  int d_max = 0;
  std::vector<Iso2Degree> degrees;
  bool passed() const {
    for (const auto& d : degrees)
      if (d.window_exact && !d.agree()) return false;
    return true;
  }
};

/*
 * Right-hand side: R^n = Hom^{n-1}(V, A) restricted to values of degree
 * <= cap, with differential θ ↦ -[d, θ] read off on generators after
 * Leibniz extension.
 */
template <Field K>
std::vector<int> derivation_complex_dims(const DGAlgebraPresentation<K>& A, const std::vector<int>& gens, int cap,
                                         int n_max) {
  const auto& B = *A.basis;
  auto F = factor_by_generators(A, gens);
  auto basis_of = [&](int p) {
    std::vector<std::pair<int, int>> v;
    if (p < 0) return v;
    for (int g : gens)
      for (int b = 0; b < B.size(); ++b)
        if (B.degree(b) == B.degree(g) + p && B.degree(b) <= cap) v.push_back({g, b});
    return v;
  };
  auto matrix = [&](int p) {  // R^{p+1} -> R^{p+2}
    auto src = basis_of(p), dst = basis_of(p + 1);
    std::map<std::pair<int, int>, int> di;
    for (std::size_t i = 0; i < dst.size(); ++i) di[dst[i]] = static_cast<int>(i);
    SparseMatrix<K> M(static_cast<int>(dst.size()), static_cast<int>(src.size()));
    for (std::size_t j = 0; j < src.size(); ++j) {
      std::map<int, WordVec<K>> on;
      on[src[j].first][Word{src[j].second}] = K(1);
      auto theta = extend_derivation(A, F, on, p, cap);
      auto ad = ad_differential(A, theta).scaled(K(-1));
      std::map<int, K> col;
      for (int g : gens) {
        if (B.degree(g) + p + 1 > cap) continue;
        for (const auto& [w, c] : ad.apply(Word{g})) col[di.at({g, w[0]})] += c;
      }
      M.set_col(static_cast<int>(j), from_map(col));
    }
    return M;
  };
  std::vector<int> dims;
  for (int n = 1; n <= n_max; ++n) {
    int p = n - 1;
    int dim = static_cast<int>(basis_of(p).size());
    int out_rank = rank(matrix(p));
    int in_rank = p >= 1 ? rank(matrix(p - 1)) : 0;
    dims.push_back(dim - out_rank - in_rank);
  }
  return dims;
}

template <Field K>
Iso2Report iso2_check(const DGHopfPresentation<K>& H, std::optional<int> d_max, int n_max) {
  require_characteristic_zero<K>("the (iso2) comparison");
  const auto& A = H.algebra;
  if (H.generators.empty()) throw ValidationError("iso2_check needs declared free generators");
  ComplexWindow w;
  w.theory = Theory::harrison;
  w.q = 3;
  w.d_max = d_max;
  auto hc = harrison_complex(A, w);
  const int cap = hc->complex().degree_cap();
  auto rhs = derivation_complex_dims(A, H.generators, cap, n_max);
  int gmax = 0;
  for (int g : H.generators) gmax = std::max(gmax, A.basis->degree(g));
  Iso2Report rep;
  rep.d_max = A.truncated ? cap : A.basis->top_degree();
  for (int n = 1; n <= n_max; ++n) {
    Iso2Degree d;
    d.n = n;
    d.harrison_dim = cohomology(*hc, n).dimension;
    d.derivation_dim = rhs[static_cast<std::size_t>(n - 1)];
    d.window_exact = !A.truncated || n <= rep.d_max - gmax;
    rep.degrees.push_back(d);
  }
  return rep;
}

}  // namespace dghopf

#endif

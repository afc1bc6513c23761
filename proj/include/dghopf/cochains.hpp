#ifndef DGHOPF_COCHAINS_HPP
#define DGHOPF_COCHAINS_HPP

#include <compare>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "hopf.hpp"
#include "linalg.hpp"
#include "resolutions.hpp"

namespace dghopf {

class WindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// (p, m, n): map degree, source arity, target arity.
struct Tridegree {
  int p = 0, m = 0, n = 0;
  auto operator<=>(const Tridegree&) const = default;
  std::string str() const {
    return "(" + std::to_string(p) + "," + std::to_string(m) + "," + std::to_string(n) + ")";
  }
};

enum class Theory { hochschild, cartier, hopf, harrison };

inline std::string theory_name(Theory t) {
  switch (t) {
    case Theory::hochschild: return "hochschild";
    case Theory::cartier: return "cartier";
    case Theory::hopf: return "hopf";
    case Theory::harrison: return "harrison";
  }
  return "?";
}

inline std::optional<Theory> parse_theory(const std::string& s) {
  if (s == "hochschild") return Theory::hochschild;
  if (s == "cartier") return Theory::cartier;
  if (s == "hopf") return Theory::hopf;
  if (s == "harrison") return Theory::harrison;
  return std::nullopt;
}

/*
 * Finite slice of a cochain complex. Map degrees p >= 3-q (none for
 * q = ∞), external arities in [1, cap] (restricted) or [0, cap], output
 * internal degree <= d_max. The kept set is closed under the truncation
 * (a subcomplex) and the caps cut off an upward-closed part (a quotient),
 * so the windowed differential still squares to zero.
 */
struct ComplexWindow {
  Theory theory = Theory::hopf;
  std::optional<int> q = 3;  // nullopt means q = ∞
  bool restricted = true;
  std::optional<int> m_max, n_max;
  std::optional<int> d_max;
};

// Coefficients for the Hochschild complex: a d.g. A-bimodule M.
template <Field K>
struct Bimodule {
  BasisPtr basis;
  std::function<std::vector<std::pair<int, K>>(int a, int v)> left;   // a·v
  std::function<std::vector<std::pair<int, K>>(int v, int a)> right;  // v·a
  GradedMap<K> d;
};

// Coefficients for the Cartier complex: a d.g. C-bicomodule N.
template <Field K>
struct Bicomodule {
  struct Split {
    int first, second;  // (h, v) for the left coaction, (v, h) for the right
    K coeff;
  };
  BasisPtr basis;
  std::function<std::vector<Split>(int v)> left;
  std::function<std::vector<Split>(int v)> right;
  GradedMap<K> d;
};

template <Field K>
using TotalCochain = std::map<Tridegree, GradedMap<K>>;

// Zero every column with a degree-0 source factor and, when asked, every
// row with a degree-0 target factor. Idempotent.
template <Field K>
GradedMap<K> normalize(const GradedMap<K>& f, bool targets = true) {
  const auto& sb = *f.source_basis();
  const auto& tb = *f.target_basis();
  GradedMap<K> r(f.source_basis(), f.source_arity(), f.target_basis(), f.target_arity(), f.degree());
  for (const auto& [s, v] : f.columns()) {
    if (!sb.positive(s)) continue;
    for (const auto& [t, c] : v)
      if (!targets || tb.positive(t)) r.add(s, t, c);
  }
  return r;
}

template <Field K>
bool is_zero(const TotalCochain<K>& f) {
  for (const auto& [t, g] : f)
    if (!g.is_zero()) return false;
  return true;
}

template <Field K>
TotalCochain<K> combine(const TotalCochain<K>& a, const K& x, const TotalCochain<K>& b, const K& y) {
  TotalCochain<K> r;
  for (const auto& [t, g] : a) r.emplace(t, g.scaled(x));
  for (const auto& [t, g] : b) {
    auto it = r.find(t);
    if (it == r.end()) r.emplace(t, g.scaled(y));
    else it->second += g.scaled(y);
  }
  for (auto it = r.begin(); it != r.end();) it = it->second.is_zero() ? r.erase(it) : std::next(it);
  return r;
}

/*
 * Basis of one tridegree block: pairs (s, t) of source and target words
 * with deg t = deg s + p, ordered by source word then target word.
 */
struct CochainBlock {
  Tridegree tri;
  int offset = 0;
  int dim = 0;
  std::vector<Word> sources;
  std::map<Word, int> source_index;
  std::vector<int> source_offset;
  std::map<int, std::vector<Word>> targets_by_degree;
  std::map<int, std::map<Word, int>> target_index;
  std::vector<int> source_degree;

  const std::vector<Word>& targets(int si) const {
    static const std::vector<Word> none;
    auto it = targets_by_degree.find(source_degree[static_cast<std::size_t>(si)] + tri.p);
    return it == targets_by_degree.end() ? none : it->second;
  }
  // global index of (s, t) or -1
  int index(const Word& s, const Word& t) const {
    auto si = source_index.find(s);
    if (si == source_index.end()) return -1;
    int dt = source_degree[static_cast<std::size_t>(si->second)] + tri.p;
    auto ti = target_index.find(dt);
    if (ti == target_index.end()) return -1;
    auto tj = ti->second.find(t);
    if (tj == ti->second.end()) return -1;
    return offset + source_offset[static_cast<std::size_t>(si->second)] + tj->second;
  }
};

struct CochainSpace {
  int r = 0;
  int dim = 0;
  std::vector<CochainBlock> blocks;
  std::map<Tridegree, std::size_t> block_of;

  const CochainBlock* block(const Tridegree& t) const {
    auto it = block_of.find(t);
    return it == block_of.end() ? nullptr : &blocks[it->second];
  }
  // (tridegree, source, target) of a global index
  std::tuple<Tridegree, Word, Word> locate(int idx) const {
    for (const auto& b : blocks) {
      if (idx < b.offset || idx >= b.offset + b.dim) continue;
      int local = idx - b.offset;
      auto it = std::upper_bound(b.source_offset.begin(), b.source_offset.end(), local);
      std::size_t si = static_cast<std::size_t>(it - b.source_offset.begin()) - 1;
      const auto& ts = b.targets(static_cast<int>(si));
      return {b.tri, b.sources[si], ts[static_cast<std::size_t>(local - b.source_offset[si])]};
    }
    throw ShapeError("index outside cochain space");
  }
};

// Result of applying a (total) differential to an explicit cochain.
template <Field K>
struct DifferentialResult {
  TotalCochain<K> value;
  bool clipped = false;            // a nonzero component fell outside the window
  std::vector<std::string> clipped_at;
  bool normalization_leak = false;  // a nonzero value with a degree-0 target factor survived
};

enum class Part { d, del, delta };

/*
 * Cochain complexes of a d.g. Hopf algebra (or of an algebra with bimodule
 * coefficients, or a coalgebra with bicomodule coefficients). The three
 * differentials
 *   d_C(f) = (-1)^p f∘d₍ₘ₋₂₎ - d₍ₙ₋₂₎∘f
 *   ∂_C(f) = λⁿ∘(1⊗f) - f∘∂₍ₘ₋₁₎ + (-1)^{m+1} ρⁿ∘(f⊗1)
 *   δ_C(f) = (1⊗f)∘λₘ - δ₍ₙ₋₂₎∘f + (-1)^{n+1} (f⊗1)∘ρₘ
 * are evaluated pointwise: each value Df(u) is a short list of terms
 * c·T(f(s)) with T one of a handful of target-side operations.
 * D = (-1)^{m(n+1)} d_C + (-1)^{n(p+1)} ∂_C + (-1)^{p(m+1)} δ_C, with the
 * Hochschild complex the n = 1 plane and the Cartier complex the m = 1 plane.
 */
template <Field K>
class CochainComplex {
 public:
  enum class Op { identity, left_act, right_act, prefix, suffix, target_diff, cobar };
  struct Term {
    Tridegree from;
    Word s;
    K coeff;
    Op op;
    int elem;
  };

  CochainComplex(const DGHopfPresentation<K>& H, ComplexWindow w) : window_(w) {
    T_ = StructureTables<K>(H);
    sb_ = tb_ = H.basis();
    truncated_ = H.truncated();
    sdiff_ = tdiff_ = diff_table(H.d());
    if (w.theory == Theory::harrison && !is_graded_commutative(H.algebra))
      throw ValidationError("the Harrison complex needs a graded-commutative algebra");
    finish_setup();
  }

  // Hochschild (or Harrison) complex of A with coefficients in M (default: A).
  CochainComplex(const DGAlgebraPresentation<K>& A, ComplexWindow w, std::optional<Bimodule<K>> M = std::nullopt)
      : window_(w) {
    if (w.theory != Theory::hochschild && w.theory != Theory::harrison)
      throw WindowError("an algebra presentation only carries the Hochschild complex");
    if (w.theory == Theory::harrison && !is_graded_commutative(A))
      throw ValidationError("the Harrison complex needs a graded-commutative algebra");
    T_ = StructureTables<K>(A.mu, GradedMap<K>(A.basis, 1, 2, 0), A.d);
    sb_ = A.basis;
    truncated_ = A.truncated;
    sdiff_ = diff_table(A.d);
    if (M) {
      M_ = std::move(M);
      tb_ = M_->basis;
      tdiff_ = diff_table(M_->d);
      normalize_targets_ = false;
    } else {
      tb_ = A.basis;
      tdiff_ = sdiff_;
    }
    finish_setup();
  }

  // Cartier complex of C with coefficients in N (default: C).
  CochainComplex(const DGCoalgebraPresentation<K>& C, ComplexWindow w, std::optional<Bicomodule<K>> N = std::nullopt)
      : window_(w) {
    if (w.theory != Theory::cartier) throw WindowError("a coalgebra presentation only carries the Cartier complex");
    T_ = StructureTables<K>(GradedMap<K>(C.basis, 2, 1, 0), C.delta, C.d);
    tb_ = C.basis;
    truncated_ = C.truncated;
    tdiff_ = diff_table(C.d);
    if (N) {
      N_ = std::move(N);
      sb_ = N_->basis;
      sdiff_ = diff_table(N_->d);
      normalize_sources_ = false;
    } else {
      sb_ = C.basis;
      sdiff_ = tdiff_;
    }
    finish_setup();
  }

  const ComplexWindow& window() const { return window_; }
  Theory theory() const { return window_.theory; }
  const BasisPtr& source_basis() const { return sb_; }
  const BasisPtr& target_basis() const { return tb_; }
  int degree_cap() const { return dcap_; }
  bool has_bar() const { return theory() != Theory::cartier; }
  bool has_cobar() const { return theory() == Theory::cartier || theory() == Theory::hopf; }

  int total_degree(const Tridegree& t) const {
    switch (theory()) {
      case Theory::hopf: return t.p + t.m + t.n - 1;
      case Theory::cartier: return t.p + t.n;
      default: return t.p + t.m;
    }
  }

  bool in_window(const Tridegree& t) const {
    if (window_.q && t.p < 3 - *window_.q) return false;
    int lo = window_.restricted ? 1 : 0;
    if (theory() == Theory::cartier) {
      if (t.m != 1) return false;
    } else if (t.m < lo || (window_.m_max && t.m > *window_.m_max)) {
      return false;
    }
    if (theory() == Theory::hochschild || theory() == Theory::harrison) {
      if (t.n != 1) return false;
    } else if (t.n < lo || (window_.n_max && t.n > *window_.n_max)) {
      return false;
    }
    return true;
  }

  // Tridegrees of total degree r inside the window, lexicographic.
  std::vector<Tridegree> tridegrees(int r) const {
    std::vector<Tridegree> out;
    int lo = window_.restricted ? 1 : 0;
    auto pmin = window_.q ? std::optional<int>(3 - *window_.q) : std::nullopt;
    auto arity_cap = [&](const std::optional<int>& cap, int other) {
      if (cap) return *cap;
      // p >= pmin bounds the arity
      return r + 1 - *pmin - other;
    };
    switch (theory()) {
      case Theory::hopf: {
        int mhi = arity_cap(window_.m_max, lo), nhi = arity_cap(window_.n_max, lo);
        for (int m = lo; m <= mhi; ++m)
          for (int n = lo; n <= nhi; ++n) {
            Tridegree t{r + 1 - m - n, m, n};
            if (in_window(t)) out.push_back(t);
          }
        break;
      }
      case Theory::cartier: {
        int nhi = window_.n_max ? *window_.n_max : r - *pmin;
        for (int n = lo; n <= nhi; ++n) {
          Tridegree t{r - n, 1, n};
          if (in_window(t)) out.push_back(t);
        }
        break;
      }
      default: {
        int mhi = window_.m_max ? *window_.m_max : r - *pmin;
        for (int m = lo; m <= mhi; ++m) {
          Tridegree t{r - m, m, 1};
          if (in_window(t)) out.push_back(t);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  CochainBlock make_block(const Tridegree& tri, int cap) const {
    CochainBlock b;
    b.tri = tri;
    int smax = tri.m * sb_->top_degree();
    for (int ds = 0; ds <= smax; ++ds) {
      int dt = ds + tri.p;
      if (dt < 0 || dt > cap) continue;
      auto srcs = sb_->words(tri.m, ds, normalize_sources_);
      if (srcs.empty()) continue;
      auto& tg = b.targets_by_degree[dt];
      if (tg.empty()) {
        tg = tb_->words(tri.n, dt, normalize_targets_);
        auto& ix = b.target_index[dt];
        for (std::size_t i = 0; i < tg.size(); ++i) ix[tg[i]] = static_cast<int>(i);
      }
      if (tg.empty()) continue;
      if (truncated_ && ds > sb_->top_degree())
        throw WindowError("window at " + tri.str() + " needs source degree " + std::to_string(ds) +
                          " beyond the top degree of a truncated presentation");
      for (auto& s : srcs) {
        b.source_index[s] = static_cast<int>(b.sources.size());
        b.source_offset.push_back(b.dim);
        b.source_degree.push_back(ds);
        b.dim += static_cast<int>(tg.size());
        b.sources.push_back(std::move(s));
      }
    }
    for (auto it = b.targets_by_degree.begin(); it != b.targets_by_degree.end();) {
      if (it->second.empty()) {
        b.target_index.erase(it->first);
        it = b.targets_by_degree.erase(it);
      } else {
        ++it;
      }
    }
    return b;
  }

  const CochainSpace& space(int r) const {
    auto it = spaces_.find(r);
    if (it != spaces_.end()) return it->second;
    CochainSpace S;
    S.r = r;
    for (const auto& t : tridegrees(r)) {
      auto b = make_block(t, dcap_);
      if (b.dim == 0) continue;
      b.offset = S.dim;
      S.dim += b.dim;
      S.block_of[t] = S.blocks.size();
      S.blocks.push_back(std::move(b));
    }
    return spaces_.emplace(r, std::move(S)).first->second;
  }

  // ---------------------------------------------------------------------
  // Pointwise terms of the differentials at the output (tri, u).
  std::vector<Term> terms(const Tridegree& out, const Word& u, unsigned parts = 7u, bool prefactors = true) const {
    std::vector<Term> ts;
    const int p = out.p, m = out.m, n = out.n;
    if (parts & 1u) {  // d_C from (p-1, m, n)
      Tridegree from{p - 1, m, n};
      K pre = prefactors ? sign<K>(static_cast<long>(m) * (n + 1)) : K(1);
      if (m >= 1)
        for (const auto& [s, c] : source_diff(u)) ts.push_back({from, s, pre * sign<K>(p - 1) * c, Op::identity, 0});
      if (n >= 1) ts.push_back({from, u, -pre, Op::target_diff, 0});
    }
    if ((parts & 2u) && has_bar() && m >= 1) {  // ∂_C from (p, m-1, n)
      Tridegree from{p, m - 1, n};
      K pre = prefactors ? sign<K>(static_cast<long>(n) * (p + 1)) : K(1);
      int a = u.front();
      ts.push_back({from, slice(u, 1, u.size()), pre * sign<K>(static_cast<long>(p) * sb_->degree(a)), Op::left_act, a});
      if (m >= 2)
        for (const auto& [s, c] : bar_diff_word(T_, u)) ts.push_back({from, s, -pre * c, Op::identity, 0});
      ts.push_back({from, slice(u, 0, u.size() - 1), pre * sign<K>(m), Op::right_act, u.back()});
    }
    if ((parts & 4u) && has_cobar() && n >= 1) {  // δ_C from (p, m, n-1)
      Tridegree from{p, m, n - 1};
      K pre = prefactors ? sign<K>(static_cast<long>(p) * (m + 1)) : K(1);
      for (const auto& sp : split_left(u))
        ts.push_back({from, sp.second, pre * sp.coeff * sign<K>(static_cast<long>(p) * tb_->degree(sp.first)),
                      Op::prefix, sp.first});
      if (n >= 2) ts.push_back({from, u, -pre, Op::cobar, 0});
      for (const auto& sp : split_right(u))
        ts.push_back({from, sp.second, pre * sp.coeff * sign<K>(n), Op::suffix, sp.first});
    }
    return ts;
  }

  // Target-side operation applied to a target word.
  const WordVec<K>& transform(Op op, int elem, const Word& t) const {
    auto key = std::make_tuple(static_cast<int>(op), elem, t);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    WordVec<K> r;
    switch (op) {
      case Op::identity: r[t] = K(1); break;
      case Op::left_act:
        if (M_) {
          for (const auto& [o, c] : M_->left(elem, t[0])) add_term(r, Word{o}, c);
        } else {
          r = lambda_up(T_, elem, t);
        }
        break;
      case Op::right_act:
        if (M_) {
          for (const auto& [o, c] : M_->right(t[0], elem)) add_term(r, Word{o}, c);
        } else {
          r = rho_up(T_, t, elem);
        }
        break;
      case Op::prefix: r[concat(Word{elem}, t)] = K(1); break;
      case Op::suffix: r[concat(t, Word{elem})] = K(1); break;
      case Op::target_diff: r = koszul_diff(tdiff_, *tb_, t); break;
      case Op::cobar: r = cobar_diff_word(T_, t); break;
    }
    return cache_.emplace(std::move(key), std::move(r)).first->second;
  }

  // ---------------------------------------------------------------------
  // Matrix of D: C^r -> C^{r+1} on the window.
  struct Assembly {
    SparseMatrix<K> matrix;
    bool normalization_leak = false;
  };

  Assembly assemble_differential(int r, unsigned parts = 7u, bool prefactors = true) const {
    const auto& S = space(r);
    const auto& S1 = space(r + 1);
    std::vector<std::map<int, K>> cols(static_cast<std::size_t>(S.dim));
    std::map<std::tuple<int, Word, Word>, K> leak;
    for (const auto& ob : S1.blocks) {
      for (std::size_t ui = 0; ui < ob.sources.size(); ++ui) {
        const Word& u = ob.sources[ui];
        for (const auto& term : terms(ob.tri, u, parts, prefactors)) {
          const CochainBlock* ib = S.block(term.from);
          if (!ib) continue;
          auto si = ib->source_index.find(term.s);
          if (si == ib->source_index.end()) continue;
          const auto& tgs = ib->targets(si->second);
          int base = ib->offset + ib->source_offset[static_cast<std::size_t>(si->second)];
          for (std::size_t ti = 0; ti < tgs.size(); ++ti) {
            int col = base + static_cast<int>(ti);
            for (const auto& [t2, c] : transform(term.op, term.elem, tgs[ti])) {
              K v = term.coeff * c;
              int row = ob.index(u, t2);
              if (row >= 0) {
                auto& e = cols[static_cast<std::size_t>(col)][row];
                e += v;
              } else {
                leak[{col, u, t2}] += v;
              }
            }
          }
        }
      }
    }
    Assembly a{SparseMatrix<K>(S1.dim, S.dim), false};
    for (int j = 0; j < S.dim; ++j) a.matrix.set_col(j, from_map(cols[static_cast<std::size_t>(j)]));
    for (const auto& [k, v] : leak)
      if (!v.is_zero()) a.normalization_leak = true;
    return a;
  }

  // ---------------------------------------------------------------------
  // Conversions between explicit cochains and coordinate vectors.
  SparseVec<K> to_vector(const TotalCochain<K>& f, int r) const {
    const auto& S = space(r);
    std::map<int, K> acc;
    for (const auto& [tri, g] : f) {
      for (const auto& [s, v] : g.columns())
        for (const auto& [t, c] : v) {
          const CochainBlock* b = S.block(tri);
          int idx = b ? b->index(s, t) : -1;
          if (idx < 0) throw WindowError("cochain entry outside the window at " + tri.str());
          acc[idx] += c;
        }
    }
    return from_map(acc);
  }

  GradedMap<K> empty_component(const Tridegree& t) const { return GradedMap<K>(sb_, t.m, tb_, t.n, t.p); }

  TotalCochain<K> from_vector(const SparseVec<K>& v, int r) const {
    const auto& S = space(r);
    TotalCochain<K> f;
    for (const auto& [idx, c] : v) {
      auto [tri, s, t] = S.locate(idx);
      auto it = f.find(tri);
      if (it == f.end()) it = f.emplace(tri, empty_component(tri)).first;
      it->second.add(s, t, c);
    }
    return f;
  }

  // ---------------------------------------------------------------------
  // Apply differentials to an explicit cochain.

  // One unsigned component differential on a single component, over all
  // normalized sources of the output tridegree.
  // With windowed = true outputs above the internal-degree cap are dropped.
  DifferentialResult<K> apply_part(Part part, const Tridegree& tri, const GradedMap<K>& f, bool windowed = false) const {
    TotalCochain<K> tf{{tri, f}};
    Tridegree out = tri;
    unsigned mask = 0;
    switch (part) {
      case Part::d: out.p += 1; mask = 1u; break;
      case Part::del: out.m += 1; mask = 2u; break;
      case Part::delta: out.n += 1; mask = 4u; break;
    }
    DifferentialResult<K> res;
    res.value.emplace(out, pull_component(out, tf, mask, false, windowed ? dcap_ : extended_cap(), res));
    return res;
  }

  // Total differential, clipped to the window; clipping is reported.
  DifferentialResult<K> total_differential(const TotalCochain<K>& f) const {
    DifferentialResult<K> res;
    std::set<Tridegree> outs;
    for (const auto& [t, g] : f) {
      if (g.is_zero()) continue;
      if (!in_window(t)) throw WindowError("cochain component outside the window at " + t.str());
      outs.insert({t.p + 1, t.m, t.n});
      if (has_bar()) outs.insert({t.p, t.m + 1, t.n});
      if (has_cobar()) outs.insert({t.p, t.m, t.n + 1});
    }
    for (const auto& o : outs) {
      if (theory() == Theory::cartier && o.m != 1) continue;
      if ((theory() == Theory::hochschild || theory() == Theory::harrison) && o.n != 1) continue;
      DifferentialResult<K> tmp;
      GradedMap<K> full = pull_component(o, f, 7u, true, extended_cap(), tmp);
      res.normalization_leak = res.normalization_leak || tmp.normalization_leak;
      GradedMap<K> kept = empty_component(o);
      bool o_in = in_window(o);
      for (const auto& [s, v] : full.columns())
        for (const auto& [t, c] : v) {
          if (o_in && tb_->degree(t) <= dcap_) kept.add(s, t, c);
          else {
            res.clipped = true;
            if (res.clipped_at.empty() || res.clipped_at.back() != o.str()) res.clipped_at.push_back(o.str());
          }
        }
      if (!kept.is_zero()) res.value.emplace(o, std::move(kept));
    }
    return res;
  }

 private:
  static std::vector<std::vector<std::pair<int, K>>> diff_table(const GradedMap<K>& d) {
    std::vector<std::vector<std::pair<int, K>>> t(static_cast<std::size_t>(d.source_basis()->size()));
    for (const auto& [s, v] : d.columns())
      for (const auto& [w, c] : v) t[static_cast<std::size_t>(s[0])].push_back({w[0], c});
    return t;
  }

  static WordVec<K> koszul_diff(const std::vector<std::vector<std::pair<int, K>>>& d, const GradedBasis& b,
                                const Word& w) {
    WordVec<K> out;
    long pre = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      K s = sign<K>(pre);
      for (const auto& [o, c] : d[static_cast<std::size_t>(w[i])]) {
        Word r = w;
        r[i] = o;
        add_term(out, r, s * c);
      }
      pre += b.degree(w[i]);
    }
    return out;
  }

  WordVec<K> source_diff(const Word& u) const { return koszul_diff(sdiff_, *sb_, u); }

  struct SplitTerm {
    int first;    // the split-off factor h
    Word second;  // remaining source word
    K coeff;
  };

  // λₘ(u) = Σ c h⊗w
  std::vector<SplitTerm> split_left(const Word& u) const {
    std::vector<SplitTerm> out;
    if (N_) {
      for (const auto& sp : N_->left(u[0])) out.push_back({sp.first, Word{sp.second}, sp.coeff});
      return out;
    }
    for (const auto& [w, c] : lambda_down(T_, u)) out.push_back({w[0], slice(w, 1, w.size()), c});
    return out;
  }
  // ρₘ(u) = Σ c w⊗h
  std::vector<SplitTerm> split_right(const Word& u) const {
    std::vector<SplitTerm> out;
    if (N_) {
      for (const auto& sp : N_->right(u[0])) out.push_back({sp.second, Word{sp.first}, sp.coeff});
      return out;
    }
    for (const auto& [w, c] : rho_down(T_, u)) out.push_back({w.back(), slice(w, 0, w.size() - 1), c});
    return out;
  }

  int extended_cap() const {
    if (truncated_) return dcap_;
    return dcap_ + tb_->top_degree() + sb_->top_degree() + 1;
  }

  // Output component at tri over every normalized source word with output
  // degree <= cap. Outputs with a degree-0 target factor are checked to
  // cancel (normalization closure) and dropped.
  GradedMap<K> pull_component(const Tridegree& out, const TotalCochain<K>& f, unsigned parts, bool prefactors,
                              int cap, DifferentialResult<K>& res) const {
    GradedMap<K> g = empty_component(out);
    int smax = out.m * sb_->top_degree();
    for (int ds = 0; ds <= smax; ++ds) {
      int dt = ds + out.p;
      if (dt < 0 || dt > cap) continue;
      if (truncated_ && ds > sb_->top_degree()) continue;
      for (const auto& u : sb_->words(out.m, ds, normalize_sources_)) {
        WordVec<K> val;
        for (const auto& term : terms(out, u, parts, prefactors)) {
          auto it = f.find(term.from);
          if (it == f.end()) continue;
          const auto* col = it->second.column(term.s);
          if (!col) continue;
          for (const auto& [t, c] : *col)
            for (const auto& [t2, e] : transform(term.op, term.elem, t)) add_term(val, t2, term.coeff * c * e);
        }
        for (const auto& [t, c] : val) {
          if (normalize_targets_ && !tb_->positive(t)) res.normalization_leak = true;
          else g.add(u, t, c);
        }
      }
    }
    return g;
  }

  void finish_setup() {
    if (!window_.q) {
      bool need_m = theory() != Theory::cartier, need_n = theory() == Theory::hopf || theory() == Theory::cartier;
      if ((need_m && !window_.m_max) || (need_n && !window_.n_max))
        throw WindowError("q = infinity needs explicit external caps (m_max, n_max)");
    }
    if (truncated_) {
      int top = tb_->top_degree();
      if (window_.d_max && *window_.d_max > top)
        throw WindowError("internal-degree cap " + std::to_string(*window_.d_max) +
                          " exceeds the top degree of a truncated presentation");
      dcap_ = window_.d_max.value_or(top);
    } else {
      // a finite presentation needs no cap; n * top bounds every target
      int natural = std::numeric_limits<int>::max() / 4;
      dcap_ = window_.d_max.value_or(natural);
    }
  }

  ComplexWindow window_;
  StructureTables<K> T_;
  BasisPtr sb_, tb_;
  std::optional<Bimodule<K>> M_;
  std::optional<Bicomodule<K>> N_;
  std::vector<std::vector<std::pair<int, K>>> sdiff_, tdiff_;
  bool normalize_sources_ = true, normalize_targets_ = true;
  bool truncated_ = false;
  int dcap_ = 0;
  mutable std::map<int, CochainSpace> spaces_;
  mutable std::map<std::tuple<int, int, Word>, WordVec<K>> cache_;
};

// Regular bimodule A acting on itself, and its bicomodule dual.
template <Field K>
Bimodule<K> regular_bimodule(const DGAlgebraPresentation<K>& A) {
  auto T = std::make_shared<StructureTables<K>>(A.mu, GradedMap<K>(A.basis, 1, 2, 0), A.d);
  Bimodule<K> M;
  M.basis = A.basis;
  M.left = [T](int a, int v) { return T->mu(a, v); };
  M.right = [T](int v, int a) { return T->mu(v, a); };
  M.d = A.d;
  return M;
}

template <Field K>
Bicomodule<K> regular_bicomodule(const DGCoalgebraPresentation<K>& C) {
  auto T = std::make_shared<StructureTables<K>>(GradedMap<K>(C.basis, 2, 1, 0), C.delta, C.d);
  Bicomodule<K> N;
  N.basis = C.basis;
  auto split = [T](int v) {
    std::vector<typename Bicomodule<K>::Split> out;
    for (const auto& sp : T->delta(v)) out.push_back({sp.left, sp.right, sp.coeff});
    return out;
  };
  N.left = split;
  N.right = split;
  N.d = C.d;
  return N;
}

}  // namespace dghopf

#endif

#ifndef DGHOPF_LINALG_HPP
#define DGHOPF_LINALG_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "field.hpp"

namespace dghopf {

// Sparse vector: strictly increasing indices, no stored zeros.
template <Field K>
using SparseVec = std::vector<std::pair<int, K>>;

template <Field K>
SparseVec<K> axpy(const SparseVec<K>& x, const K& a, const SparseVec<K>& y, const K& b) {
  // a*x + b*y
  SparseVec<K> r;
  r.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      K v = a * x[i].second;
      if (!v.is_zero()) r.emplace_back(x[i].first, v);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      K v = b * y[j].second;
      if (!v.is_zero()) r.emplace_back(y[j].first, v);
      ++j;
    } else {
      K v = a * x[i].second + b * y[j].second;
      if (!v.is_zero()) r.emplace_back(x[i].first, v);
      ++i;
      ++j;
    }
  }
  return r;
}

template <Field K>
SparseVec<K> from_map(const std::map<int, K>& m) {
  SparseVec<K> v;
  for (const auto& [i, c] : m)
    if (!c.is_zero()) v.emplace_back(i, c);
  return v;
}

template <Field K>
K get(const SparseVec<K>& v, int i) {
  auto it = std::lower_bound(v.begin(), v.end(), i, [](const auto& e, int k) { return e.first < k; });
  return (it != v.end() && it->first == i) ? it->second : K(0);
}

template <Field K>
SparseVec<K> scale(const SparseVec<K>& v, const K& a) {
  SparseVec<K> r;
  if (a.is_zero()) return r;
  r.reserve(v.size());
  for (const auto& [i, c] : v) r.emplace_back(i, c * a);
  return r;
}

/*
 * Column-major sparse matrix.
 */
template <Field K>
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(static_cast<std::size_t>(cols)) {}

  int rows() const { return rows_; }
  int cols() const { return static_cast<int>(cols_.size()); }
  const SparseVec<K>& col(int j) const { return cols_[static_cast<std::size_t>(j)]; }
  void set_col(int j, SparseVec<K> v) { cols_[static_cast<std::size_t>(j)] = std::move(v); }

  SparseVec<K> apply(const SparseVec<K>& x) const {
    std::map<int, K> acc;
    for (const auto& [j, a] : x)
      for (const auto& [i, c] : col(j)) acc[i] += a * c;
    return from_map(acc);
  }

  // this * other
  SparseMatrix multiply(const SparseMatrix& other) const {
    SparseMatrix r(rows_, other.cols());
    for (int j = 0; j < other.cols(); ++j) r.set_col(j, apply(other.col(j)));
    return r;
  }

  bool is_zero() const {
    for (const auto& c : cols_)
      if (!c.empty()) return false;
    return true;
  }
  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& c : cols_) n += c.size();
    return n;
  }

 private:
  int rows_ = 0;
  std::vector<SparseVec<K>> cols_;
};

// Over ℚ the elimination is fraction-free: vectors are kept as primitive
// integer vectors and combined by cross-multiplication.
template <class K>
inline constexpr bool fraction_free_v = std::is_same_v<K, Rational>;

namespace detail {

inline mpz_class content_gcd(const mpz_class& g, const Rational& x) {
  mpz_class r;
  mpz_gcd(r.get_mpz_t(), g.get_mpz_t(), x.numerator().get_mpz_t());
  return r;
}

// Multiply all given vectors (and extra scalars) by the lcm of their
// denominators and divide by the gcd of the resulting numerators.
inline void make_primitive(std::vector<SparseVec<Rational>*> vs, std::vector<Rational*> extra = {}) {
  mpz_class l = 1;
  for (auto* v : vs)
    for (const auto& [i, c] : *v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.denominator().get_mpz_t());
  for (auto* x : extra) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x->denominator().get_mpz_t());
  mpz_class g = 0;
  for (auto* v : vs)
    for (const auto& [i, c] : *v) g = content_gcd(g, Rational(c * Rational(l)));
  for (auto* x : extra) g = content_gcd(g, Rational(*x * Rational(l)));
  if (g == 0) return;
  Rational f(l, g);
  if (f.is_one()) return;
  for (auto* v : vs)
    for (auto& e : *v) e.second *= f;
  for (auto* x : extra) *x *= f;
}

}  // namespace detail

/*
 * Incrementally built row echelon basis. Each stored vector v_k carries a
 * tag t_k with the invariant v_k = M t_k for whatever linear map M the
 * caller has in mind (tags may be left empty when unused).
 */
template <Field K>
class Echelon {
 public:
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<SparseVec<K>>& rows() const { return rows_; }
  const std::vector<SparseVec<K>>& tags() const { return tags_; }

  struct Reduced {
    SparseVec<K> vec;  // remainder
    SparseVec<K> tag;  // accumulated tag combination
    K scale{1};        // scale * input = remainder + Σ (stored combos)
  };

  // Reduce v (tagged with t): returns remainder r, tag s and scale α with
  // α·v - r = Σ c_k v_k and α·t - s = Σ c_k t_k.
  Reduced reduce(SparseVec<K> v, SparseVec<K> t = {}) const {
    Reduced out;
    out.vec = std::move(v);
    out.tag = std::move(t);
    if constexpr (fraction_free_v<K>) detail::make_primitive({&out.vec, &out.tag}, {&out.scale});
    std::size_t pos = 0;
    while (pos < out.vec.size()) {
      int p = out.vec[pos].first;
      auto it = pivot_.find(p);
      if (it == pivot_.end()) {
        ++pos;
        continue;
      }
      const auto& row = rows_[it->second];
      const auto& rtag = tags_[it->second];
      K a = row.front().second;
      K c = out.vec[pos].second;
      if constexpr (fraction_free_v<K>) {
        out.vec = axpy(out.vec, a, row, -c);
        out.tag = axpy(out.tag, a, rtag, -c);
        out.scale *= a;
        detail::make_primitive({&out.vec, &out.tag}, {&out.scale});
      } else {
        K f = c / a;
        out.vec = axpy(out.vec, K(1), row, -f);
        out.tag = axpy(out.tag, K(1), rtag, -f);
      }
      // entries before pos are untouched: row's pivot is its first index
    }
    return out;
  }

  // Insert after reduction; returns true when v was independent.
  bool insert(SparseVec<K> v, SparseVec<K> t = {}) {
    auto r = reduce(std::move(v), std::move(t));
    return insert_reduced(std::move(r));
  }

  bool insert_reduced(Reduced r) {
    if (r.vec.empty()) return false;
    int p = r.vec.front().first;
    if constexpr (!fraction_free_v<K>) {
      K inv = r.vec.front().second.inverse();
      r.vec = scale(r.vec, inv);
      r.tag = scale(r.tag, inv);
    }
    pivot_[p] = rows_.size();
    rows_.push_back(std::move(r.vec));
    tags_.push_back(std::move(r.tag));
    return true;
  }

  bool contains(const SparseVec<K>& v) const { return reduce(v).vec.empty(); }

 private:
  std::map<int, std::size_t> pivot_;
  std::vector<SparseVec<K>> rows_;
  std::vector<SparseVec<K>> tags_;
};

// Canonical scaling: over ℚ a primitive integer vector with positive
// leading entry, over F_p leading entry 1.
template <Field K>
SparseVec<K> canonical_scaling(SparseVec<K> v) {
  if (v.empty()) return v;
  if constexpr (fraction_free_v<K>) {
    detail::make_primitive({&v});
    if (v.front().second.numerator() < 0) v = scale(v, K(-1));
  } else {
    v = scale(v, v.front().second.inverse());
  }
  return v;
}

template <Field K>
int rank(const SparseMatrix<K>& M) {
  Echelon<K> e;
  for (int j = 0; j < M.cols(); ++j) e.insert(M.col(j));
  return e.rank();
}

// Column echelon of M: rows are images of columns, tags the column combos.
template <Field K>
Echelon<K> column_echelon(const SparseMatrix<K>& M) {
  Echelon<K> e;
  for (int j = 0; j < M.cols(); ++j) e.insert(M.col(j), SparseVec<K>{{j, K(1)}});
  return e;
}

// Kernel basis, one vector per dependent column, in column order.
template <Field K>
std::vector<SparseVec<K>> kernel_basis(const SparseMatrix<K>& M) {
  Echelon<K> e;
  std::vector<SparseVec<K>> ker;
  for (int j = 0; j < M.cols(); ++j) {
    auto r = e.reduce(M.col(j), SparseVec<K>{{j, K(1)}});
    if (r.vec.empty()) ker.push_back(canonical_scaling(std::move(r.tag)));
    else e.insert_reduced(std::move(r));
  }
  return ker;
}

template <Field K>
struct SolveResult {
  bool solvable = false;
  SparseVec<K> x;          // M x = b when solvable
  int rank_matrix = 0;     // rank of M
  int rank_augmented = 0;  // rank of [M | b]; exceeds rank_matrix iff unsolvable
};

template <Field K>
SolveResult<K> solve(const Echelon<K>& colech, const SparseVec<K>& b) {
  SolveResult<K> res;
  res.rank_matrix = colech.rank();
  auto r = colech.reduce(b, SparseVec<K>{});
  // scale*b - vec = Σ c_k (M t_k) and -tag = Σ c_k t_k, so M(-tag) = scale*b - vec
  if (!r.vec.empty()) {
    res.rank_augmented = res.rank_matrix + 1;
    return res;
  }
  res.rank_augmented = res.rank_matrix;
  res.solvable = true;
  res.x = scale(r.tag, K(-1) / r.scale);
  return res;
}

template <Field K>
SolveResult<K> solve(const SparseMatrix<K>& M, const SparseVec<K>& b) {
  return solve(column_echelon(M), b);
}

}  // namespace dghopf

#endif

#ifndef DGHOPF_GRADED_HPP
#define DGHOPF_GRADED_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "field.hpp"

namespace dghopf {

class ShapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A tensor-basis label: indices into a GradedBasis, one per tensor factor.
// The empty word is the unit of k.
using Word = std::vector<int>;

inline Word concat(const Word& a, const Word& b) {
  Word w;
  w.reserve(a.size() + b.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

inline Word slice(const Word& w, std::size_t from, std::size_t to) {
  return Word(w.begin() + static_cast<long>(from), w.begin() + static_cast<long>(to));
}

/*
 * Finite labelled basis of a connected graded vector space. The unique
 * degree-0 element is stored at index 0; it is the unit label.
 */
class GradedBasis {
 public:
  struct Element {
    std::string label;
    int degree;
  };

  explicit GradedBasis(std::vector<Element> elems, std::optional<int> top_degree = std::nullopt) {
    int zero_count = 0;
    for (const auto& e : elems) {
      if (e.degree < 0) throw ShapeError("negative degree for label " + e.label);
      if (e.degree == 0) ++zero_count;
    }
    if (zero_count != 1)
      throw ShapeError("a connected basis needs exactly one degree-0 element, found " + std::to_string(zero_count));
    std::stable_partition(elems.begin(), elems.end(), [](const Element& e) { return e.degree == 0; });
    int max_deg = 0;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (!index_.emplace(elems[i].label, static_cast<int>(i)).second)
        throw ShapeError("duplicate label " + elems[i].label);
      max_deg = std::max(max_deg, elems[i].degree);
    }
    top_ = top_degree.value_or(max_deg);
    if (max_deg > top_) throw ShapeError("degree above top_degree");
    elems_ = std::move(elems);
    by_degree_.assign(static_cast<std::size_t>(top_) + 1, {});
    for (std::size_t i = 0; i < elems_.size(); ++i) by_degree_[elems_[i].degree].push_back(static_cast<int>(i));
  }

  int size() const { return static_cast<int>(elems_.size()); }
  int top_degree() const { return top_; }
  int degree(int i) const { return elems_.at(static_cast<std::size_t>(i)).degree; }
  const std::string& label(int i) const { return elems_.at(static_cast<std::size_t>(i)).label; }
  const std::vector<Element>& elements() const { return elems_; }
  const std::string& unit_label() const { return elems_[0].label; }

  std::optional<int> find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  int index(const std::string& label) const {
    auto i = find(label);
    if (!i) throw ShapeError("unknown label " + label);
    return *i;
  }

  int degree(const Word& w) const {
    int s = 0;
    for (int i : w) s += degree(i);
    return s;
  }
  bool positive(const Word& w) const {
    return std::all_of(w.begin(), w.end(), [&](int i) { return degree(i) > 0; });
  }

  std::string word_label(const Word& w) const {
    if (w.empty()) return "()";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) s += "|";
      s += label(w[i]);
    }
    return s;
  }
  std::vector<std::string> word_labels(const Word& w) const {
    std::vector<std::string> v;
    for (int i : w) v.push_back(label(i));
    return v;
  }

  const std::vector<int>& of_degree(int d) const {
    static const std::vector<int> none;
    if (d < 0 || d > top_) return none;
    return by_degree_[static_cast<std::size_t>(d)];
  }

  // Words of the given arity and total degree, lexicographic by index.
  // With positive_only, no factor has degree 0.
  std::vector<Word> words(int arity, int total_degree, bool positive_only) const {
    std::vector<Word> out;
    Word cur;
    enumerate(arity, total_degree, positive_only, cur, out);
    return out;
  }

  // All words of the given arity, lexicographic by index.
  std::vector<Word> words(int arity, bool positive_only = false) const {
    std::vector<Word> out;
    Word cur(static_cast<std::size_t>(arity), 0);
    std::vector<int> allowed;
    for (int i = 0; i < size(); ++i)
      if (!positive_only || degree(i) > 0) allowed.push_back(i);
    if (arity == 0) return {Word{}};
    if (allowed.empty()) return out;
    std::vector<std::size_t> pos(static_cast<std::size_t>(arity), 0);
    while (true) {
      for (int k = 0; k < arity; ++k) cur[k] = allowed[pos[k]];
      out.push_back(cur);
      int k = arity - 1;
      while (k >= 0 && ++pos[k] == allowed.size()) pos[k--] = 0;
      if (k < 0) break;
    }
    return out;
  }

  friend bool operator==(const GradedBasis& a, const GradedBasis& b) {
    if (a.top_ != b.top_ || a.elems_.size() != b.elems_.size()) return false;
    for (std::size_t i = 0; i < a.elems_.size(); ++i)
      if (a.elems_[i].label != b.elems_[i].label || a.elems_[i].degree != b.elems_[i].degree) return false;
    return true;
  }

 private:
  void enumerate(int arity, int deg, bool pos, Word& cur, std::vector<Word>& out) const {
    if (arity == 0) {
      if (deg == 0) out.push_back(cur);
      return;
    }
    for (int i = 0; i < size(); ++i) {
      int di = degree(i);
      if (pos && di == 0) continue;
      if (di > deg) continue;
      // remaining factors need at least 1 each when positive
      if (pos && deg - di < arity - 1) continue;
      cur.push_back(i);
      enumerate(arity - 1, deg - di, pos, cur, out);
      cur.pop_back();
    }
  }

  std::vector<Element> elems_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<int>> by_degree_;
  int top_ = 0;
};

using BasisPtr = std::shared_ptr<const GradedBasis>;

inline bool same_basis(const BasisPtr& a, const BasisPtr& b) { return a == b || (a && b && *a == *b); }

// Sparse vector over tensor-basis words, ordered lexicographically.
template <Field K>
using WordVec = std::map<Word, K>;

template <Field K>
void add_term(WordVec<K>& v, const Word& w, const K& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = v.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
  }
}

template <Field K>
void add_scaled(WordVec<K>& v, const WordVec<K>& u, const K& c) {
  if (c.is_zero()) return;
  for (const auto& [w, x] : u) add_term(v, w, x * c);
}

// Tensor of two vectors: words concatenate, no sign (callers own signs).
template <Field K>
WordVec<K> tensor(const WordVec<K>& a, const WordVec<K>& b) {
  WordVec<K> out;
  for (const auto& [u, x] : a)
    for (const auto& [v, y] : b) add_term(out, concat(u, v), x * y);
  return out;
}

/*
 * Degree-p linear map between tensor powers of graded bases, stored as a
 * sparse column map keyed by source word.
 */
template <Field K>
class GradedMap {
 public:
  GradedMap() = default;
  GradedMap(BasisPtr src, int src_arity, BasisPtr dst, int dst_arity, int degree)
      : src_(std::move(src)), dst_(std::move(dst)), src_arity_(src_arity), dst_arity_(dst_arity), degree_(degree) {
    if (src_arity < 0 || dst_arity < 0) throw ShapeError("negative arity");
  }
  GradedMap(BasisPtr b, int src_arity, int dst_arity, int degree) : GradedMap(b, src_arity, b, dst_arity, degree) {}

  static GradedMap identity(BasisPtr b, int arity) {
    GradedMap f(b, arity, arity, 0);
    for (const auto& w : b->words(arity)) f.cols_[w][w] = K(1);
    return f;
  }

  const BasisPtr& source_basis() const { return src_; }
  const BasisPtr& target_basis() const { return dst_; }
  int source_arity() const { return src_arity_; }
  int target_arity() const { return dst_arity_; }
  int degree() const { return degree_; }

  void add(const Word& s, const Word& t, const K& c) {
    check_entry(s, t);
    if (c.is_zero()) return;
    auto& col = cols_[s];
    add_term(col, t, c);
    if (col.empty()) cols_.erase(s);
  }

  void add_column(const Word& s, const WordVec<K>& v, const K& scale = K(1)) {
    if (v.empty() || scale.is_zero()) return;
    auto& col = cols_[s];
    for (const auto& [t, c] : v) {
      check_entry(s, t);
      add_term(col, t, c * scale);
    }
    if (col.empty()) cols_.erase(s);
  }

  const WordVec<K>* column(const Word& s) const {
    auto it = cols_.find(s);
    return it == cols_.end() ? nullptr : &it->second;
  }

  WordVec<K> apply(const Word& s) const {
    auto p = column(s);
    return p ? *p : WordVec<K>{};
  }

  WordVec<K> apply(const WordVec<K>& v) const {
    WordVec<K> out;
    for (const auto& [s, c] : v)
      if (auto p = column(s)) add_scaled(out, *p, c);
    return out;
  }

  K entry(const Word& s, const Word& t) const {
    auto p = column(s);
    if (!p) return K(0);
    auto it = p->find(t);
    return it == p->end() ? K(0) : it->second;
  }

  const std::map<Word, WordVec<K>>& columns() const { return cols_; }
  bool is_zero() const { return cols_.empty(); }
  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& [s, c] : cols_) n += c.size();
    return n;
  }

  bool same_shape(const GradedMap& o) const {
    return src_arity_ == o.src_arity_ && dst_arity_ == o.dst_arity_ && degree_ == o.degree_ &&
           same_basis(src_, o.src_) && same_basis(dst_, o.dst_);
  }

  GradedMap& operator+=(const GradedMap& o) {
    require_same_shape(o, "sum");
    for (const auto& [s, v] : o.cols_) add_column(s, v);
    return *this;
  }
  GradedMap& operator-=(const GradedMap& o) {
    require_same_shape(o, "difference");
    for (const auto& [s, v] : o.cols_) add_column(s, v, K(-1));
    return *this;
  }
  GradedMap scaled(const K& c) const {
    GradedMap r(src_, src_arity_, dst_, dst_arity_, degree_);
    if (c.is_zero()) return r;
    for (const auto& [s, v] : cols_) r.add_column(s, v, c);
    return r;
  }
  friend GradedMap operator+(GradedMap a, const GradedMap& b) { return a += b; }
  friend GradedMap operator-(GradedMap a, const GradedMap& b) { return a -= b; }
  friend bool operator==(const GradedMap& a, const GradedMap& b) {
    if (!a.same_shape(b)) return false;
    if (a.cols_.size() != b.cols_.size()) return false;
    auto ia = a.cols_.begin();
    auto ib = b.cols_.begin();
    for (; ia != a.cols_.end(); ++ia, ++ib) {
      if (ia->first != ib->first || ia->second.size() != ib->second.size()) return false;
      auto ja = ia->second.begin();
      auto jb = ib->second.begin();
      for (; ja != ia->second.end(); ++ja, ++jb)
        if (ja->first != jb->first || ja->second != jb->second) return false;
    }
    return true;
  }

  // Same map with only the columns whose source word satisfies pred.
  template <class Pred>
  GradedMap restrict_sources(Pred pred) const {
    GradedMap r(src_, src_arity_, dst_, dst_arity_, degree_);
    for (const auto& [s, v] : cols_)
      if (pred(s)) r.cols_.emplace(s, v);
    return r;
  }

  struct Entry {
    Word source, target;
    K value;
  };
  std::optional<Entry> first_nonzero() const {
    if (cols_.empty()) return std::nullopt;
    const auto& [s, v] = *cols_.begin();
    return Entry{s, v.begin()->first, v.begin()->second};
  }

  std::string describe_entry(const Entry& e) const {
    return "(" + src_->word_label(e.source) + ") -> " + e.value.str() + " * (" + dst_->word_label(e.target) + ")";
  }

 private:
  void check_entry(const Word& s, const Word& t) const {
    if (static_cast<int>(s.size()) != src_arity_ || static_cast<int>(t.size()) != dst_arity_)
      throw ShapeError("entry arity mismatch");
    if (dst_->degree(t) != src_->degree(s) + degree_)
      throw ShapeError("entry violates map degree " + std::to_string(degree_) + ": (" + src_->word_label(s) +
                       ") -> (" + dst_->word_label(t) + ")");
  }
  void require_same_shape(const GradedMap& o, const char* what) const {
    if (!same_shape(o)) throw ShapeError(std::string("shape mismatch in ") + what);
  }

  BasisPtr src_, dst_;
  int src_arity_ = 0, dst_arity_ = 0, degree_ = 0;
  std::map<Word, WordVec<K>> cols_;
};

// f ∘ g
template <Field K>
GradedMap<K> compose(const GradedMap<K>& f, const GradedMap<K>& g) {
  if (g.target_arity() != f.source_arity() || !same_basis(g.target_basis(), f.source_basis()))
    throw ShapeError("composition error: source of f is not the target of g");
  GradedMap<K> r(g.source_basis(), g.source_arity(), f.target_basis(), f.target_arity(), f.degree() + g.degree());
  for (const auto& [s, v] : g.columns()) r.add_column(s, f.apply(v));
  return r;
}

/*
 * (f⊗g)(x⊗y) = (-1)^{|g||x|} f(x)⊗g(y). Both maps must live on one basis.
 * Only columns present in f and g are produced, so identities should be
 * built with GradedMap::identity.
 */
template <Field K>
GradedMap<K> tensor_of_maps(const GradedMap<K>& f, const GradedMap<K>& g) {
  if (!same_basis(f.source_basis(), g.source_basis()) || !same_basis(f.target_basis(), g.target_basis()))
    throw ShapeError("tensor_of_maps needs a common basis");
  const auto& b = *f.source_basis();
  GradedMap<K> r(f.source_basis(), f.source_arity() + g.source_arity(), f.target_basis(),
                 f.target_arity() + g.target_arity(), f.degree() + g.degree());
  for (const auto& [x, fx] : f.columns()) {
    K sgn = sign<K>(static_cast<long>(g.degree()) * b.degree(x));
    for (const auto& [y, gy] : g.columns()) {
      WordVec<K> col;
      for (const auto& [u, a] : fx)
        for (const auto& [v, c] : gy) add_term(col, concat(u, v), sgn * a * c);
      r.add_column(concat(x, y), col);
    }
  }
  return r;
}

/*
 * Permutations act on tensor positions. sigma is given by images,
 * 0-based: factor i moves to position sigma[i], so
 * sigma(x_1⊗…⊗x_n) = ± x_{sigma^{-1}(1)}⊗…⊗x_{sigma^{-1}(n)}.
 * The sign is the product of (-1)^{|x_i||x_j|} over pairs i<j with
 * sigma[i] > sigma[j].
 */
struct SignedIndexMap {
  std::vector<int> source_of;  // output position k holds input factor source_of[k]
  int sign = 1;
};

inline void check_permutation(const std::vector<int>& sigma) {
  std::vector<char> seen(sigma.size(), 0);
  for (int s : sigma) {
    if (s < 0 || s >= static_cast<int>(sigma.size()) || seen[static_cast<std::size_t>(s)])
      throw ShapeError("not a permutation");
    seen[static_cast<std::size_t>(s)] = 1;
  }
}

inline SignedIndexMap permutation_operator(const std::vector<int>& sigma, const std::vector<int>& degrees) {
  check_permutation(sigma);
  if (degrees.size() != sigma.size()) throw ShapeError("degree list length differs from permutation size");
  SignedIndexMap m;
  m.source_of.assign(sigma.size(), 0);
  for (std::size_t i = 0; i < sigma.size(); ++i) m.source_of[static_cast<std::size_t>(sigma[i])] = static_cast<int>(i);
  long odd_swaps = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    for (std::size_t j = i + 1; j < sigma.size(); ++j)
      if (sigma[i] > sigma[j] && (degrees[i] & 1) && (degrees[j] & 1)) ++odd_swaps;
  m.sign = (odd_swaps & 1) ? -1 : 1;
  return m;
}

// 1-based transposition of positions i and j among n, as image list.
inline std::vector<int> transposition(int n, int i, int j) {
  std::vector<int> s(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) s[k] = k;
  std::swap(s[i - 1], s[j - 1]);
  return s;
}

inline std::vector<int> compose_permutations(const std::vector<int>& sigma, const std::vector<int>& tau) {
  std::vector<int> r(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i) r[i] = sigma[static_cast<std::size_t>(tau[i])];
  return r;
}

inline std::vector<int> inverse_permutation(const std::vector<int>& sigma) {
  std::vector<int> r(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) r[static_cast<std::size_t>(sigma[i])] = static_cast<int>(i);
  return r;
}

inline std::pair<Word, int> permute_word(const std::vector<int>& sigma, const Word& w, const GradedBasis& b) {
  std::vector<int> degs;
  for (int i : w) degs.push_back(b.degree(i));
  auto m = permutation_operator(sigma, degs);
  Word out(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) out[k] = w[static_cast<std::size_t>(m.source_of[k])];
  return {out, m.sign};
}

template <Field K>
GradedMap<K> permutation_map(const BasisPtr& b, const std::vector<int>& sigma) {
  int n = static_cast<int>(sigma.size());
  GradedMap<K> f(b, n, n, 0);
  for (const auto& w : b->words(n)) {
    auto [out, s] = permute_word(sigma, w, *b);
    f.add(w, out, K(s));
  }
  return f;
}

// 1^{⊗i} ⊗ g ⊗ 1^{⊗j}
template <Field K>
GradedMap<K> sandwich(const GradedMap<K>& g, int i, int j) {
  const auto& b = g.source_basis();
  GradedMap<K> r = g;
  if (i > 0) r = tensor_of_maps(GradedMap<K>::identity(b, i), r);
  if (j > 0) r = tensor_of_maps(r, GradedMap<K>::identity(b, j));
  return r;
}

}  // namespace dghopf

#endif

#ifndef DGHOPF_COHOMOLOGY_HPP
#define DGHOPF_COHOMOLOGY_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cochains.hpp"
#include "linalg.hpp"

namespace dghopf {

class ComplexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/*
 * Windowed complex with its differential matrices, optionally restricted
 * to a D-stable subcomplex given by ambient basis vectors per degree.
 */
template <Field K>
class AssembledComplex {
 public:
  using Subspace = std::vector<SparseVec<K>>;

  explicit AssembledComplex(std::shared_ptr<const CochainComplex<K>> cx) : cx_(std::move(cx)) {}

  const CochainComplex<K>& complex() const { return *cx_; }
  const CochainSpace& space(int r) const { return cx_->space(r); }

  // D: C^r -> C^{r+1}; D∘D is checked against the neighbours on first use.
  const SparseMatrix<K>& matrix(int r) const {
    auto it = mats_.find(r);
    if (it != mats_.end()) return it->second;
    auto a = cx_->assemble_differential(r);
    if (a.normalization_leak)
      throw ComplexError("the differential leaves the normalized subspace at total degree " + std::to_string(r));
    const auto& M = mats_.emplace(r, std::move(a.matrix)).first->second;
    if (auto prev = mats_.find(r - 1); prev != mats_.end()) check_square(r - 1, prev->second, M);
    if (auto next = mats_.find(r + 1); next != mats_.end()) check_square(r, M, next->second);
    return M;
  }

  void set_subspace(std::function<Subspace(int)> gen) { subspace_gen_ = std::move(gen); }
  bool has_subspace() const { return static_cast<bool>(subspace_gen_); }

  // Basis of the cochains of degree r (columns of the identity if unrestricted).
  const Subspace& basis(int r) const {
    auto it = bases_.find(r);
    if (it != bases_.end()) return it->second;
    Subspace b;
    if (subspace_gen_) {
      b = subspace_gen_(r);
    } else {
      for (int i = 0; i < space(r).dim; ++i) b.push_back({{i, K(1)}});
    }
    return bases_.emplace(r, std::move(b)).first->second;
  }

  // D restricted to the basis of degree r, in ambient coordinates of r+1.
  SparseMatrix<K> restricted_matrix(int r) const {
    const auto& B = basis(r);
    const auto& M = matrix(r);
    SparseMatrix<K> R(M.rows(), static_cast<int>(B.size()));
    for (std::size_t j = 0; j < B.size(); ++j) R.set_col(static_cast<int>(j), M.apply(B[j]));
    return R;
  }

  const Echelon<K>& image_echelon(int r) const {
    // image of D into degree r
    auto it = images_.find(r);
    if (it != images_.end()) return it->second;
    auto e = column_echelon(restricted_matrix(r - 1));
    return images_.emplace(r, std::move(e)).first->second;
  }

 private:
  void check_square(int r, const SparseMatrix<K>& A, const SparseMatrix<K>& B) const {
    if (!B.multiply(A).is_zero())
      throw ComplexError("D∘D is not zero between total degrees " + std::to_string(r) + " and " +
                         std::to_string(r + 2));
  }

  std::shared_ptr<const CochainComplex<K>> cx_;
  std::function<Subspace(int)> subspace_gen_;
  mutable std::map<int, SparseMatrix<K>> mats_;
  mutable std::map<int, Subspace> bases_;
  mutable std::map<int, Echelon<K>> images_;
};

template <Field K>
struct CohomologyResult {
  int degree = 0;
  int dimension = 0;
  int cochain_dim = 0;     // dimension of the (sub)space of r-cochains
  int cocycle_dim = 0;     // dim ker D_r
  int boundary_rank = 0;   // rank D_{r-1}
  int certificate_rank = 0;  // rank of boundaries plus representatives
  std::vector<SparseVec<K>> representatives;  // ambient coordinates
};

template <Field K>
CohomologyResult<K> cohomology(const AssembledComplex<K>& c, int r) {
  CohomologyResult<K> res;
  res.degree = r;
  const auto& B = c.basis(r);
  res.cochain_dim = static_cast<int>(B.size());
  // D² = 0 is asserted when both neighbouring matrices are built
  c.matrix(r - 1);
  c.matrix(r);
  auto ker = kernel_basis(c.restricted_matrix(r));
  res.cocycle_dim = static_cast<int>(ker.size());
  Echelon<K> e = c.image_echelon(r);
  res.boundary_rank = e.rank();
  for (const auto& k : ker) {
    // back to ambient coordinates
    std::map<int, K> acc;
    for (const auto& [j, x] : k)
      for (const auto& [i, y] : B[static_cast<std::size_t>(j)]) acc[i] += x * y;
    auto red = e.reduce(from_map(acc));
    if (red.vec.empty()) continue;
    res.representatives.push_back(canonical_scaling(red.vec));
    e.insert_reduced(std::move(red));
  }
  res.dimension = static_cast<int>(res.representatives.size());
  res.certificate_rank = e.rank();
  if (res.dimension != res.cocycle_dim - res.boundary_rank)
    throw ComplexError("inconsistent ranks at total degree " + std::to_string(r));
  return res;
}

template <Field K>
struct CoboundarySolution {
  bool solved = false;
  SparseVec<K> witness;      // ambient coordinates in degree r-1
  int rank_boundaries = 0;   // rank of D_{r-1}
  int rank_augmented = 0;    // rank of [D_{r-1} | target]
};

// Solve D(x) = target for a target of degree r (ambient coordinates).
template <Field K>
CoboundarySolution<K> solve_coboundary(const AssembledComplex<K>& c, const SparseVec<K>& target, int r) {
  CoboundarySolution<K> out;
  auto sol = solve(c.image_echelon(r), target);
  out.rank_boundaries = sol.rank_matrix;
  out.rank_augmented = sol.rank_augmented;
  if (!sol.solvable) return out;
  out.solved = true;
  const auto& B = c.basis(r - 1);
  std::map<int, K> acc;
  for (const auto& [j, x] : sol.x)
    for (const auto& [i, y] : B[static_cast<std::size_t>(j)]) acc[i] += x * y;
  out.witness = from_map(acc);
  return out;
}

}  // namespace dghopf

#endif

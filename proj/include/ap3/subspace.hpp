#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "ap3/field.hpp"

namespace ap3 {

using Rng = std::mt19937_64;

// A linear subspace of F_p^n held as a basis in reduced row-echelon form.
// Pivot columns are digit positions in increasing order, so two equal
// subspaces always carry identical bases and compare equal directly.
class Subspace {
 public:
  static Subspace zero(const FieldParams& params);
  static Subspace full(const FieldParams& params);
  // Span of arbitrary (possibly dependent) generators.
  static Subspace span(const FieldParams& params, const std::vector<Element>& generators);
  static Subspace span_rows(const FieldParams& params, std::vector<Digits> rows);

  const FieldParams& params() const { return params_; }
  std::uint32_t dim() const { return static_cast<std::uint32_t>(basis_.size()); }
  // p^dim.
  std::uint32_t size() const { return params_.power(dim()); }
  const std::vector<Digits>& basis() const { return basis_; }
  const std::vector<std::uint32_t>& pivots() const { return pivots_; }
  std::vector<Element> basis_elements() const;

  bool contains(Element v) const;
  // All p^dim members; member(c) for c in [0, size) uses c's base-p digits
  // as coefficients on the basis rows.
  std::vector<Element> members() const;
  Element member(std::uint32_t coefficients) const;

  // {v : v.w = 0 for all w in this}.
  Subspace orthogonal_complement() const;
  Subspace intersect(const Subspace& other) const;
  Subspace sum(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.params_ == b.params_ && a.basis_ == b.basis_;
  }

 private:
  friend std::vector<Subspace> enumerate_subspaces(const FieldParams&, std::uint32_t, std::uint64_t);
  Subspace(FieldParams params, std::vector<Digits> rref, std::vector<std::uint32_t> pivots);

  FieldParams params_;
  std::vector<Digits> basis_;
  std::vector<std::uint32_t> pivots_;
};

// Row-reduces in place and drops zero rows; returns pivot columns.
std::vector<std::uint32_t> row_reduce(std::vector<Digits>& rows, std::uint32_t p);

// Gaussian binomial [n choose d]_p, saturating at UINT64_MAX.
std::uint64_t gaussian_binomial(std::uint32_t n, std::uint32_t d, std::uint32_t p);

inline constexpr std::uint64_t kDefaultEnumerationCap = 2'000'000;

// Every subspace of dimension dim, each exactly once, in a deterministic
// order. Throws EnumerationCapError when the Gaussian binomial exceeds cap.
std::vector<Subspace> enumerate_subspaces(const FieldParams& params, std::uint32_t dim,
                                          std::uint64_t cap = kDefaultEnumerationCap);

// Uniform over the Grassmannian: rejection-sample full-rank dim x n matrices
// and canonicalise. Every subspace has the same number of generating
// matrices, so the induced law is uniform.
Subspace sample_uniform_subspace(const FieldParams& params, std::uint32_t dim, Rng& rng);

// The p^dim(W) elements of t + W, in member order of W.
std::vector<Element> coset_members(const Subspace& w, Element t);

// Labels each element by its coset modulo W, via the dot products with a
// basis of W-perp: two elements share a label iff their difference lies in W.
class CosetIndexer {
 public:
  explicit CosetIndexer(const Subspace& w);
  std::uint32_t num_cosets() const { return num_cosets_; }
  std::uint32_t key(Element x) const;
  // key(x) for every x in the field.
  const std::vector<std::uint32_t>& keys() const { return keys_; }

 private:
  FieldParams params_;
  std::vector<Element> dual_basis_;
  std::uint32_t num_cosets_;
  std::vector<std::uint32_t> keys_;
};

// The decomposition x = v(x) + w(x) for a direct sum F = V + W.
class DirectSum {
 public:
  // Throws StructuralError unless dim V + dim W = n and V meets W only in 0.
  DirectSum(const Subspace& v, const Subspace& w);

  static bool is_direct_sum(const Subspace& v, const Subspace& w);

  const Subspace& v() const { return v_; }
  const Subspace& w() const { return w_; }
  std::pair<Element, Element> decompose(Element x) const;

 private:
  Subspace v_;
  Subspace w_;
  // Rows: inverse of the matrix whose rows are the V basis then the W basis.
  std::vector<Digits> inverse_;
};

inline std::pair<Element, Element> decompose(Element x, const Subspace& v, const Subspace& w) {
  return DirectSum(v, w).decompose(x);
}

}  // namespace ap3

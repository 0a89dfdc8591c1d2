#pragma once

// Random subspaces W of dimension n' with B ∩ W^perp = {0} and many dense
// translates t + W, plus estimators for the two lemmas that make them common.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ap3/spectral.hpp"
#include "ap3/subspace.hpp"

namespace ap3 {

// Smallest n' >= 1 with p^{n'-1} >= C(k,2), so 1 - C(k,2) p^{-n'} > 1/2.
// k = 1 gives n' = 1. Throws ParameterError for k = 0 and InfeasibleError
// when n' > n.
std::uint32_t choose_dimension(std::size_t k, const FieldParams& params);

struct FinderConfig {
  std::size_t k = 2;
  std::uint64_t max_attempts = 256;
  std::uint64_t seed = 0;
  bool require_direct_sum = true;
  // 0 selects choose_dimension(k).
  std::uint32_t dim = 0;
};

struct FinderStats {
  std::uint64_t attempts = 0;
  std::uint64_t rejected_direct_sum = 0;
  std::uint64_t rejected_bv0 = 0;
  std::uint64_t rejected_tv = 0;
};

struct GoodSubspace {
  Subspace w;
  Subspace v;  // W^perp
  // Every t in F with sum_{m in t+W} g(m) >= E(g)|W|/2, ascending.
  std::vector<Element> translates;
  bool direct_sum_ok = false;
};

struct FinderResult {
  std::optional<GoodSubspace> good;
  FinderStats stats;
  std::uint32_t dim = 0;
  std::vector<std::string> warnings;
  bool found() const { return good.has_value(); }
};

// Absolute slack on the translate threshold.
inline constexpr double kTranslateTolerance = 1e-12;

// Translates t with sum_{m in t+W} g(m) >= E(g)|W|/2, via coset sums.
std::vector<Element> dense_translates(const DenseFunction& g, const Subspace& w);
// True iff no nonzero element of B lies in V.
bool meets_only_at_zero(const std::vector<Element>& b, const Subspace& v);

// Rejection-samples uniform W of dimension n' until (i) B ∩ W^perp = {0},
// (ii) at least F/4 translates are dense for g, and (iii) W ∩ W^perp = {0}
// when required. A = top frequencies of f, B = A - A. Each attempt is
// charged to the first condition it fails. A warning is recorded when
// E(g) <= 8 p^{-1/2} k^{-1}.
FinderResult find_good_subspace(const DenseFunction& g, const std::vector<Element>& a, const FinderConfig& cfg,
                                Rng& rng);
FinderResult find_good_subspace(const DenseFunction& g, const std::vector<Element>& a, const FinderConfig& cfg);

struct SubspaceVerification {
  bool bv0 = false;
  bool enough_translates = false;
  bool translates_match = false;
  bool cosets_distinct = false;
  bool direct_sum = false;
  std::size_t translate_count = 0;
  bool ok() const { return bv0 && enough_translates && translates_match && cosets_distinct; }
};

// Re-checks a GoodSubspace by direct enumeration of each coset t + W and of
// the differences of A, without the coset-key shortcut.
SubspaceVerification verify_good_subspace(const DenseFunction& g, const std::vector<Element>& a,
                                          const GoodSubspace& good);

struct ProbabilityEstimate {
  double value = 0.0;
  double std_error = 0.0;  // zero in exhaustive mode
  std::uint64_t samples = 0;
  bool exact = false;
};

// P(B ∩ V = {0}) for V = W^perp, W uniform of dimension n'.
ProbabilityEstimate estimate_bv0(const FieldParams& params, const std::vector<Element>& a, std::uint32_t dim,
                                 std::uint64_t trials, Rng& rng);
ProbabilityEstimate exact_bv0(const FieldParams& params, const std::vector<Element>& a, std::uint32_t dim,
                              std::uint64_t cap = kDefaultEnumerationCap);
// P(sum_{m in t+W} g(m) >= E(g)|W|/2) for uniform t and W of dimension n'.
ProbabilityEstimate estimate_tv(const DenseFunction& g, std::uint32_t dim, std::uint64_t trials, Rng& rng);
ProbabilityEstimate exact_tv(const DenseFunction& g, std::uint32_t dim, std::uint64_t cap = kDefaultEnumerationCap);

struct LemmaEstimates {
  std::optional<ProbabilityEstimate> bv0;
  std::optional<ProbabilityEstimate> tv;
};

// Either estimate is skipped when its input (A or g) is absent.
LemmaEstimates estimate_lemma_probabilities(const FieldParams& params, const std::vector<Element>& a,
                                            const std::optional<DenseFunction>& g, std::uint32_t dim,
                                            std::uint64_t trials, Rng& rng, bool exhaustive);

enum class MomentMode { kExhaustive, kSampled };

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
  std::uint64_t samples = 0;
};

// Mean and variance of X = sum_{m in t+W} g(m) over uniform (t, W),
// dim W = n'. Sampled mode draws `trials` pairs from rng.
Moments chebyshev_moments(const DenseFunction& g, std::uint32_t dim, MomentMode mode, std::uint64_t trials = 0,
                          Rng* rng = nullptr, std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace ap3

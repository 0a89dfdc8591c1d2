#pragma once

// The coset-localised function h = (f alpha) * V, the choice of translate t,
// midpoint certificates and the depletion loop that turns one certified
// midpoint into a lower bound for Lambda3(f,g,f) or Lambda3(g,f,f).

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ap3/bounds.hpp"
#include "ap3/finder.hpp"
#include "ap3/lambda3.hpp"
#include "ap3/spectral.hpp"
#include "ap3/subspace.hpp"

namespace ap3 {

// x = v + w with v in V, w in W.
struct Decomposed {
  Element x = 0;
  Element v = 0;
  Element w = 0;
};

// Q(t) = sum_{a in A} |hhat_t(w(a)) - w^{-v(a).t} fhat(a)|^2
//      + sum_{w in W2} |hhat_t(w)|^2,
// where hhat_t(w) = sum_{v in V} fhat(w+v) w^{-v.t}. Q depends on t only
// through t + W, so it is tabulated once per coset: for each w in W the
// map t -> hhat_t(w) is a transform over V, computed by the radix-p routine.
class TranslateObjective {
 public:
  // Requires V = W^perp, F = V + W direct, and B ∩ V = {0} so that each
  // coset w + V holds at most one element of A. Throws StructuralError.
  TranslateObjective(const Spectrum& f_spectrum, std::vector<Element> a, const Subspace& w, const Subspace& v);

  const Subspace& w() const { return w_; }
  const Subspace& v() const { return v_; }
  const CosetIndexer& indexer() const { return indexer_; }
  const std::vector<Decomposed>& decomposition() const { return decomposition_; }
  // W1 = {w(a) : a in A} and W2 = W \ W1, both ascending.
  const std::vector<Element>& w1() const { return w1_; }
  const std::vector<Element>& w2() const { return w2_; }

  double q(Element t) const { return q_[indexer_.key(t)]; }
  // Q on each coset of W, indexed by CosetIndexer key.
  const std::vector<double>& q_by_coset() const { return q_; }
  // sum_{t in F} Q(t).
  double total_over_field() const;
  // hhat_t(w) for w in W.
  Complex h_hat(Element t, Element w) const;

 private:
  FieldParams params_;
  Subspace w_;
  Subspace v_;
  CosetIndexer indexer_;
  std::vector<Decomposed> decomposition_;
  std::vector<Element> w1_;
  std::vector<Element> w2_;
  // position of each element of W in w_.members(), or -1
  std::vector<std::int64_t> w_position_;
  // hhat_[position of w][coset key]
  std::vector<std::vector<Complex>> hhat_;
  std::vector<double> q_;
};

struct TranslateChoice {
  Element t = 0;
  double q = 0.0;
};

// The t in T minimising Q(t); ties go to the smallest t. T must be nonempty.
TranslateChoice select_translate(const TranslateObjective& objective, const std::vector<Element>& translates);

struct CosetContext {
  Subspace w;
  Subspace v;
  Element t = 0;
  DenseFunction alpha;  // indicator of t + W
  DenseFunction h;      // h(m) = sum_{b in V} (f alpha)(m - b), built directly
  // sum_{v in V} fhat(w+v) w^{-v.t} for w in W and 0 elsewhere, by direct
  // summation of the formula.
  std::vector<Complex> h_hat;
  std::vector<Element> w1;
  std::vector<Element> w2;
  std::vector<Decomposed> decomposition;
};

// Throws StructuralError unless V = W^perp and F = V + W is direct.
CosetContext build_context(const DenseFunction& f, const Spectrum& f_spectrum, const std::vector<Element>& a,
                           const Subspace& w, const Subspace& v, Element t);

struct ContextCheck {
  double alpha_hat_error = 0.0;  // max |alphahat - |W| w^{a.t} [a in V]|
  double h_hat_error = 0.0;      // max |dft(h) - h_hat|
  bool v_invariant = false;      // h(m + v) == h(m) exactly
  bool h_equals_f_on_coset = false;
  bool unique_witnesses = false;  // each w in W1 meets A in exactly one point
  bool ok(double tol = 1e-8) const {
    return alpha_hat_error < tol && h_hat_error < tol && v_invariant && h_equals_f_on_coset && unique_witnesses;
  }
};

ContextCheck check_context(const CosetContext& ctx, const DenseFunction& f, const std::vector<Element>& a);

struct MidpointCertificate {
  std::size_t step = 0;
  Element m = 0;
  double g_value = 0.0;
  double mean_g = 0.0;  // E(g_i)
  // Exact sum_d f(m-d) f(m+d) (fgf) or sum_d f(m+d) f(m+2d) (gff).
  double pair_count = 0.0;
  // E(g_i)^2 |V| / 4 - 9 delta F
  double certified_floor = 0.0;
  double q = 0.0;  // Q(t) of the coset holding m
  bool vacuous = false;
  bool holds = false;
};

// Checks m in t + W and g_i(m) >= E(g_i)/2 (ParameterError otherwise), then
// compares the exact pair count with the floor.
MidpointCertificate certify_midpoint(const Subspace& w, Element t, const DenseFunction& f,
                                     const DenseFunction& g_i, double delta, Element m, Ordering ordering,
                                     std::size_t step = 0);

enum class RefreshPolicy { kEveryStep, kReuseWhileValid };
enum class RunStatus { kCompleted, kRefused, kFinderFailed, kCertificateFailed };

std::string to_string(RunStatus s);
std::string to_string(RefreshPolicy r);

struct DepletionOptions {
  Ordering ordering = Ordering::kFgf;
  RefreshPolicy refresh = RefreshPolicy::kEveryStep;
  std::uint64_t seed = 0;
  std::uint64_t max_attempts = 256;
  bool require_direct_sum = true;
  // When false, E(g) >= 8 p^{-1/2} k^{-1} is reported but not enforced.
  bool require_density_floor = true;
  // Build and check a CosetContext at every refresh.
  bool check_contexts = false;
};

struct DepletionRun {
  Ordering ordering = Ordering::kFgf;
  RunStatus status = RunStatus::kRefused;
  std::string diagnostic;
  HypothesisReport hypotheses;
  std::size_t k = 0;
  double delta = 0.0;
  double theta = 0.0;
  double sigma_k = 0.0;
  std::size_t r = 0;  // ceil(E(g) F / 2)
  std::vector<MidpointCertificate> certificates;
  double lambda_lower = 0.0;
  double lambda_measured = 0.0;
  double theorem_rhs = 0.0;  // only meaningful for k >= 2
  bool theorem_rhs_vacuous = true;
  FinderStats finder;
  std::size_t refreshes = 0;
  std::vector<std::string> warnings;
  // Largest Q(t) / (4 sigma_k) seen; 0 when sigma_k = 0 and Q vanishes.
  double worst_q_ratio = 0.0;
  bool q_bound_ok = true;
  bool bookkeeping_ok = true;
  std::size_t contexts_checked = 0;
  double worst_h_hat_error = 0.0;
  bool contexts_ok = true;
};

// Depletion loop over r = ceil(E(g) F / 2) steps. Each step finds a good W
// for the current g_i, picks t by select_translate, certifies the midpoint
// m in t + W maximising g_i (ties by index), and sets g_i(m) = 0.
// lambda_lower = F^{-2} (E(g)/4) sum_i floor_i; lambda_measured is brute force.
DepletionRun run_depletion(const DenseFunction& f, const DenseFunction& g, std::size_t k, double delta,
                           const DepletionOptions& options);

}  // namespace ap3

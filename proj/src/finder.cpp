#include "ap3/finder.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ap3/errors.hpp"

namespace ap3 {
namespace {

std::uint32_t resolve_dim(const FinderConfig& cfg, const FieldParams& params) {
  if (cfg.dim == 0) return choose_dimension(cfg.k, params);
  if (cfg.dim > params.n()) throw InfeasibleError("subspace dimension exceeds n");
  return cfg.dim;
}

std::vector<double> coset_sums(const DenseFunction& g, const CosetIndexer& idx) {
  std::vector<double> sums(idx.num_cosets(), 0.0);
  const auto& keys = idx.keys();
  for (Element m = 0; m < g.size(); ++m) sums[keys[m]] += g[m];
  return sums;
}

double translate_threshold(const DenseFunction& g, const Subspace& w) {
  return g.mean() * w.size() / 2.0 - kTranslateTolerance;
}

ProbabilityEstimate bernoulli(std::uint64_t hits, std::uint64_t n) {
  ProbabilityEstimate e;
  e.samples = n;
  e.value = static_cast<double>(hits) / static_cast<double>(n);
  e.std_error = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(n));
  return e;
}

}  // namespace

std::uint32_t choose_dimension(std::size_t k, const FieldParams& params) {
  if (k == 0) throw ParameterError("k must be positive");
  const unsigned __int128 pairs = static_cast<unsigned __int128>(k) * (k - 1) / 2;
  std::uint32_t dim = 1;
  unsigned __int128 power = 1;  // p^{dim-1}
  while (power < pairs) {
    power *= params.p();
    ++dim;
  }
  if (dim > params.n()) {
    throw InfeasibleError("k = " + std::to_string(k) + " needs n' = " + std::to_string(dim) + " > n = " +
                          std::to_string(params.n()));
  }
  return dim;
}

std::vector<Element> dense_translates(const DenseFunction& g, const Subspace& w) {
  require_same_field(g.params(), w.params());
  const CosetIndexer idx(w);
  const auto sums = coset_sums(g, idx);
  const double threshold = translate_threshold(g, w);
  std::vector<Element> out;
  for (Element t = 0; t < g.size(); ++t) {
    if (sums[idx.keys()[t]] >= threshold) out.push_back(t);
  }
  return out;
}

bool meets_only_at_zero(const std::vector<Element>& b, const Subspace& v) {
  for (Element x : b) {
    if (x != 0 && v.contains(x)) return false;
  }
  return true;
}

FinderResult find_good_subspace(const DenseFunction& g, const std::vector<Element>& a, const FinderConfig& cfg,
                                Rng& rng) {
  if (cfg.max_attempts < 1) throw ParameterError("max_attempts must be at least 1");
  const FieldParams& params = g.params();
  FinderResult result;
  result.dim = resolve_dim(cfg, params);
  const double floor = 8.0 / (std::sqrt(static_cast<double>(params.p())) * static_cast<double>(cfg.k));
  if (!(g.mean() > floor)) {
    std::ostringstream os;
    os << "E(g) = " << g.mean() << " does not exceed 8 p^{-1/2} k^{-1} = " << floor
       << "; success is not guaranteed";
    result.warnings.push_back(os.str());
  }
  const auto b = difference_set(params, a);
  const double quarter = static_cast<double>(params.size()) / 4.0;
  while (result.stats.attempts < cfg.max_attempts) {
    ++result.stats.attempts;
    Subspace w = sample_uniform_subspace(params, result.dim, rng);
    Subspace v = w.orthogonal_complement();
    const bool direct = DirectSum::is_direct_sum(v, w);
    if (cfg.require_direct_sum && !direct) {
      ++result.stats.rejected_direct_sum;
      continue;
    }
    if (!meets_only_at_zero(b, v)) {
      ++result.stats.rejected_bv0;
      continue;
    }
    auto translates = dense_translates(g, w);
    if (static_cast<double>(translates.size()) < quarter) {
      ++result.stats.rejected_tv;
      continue;
    }
    result.good = GoodSubspace{std::move(w), std::move(v), std::move(translates), direct};
    break;
  }
  return result;
}

FinderResult find_good_subspace(const DenseFunction& g, const std::vector<Element>& a, const FinderConfig& cfg) {
  Rng rng(cfg.seed);
  return find_good_subspace(g, a, cfg, rng);
}

SubspaceVerification verify_good_subspace(const DenseFunction& g, const std::vector<Element>& a,
                                          const GoodSubspace& good) {
  const FieldParams& params = g.params();
  SubspaceVerification r;
  r.direct_sum = good.w.intersect(good.v).dim() == 0;

  bool v_is_perp = good.v.dim() + good.w.dim() == params.n();
  for (Element x : good.v.basis_elements()) {
    for (Element y : good.w.basis_elements()) v_is_perp = v_is_perp && params.dot(x, y) == 0;
  }

  r.bv0 = v_is_perp;
  r.cosets_distinct = v_is_perp;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (i == j) continue;
      const Element diff = params.sub(a[i], a[j]);
      if (diff != 0 && good.v.contains(diff)) r.bv0 = false;
      const auto coset = coset_members(good.v, a[j]);
      if (std::ranges::find(coset, a[i]) != coset.end()) r.cosets_distinct = false;
    }
  }

  const double threshold = translate_threshold(g, good.w);
  std::vector<Element> dense;
  for (Element t = 0; t < params.size(); ++t) {
    double sum = 0.0;
    for (Element m : coset_members(good.w, t)) sum += g[m];
    if (sum >= threshold) dense.push_back(t);
  }
  r.translate_count = dense.size();
  r.translates_match = dense == good.translates;
  r.enough_translates = 4.0 * static_cast<double>(dense.size()) >= static_cast<double>(params.size());
  return r;
}

ProbabilityEstimate estimate_bv0(const FieldParams& params, const std::vector<Element>& a, std::uint32_t dim,
                                 std::uint64_t trials, Rng& rng) {
  if (trials < 1) throw ParameterError("trials must be at least 1");
  const auto b = difference_set(params, a);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const Subspace w = sample_uniform_subspace(params, dim, rng);
    if (meets_only_at_zero(b, w.orthogonal_complement())) ++hits;
  }
  return bernoulli(hits, trials);
}

ProbabilityEstimate exact_bv0(const FieldParams& params, const std::vector<Element>& a, std::uint32_t dim,
                              std::uint64_t cap) {
  const auto b = difference_set(params, a);
  const auto all = enumerate_subspaces(params, dim, cap);
  std::uint64_t hits = 0;
  for (const auto& w : all) {
    if (meets_only_at_zero(b, w.orthogonal_complement())) ++hits;
  }
  ProbabilityEstimate e;
  e.samples = all.size();
  e.value = static_cast<double>(hits) / static_cast<double>(all.size());
  e.exact = true;
  return e;
}

ProbabilityEstimate estimate_tv(const DenseFunction& g, std::uint32_t dim, std::uint64_t trials, Rng& rng) {
  if (trials < 1) throw ParameterError("trials must be at least 1");
  const FieldParams& params = g.params();
  std::uniform_int_distribution<Element> pick(0, params.size() - 1);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    const Subspace w = sample_uniform_subspace(params, dim, rng);
    const Element t = pick(rng);
    double sum = 0.0;
    for (Element m : coset_members(w, t)) sum += g[m];
    if (sum >= translate_threshold(g, w)) ++hits;
  }
  return bernoulli(hits, trials);
}

ProbabilityEstimate exact_tv(const DenseFunction& g, std::uint32_t dim, std::uint64_t cap) {
  const auto all = enumerate_subspaces(g.params(), dim, cap);
  std::uint64_t hits = 0;
  for (const auto& w : all) hits += dense_translates(g, w).size();
  ProbabilityEstimate e;
  e.samples = all.size() * g.size();
  e.value = static_cast<double>(hits) / static_cast<double>(e.samples);
  e.exact = true;
  return e;
}

LemmaEstimates estimate_lemma_probabilities(const FieldParams& params, const std::vector<Element>& a,
                                            const std::optional<DenseFunction>& g, std::uint32_t dim,
                                            std::uint64_t trials, Rng& rng, bool exhaustive) {
  LemmaEstimates out;
  if (!a.empty()) out.bv0 = exhaustive ? exact_bv0(params, a, dim) : estimate_bv0(params, a, dim, trials, rng);
  if (g) {
    require_same_field(params, g->params());
    out.tv = exhaustive ? exact_tv(*g, dim) : estimate_tv(*g, dim, trials, rng);
  }
  return out;
}

Moments chebyshev_moments(const DenseFunction& g, std::uint32_t dim, MomentMode mode, std::uint64_t trials,
                          Rng* rng, std::uint64_t cap) {
  long double s1 = 0.0L, s2 = 0.0L;
  Moments m;
  if (mode == MomentMode::kExhaustive) {
    for (const auto& w : enumerate_subspaces(g.params(), dim, cap)) {
      // Each coset sum is shared by the |W| translates in that coset.
      const CosetIndexer idx(w);
      for (double x : coset_sums(g, idx)) {
        s1 += static_cast<long double>(x) * w.size();
        s2 += static_cast<long double>(x) * x * w.size();
      }
      m.samples += g.size();
    }
  } else {
    if (rng == nullptr || trials < 1) throw ParameterError("sampled moments need an rng and trials >= 1");
    std::uniform_int_distribution<Element> pick(0, g.params().size() - 1);
    for (std::uint64_t i = 0; i < trials; ++i) {
      const Subspace w = sample_uniform_subspace(g.params(), dim, *rng);
      double x = 0.0;
      for (Element e : coset_members(w, pick(*rng))) x += g[e];
      s1 += x;
      s2 += static_cast<long double>(x) * x;
    }
    m.samples = trials;
  }
  const long double n = static_cast<long double>(m.samples);
  const long double mean = s1 / n;
  m.mean = static_cast<double>(mean);
  m.variance = static_cast<double>(std::max(0.0L, s2 / n - mean * mean));
  return m;
}

}  // namespace ap3

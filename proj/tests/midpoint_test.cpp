#include "ap3/midpoint.hpp"

#include <cmath>

#include "ap3/errors.hpp"
#include "ap3/functions.hpp"
#include "gtest/gtest.h"

namespace ap3 {
namespace {

DenseFunction random_function(const FieldParams& params, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(params.size());
  for (auto& x : v) x = u(rng);
  return DenseFunction(params, std::move(v));
}

// A W of the given dimension with W ∩ W^perp = {0} and B ∩ W^perp = {0}.
Subspace usable_subspace(const FieldParams& params, std::uint32_t dim, const std::vector<Element>& a, Rng& rng) {
  const auto b = difference_set(params, a);
  for (;;) {
    Subspace w = sample_uniform_subspace(params, dim, rng);
    const Subspace v = w.orthogonal_complement();
    if (DirectSum::is_direct_sum(v, w) && meets_only_at_zero(b, v)) return w;
  }
}

TEST(MidpointTest, FullSpaceContext) {
  const FieldParams params(3, 2);
  Rng rng(1);
  const DenseFunction f = random_function(params, rng);
  const Spectrum s = dft(f);
  const Subspace w = Subspace::full(params);
  const auto ctx = build_context(f, s, top_places(s, 2), w, w.orthogonal_complement(), 0);
  for (Element m = 0; m < params.size(); ++m) {
    EXPECT_DOUBLE_EQ(ctx.alpha[m], 1.0);
    EXPECT_DOUBLE_EQ(ctx.h[m], f[m]);
    EXPECT_LT(std::abs(ctx.h_hat[m] - s[m]), 1e-12);
  }
  EXPECT_TRUE(check_context(ctx, f, top_places(s, 2)).ok());
}

TEST(MidpointTest, ZeroSubspaceContext) {
  const FieldParams params(3, 2);
  Rng rng(2);
  const DenseFunction f = random_function(params, rng);
  const Spectrum s = dft(f);
  const Subspace w = Subspace::zero(params);
  const Element t = 5;
  const auto ctx = build_context(f, s, {}, w, w.orthogonal_complement(), t);
  // V is everything, so h spreads f(t) over the whole field.
  for (Element m = 0; m < params.size(); ++m) EXPECT_DOUBLE_EQ(ctx.h[m], f[t]);
  EXPECT_TRUE(check_context(ctx, f, {}).ok());
}

TEST(MidpointTest, CosetIndicatorSpreadsToConstant) {
  const FieldParams params(5, 2);
  const Subspace w = Subspace::span(params, {params.encode(Digits{1, 1})});
  const Subspace v = w.orthogonal_complement();
  ASSERT_TRUE(DirectSum::is_direct_sum(v, w));
  const Element t = params.encode(Digits{3, 0});
  const DenseFunction f = indicator(SetSpec(params, coset_members(w, t)));
  const auto ctx = build_context(f, dft(f), {}, w, v, t);
  // Every m is b + (t + w) for exactly one b in V, so h = 1 everywhere.
  for (Element m = 0; m < params.size(); ++m) EXPECT_DOUBLE_EQ(ctx.h[m], 1.0);
  EXPECT_TRUE(check_context(ctx, f, {}).ok());
}

TEST(MidpointTest, ContextRejectsSelfOrthogonal) {
  const FieldParams params(5, 2);
  // (1,2).(1,2) = 5 = 0 mod 5.
  const Subspace w = Subspace::span(params, {params.encode(Digits{1, 2})});
  const DenseFunction f = DenseFunction::constant(params, 1.0);
  EXPECT_THROW(build_context(f, dft(f), {}, w, w.orthogonal_complement(), 0), StructuralError);
  const Subspace w2 = Subspace::span(params, {params.encode(Digits{1, 0})});
  EXPECT_THROW(build_context(f, dft(f), {}, w2, w2, 0), StructuralError);
}

TEST(MidpointTest, ContextInvariantsRandom) {
  Rng rng(3);
  for (std::uint32_t p : {3u, 5u}) {
    for (std::uint32_t n = 2; n <= 3; ++n) {
      const FieldParams params(p, n);
      for (int rep = 0; rep < 5; ++rep) {
        const DenseFunction f = random_function(params, rng);
        const Spectrum s = dft(f);
        const auto a = top_places(s, 2);
        const Subspace w = usable_subspace(params, 1 + rep % (n - 1), a, rng);
        const Element t = static_cast<Element>(rng() % params.size());
        const auto ctx = build_context(f, s, a, w, w.orthogonal_complement(), t);
        const auto check = check_context(ctx, f, a);
        EXPECT_TRUE(check.ok()) << "h_hat error " << check.h_hat_error;
        const TranslateObjective obj(s, a, w, w.orthogonal_complement());
        for (Element x : w.members()) EXPECT_LT(std::abs(obj.h_hat(t, x) - ctx.h_hat[x]), 1e-9);
      }
    }
  }
}

TEST(MidpointTest, ObjectiveMatchesDirectFormula) {
  const FieldParams params(3, 3);
  Rng rng(4);
  const DenseFunction f = random_function(params, rng);
  const Spectrum s = dft(f);
  const auto a = top_places(s, 3);
  const Subspace w = usable_subspace(params, 2, a, rng);
  const Subspace v = w.orthogonal_complement();
  const TranslateObjective obj(s, a, w, v);
  const auto roots = roots_of_unity(3);
  for (Element t = 0; t < params.size(); ++t) {
    const auto ctx = build_context(f, s, a, w, v, t);
    double q = 0.0;
    for (const auto& d : ctx.decomposition) {
      q += std::norm(ctx.h_hat[d.w] - roots[(3 - params.dot(d.v, t)) % 3] * s[d.x]);
    }
    for (Element x : ctx.w2) q += std::norm(ctx.h_hat[x]);
    EXPECT_NEAR(obj.q(t), q, 1e-9 * (1.0 + q));
  }
}

TEST(MidpointTest, AveragingIdentity) {
  Rng rng(5);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const FieldParams params(p, 3);
    for (std::size_t k : {1u, 2u, 3u}) {
      const DenseFunction f = random_function(params, rng);
      const Spectrum s = dft(f);
      const auto a = top_places(s, k);
      const Subspace w = usable_subspace(params, 1 + k % 2, a, rng);
      const TranslateObjective obj(s, a, w, w.orthogonal_complement());
      const double expected = static_cast<double>(params.size()) * sigma_tail(s, k);
      EXPECT_NEAR(obj.total_over_field(), expected, 1e-6 * expected);
    }
  }
}

TEST(MidpointTest, SelectTranslateWithinFourSigma) {
  Rng rng(6);
  const FieldParams params(3, 4);
  for (int rep = 0; rep < 10; ++rep) {
    const DenseFunction f = random_function(params, rng);
    const DenseFunction g = random_function(params, rng);
    const Spectrum s = dft(f);
    const auto a = top_places(s, 2);
    FinderConfig cfg;
    const auto found = find_good_subspace(g, a, cfg, rng);
    ASSERT_TRUE(found.found());
    const TranslateObjective obj(s, a, found.good->w, found.good->v);
    const auto choice = select_translate(obj, found.good->translates);
    EXPECT_LE(choice.q, 4.0 * sigma_tail(s, 2));
    for (Element t : found.good->translates) EXPECT_GE(obj.q(t), choice.q);
  }
}

TEST(MidpointTest, ZeroTailGivesZeroObjective) {
  const FieldParams params(3, 3);
  // fhat supported on {0, a}: f = 1/2 + (1/4)(w^{a.m} + w^{-a.m}) has support {0, a, -a}.
  const Element a = params.encode(Digits{1, 0, 0});
  const auto phases = character_phases(params, a);
  std::vector<double> v(params.size());
  for (Element m = 0; m < params.size(); ++m) v[m] = 0.5 + 0.5 * std::cos(2.0 * M_PI * phases[m] / 3.0) / 2.0;
  const DenseFunction f(params, v);
  const Spectrum s = dft(f);
  EXPECT_NEAR(sigma_tail(s, 3), 0.0, 1e-18);
  Rng rng(7);
  const auto top = top_places(s, 3);
  const Subspace w = usable_subspace(params, 2, top, rng);
  const TranslateObjective obj(s, top, w, w.orthogonal_complement());
  std::vector<Element> all(params.size());
  for (Element t = 0; t < params.size(); ++t) all[t] = t;
  EXPECT_NEAR(select_translate(obj, all).q, 0.0, 1e-18);
}

TEST(MidpointTest, CertificateExamples) {
  const FieldParams params(3, 3);
  const DenseFunction one = DenseFunction::constant(params, 1.0);
  const Subspace w = Subspace::span(params, {1});
  const auto c = certify_midpoint(w, 0, one, one, 0.0, 2, Ordering::kFgf);
  EXPECT_DOUBLE_EQ(c.pair_count, 27.0);
  EXPECT_DOUBLE_EQ(c.certified_floor, 9.0 / 4.0);
  EXPECT_TRUE(c.holds);
  EXPECT_FALSE(c.vacuous);
  const auto big = certify_midpoint(w, 0, one, one, 1.0, 2, Ordering::kGff);
  EXPECT_TRUE(big.vacuous);
  EXPECT_TRUE(big.holds);
  EXPECT_THROW(certify_midpoint(w, 0, one, one, 0.0, 3, Ordering::kFgf), ParameterError);
  DenseFunction g = DenseFunction::constant(params, 0.5);
  g.set(1, 0.0);
  EXPECT_THROW(certify_midpoint(w, 0, one, g, 0.0, 1, Ordering::kFgf), ParameterError);
}

TEST(MidpointTest, DepletionRefusesZeroG) {
  const FieldParams params(3, 3);
  const DenseFunction one = DenseFunction::constant(params, 1.0);
  DepletionOptions opt;
  opt.require_density_floor = false;
  const auto run = run_depletion(one, DenseFunction::zeros(params), 2, 0.0, opt);
  EXPECT_EQ(run.status, RunStatus::kRefused);
  EXPECT_FALSE(run.diagnostic.empty());
}

TEST(MidpointTest, DepletionRefusesBelowDensityFloor) {
  const FieldParams params(3, 3);
  const DenseFunction one = DenseFunction::constant(params, 1.0);
  const auto run = run_depletion(one, one, 2, 0.0, DepletionOptions{});
  EXPECT_EQ(run.status, RunStatus::kRefused);
}

TEST(MidpointTest, DepletionConstant) {
  const FieldParams params(3, 3);
  const DenseFunction one = DenseFunction::constant(params, 1.0);
  for (Ordering o : {Ordering::kFgf, Ordering::kGff}) {
    DepletionOptions opt;
    opt.ordering = o;
    opt.require_density_floor = false;
    opt.check_contexts = true;
    const auto run = run_depletion(one, one, 2, 0.0, opt);
    ASSERT_EQ(run.status, RunStatus::kCompleted) << run.diagnostic;
    EXPECT_EQ(run.r, 14u);
    EXPECT_EQ(run.certificates.size(), 14u);
    for (const auto& c : run.certificates) EXPECT_TRUE(c.holds);
    EXPECT_NEAR(run.lambda_measured, 1.0, 1e-12);
    EXPECT_GE(run.lambda_measured, run.lambda_lower);
    EXPECT_TRUE(run.bookkeeping_ok);
    EXPECT_TRUE(run.contexts_ok);
    EXPECT_EQ(run.refreshes, 14u);
  }
}

TEST(MidpointTest, DepletionDenseCorpusPassesHypotheses) {
  const FieldParams params(5, 3);
  const DenseFunction f = DenseFunction::constant(params, 1.0);
  Rng rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(params.size());
  for (auto& x : v) x = 0.85 + 0.15 * u(rng);
  const DenseFunction g(params, v);
  for (RefreshPolicy policy : {RefreshPolicy::kEveryStep, RefreshPolicy::kReuseWhileValid}) {
    DepletionOptions opt;
    opt.refresh = policy;
    opt.seed = 4;
    const auto run = run_depletion(f, g, 4, 0.0, opt);
    ASSERT_EQ(run.status, RunStatus::kCompleted) << run.diagnostic;
    EXPECT_TRUE(run.hypotheses.all_pass());
    EXPECT_GE(run.lambda_measured, run.lambda_lower - 1e-9);
    EXPECT_GE(run.lambda_measured, run.theorem_rhs - 1e-9);
    EXPECT_TRUE(run.bookkeeping_ok);
    EXPECT_TRUE(run.q_bound_ok);
    if (policy == RefreshPolicy::kReuseWhileValid) EXPECT_LT(run.refreshes, run.r);
  }
}

TEST(MidpointTest, DepletionRandomFunctionsCertify) {
  Rng rng(9);
  const FieldParams params(3, 4);
  for (int rep = 0; rep < 4; ++rep) {
    const DenseFunction f = random_function(params, rng);
    std::vector<double> gv(params.size());
    for (Element m = 0; m < params.size(); ++m) gv[m] = f[m] * 0.9;
    const DenseFunction g(params, gv);
    const Spectrum s = dft(f);
    const double delta = delta_from_sigma(sigma_tail(s, 2), params.size());
    for (Ordering o : {Ordering::kFgf, Ordering::kGff}) {
      DepletionOptions opt;
      opt.ordering = o;
      opt.require_density_floor = false;
      opt.refresh = RefreshPolicy::kReuseWhileValid;
      opt.seed = rep;
      const auto run = run_depletion(f, g, 2, delta, opt);
      ASSERT_EQ(run.status, RunStatus::kCompleted) << run.diagnostic;
      EXPECT_GE(run.lambda_measured, run.lambda_lower - 1e-9);
      EXPECT_TRUE(run.q_bound_ok);
    }
  }
}

}  // namespace
}  // namespace ap3

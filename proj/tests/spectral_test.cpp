#include "ap3/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ap3/errors.hpp"
#include "ap3/subspace.hpp"
#include "gtest/gtest.h"

namespace ap3 {
namespace {

DenseFunction random_unit_function(const FieldParams& f, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(f.size());
  for (auto& x : v) x = u(rng);
  return DenseFunction::unit_interval(f, std::move(v));
}

double max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

TEST(DenseFunctionTest, ValidatesShapeAndRange) {
  const FieldParams f(3, 2);
  EXPECT_THROW(DenseFunction(f, std::vector<double>(8, 0.0)), ParameterError);
  EXPECT_THROW(DenseFunction::unit_interval(f, std::vector<double>(9, 1.5)), ParameterError);
  EXPECT_DOUBLE_EQ(DenseFunction::constant(f, 0.25).mean(), 0.25);
}

TEST(SpectrumTest, ConstantFunctionIsASpike) {
  const FieldParams f(5, 3);
  const Spectrum s = dft(DenseFunction::constant(f, 1.0));
  EXPECT_NEAR(s[0].real(), f.size(), 1e-9);
  for (Element a = 1; a < f.size(); ++a) EXPECT_EQ(std::abs(s[a]), 0.0);
}

TEST(SpectrumTest, PointMassIsFlat) {
  const FieldParams f(7, 2);
  DenseFunction delta = DenseFunction::zeros(f);
  delta.set(0, 1.0);
  const Spectrum s = dft(delta);
  for (Element a = 0; a < f.size(); ++a) EXPECT_NEAR(std::abs(s[a] - Complex(1, 0)), 0.0, 1e-12);
}

TEST(SpectrumTest, SubspaceIndicatorMatchesNaiveAndDual) {
  const FieldParams f(3, 2);
  for (const auto& w : enumerate_subspaces(f, 1)) {
    DenseFunction ind = DenseFunction::zeros(f);
    for (Element x : w.members()) ind.set(x, 1.0);
    const Spectrum s = dft(ind);
    const auto naive = dft_naive(ind);
    const Subspace dual = w.orthogonal_complement();
    for (Element a = 0; a < f.size(); ++a) {
      const double expected = dual.contains(a) ? w.size() : 0.0;
      EXPECT_NEAR(naive[a].real(), expected, 1e-12);
      EXPECT_NEAR(naive[a].imag(), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(s[a] - naive[a]), 0.0, 1e-12);
    }
  }
}

TEST(SpectrumTest, FastMatchesNaiveAndRoundTrips) {
  Rng rng(5);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (std::uint32_t n = 1; n <= 4; ++n) {
      const FieldParams f(p, n);
      const DenseFunction g = random_unit_function(f, rng);
      const Spectrum s = dft(g);
      EXPECT_LT(max_abs_diff(s.coeffs(), dft_naive(g)), 1e-8) << p << "^" << n;
      const DenseFunction back = idft(s);
      for (Element m = 0; m < f.size(); ++m) EXPECT_NEAR(back[m], g[m], 1e-9);
      // Parseval
      long double energy = 0;
      for (const auto& c : s.coeffs()) energy += std::norm(c);
      const double expected = f.size() * g.sum_squares();
      EXPECT_LT(std::abs(static_cast<double>(energy) - expected) / expected, 1e-9);
    }
  }
}

TEST(SpectrumTest, InverseOfSpikeAndOfPointMassSpectrum) {
  const FieldParams f(5, 2);
  std::vector<Complex> spike(f.size());
  spike[0] = Complex(f.size(), 0);
  const DenseFunction one = idft(Spectrum(f, spike));
  for (Element m = 0; m < f.size(); ++m) EXPECT_NEAR(one[m], 1.0, 1e-12);
  DenseFunction delta = DenseFunction::zeros(f);
  delta.set(17, 1.0);
  const DenseFunction back = idft(dft(delta));
  for (Element m = 0; m < f.size(); ++m) EXPECT_NEAR(back[m], m == 17 ? 1.0 : 0.0, 1e-12);
}

TEST(SpectrumTest, OrderAndTailsInvariants) {
  Rng rng(9);
  const FieldParams f(5, 3);
  const DenseFunction g = random_unit_function(f, rng);
  const Spectrum s = dft(g);
  const double tol = Spectrum::kTieResolution * std::abs(s[s.order()[0]]) * 2;
  for (std::size_t i = 1; i < s.size(); ++i) {
    EXPECT_GE(std::abs(s[s.order()[i - 1]]) + tol, std::abs(s[s.order()[i]]));
  }
  EXPECT_EQ(s.tails().back(), 0.0);
  for (std::size_t i = 1; i < s.tails().size(); ++i) EXPECT_LE(s.tails()[i], s.tails()[i - 1]);
  // sigma_i <= beta F^2 with beta = E(g).
  const double bound = g.mean() * f.size() * f.size();
  for (double t : s.tails()) EXPECT_LE(t, bound * (1 + 1e-12));
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(s.rank_of()[s.order()[i]], i);
}

TEST(SpectrumTest, TiesBreakByAscendingIndex) {
  // All coefficients of a point mass have modulus 1.
  const FieldParams f(3, 3);
  DenseFunction delta = DenseFunction::zeros(f);
  delta.set(5, 1.0);
  const Spectrum s = dft(delta);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(s.order()[i], i);
}

TEST(SigmaTailTest, Examples) {
  const FieldParams f(3, 3);
  DenseFunction delta = DenseFunction::zeros(f);
  delta.set(0, 1.0);
  const Spectrum sd = dft(delta);
  for (std::size_t k = 0; k <= f.size(); ++k) EXPECT_NEAR(sigma_tail(sd, k), f.size() - k, 1e-9);
  const Spectrum sc = dft(DenseFunction::constant(f, 0.3));
  for (std::size_t k = 1; k <= f.size(); ++k) EXPECT_EQ(sigma_tail(sc, k), 0.0);
  EXPECT_THROW(sigma_tail(sc, f.size() + 1), ParameterError);
}

TEST(SigmaTailTest, MatchesNaiveSortedSpectrum) {
  const FieldParams f(3, 2);
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Element> all(f.size());
    std::iota(all.begin(), all.end(), 0u);
    std::shuffle(all.begin(), all.end(), rng);
    DenseFunction ind = DenseFunction::zeros(f);
    for (int i = 0; i < 4; ++i) ind.set(all[i], 1.0);
    auto naive = dft_naive(ind);
    std::vector<double> mags;
    for (auto& c : naive) mags.push_back(std::norm(c));
    std::sort(mags.begin(), mags.end(), std::greater<>());
    const Spectrum s = dft(ind);
    for (std::size_t k = 0; k <= f.size(); ++k) {
      const double expected = std::accumulate(mags.begin() + static_cast<long>(k), mags.end(), 0.0);
      EXPECT_NEAR(sigma_tail(s, k), expected, 1e-9);
    }
  }
}

TEST(QuasinormTest, Examples) {
  const FieldParams f(3, 4);
  const Spectrum sc = dft(DenseFunction::constant(f, 0.4));
  for (double t : {1.0 / 3.0, 0.5, 1.0, 2.0}) EXPECT_NEAR(quasinorm(sc, t), 0.4 * f.size(), 1e-9);
  DenseFunction delta = DenseFunction::zeros(f);
  delta.set(0, 1.0);
  const double cube = std::pow(static_cast<double>(f.size()), 3);
  EXPECT_NEAR(quasinorm(dft(delta), 1.0 / 3.0) / cube, 1.0, 1e-12);
  EXPECT_THROW(quasinorm(sc, 0.0), ParameterError);
  EXPECT_THROW(quasinorm(sc, -1.0), ParameterError);
}

TEST(TopPlacesTest, LargestIsZeroForNonnegativeFunctions) {
  Rng rng(4);
  const FieldParams f(5, 2);
  const Spectrum s = dft(random_unit_function(f, rng));
  EXPECT_EQ(top_places(s, 1), std::vector<Element>{0});
  EXPECT_EQ(difference_set(f, top_places(s, 1)), std::vector<Element>{0});
  EXPECT_THROW(top_places(s, 0), ParameterError);
  EXPECT_THROW(top_places(s, f.size() + 1), ParameterError);
}

TEST(DifferenceSetTest, Examples) {
  const FieldParams f(3, 2);
  EXPECT_EQ(difference_set(f, {7}), std::vector<Element>{0});
  const Element a = f.encode(Digits{0, 1}), b = f.encode(Digits{1, 0});
  const auto diff = difference_set(f, {a, b});
  std::vector<Element> expected{0, f.encode(Digits{2, 1}), f.encode(Digits{1, 2})};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(diff, expected);
  // |B| <= k(k-1) + 1 and 0 in B
  Rng rng(1);
  const FieldParams g(5, 3);
  for (int t = 0; t < 10; ++t) {
    std::vector<Element> set;
    std::uniform_int_distribution<Element> pick(0, g.size() - 1);
    for (int i = 0; i < 6; ++i) set.push_back(pick(rng));
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    const auto d = difference_set(g, set);
    EXPECT_LE(d.size(), set.size() * (set.size() - 1) + 1);
    EXPECT_TRUE(std::binary_search(d.begin(), d.end(), 0u));
  }
}

// #{i : |f_i| >= eps F} <= E(f) eps^{-2}.
TEST(SpectrumTest, LargeCoefficientCountObeysParseval) {
  Rng rng(12);
  for (std::uint32_t p : {3u, 5u}) {
    const FieldParams f(p, 3);
    for (int trial = 0; trial < 10; ++trial) {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      const double density = u(rng);
      std::vector<double> v(f.size());
      for (auto& x : v) x = u(rng) < density ? u(rng) : 0.0;
      const DenseFunction g(f, v);
      const Spectrum s = dft(g);
      for (double eps = 0.02; eps <= 1.0; eps += 0.02) {
        EXPECT_LE(static_cast<double>(count_large_coefficients(s, eps)), g.mean() / (eps * eps) + 1e-9);
      }
    }
  }
}

}  // namespace
}  // namespace ap3

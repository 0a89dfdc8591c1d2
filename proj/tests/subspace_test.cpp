#include "ap3/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "ap3/errors.hpp"
#include "gtest/gtest.h"

namespace ap3 {
namespace {

Element el(const FieldParams& f, Digits d) { return f.encode(d); }

TEST(SubspaceTest, OrthogonalComplementExamples) {
  const FieldParams f(3, 2);
  EXPECT_EQ(Subspace::span(f, {el(f, {1, 0})}).orthogonal_complement(), Subspace::span(f, {el(f, {0, 1})}));
  EXPECT_EQ(Subspace::zero(f).orthogonal_complement(), Subspace::full(f));
  EXPECT_EQ(Subspace::span(f, {el(f, {1, 1})}).orthogonal_complement(), Subspace::span(f, {el(f, {1, 2})}));
}

TEST(SubspaceTest, CanonicalFormMakesEqualSpansEqual) {
  const FieldParams f(5, 3);
  const Element a = el(f, {1, 2, 3}), b = el(f, {0, 4, 1});
  const Subspace s1 = Subspace::span(f, {a, b});
  const Subspace s2 = Subspace::span(f, {f.add(a, b), f.scale(b, 3), a});
  EXPECT_EQ(s1, s2);
  EXPECT_EQ(s1.dim(), 2u);
  EXPECT_EQ(Subspace::span(f, {0, 0}).dim(), 0u);
}

TEST(SubspaceTest, GaussianBinomial) {
  EXPECT_EQ(gaussian_binomial(2, 1, 3), 4u);
  EXPECT_EQ(gaussian_binomial(3, 1, 3), 13u);
  EXPECT_EQ(gaussian_binomial(3, 2, 3), 13u);
  EXPECT_EQ(gaussian_binomial(4, 2, 3), 130u);
  EXPECT_EQ(gaussian_binomial(5, 0, 7), 1u);
  EXPECT_EQ(gaussian_binomial(2, 3, 3), 0u);
}

TEST(SubspaceTest, EnumerationCountsAndDistinctness) {
  for (auto [p, n] : {std::pair{3u, 2u}, {3u, 3u}, {3u, 4u}, {5u, 2u}, {5u, 3u}}) {
    const FieldParams f(p, n);
    for (std::uint32_t d = 0; d <= n; ++d) {
      const auto all = enumerate_subspaces(f, d);
      ASSERT_EQ(all.size(), gaussian_binomial(n, d, p)) << p << " " << n << " " << d;
      std::set<std::vector<Element>> seen;
      for (const auto& s : all) {
        EXPECT_EQ(s.dim(), d);
        EXPECT_EQ(Subspace::span(f, s.basis_elements()), s);  // already canonical
        auto members = s.members();
        std::sort(members.begin(), members.end());
        EXPECT_TRUE(seen.insert(members).second);
      }
    }
  }
  EXPECT_EQ(enumerate_subspaces(FieldParams(3, 2), 1).size(), 4u);
  EXPECT_EQ(enumerate_subspaces(FieldParams(3, 3), 1).size(), 13u);
  EXPECT_EQ(enumerate_subspaces(FieldParams(3, 3), 0).size(), 1u);
}

TEST(SubspaceTest, EnumerationCapIsEnforced) {
  EXPECT_THROW(enumerate_subspaces(FieldParams(3, 4), 2, 100), EnumerationCapError);
  EXPECT_NO_THROW(enumerate_subspaces(FieldParams(3, 4), 2, 130));
}

TEST(SubspaceTest, ComplementInvariants) {
  for (auto [p, n] : {std::pair{3u, 3u}, {5u, 2u}, {3u, 4u}}) {
    const FieldParams f(p, n);
    for (std::uint32_t d = 0; d <= n; ++d) {
      for (const auto& w : enumerate_subspaces(f, d)) {
        const Subspace v = w.orthogonal_complement();
        EXPECT_EQ(v.dim() + w.dim(), n);
        EXPECT_EQ(v.orthogonal_complement(), w);
        for (Element x : v.basis_elements()) {
          for (Element y : w.basis_elements()) EXPECT_EQ(f.dot(x, y), 0u);
        }
      }
    }
  }
}

TEST(SubspaceTest, MembershipMatchesMembers) {
  const FieldParams f(3, 3);
  for (const auto& w : enumerate_subspaces(f, 2)) {
    const auto members = w.members();
    std::set<Element> s(members.begin(), members.end());
    EXPECT_EQ(s.size(), w.size());
    for (Element x = 0; x < f.size(); ++x) EXPECT_EQ(w.contains(x), s.count(x) == 1);
    for (std::uint32_t c = 0; c < w.size(); ++c) EXPECT_EQ(w.member(c), members[c]);
  }
}

TEST(SubspaceTest, SamplerEdgeDimensions) {
  const FieldParams f(5, 3);
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    EXPECT_EQ(sample_uniform_subspace(f, 0, rng), Subspace::zero(f));
    EXPECT_EQ(sample_uniform_subspace(f, 3, rng), Subspace::full(f));
  }
  EXPECT_THROW(sample_uniform_subspace(f, 4, rng), ParameterError);
}

// Empirical frequency of every subspace within 4 standard errors of uniform.
TEST(SubspaceTest, SamplerIsUniformOverGrassmannian) {
  Rng rng(20240601);
  const int kSamples = 100000;
  for (auto [n, d] : {std::pair{2u, 1u}, {3u, 1u}, {3u, 2u}}) {
    const FieldParams f(3, n);
    const auto all = enumerate_subspaces(f, d);
    std::map<std::vector<Digits>, int> counts;
    for (const auto& s : all) counts[s.basis()] = 0;
    for (int i = 0; i < kSamples; ++i) {
      auto it = counts.find(sample_uniform_subspace(f, d, rng).basis());
      ASSERT_NE(it, counts.end());
      ++it->second;
    }
    const double q = 1.0 / static_cast<double>(all.size());
    const double se = std::sqrt(q * (1 - q) / kSamples);
    for (const auto& [basis, c] : counts) {
      EXPECT_NEAR(static_cast<double>(c) / kSamples, q, 4 * se) << "n=" << n << " d=" << d;
    }
  }
}

// P(b in V) = (p^{n-n'} - 1)/(p^n - 1) for V uniform of codimension n'.
TEST(SubspaceTest, NonzeroElementMembershipProbabilityIsExact) {
  for (std::uint32_t n : {2u, 3u}) {
    const FieldParams f(3, n);
    for (std::uint32_t nprime = 0; nprime <= n; ++nprime) {
      const auto all = enumerate_subspaces(f, n - nprime);
      const double expected = (std::pow(3.0, n - nprime) - 1) / (std::pow(3.0, n) - 1);
      for (Element b = 1; b < f.size(); ++b) {
        const auto hits = std::count_if(all.begin(), all.end(), [&](const Subspace& v) { return v.contains(b); });
        EXPECT_NEAR(static_cast<double>(hits) / all.size(), expected, 1e-15);
      }
    }
  }
}

TEST(SubspaceTest, CosetMembers) {
  const FieldParams f(3, 2);
  const Element x = el(f, {2, 1});
  EXPECT_EQ(coset_members(Subspace::zero(f), x), std::vector<Element>{x});
  auto full = coset_members(Subspace::full(f), x);
  std::sort(full.begin(), full.end());
  for (Element i = 0; i < f.size(); ++i) EXPECT_EQ(full[i], i);
  auto line = coset_members(Subspace::span(f, {el(f, {1, 0})}), el(f, {0, 1}));
  std::sort(line.begin(), line.end());
  EXPECT_EQ(line, (std::vector<Element>{el(f, {0, 1}), el(f, {1, 1}), el(f, {2, 1})}));
}

TEST(SubspaceTest, CosetIndexerSeparatesCosets) {
  const FieldParams f(3, 3);
  for (const auto& w : enumerate_subspaces(f, 1)) {
    const CosetIndexer idx(w);
    EXPECT_EQ(idx.num_cosets(), 9u);
    for (Element x = 0; x < f.size(); ++x) {
      for (Element y = 0; y < f.size(); ++y) {
        EXPECT_EQ(idx.key(x) == idx.key(y), w.contains(f.sub(x, y)));
      }
    }
  }
}

TEST(SubspaceTest, DecomposeExamples) {
  const FieldParams f(3, 2);
  const Subspace v = Subspace::span(f, {el(f, {0, 1})});
  const Subspace w = Subspace::span(f, {el(f, {1, 0})});
  const auto [vx, wx] = decompose(el(f, {1, 2}), v, w);
  EXPECT_EQ(vx, el(f, {0, 2}));
  EXPECT_EQ(wx, el(f, {1, 0}));
  EXPECT_EQ(decompose(0, v, w), std::make_pair(Element{0}, Element{0}));
  EXPECT_EQ(decompose(el(f, {2, 0}), v, w), std::make_pair(Element{0}, el(f, {2, 0})));
}

TEST(SubspaceTest, DecomposeRejectsNonDirectSums) {
  const FieldParams f(3, 2);
  const Subspace line = Subspace::span(f, {el(f, {1, 0})});
  EXPECT_THROW(DirectSum(line, line), StructuralError);
  EXPECT_THROW(DirectSum(line, Subspace::zero(f)), StructuralError);
  // (1,2) in F_5^2 is self-orthogonal: 1 + 4 = 0.
  const FieldParams g(5, 2);
  const Subspace iso = Subspace::span(g, {g.encode(Digits{1, 2})});
  EXPECT_EQ(iso.orthogonal_complement(), iso);
  EXPECT_FALSE(DirectSum::is_direct_sum(iso, iso.orthogonal_complement()));
}

TEST(SubspaceTest, DecomposeRecomposes) {
  Rng rng(11);
  const FieldParams f(3, 4);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Subspace w = sample_uniform_subspace(f, 2, rng);
    const Subspace v = w.orthogonal_complement();
    if (!DirectSum::is_direct_sum(v, w)) continue;
    const DirectSum ds(v, w);
    for (Element x = 0; x < f.size(); ++x) {
      const auto [vx, wx] = ds.decompose(x);
      EXPECT_TRUE(v.contains(vx));
      EXPECT_TRUE(w.contains(wx));
      EXPECT_EQ(f.add(vx, wx), x);
    }
    ++checked;
  }
  EXPECT_GT(checked, 5);
}

TEST(SubspaceTest, IntersectAndSum) {
  const FieldParams f(3, 3);
  const Subspace a = Subspace::span(f, {el(f, {1, 0, 0}), el(f, {0, 1, 0})});
  const Subspace b = Subspace::span(f, {el(f, {0, 1, 0}), el(f, {0, 0, 1})});
  EXPECT_EQ(a.intersect(b), Subspace::span(f, {el(f, {0, 1, 0})}));
  EXPECT_EQ(a.sum(b), Subspace::full(f));
}

}  // namespace
}  // namespace ap3

#pragma once

// The three-term progression functional
//   Lambda3(f1, f2, f3) = F^{-2} sum_{m,d} f1(m) f2(m+d) f3(m+2d)
// and the per-point pair counts behind its lower bounds, each evaluated both
// combinatorially and through the spectrum.
//
// Spectral identity: sum_{m,d} f1(m) f2(m+d) f3(m+2d)
//   = F^{-1} sum_a f1hat(a) f2hat(-2a) f3hat(a).
// For p = 3, -2 = 1 mod 3, so f2hat(-2a) = f2hat(a) there.

#include <cstdint>
#include <string>
#include <vector>

#include "ap3/field.hpp"
#include "ap3/spectral.hpp"

namespace ap3 {

enum class Method { kBrute, kSpectral };
// fgf: g sits at the midpoint m of (m-d, m, m+d).
// gff: g sits at the start m of (m, m+d, m+2d).
enum class Ordering { kFgf, kGff };

std::string to_string(Method m);
std::string to_string(Ordering o);
Ordering parse_ordering(const std::string& s);

struct Lambda3Result {
  double value = 0.0;
  // |Im| of the spectral sum; zero for brute force.
  double imag_residue = 0.0;
  Method method = Method::kBrute;
  std::string triple;
};

// Exact O(F^2) double sum. Work is split by d into per-d partial sums that
// are combined pairwise in d order, so the result is independent of the
// thread count.
double lambda3_brute(const DenseFunction& f1, const DenseFunction& f2, const DenseFunction& f3);
Lambda3Result lambda3_spectral(const DenseFunction& f1, const DenseFunction& f2, const DenseFunction& f3);
Lambda3Result lambda3_spectral(const Spectrum& s1, const Spectrum& s2, const Spectrum& s3);
Lambda3Result lambda3(const DenseFunction& f1, const DenseFunction& f2, const DenseFunction& f3,
                      Method method, std::string triple = "f1,f2,f3");

// Index of -2a for every a.
std::vector<Element> minus_two_map(const FieldParams& params);

// fgf: sum_d f(m-d) f(m+d) = (f*f)(2m).  gff: sum_d f(m+d) f(m+2d).
double pair_count_direct(const DenseFunction& f, Element m, Ordering ordering = Ordering::kFgf);
// fgf: F^{-1} sum_a fhat(a)^2 w^{-2a.m}.  gff: F^{-1} sum_a fhat(a) fhat(-2a) w^{a.m}.
double pair_count_spectral(const Spectrum& s, Element m, Ordering ordering = Ordering::kFgf);
// pair_count_spectral for every m at once, via one transform.
std::vector<double> pair_counts_all(const Spectrum& s, Ordering ordering);

inline double midpoint_pair_count(const DenseFunction& f, Element m) {
  return pair_count_direct(f, m, Ordering::kFgf);
}

// Lambda3 as a weighted sum of pair counts: F^{-2} sum_m g(m) pairs(m).
double lambda3_from_pairs(const DenseFunction& f, const DenseFunction& g, Ordering ordering);

// E(f)^3 / F, the contribution guaranteed by the trivial progressions d = 0.
double trivial_lower_bound(const DenseFunction& f);

// #{(m, d) : d != 0, f1(m) f2(m+d) f3(m+2d) > tol}.
std::uint64_t count_nontrivial_progressions(const DenseFunction& f1, const DenseFunction& f2,
                                            const DenseFunction& f3, double tol = 0.0);

}  // namespace ap3

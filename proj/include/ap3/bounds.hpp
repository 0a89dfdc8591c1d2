#pragma once

// Closed-form lower bounds for Lambda3(f,g,f) and Lambda3(g,f,f) and the
// hypothesis checks that make them applicable.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ap3/spectral.hpp"

namespace ap3 {

struct TheoremInputs {
  std::uint32_t p = 3;
  double field_size = 1.0;  // F
  std::size_t k = 2;
  double theta = 0.0;  // density exponent: E(g) >= F^{-theta}
  double delta = 0.0;  // tail parameter: sigma_k <= delta^2 F^2
  double gamma = 0.0;  // quasinorm exponent: ||fhat||_{1/3} < F^{1+gamma}
};

struct BoundValue {
  double value = 0.0;
  // value <= 0: the bound says nothing.
  bool vacuous = true;
};

// C(k, 2).
double pairs_count(std::size_t k);

// p^{-2} C(k,2)^{-1} F^{-4 theta} / 128 - 9 delta F^{-2 theta} / 8.
// Throws ParameterError for k < 2.
BoundValue theorem2_rhs(const TheoremInputs& in);

// The same bound after C(k,2)^{-1}/128 >= k^{-2}/64 and
// delta = F^gamma / (2 k^{5/2}):
//   p^{-2} k^{-2} F^{-4 theta} / 64 - 9 k^{-5/2} F^{-2 theta + gamma} / 16.
// k may be any positive real.
double corollary_objective(std::uint32_t p, double field_size, double k, double theta, double gamma);

// Tail bound implied by ||fhat||_{1/3} < F^{1+gamma}: F^{2+2 gamma} / (5 k^5).
double sigma_bound_from_quasinorm(double field_size, double gamma, std::size_t k);
// F^gamma / (2 k^{5/2}); satisfies delta^2 F^2 > sigma_bound_from_quasinorm.
double corollary_delta(double field_size, double gamma, std::size_t k);
// Smallest delta with sigma_k <= delta^2 F^2, i.e. sqrt(sigma_k) / F.
double delta_from_sigma(double sigma_k, double field_size);

// -log_F E(g); +inf for E(g) = 0.
double density_exponent(double mean, double field_size);

struct OptimalK {
  double k_real = 0.0;  // 2025 p^4 F^{4 theta + 2 gamma}
  std::size_t k = 2;    // better of floor/ceil of k_real, at least 2
  double objective = 0.0;
  // 10^{-10} p^{-8} F^{-12 theta - 4 gamma}, as published.
  double corollary_bound_stated = 0.0;
  // Exact maximum of corollary_objective over real k:
  // p^{-10} F^{-12 theta - 4 gamma} / (320 * 2025^2).
  double corollary_bound_derived = 0.0;
};

OptimalK optimal_k(std::uint32_t p, double field_size, double theta, double gamma);
// Integer k maximising corollary_objective, by a log-spaced scan over
// [2, k_hi] followed by a local integer search.
std::size_t optimal_k_search(std::uint32_t p, double field_size, double theta, double gamma, double k_hi);

double corollary_bound_stated(std::uint32_t p, double field_size, double theta, double gamma);
double corollary_bound_derived(std::uint32_t p, double field_size, double theta, double gamma);

struct HypothesisItem {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct HypothesisReport {
  std::vector<HypothesisItem> items;
  // max(F^{-theta}, 8 p^{-1/2} k^{-1})
  double density_floor = 0.0;
  double sigma_k = 0.0;
  bool all_pass() const;
  // Items other than the 8 p^{-1/2} k^{-1} density floor.
  bool structural_pass() const;
  std::string first_failure() const;
};

inline constexpr const char* kDensityFloorItem = "E(g) >= 8 p^{-1/2} k^{-1}";

// Itemised check of: f, g in [0,1]; f >= g pointwise; E(g) > 0;
// E(f) >= E(g) >= max(F^{-theta}, 8 p^{-1/2} k^{-1}); sigma_k <= delta^2 F^2.
// sigma_k is read from the spectrum of f. Comparisons allow relative
// rounding slack of 1e-12.
HypothesisReport check_hypotheses(const DenseFunction& f, const DenseFunction& g, const Spectrum& f_spectrum,
                                  std::size_t k, double theta, double delta);

}  // namespace ap3

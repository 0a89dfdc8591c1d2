#pragma once

// Example functions: set indicators, convolutions, normalised convolution
// powers |S|^{-(r-1)} S^{*r}, and minorants g <= f.

#include <cstddef>
#include <vector>

#include "ap3/field.hpp"
#include "ap3/spectral.hpp"
#include "ap3/subspace.hpp"

namespace ap3 {

class SetSpec {
 public:
  // Sorts members; throws ParameterError on duplicates or out-of-field entries.
  SetSpec(FieldParams params, std::vector<Element> members);

  static SetSpec all(const FieldParams& params);
  static SetSpec of_subspace(const Subspace& w);

  const FieldParams& params() const { return params_; }
  const std::vector<Element>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  double density() const { return static_cast<double>(members_.size()) / params_.size(); }
  bool contains(Element x) const;

 private:
  FieldParams params_;
  std::vector<Element> members_;
};

// Uniform without replacement.
SetSpec random_set(const FieldParams& params, std::size_t size, Rng& rng);
SetSpec random_subset(const SetSpec& s, std::size_t size, Rng& rng);
// {m : f(m) > tol}.
SetSpec support(const DenseFunction& f, double tol = 0.0);

DenseFunction indicator(const SetSpec& s);

// (f*g)(m) = sum_{a+b=m} f(a) g(b), through the spectra.
DenseFunction convolve(const DenseFunction& f, const DenseFunction& g);
// Direct O(F^2) evaluation of the same sum.
DenseFunction convolve_direct(const DenseFunction& f, const DenseFunction& g);

// Spectrum of |S|^{-(r-1)} S^{*r}, formed as Shat^r / |S|^{r-1}.
Spectrum normalized_conv_power_spectrum(const SetSpec& s, unsigned r);
// |S|^{-(r-1)} S^{*r}, clamped to [0, 1] to remove rounding noise.
// Throws ParameterError for r < 2 or empty S.
DenseFunction normalized_conv_power(const SetSpec& s, unsigned r);
// Exact support of S^{*r}: the r-fold sumset rS.
std::vector<bool> sumset_mask(const SetSpec& s, unsigned r);

// g = f on the mask and 0 elsewhere.
DenseFunction minorant_restrict(const DenseFunction& f, const SetSpec& mask);
// g = f where f(m) >= threshold and 0 elsewhere.
DenseFunction minorant_threshold(const DenseFunction& f, double threshold);

}  // namespace ap3

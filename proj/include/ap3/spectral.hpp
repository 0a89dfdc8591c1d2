#pragma once

// Fourier analysis on F_p^n.
//
// Convention: fhat(a) = sum_m f(m) w^{a.m} with w = exp(2 pi i / p), and
// inversion f(m) = F^{-1} sum_a fhat(a) w^{-a.m}.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "ap3/field.hpp"

namespace ap3 {

using Complex = std::complex<double>;

class DenseFunction {
 public:
  DenseFunction(FieldParams params, std::vector<double> values);

  static DenseFunction zeros(const FieldParams& params);
  static DenseFunction constant(const FieldParams& params, double value);
  // As the main constructor, but throws ParameterError unless every value
  // lies in [0, 1].
  static DenseFunction unit_interval(FieldParams params, std::vector<double> values);

  const FieldParams& params() const { return params_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double operator[](Element m) const { return values_[m]; }
  void set(Element m, double value) { values_.at(m) = value; }

  double sum() const;
  double sum_squares() const;
  // E(f) = F^{-1} sum_m f(m).
  double mean() const { return sum() / static_cast<double>(values_.size()); }
  bool in_unit_interval(double tol = 0.0) const;

 private:
  FieldParams params_;
  std::vector<double> values_;
};

// A transform together with its magnitude ordering and spectral tails.
//
// order sorts |coeffs| descending. Magnitudes are compared after rounding to
// a grid of kTieResolution * max|coeff|, so coefficients equal up to
// floating-point noise tie and are ordered by ascending element index.
class Spectrum {
 public:
  static constexpr double kTieResolution = 1e-11;

  Spectrum(FieldParams params, std::vector<Complex> coeffs);

  const FieldParams& params() const { return params_; }
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex operator[](Element a) const { return coeffs_[a]; }
  const std::vector<Element>& order() const { return order_; }
  // tails()[i] = sigma_i = sum_{j > i} |f_j|^2 (1-based ranks), i in [0, F].
  const std::vector<double>& tails() const { return tails_; }
  // rank_of()[a] = position of a in order().
  const std::vector<std::size_t>& rank_of() const { return rank_; }

 private:
  FieldParams params_;
  std::vector<Complex> coeffs_;
  std::vector<Element> order_;
  std::vector<std::size_t> rank_;
  std::vector<double> tails_;
};

// w^j for j in [0, p).
std::vector<Complex> roots_of_unity(std::uint32_t p);

// Separable radix-p transform along each of the n axes, O(F n p).
// sign = +1 computes sum_m x(m) w^{a.m}; sign = -1 uses w^{-a.m}. Unnormalised.
void transform_in_place(const FieldParams& params, std::vector<Complex>& data, int sign);

// Fast forward transform. Coefficients whose magnitude is below the
// transform's rounding-error bound are set to exactly zero.
Spectrum dft(const DenseFunction& f);
// O(F^2) reference evaluation of the same sum; no cleanup.
std::vector<Complex> dft_naive(const DenseFunction& f);
// Real part of the inverse transform.
DenseFunction idft(const Spectrum& s);
std::vector<Complex> idft_complex(const FieldParams& params, std::vector<Complex> coeffs);

// sigma_k; throws ParameterError unless 0 <= k <= F.
double sigma_tail(const Spectrum& s, std::size_t k);

// (sum_a |fhat(a)|^t)^{1/t}; a quasinorm for t < 1. Throws for t <= 0.
double quasinorm(const Spectrum& s, double t);

// The first k places of order(): a set of k largest coefficients.
std::vector<Element> top_places(const Spectrum& s, std::size_t k);

// B = A - A, sorted ascending.
std::vector<Element> difference_set(const FieldParams& params, const std::vector<Element>& a);

// #{a : |fhat(a)| >= eps F}.
std::size_t count_large_coefficients(const Spectrum& s, double eps);

}  // namespace ap3

#include "ap3/spectral.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "ap3/errors.hpp"
#include "ap3/parallel.hpp"

namespace ap3 {

DenseFunction::DenseFunction(FieldParams params, std::vector<double> values)
    : params_(std::move(params)), values_(std::move(values)) {
  if (values_.size() != params_.size()) {
    throw ParameterError("function has " + std::to_string(values_.size()) + " values, field has " +
                         std::to_string(params_.size()) + " elements");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ParameterError("function values must be finite");
  }
}

DenseFunction DenseFunction::zeros(const FieldParams& params) {
  return DenseFunction(params, std::vector<double>(params.size(), 0.0));
}

DenseFunction DenseFunction::constant(const FieldParams& params, double value) {
  return DenseFunction(params, std::vector<double>(params.size(), value));
}

DenseFunction DenseFunction::unit_interval(FieldParams params, std::vector<double> values) {
  DenseFunction f(std::move(params), std::move(values));
  if (!f.in_unit_interval()) throw ParameterError("function values must lie in [0, 1]");
  return f;
}

double DenseFunction::sum() const {
  long double acc = 0;
  for (double v : values_) acc += v;
  return static_cast<double>(acc);
}

double DenseFunction::sum_squares() const {
  long double acc = 0;
  for (double v : values_) acc += static_cast<long double>(v) * v;
  return static_cast<double>(acc);
}

bool DenseFunction::in_unit_interval(double tol) const {
  return std::all_of(values_.begin(), values_.end(),
                     [tol](double v) { return v >= -tol && v <= 1.0 + tol; });
}

Spectrum::Spectrum(FieldParams params, std::vector<Complex> coeffs)
    : params_(std::move(params)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != params_.size()) throw ParameterError("spectrum length does not match field");
  const std::size_t size = coeffs_.size();
  double max_mag = 0.0;
  for (const auto& c : coeffs_) max_mag = std::max(max_mag, std::abs(c));
  const double quantum = max_mag > 0.0 ? kTieResolution * max_mag : 1.0;
  std::vector<long long> key(size);
  for (std::size_t a = 0; a < size; ++a) key[a] = std::llround(std::abs(coeffs_[a]) / quantum);

  order_.resize(size);
  std::iota(order_.begin(), order_.end(), Element{0});
  std::sort(order_.begin(), order_.end(), [&](Element x, Element y) {
    if (key[x] != key[y]) return key[x] > key[y];
    return x < y;
  });
  rank_.resize(size);
  for (std::size_t i = 0; i < size; ++i) rank_[order_[i]] = i;

  tails_.assign(size + 1, 0.0);
  long double acc = 0;
  for (std::size_t i = size; i-- > 0;) {
    acc += std::norm(coeffs_[order_[i]]);
    tails_[i] = static_cast<double>(acc);
  }
}

std::vector<Complex> roots_of_unity(std::uint32_t p) {
  std::vector<Complex> out(p);
  for (std::uint32_t j = 0; j < p; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(p);
    out[j] = Complex(std::cos(angle), std::sin(angle));
  }
  out[0] = Complex(1.0, 0.0);
  return out;
}

void transform_in_place(const FieldParams& params, std::vector<Complex>& data, int sign) {
  if (data.size() != params.size()) throw ParameterError("transform input has wrong length");
  const std::uint32_t p = params.p();
  const auto roots = roots_of_unity(p);
  // twiddle[j*p + k] = w^{sign*j*k}
  std::vector<Complex> twiddle(static_cast<std::size_t>(p) * p);
  for (std::uint32_t j = 0; j < p; ++j) {
    for (std::uint32_t k = 0; k < p; ++k) {
      std::uint64_t e = (static_cast<std::uint64_t>(j) * k) % p;
      if (sign < 0 && e != 0) e = p - e;
      twiddle[j * p + k] = roots[e];
    }
  }
  std::vector<Complex> in(p), out(p);
  const std::size_t size = data.size();
  for (std::uint32_t axis = 0; axis < params.n(); ++axis) {
    const std::size_t stride = params.power(axis);
    const std::size_t block = stride * p;
    for (std::size_t base = 0; base < size; base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        for (std::uint32_t j = 0; j < p; ++j) in[j] = data[base + off + j * stride];
        for (std::uint32_t k = 0; k < p; ++k) {
          Complex acc = in[0];
          for (std::uint32_t j = 1; j < p; ++j) acc += in[j] * twiddle[j * p + k];
          out[k] = acc;
        }
        for (std::uint32_t k = 0; k < p; ++k) data[base + off + k * stride] = out[k];
      }
    }
  }
}

Spectrum dft(const DenseFunction& f) {
  const FieldParams& params = f.params();
  std::vector<Complex> data(f.values().begin(), f.values().end());
  transform_in_place(params, data, +1);
  double l1 = 0.0;
  for (double v : f.values()) l1 += std::abs(v);
  const double noise = 16.0 * params.n() * params.p() * DBL_EPSILON * l1;
  for (auto& c : data) {
    if (std::abs(c) <= noise) c = Complex(0.0, 0.0);
  }
  return Spectrum(params, std::move(data));
}

std::vector<Complex> dft_naive(const DenseFunction& f) {
  const FieldParams& params = f.params();
  const auto roots = roots_of_unity(params.p());
  std::vector<Complex> out(params.size());
  parallel_for(params.size(), [&](std::size_t a) {
    const auto phases = character_phases(params, static_cast<Element>(a));
    Complex acc(0.0, 0.0);
    for (Element m = 0; m < params.size(); ++m) acc += f[m] * roots[phases[m]];
    out[a] = acc;
  });
  return out;
}

std::vector<Complex> idft_complex(const FieldParams& params, std::vector<Complex> coeffs) {
  transform_in_place(params, coeffs, -1);
  const double inv = 1.0 / static_cast<double>(params.size());
  for (auto& c : coeffs) c *= inv;
  return coeffs;
}

DenseFunction idft(const Spectrum& s) {
  const auto values = idft_complex(s.params(), s.coeffs());
  std::vector<double> re(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) re[i] = values[i].real();
  return DenseFunction(s.params(), std::move(re));
}

double sigma_tail(const Spectrum& s, std::size_t k) {
  if (k > s.size()) {
    throw ParameterError("k = " + std::to_string(k) + " out of range [0, " + std::to_string(s.size()) + "]");
  }
  return s.tails()[k];
}

double quasinorm(const Spectrum& s, double t) {
  if (!(t > 0.0)) throw ParameterError("quasinorm exponent must be positive");
  long double acc = 0;
  for (const auto& c : s.coeffs()) {
    const double mag = std::abs(c);
    if (mag > 0.0) acc += std::pow(static_cast<long double>(mag), static_cast<long double>(t));
  }
  return static_cast<double>(std::pow(acc, 1.0L / static_cast<long double>(t)));
}

std::vector<Element> top_places(const Spectrum& s, std::size_t k) {
  if (k < 1 || k > s.size()) throw ParameterError("top_places needs 1 <= k <= F");
  return {s.order().begin(), s.order().begin() + static_cast<std::ptrdiff_t>(k)};
}

std::vector<Element> difference_set(const FieldParams& params, const std::vector<Element>& a) {
  std::vector<Element> out;
  out.reserve(a.size() * a.size());
  for (Element x : a) {
    for (Element y : a) out.push_back(params.sub(x, y));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t count_large_coefficients(const Spectrum& s, double eps) {
  const double threshold = eps * static_cast<double>(s.size());
  return static_cast<std::size_t>(std::count_if(s.coeffs().begin(), s.coeffs().end(),
                                                [&](const Complex& c) { return std::abs(c) >= threshold; }));
}

}  // namespace ap3

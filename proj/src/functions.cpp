#include "ap3/functions.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>
#include <string>

#include "ap3/errors.hpp"

namespace ap3 {

SetSpec::SetSpec(FieldParams params, std::vector<Element> members)
    : params_(std::move(params)), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw ParameterError("set members must be distinct");
  }
  if (!members_.empty() && !params_.contains(members_.back())) {
    throw ParameterError("set member " + std::to_string(members_.back()) + " outside the field");
  }
}

SetSpec SetSpec::all(const FieldParams& params) {
  std::vector<Element> m(params.size());
  std::iota(m.begin(), m.end(), Element{0});
  return SetSpec(params, std::move(m));
}

SetSpec SetSpec::of_subspace(const Subspace& w) { return SetSpec(w.params(), w.members()); }

bool SetSpec::contains(Element x) const {
  return std::binary_search(members_.begin(), members_.end(), x);
}

SetSpec random_set(const FieldParams& params, std::size_t size, Rng& rng) {
  return random_subset(SetSpec::all(params), size, rng);
}

SetSpec random_subset(const SetSpec& s, std::size_t size, Rng& rng) {
  if (size > s.size()) throw ParameterError("requested subset larger than the set");
  std::vector<Element> out;
  out.reserve(size);
  std::sample(s.members().begin(), s.members().end(), std::back_inserter(out), size, rng);
  return SetSpec(s.params(), std::move(out));
}

SetSpec support(const DenseFunction& f, double tol) {
  std::vector<Element> m;
  for (Element x = 0; x < f.size(); ++x) {
    if (f[x] > tol) m.push_back(x);
  }
  return SetSpec(f.params(), std::move(m));
}

DenseFunction indicator(const SetSpec& s) {
  std::vector<double> v(s.params().size(), 0.0);
  for (Element x : s.members()) v[x] = 1.0;
  return DenseFunction(s.params(), std::move(v));
}

DenseFunction convolve(const DenseFunction& f, const DenseFunction& g) {
  require_same_field(f.params(), g.params());
  const Spectrum fs = dft(f);
  const Spectrum gs = dft(g);
  std::vector<Complex> prod(f.size());
  for (std::size_t a = 0; a < prod.size(); ++a) prod[a] = fs.coeffs()[a] * gs.coeffs()[a];
  const auto values = idft_complex(f.params(), std::move(prod));
  std::vector<double> re(values.size());
  for (std::size_t i = 0; i < re.size(); ++i) re[i] = values[i].real();
  return DenseFunction(f.params(), std::move(re));
}

DenseFunction convolve_direct(const DenseFunction& f, const DenseFunction& g) {
  require_same_field(f.params(), g.params());
  const FieldParams& params = f.params();
  std::vector<double> out(params.size(), 0.0);
  for (Element a = 0; a < params.size(); ++a) {
    if (f[a] == 0.0) continue;
    const auto shifted = translation_map(params, a);
    for (Element b = 0; b < params.size(); ++b) out[shifted[b]] += f[a] * g[b];
  }
  return DenseFunction(params, std::move(out));
}

Spectrum normalized_conv_power_spectrum(const SetSpec& s, unsigned r) {
  if (r < 2) throw ParameterError("convolution power needs r >= 2");
  if (s.empty()) throw ParameterError("convolution power needs a nonempty set");
  const Spectrum base = dft(indicator(s));
  const double size = static_cast<double>(s.size());
  std::vector<Complex> coeffs(base.size());
  for (std::size_t a = 0; a < coeffs.size(); ++a) {
    // (Shat/|S|)^r * |S| keeps intermediate magnitudes at most |S|.
    coeffs[a] = std::pow(base.coeffs()[a] / size, static_cast<int>(r)) * size;
  }
  return Spectrum(s.params(), std::move(coeffs));
}

DenseFunction normalized_conv_power(const SetSpec& s, unsigned r) {
  DenseFunction f = idft(normalized_conv_power_spectrum(s, r));
  std::vector<double> v = f.values();
  for (double& x : v) x = std::clamp(x, 0.0, 1.0);
  return DenseFunction(s.params(), std::move(v));
}

std::vector<bool> sumset_mask(const SetSpec& s, unsigned r) {
  if (r < 1) throw ParameterError("sumset needs r >= 1");
  const FieldParams& params = s.params();
  std::vector<bool> current(params.size(), false);
  for (Element x : s.members()) current[x] = true;
  for (unsigned step = 1; step < r; ++step) {
    std::vector<bool> next(params.size(), false);
    for (Element x : s.members()) {
      const auto shift = translation_map(params, x);
      for (Element m = 0; m < params.size(); ++m) {
        if (current[m]) next[shift[m]] = true;
      }
    }
    current = std::move(next);
  }
  return current;
}

DenseFunction minorant_restrict(const DenseFunction& f, const SetSpec& mask) {
  require_same_field(f.params(), mask.params());
  std::vector<double> v(f.size(), 0.0);
  for (Element x : mask.members()) v[x] = f[x];
  return DenseFunction(f.params(), std::move(v));
}

DenseFunction minorant_threshold(const DenseFunction& f, double threshold) {
  std::vector<double> v = f.values();
  for (double& x : v) {
    if (x < threshold) x = 0.0;
  }
  return DenseFunction(f.params(), std::move(v));
}

}  // namespace ap3

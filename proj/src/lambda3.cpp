#include "ap3/lambda3.hpp"

#include <cmath>

#include "ap3/errors.hpp"
#include "ap3/parallel.hpp"

namespace ap3 {

std::string to_string(Method m) { return m == Method::kBrute ? "brute" : "spectral"; }

std::string to_string(Ordering o) { return o == Ordering::kFgf ? "fgf" : "gff"; }

Ordering parse_ordering(const std::string& s) {
  if (s == "fgf") return Ordering::kFgf;
  if (s == "gff") return Ordering::kGff;
  throw ParameterError("unknown ordering '" + s + "' (expected fgf or gff)");
}

double lambda3_brute(const DenseFunction& f1, const DenseFunction& f2, const DenseFunction& f3) {
  require_same_field(f1.params(), f2.params());
  require_same_field(f1.params(), f3.params());
  const FieldParams& params = f1.params();
  const std::size_t size = params.size();
  std::vector<double> per_d(size, 0.0);
  parallel_for(size, [&](std::size_t d) {
    const Element de = static_cast<Element>(d);
    const auto plus_d = translation_map(params, de);
    const auto plus_2d = translation_map(params, params.add(de, de));
    double acc = 0.0;
    for (Element m = 0; m < size; ++m) {
      const double a = f1[m];
      if (a == 0.0) continue;
      acc += a * f2[plus_d[m]] * f3[plus_2d[m]];
    }
    per_d[d] = acc;
  });
  const double total = pairwise_sum(per_d);
  return total / (static_cast<double>(size) * static_cast<double>(size));
}

std::vector<Element> minus_two_map(const FieldParams& params) {
  std::vector<Element> out(params.size());
  for (Element a = 0; a < params.size(); ++a) out[a] = params.scale(a, -2);
  return out;
}

Lambda3Result lambda3_spectral(const Spectrum& s1, const Spectrum& s2, const Spectrum& s3) {
  require_same_field(s1.params(), s2.params());
  require_same_field(s1.params(), s3.params());
  const FieldParams& params = s1.params();
  const auto m2 = minus_two_map(params);
  std::vector<Complex> terms(params.size());
  for (Element a = 0; a < params.size(); ++a) terms[a] = s1[a] * s2[m2[a]] * s3[a];
  const Complex total = pairwise_sum(terms);
  const double f = static_cast<double>(params.size());
  Lambda3Result r;
  r.value = total.real() / (f * f * f);
  r.imag_residue = std::abs(total.imag()) / (f * f * f);
  r.method = Method::kSpectral;
  return r;
}

Lambda3Result lambda3_spectral(const DenseFunction& f1, const DenseFunction& f2, const DenseFunction& f3) {
  return lambda3_spectral(dft(f1), dft(f2), dft(f3));
}

Lambda3Result lambda3(const DenseFunction& f1, const DenseFunction& f2, const DenseFunction& f3,
                      Method method, std::string triple) {
  Lambda3Result r;
  if (method == Method::kBrute) {
    r.value = lambda3_brute(f1, f2, f3);
    r.method = Method::kBrute;
  } else {
    r = lambda3_spectral(f1, f2, f3);
  }
  r.triple = std::move(triple);
  return r;
}

double pair_count_direct(const DenseFunction& f, Element m, Ordering ordering) {
  const FieldParams& params = f.params();
  if (!params.contains(m)) throw ParameterError("point outside the field");
  // plus_m[x] = m + x
  const auto plus_m = translation_map(params, m);
  double acc = 0.0;
  for (Element d = 0; d < params.size(); ++d) {
    if (ordering == Ordering::kFgf) {
      acc += f[plus_m[params.neg(d)]] * f[plus_m[d]];
    } else {
      acc += f[plus_m[d]] * f[plus_m[params.add(d, d)]];
    }
  }
  return acc;
}

double pair_count_spectral(const Spectrum& s, Element m, Ordering ordering) {
  const FieldParams& params = s.params();
  if (!params.contains(m)) throw ParameterError("point outside the field");
  const auto roots = roots_of_unity(params.p());
  Complex acc(0.0, 0.0);
  if (ordering == Ordering::kFgf) {
    // w^{-2a.m} = w^{a.(-2m)}
    const auto phases = character_phases(params, params.scale(m, -2));
    for (Element a = 0; a < params.size(); ++a) acc += s[a] * s[a] * roots[phases[a]];
  } else {
    const auto phases = character_phases(params, m);
    const auto m2 = minus_two_map(params);
    for (Element a = 0; a < params.size(); ++a) acc += s[a] * s[m2[a]] * roots[phases[a]];
  }
  return acc.real() / static_cast<double>(params.size());
}

std::vector<double> pair_counts_all(const Spectrum& s, Ordering ordering) {
  const FieldParams& params = s.params();
  std::vector<Complex> c(params.size());
  std::vector<double> out(params.size());
  if (ordering == Ordering::kFgf) {
    for (Element a = 0; a < params.size(); ++a) c[a] = s[a] * s[a];
    // (f*f)(x), then read off x = 2m.
    const auto conv = idft_complex(params, std::move(c));
    for (Element m = 0; m < params.size(); ++m) out[m] = conv[params.add(m, m)].real();
  } else {
    const auto m2 = minus_two_map(params);
    for (Element a = 0; a < params.size(); ++a) c[a] = s[a] * s[m2[a]];
    transform_in_place(params, c, +1);
    const double inv = 1.0 / static_cast<double>(params.size());
    for (Element m = 0; m < params.size(); ++m) out[m] = c[m].real() * inv;
  }
  return out;
}

double lambda3_from_pairs(const DenseFunction& f, const DenseFunction& g, Ordering ordering) {
  require_same_field(f.params(), g.params());
  const auto pairs = pair_counts_all(dft(f), ordering);
  std::vector<double> terms(pairs.size());
  for (std::size_t m = 0; m < pairs.size(); ++m) terms[m] = g[static_cast<Element>(m)] * pairs[m];
  const double size = static_cast<double>(f.size());
  return pairwise_sum(terms) / (size * size);
}

double trivial_lower_bound(const DenseFunction& f) {
  const double e = f.mean();
  return e * e * e / static_cast<double>(f.size());
}

std::uint64_t count_nontrivial_progressions(const DenseFunction& f1, const DenseFunction& f2,
                                            const DenseFunction& f3, double tol) {
  require_same_field(f1.params(), f2.params());
  require_same_field(f1.params(), f3.params());
  const FieldParams& params = f1.params();
  std::vector<std::uint64_t> per_d(params.size(), 0);
  parallel_for(params.size(), [&](std::size_t d) {
    if (d == 0) return;
    const Element de = static_cast<Element>(d);
    const auto plus_d = translation_map(params, de);
    const auto plus_2d = translation_map(params, params.add(de, de));
    std::uint64_t count = 0;
    for (Element m = 0; m < params.size(); ++m) {
      if (f1[m] * f2[plus_d[m]] * f3[plus_2d[m]] > tol) ++count;
    }
    per_d[d] = count;
  });
  std::uint64_t total = 0;
  for (auto c : per_d) total += c;
  return total;
}

}  // namespace ap3

#include "ap3/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ap3/errors.hpp"

namespace ap3 {
namespace {

constexpr double kSlack = 1e-12;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

double pairs_count(std::size_t k) {
  return static_cast<double>(k) * (static_cast<double>(k) - 1.0) / 2.0;
}

BoundValue theorem2_rhs(const TheoremInputs& in) {
  if (in.k < 2) throw ParameterError("theorem bound needs k >= 2");
  const double p = in.p;
  const double f4 = std::pow(in.field_size, -4.0 * in.theta);
  const double f2 = std::pow(in.field_size, -2.0 * in.theta);
  BoundValue b;
  b.value = f4 / (p * p * pairs_count(in.k) * 128.0) - 9.0 * in.delta * f2 / 8.0;
  b.vacuous = !(b.value > 0.0);
  return b;
}

double corollary_objective(std::uint32_t p, double field_size, double k, double theta, double gamma) {
  const double pp = static_cast<double>(p) * p;
  return std::pow(field_size, -4.0 * theta) / (pp * k * k * 64.0) -
         9.0 * std::pow(k, -2.5) * std::pow(field_size, -2.0 * theta + gamma) / 16.0;
}

double sigma_bound_from_quasinorm(double field_size, double gamma, std::size_t k) {
  if (k < 1) throw ParameterError("k must be positive");
  return std::pow(field_size, 2.0 + 2.0 * gamma) / (5.0 * std::pow(static_cast<double>(k), 5.0));
}

double corollary_delta(double field_size, double gamma, std::size_t k) {
  if (k < 1) throw ParameterError("k must be positive");
  return std::pow(field_size, gamma) / (2.0 * std::pow(static_cast<double>(k), 2.5));
}

double delta_from_sigma(double sigma_k, double field_size) {
  if (sigma_k < 0.0) throw ParameterError("sigma_k must be nonnegative");
  return std::sqrt(sigma_k) / field_size;
}

double density_exponent(double mean, double field_size) {
  if (!(mean > 0.0)) return std::numeric_limits<double>::infinity();
  return -std::log(mean) / std::log(field_size);
}

double corollary_bound_stated(std::uint32_t p, double field_size, double theta, double gamma) {
  return 1e-10 * std::pow(static_cast<double>(p), -8.0) * std::pow(field_size, -12.0 * theta - 4.0 * gamma);
}

double corollary_bound_derived(std::uint32_t p, double field_size, double theta, double gamma) {
  return std::pow(static_cast<double>(p), -10.0) * std::pow(field_size, -12.0 * theta - 4.0 * gamma) /
         (320.0 * 2025.0 * 2025.0);
}

OptimalK optimal_k(std::uint32_t p, double field_size, double theta, double gamma) {
  OptimalK out;
  out.k_real = 2025.0 * std::pow(static_cast<double>(p), 4.0) * std::pow(field_size, 4.0 * theta + 2.0 * gamma);
  const double lo = std::max(2.0, std::floor(out.k_real));
  const double hi = std::max(2.0, std::ceil(out.k_real));
  const double at_lo = corollary_objective(p, field_size, lo, theta, gamma);
  const double at_hi = corollary_objective(p, field_size, hi, theta, gamma);
  const double best = at_hi > at_lo ? hi : lo;
  out.k = static_cast<std::size_t>(best);
  out.objective = std::max(at_lo, at_hi);
  out.corollary_bound_stated = corollary_bound_stated(p, field_size, theta, gamma);
  out.corollary_bound_derived = corollary_bound_derived(p, field_size, theta, gamma);
  return out;
}

std::size_t optimal_k_search(std::uint32_t p, double field_size, double theta, double gamma, double k_hi) {
  auto obj = [&](double k) { return corollary_objective(p, field_size, k, theta, gamma); };
  k_hi = std::max(k_hi, 3.0);
  constexpr int kGrid = 4000;
  const double ratio = std::pow(k_hi / 2.0, 1.0 / kGrid);
  double best_k = 2.0, best = obj(2.0);
  for (int i = 1; i <= kGrid; ++i) {
    const double k = std::round(2.0 * std::pow(ratio, i));
    if (obj(k) > best) {
      best = obj(k);
      best_k = k;
    }
  }
  // The objective is unimodal in k; ternary search on the bracketing integers.
  double lo = std::max(2.0, std::floor(best_k / ratio) - 1.0);
  double hi = std::ceil(best_k * ratio) + 1.0;
  while (hi - lo > 2.0) {
    const double m1 = std::floor(lo + (hi - lo) / 3.0);
    const double m2 = std::ceil(hi - (hi - lo) / 3.0);
    if (obj(m1) < obj(m2)) {
      lo = m1;
    } else {
      hi = m2;
    }
  }
  double arg = lo;
  for (double k = lo; k <= hi; k += 1.0) {
    if (obj(k) > obj(arg)) arg = k;
  }
  return static_cast<std::size_t>(arg);
}

bool HypothesisReport::all_pass() const {
  return std::all_of(items.begin(), items.end(), [](const HypothesisItem& i) { return i.pass; });
}

bool HypothesisReport::structural_pass() const {
  return std::all_of(items.begin(), items.end(),
                     [](const HypothesisItem& i) { return i.pass || i.name == kDensityFloorItem; });
}

std::string HypothesisReport::first_failure() const {
  for (const auto& i : items) {
    if (!i.pass) return i.name + ": " + i.detail;
  }
  return "";
}

HypothesisReport check_hypotheses(const DenseFunction& f, const DenseFunction& g, const Spectrum& f_spectrum,
                                  std::size_t k, double theta, double delta) {
  require_same_field(f.params(), g.params());
  require_same_field(f.params(), f_spectrum.params());
  const FieldParams& params = f.params();
  const double size = params.size();
  HypothesisReport r;
  auto add = [&](std::string name, bool pass, std::string detail) {
    r.items.push_back({std::move(name), pass, std::move(detail)});
  };

  add("f, g take values in [0,1]", f.in_unit_interval() && g.in_unit_interval(), "");

  Element witness = 0;
  bool dominated = true;
  for (Element m = 0; m < params.size(); ++m) {
    if (g[m] > f[m]) {
      dominated = false;
      witness = m;
      break;
    }
  }
  add("f >= g pointwise", dominated,
      dominated ? "" : "violated at index " + std::to_string(witness) + " (f=" + fmt(f[witness]) +
                           ", g=" + fmt(g[witness]) + ")");

  const double ef = f.mean(), eg = g.mean();
  add("E(g) > 0", eg > 0.0, "E(g) = " + fmt(eg));
  add("E(f) >= E(g)", ef >= eg * (1 - kSlack), "E(f) = " + fmt(ef) + ", E(g) = " + fmt(eg));

  const double theta_floor = std::pow(size, -theta);
  add("E(g) >= F^{-theta}", eg > 0.0 && eg >= theta_floor * (1 - kSlack),
      "F^{-theta} = " + fmt(theta_floor));

  const double k_floor = k == 0 ? std::numeric_limits<double>::infinity()
                                : 8.0 / (std::sqrt(static_cast<double>(params.p())) * static_cast<double>(k));
  add(kDensityFloorItem, eg >= k_floor * (1 - kSlack), "floor = " + fmt(k_floor) + ", E(g) = " + fmt(eg));
  r.density_floor = std::max(theta_floor, k_floor);

  if (k >= 1 && k <= f_spectrum.size()) {
    r.sigma_k = sigma_tail(f_spectrum, k);
    const double energy = f_spectrum.tails()[0];
    const double cap = delta * delta * size * size;
    add("sigma_k <= delta^2 F^2", r.sigma_k <= cap + kSlack * energy,
        "sigma_k = " + fmt(r.sigma_k) + ", delta^2 F^2 = " + fmt(cap));
  } else {
    add("sigma_k <= delta^2 F^2", false, "k out of range");
  }
  return r;
}

}  // namespace ap3

#include "ap3/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "ap3/bounds.hpp"
#include "ap3/errors.hpp"
#include "ap3/finder.hpp"
#include "ap3/functions.hpp"

namespace ap3 {
namespace {

void check_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw FormatError(where + " must be an object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw FormatError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read_opt(const Json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad value for '") + key + "': " + e.what());
  }
}

std::vector<Ordering> parse_orderings(const Json& j) {
  std::vector<std::string> names;
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "both") {
      names = {"fgf", "gff"};
    } else {
      names = {s};
    }
  } else if (j.is_array()) {
    for (const auto& x : j) names.push_back(x.get<std::string>());
  } else {
    throw FormatError("orderings must be a string or a list");
  }
  std::vector<Ordering> out;
  try {
    for (const auto& s : names) out.push_back(parse_ordering(s));
  } catch (const ParameterError& e) {
    throw FormatError(e.what());
  }
  if (out.empty()) throw FormatError("no ordering selected");
  return out;
}

std::size_t resolve_set_size(const FunctionRecipe& r, const FieldParams& params) {
  if (r.set_size > 0) {
    if (r.set_size > params.size()) throw ParameterError("set_size exceeds the field size");
    return r.set_size;
  }
  const double s = std::ceil(std::pow(static_cast<double>(params.size()), r.set_exponent) - 1e-9);
  return std::clamp<std::size_t>(static_cast<std::size_t>(s), 1, params.size());
}

struct Assertion {
  std::string name;
  bool pass;
  std::string detail;
};

std::string num(double x) { return format_double(x); }

Json certificates_json(const std::vector<MidpointCertificate>& certs) {
  Json out = Json::array();
  for (const auto& c : certs) {
    out.push_back(Json{{"step", c.step},
                       {"m", c.m},
                       {"g_value", c.g_value},
                       {"mean_g", c.mean_g},
                       {"pair_count", c.pair_count},
                       {"certified_floor", c.certified_floor},
                       {"q", c.q},
                       {"vacuous", c.vacuous},
                       {"holds", c.holds}});
  }
  return out;
}

Json hypotheses_json(const HypothesisReport& r) {
  Json items = Json::array();
  for (const auto& i : r.items) items.push_back(Json{{"name", i.name}, {"pass", i.pass}, {"detail", i.detail}});
  return Json{{"items", items},
              {"all_pass", r.all_pass()},
              {"structural_pass", r.structural_pass()},
              {"density_floor", r.density_floor},
              {"sigma_k", r.sigma_k}};
}

Json estimate_json(const ProbabilityEstimate& e) {
  return Json{{"value", e.value}, {"stderr", e.std_error}, {"samples", e.samples}, {"exact", e.exact}};
}

}  // namespace

ExperimentConfig config_from_json(const Json& j) {
  check_keys(j,
             {"field", "seed", "f", "g", "k", "delta", "gamma", "orderings", "trials", "exhaustive",
              "enumeration_cap", "max_attempts", "refresh", "require_density_floor", "check_contexts", "force"},
             "config");
  ExperimentConfig c;
  if (!j.contains("field")) throw FormatError("config needs 'field'");
  check_keys(j.at("field"), {"p", "n"}, "field");
  read_opt(j.at("field"), "p", c.p);
  read_opt(j.at("field"), "n", c.n);
  if (!j.contains("seed")) throw FormatError("config needs 'seed'");
  read_opt(j, "seed", c.seed);
  if (j.contains("f")) {
    const Json& f = j.at("f");
    check_keys(f, {"kind", "set_size", "set_exponent", "power", "value", "path"}, "f");
    read_opt(f, "kind", c.f.kind);
    read_opt(f, "set_size", c.f.set_size);
    read_opt(f, "set_exponent", c.f.set_exponent);
    read_opt(f, "power", c.f.power);
    read_opt(f, "value", c.f.value);
    read_opt(f, "path", c.f.path);
    static const std::set<std::string> kinds{"remark2", "conv_power", "indicator", "constant", "file"};
    if (!kinds.count(c.f.kind)) throw FormatError("unknown f recipe '" + c.f.kind + "'");
  }
  if (j.contains("g")) {
    const Json& g = j.at("g");
    check_keys(g, {"kind", "scale", "threshold", "keep", "value", "path"}, "g");
    read_opt(g, "kind", c.g.kind);
    read_opt(g, "scale", c.g.scale);
    read_opt(g, "threshold", c.g.threshold);
    read_opt(g, "keep", c.g.keep);
    read_opt(g, "value", c.g.value);
    read_opt(g, "path", c.g.path);
    static const std::set<std::string> kinds{"same", "scaled", "threshold", "restrict", "constant", "zero", "file"};
    if (!kinds.count(c.g.kind)) throw FormatError("unknown g recipe '" + c.g.kind + "'");
  }
  read_opt(j, "k", c.k);
  if (j.contains("delta")) c.delta = j.at("delta").get<double>();
  if (j.contains("gamma")) c.gamma = j.at("gamma").get<double>();
  if (j.contains("orderings")) c.orderings = parse_orderings(j.at("orderings"));
  read_opt(j, "trials", c.trials);
  read_opt(j, "exhaustive", c.exhaustive);
  read_opt(j, "enumeration_cap", c.enumeration_cap);
  read_opt(j, "max_attempts", c.max_attempts);
  if (j.contains("refresh")) {
    const auto s = j.at("refresh").get<std::string>();
    if (s == "every_step") {
      c.refresh = RefreshPolicy::kEveryStep;
    } else if (s == "reuse_while_valid") {
      c.refresh = RefreshPolicy::kReuseWhileValid;
    } else {
      throw FormatError("unknown refresh policy '" + s + "'");
    }
  }
  read_opt(j, "require_density_floor", c.require_density_floor);
  read_opt(j, "check_contexts", c.check_contexts);
  read_opt(j, "force", c.force);
  return c;
}

Json to_json(const ExperimentConfig& c) {
  Json orderings = Json::array();
  for (Ordering o : c.orderings) orderings.push_back(to_string(o));
  Json j{{"field", {{"p", c.p}, {"n", c.n}}},
         {"seed", c.seed},
         {"f",
          {{"kind", c.f.kind},
           {"set_size", c.f.set_size},
           {"set_exponent", c.f.set_exponent},
           {"power", c.f.power},
           {"value", c.f.value},
           {"path", c.f.path}}},
         {"g",
          {{"kind", c.g.kind},
           {"scale", c.g.scale},
           {"threshold", c.g.threshold},
           {"keep", c.g.keep},
           {"value", c.g.value},
           {"path", c.g.path}}},
         {"k", c.k},
         {"orderings", orderings},
         {"trials", c.trials},
         {"exhaustive", c.exhaustive},
         {"enumeration_cap", c.enumeration_cap},
         {"max_attempts", c.max_attempts},
         {"refresh", to_string(c.refresh)},
         {"require_density_floor", c.require_density_floor},
         {"check_contexts", c.check_contexts},
         {"force", c.force}};
  if (c.delta) j["delta"] = *c.delta;
  if (c.gamma) j["gamma"] = *c.gamma;
  return j;
}

ExperimentConfig load_config(const std::string& path) { return config_from_json(read_json_file(path)); }

DenseFunction build_function(const FunctionRecipe& r, const FieldParams& params, Rng& rng) {
  if (r.kind == "constant") return DenseFunction::unit_interval(params, std::vector<double>(params.size(), r.value));
  if (r.kind == "file") return read_function_file(r.path, &params);
  const SetSpec s = random_set(params, resolve_set_size(r, params), rng);
  if (r.kind == "indicator") return indicator(s);
  if (r.kind == "remark2") return normalized_conv_power(s, 7);
  if (r.kind == "conv_power") return normalized_conv_power(s, r.power);
  throw ParameterError("unknown f recipe '" + r.kind + "'");
}

DenseFunction build_minorant(const MinorantRecipe& r, const DenseFunction& f, Rng& rng) {
  const FieldParams& params = f.params();
  if (r.kind == "same") return f;
  if (r.kind == "zero") return DenseFunction::zeros(params);
  if (r.kind == "constant") return DenseFunction::unit_interval(params, std::vector<double>(params.size(), r.value));
  if (r.kind == "file") return read_function_file(r.path, &params);
  if (r.kind == "threshold") return minorant_threshold(f, r.threshold);
  if (r.kind == "scaled") {
    if (r.scale < 0.0 || r.scale > 1.0) throw ParameterError("scale must lie in [0,1]");
    std::vector<double> v = f.values();
    for (double& x : v) x *= r.scale;
    return DenseFunction(params, std::move(v));
  }
  if (r.kind == "restrict") {
    if (r.keep < 0.0 || r.keep > 1.0) throw ParameterError("keep must lie in [0,1]");
    const SetSpec supp = support(f);
    const auto size = static_cast<std::size_t>(std::llround(r.keep * static_cast<double>(supp.size())));
    return minorant_restrict(f, random_subset(supp, size, rng));
  }
  throw ParameterError("unknown g recipe '" + r.kind + "'");
}

Corpus build_corpus(const ExperimentConfig& c) {
  const FieldParams params(c.p, c.n);
  Rng rng(c.seed);
  DenseFunction f = build_function(c.f, params, rng);
  DenseFunction g = build_minorant(c.g, f, rng);
  return Corpus{std::move(f), std::move(g)};
}

VerifyOutcome run_verify(const ExperimentConfig& c) {
  const auto start = std::chrono::steady_clock::now();
  const FieldParams params(c.p, c.n);
  const double size = static_cast<double>(params.size());
  if (size > kBruteForceLimit && !c.force) {
    throw ParameterError("brute-force Lambda3 refused for F = " + std::to_string(params.size()) +
                         " > 20000; pass --force to override");
  }
  Rng seeder(c.seed ^ 0x9e3779b97f4a7c15ULL);
  const std::uint64_t lemma_seed = seeder();
  const std::uint64_t depletion_seed = seeder();

  const Corpus corpus = build_corpus(c);
  const DenseFunction& f = corpus.f;
  const DenseFunction& g = corpus.g;
  const Spectrum fs = dft(f);

  std::vector<Assertion> assertions;
  auto check = [&](std::string name, bool pass, std::string detail) {
    assertions.push_back({std::move(name), pass, std::move(detail)});
  };

  Json report;
  report["version"] = kVersion;
  report["seed"] = c.seed;
  report["config"] = to_json(c);
  report["field"] = {{"p", c.p}, {"n", c.n}, {"F", params.size()}};

  // Oracles.
  const double energy = f.sum_squares();
  const double parseval = energy > 0.0 ? std::abs(fs.tails()[0] / size - energy) / energy : 0.0;
  const DenseFunction back = idft(fs);
  double roundtrip = 0.0;
  for (Element m = 0; m < params.size(); ++m) roundtrip = std::max(roundtrip, std::abs(back[m] - f[m]));
  check("parseval", parseval < 1e-9, "relative error " + num(parseval));
  check("round_trip", roundtrip < 1e-9, "max abs error " + num(roundtrip));

  const Spectrum gs = dft(g);
  struct Triple {
    const char* name;
    const DenseFunction* a;
    const DenseFunction* b;
    const DenseFunction* c;
    const Spectrum* sa;
    const Spectrum* sb;
    const Spectrum* sc;
  };
  const Triple triples[] = {{"fff", &f, &f, &f, &fs, &fs, &fs},
                            {"fgf", &f, &g, &f, &fs, &gs, &fs},
                            {"gff", &g, &f, &f, &gs, &fs, &fs}};
  Json lambda = Json::object();
  double lambda_fff = 0.0, lambda_fgf = 0.0, lambda_gff = 0.0;
  for (const auto& t : triples) {
    const double brute = lambda3_brute(*t.a, *t.b, *t.c);
    const Lambda3Result spec = lambda3_spectral(*t.sa, *t.sb, *t.sc);
    const double diff = std::abs(brute - spec.value);
    lambda[t.name] = {{"brute", brute}, {"spectral", spec.value}, {"abs_diff", diff}};
    check(std::string("lambda3_oracle_") + t.name, diff < 1e-8, "brute " + num(brute) + " spectral " + num(spec.value));
    if (std::string(t.name) == "fff") lambda_fff = brute;
    if (std::string(t.name) == "fgf") lambda_fgf = brute;
    if (std::string(t.name) == "gff") lambda_gff = brute;
  }
  const double trivial = trivial_lower_bound(f);
  check("trivial_bound", lambda_fff >= trivial - 1e-12, num(lambda_fff) + " >= " + num(trivial));
  report["lambda3"] = lambda;
  report["trivial_bound"] = trivial;
  report["nontrivial_progressions_f"] = count_nontrivial_progressions(f, f, f);

  // Spectrum statistics.
  const std::size_t k = std::min<std::size_t>(c.k, params.size());
  if (k < 1) throw ParameterError("k must be at least 1");
  const double sigma_k = sigma_tail(fs, k);
  const double q13 = quasinorm(fs, 1.0 / 3.0);
  const double gamma_measured = std::log(q13) / std::log(size) - 1.0;
  const double gamma = c.gamma.value_or(gamma_measured);
  const double delta = c.delta.value_or(delta_from_sigma(sigma_k, size));
  const auto a = top_places(fs, k);
  Json top = Json::array();
  for (Element x : a) top.push_back({{"index", x}, {"magnitude", std::abs(fs[x])}});
  report["spectrum"] = {{"top_k", top},
                        {"sigma_k", sigma_k},
                        {"quasinorm_one_third", q13},
                        {"quasinorm_two_thirds", quasinorm(fs, 2.0 / 3.0)},
                        {"gamma_measured", gamma_measured},
                        {"gamma_used", gamma},
                        {"benchmark_F_pow_1_plus_gamma", std::pow(size, 1.0 + gamma)},
                        {"benchmark_F_pow_1_03", std::pow(size, 1.03)}};
  report["E_f"] = f.mean();
  report["E_g"] = g.mean();
  report["delta"] = delta;

  const double theta = density_exponent(g.mean(), size);
  const HypothesisReport hyp = check_hypotheses(f, g, fs, k, theta, delta);
  report["theta"] = std::isfinite(theta) ? Json(theta) : Json(nullptr);
  report["hypotheses"] = hypotheses_json(hyp);

  // Lemma estimates at n' = choose_dimension(k).
  Json lemmas = Json::object();
  bool infeasible = false;
  try {
    const std::uint32_t dim = choose_dimension(k, params);
    Rng lemma_rng(lemma_seed);
    const double pairs = pairs_count(k);
    const double bv0_floor = std::max(0.5, 1.0 - pairs * std::pow(static_cast<double>(c.p), -double(dim)));
    const double floor_g = 8.0 / (std::sqrt(static_cast<double>(c.p)) * static_cast<double>(k));
    lemmas["n_prime"] = dim;
    if (k >= 2) {
      const auto bv0 = c.exhaustive ? exact_bv0(params, a, dim, c.enumeration_cap)
                                    : estimate_bv0(params, a, dim, c.trials, lemma_rng);
      lemmas["bv0"] = estimate_json(bv0);
      lemmas["bv0"]["lower_bound"] = bv0_floor;
      check("lemma_bv0", bv0.value >= bv0_floor - 4.0 * bv0.std_error - 1e-12,
            num(bv0.value) + " vs " + num(bv0_floor));
    }
    if (g.mean() > 0.0) {
      const auto tv = c.exhaustive ? exact_tv(g, dim, c.enumeration_cap) : estimate_tv(g, dim, c.trials, lemma_rng);
      lemmas["tv"] = estimate_json(tv);
      if (g.mean() > floor_g) {
        check("lemma_tv", tv.value > 0.75 - 4.0 * tv.std_error, num(tv.value) + " vs 3/4");
      }
      const Moments mom = c.exhaustive
                              ? chebyshev_moments(g, dim, MomentMode::kExhaustive, 0, nullptr, c.enumeration_cap)
                              : chebyshev_moments(g, dim, MomentMode::kSampled, c.trials, &lemma_rng);
      const double expected = params.power(dim) * g.mean();
      lemmas["moments"] = {{"mean", mom.mean},
                           {"variance", mom.variance},
                           {"samples", mom.samples},
                           {"expected_mean", expected},
                           {"variance_bound", params.power(dim)}};
      if (c.exhaustive) {
        check("moments_mean", std::abs(mom.mean - expected) <= 1e-12 * expected, num(mom.mean) + " vs " + num(expected));
        check("moments_variance", mom.variance <= params.power(dim) + 1e-9, num(mom.variance));
      }
    }
  } catch (const InfeasibleError& e) {
    infeasible = true;
    lemmas["error"] = e.what();
  }
  report["lemmas"] = lemmas;

  // Depletion runs.
  bool refused = infeasible;
  bool finder_failed = false;
  std::string refusal = infeasible ? lemmas["error"].get<std::string>() : "";
  std::optional<Corpus> counterexample;
  Json runs = Json::array();
  if (!infeasible) {
    for (std::size_t i = 0; i < c.orderings.size(); ++i) {
      DepletionOptions opt;
      opt.ordering = c.orderings[i];
      opt.refresh = c.refresh;
      opt.seed = depletion_seed + i;
      opt.max_attempts = c.max_attempts;
      opt.require_density_floor = c.require_density_floor;
      opt.check_contexts = c.check_contexts;
      const DepletionRun run = run_depletion(f, g, k, delta, opt);
      const std::string tag = to_string(run.ordering);
      Json jr{{"ordering", tag},
              {"status", to_string(run.status)},
              {"diagnostic", run.diagnostic},
              {"r", run.r},
              {"steps", run.certificates.size()},
              {"refreshes", run.refreshes},
              {"finder",
               {{"attempts", run.finder.attempts},
                {"rejected_direct_sum", run.finder.rejected_direct_sum},
                {"rejected_bv0", run.finder.rejected_bv0},
                {"rejected_tv", run.finder.rejected_tv}}},
              {"lambda_lower", run.lambda_lower},
              {"lambda_measured", run.lambda_measured},
              {"theorem_rhs", run.theorem_rhs},
              {"theorem_rhs_vacuous", run.theorem_rhs_vacuous},
              {"worst_q_ratio", run.worst_q_ratio},
              {"contexts_checked", run.contexts_checked},
              {"worst_h_hat_error", run.worst_h_hat_error},
              {"warnings", run.warnings},
              {"certificates", certificates_json(run.certificates)}};
      runs.push_back(jr);
      if (run.status == RunStatus::kRefused) {
        refused = true;
        if (refusal.empty()) refusal = run.diagnostic;
        continue;
      }
      if (run.status == RunStatus::kFinderFailed) {
        finder_failed = true;
        if (refusal.empty()) refusal = run.diagnostic;
      }
      bool certs_ok = true;
      for (const auto& cert : run.certificates) certs_ok = certs_ok && cert.holds;
      check("certificates_" + tag, certs_ok, run.status == RunStatus::kCertificateFailed ? run.diagnostic : "");
      if (!certs_ok) counterexample = corpus;
      check("lower_bound_" + tag, run.lambda_measured >= run.lambda_lower - 1e-9,
            num(run.lambda_measured) + " >= " + num(run.lambda_lower));
      check("bookkeeping_" + tag, run.bookkeeping_ok, "");
      check("translate_objective_" + tag, run.q_bound_ok, "worst Q/(4 sigma_k) " + num(run.worst_q_ratio));
      if (c.check_contexts) {
        check("contexts_" + tag, run.contexts_ok, "worst h_hat error " + num(run.worst_h_hat_error));
      }
      if (hyp.all_pass() && k >= 2) {
        check("theorem_" + tag, run.lambda_measured >= run.theorem_rhs - 1e-9,
              num(run.lambda_measured) + " >= " + num(run.theorem_rhs));
      }
    }
  }
  report["depletion"] = runs;

  // Closed-form bounds.
  const OptimalK ok = optimal_k(c.p, size, std::isfinite(theta) ? theta : 0.0, gamma);
  Json bounds{{"optimal_k", ok.k},
              {"optimal_k_real", ok.k_real},
              {"corollary_bound_stated", ok.corollary_bound_stated},
              {"corollary_bound_derived", ok.corollary_bound_derived}};
  if (k >= 2 && std::isfinite(theta)) {
    const BoundValue b = theorem2_rhs({c.p, size, k, theta, delta, gamma});
    bounds["theorem2_rhs"] = b.value;
    bounds["theorem2_vacuous"] = b.vacuous;
  }
  if (hyp.structural_pass() && std::isfinite(theta) && q13 <= std::pow(size, 1.0 + gamma) * (1 + 1e-12)) {
    const double worst = std::min(lambda_fgf, lambda_gff);
    bounds["corollary_stated_holds"] = worst >= ok.corollary_bound_stated;
    check("corollary_derived", worst >= ok.corollary_bound_derived,
          num(worst) + " >= " + num(ok.corollary_bound_derived));
  }
  report["bounds"] = bounds;

  Json jassert = Json::array();
  std::string first_failure;
  for (const auto& x : assertions) {
    jassert.push_back({{"name", x.name}, {"pass", x.pass}, {"detail", x.detail}});
    if (!x.pass && first_failure.empty()) first_failure = x.name + (x.detail.empty() ? "" : ": " + x.detail);
  }
  report["assertions"] = jassert;

  VerifyOutcome out;
  if (!first_failure.empty()) {
    out.exit_code = kExitAssertion;
    out.first_failure = first_failure;
  } else if (finder_failed) {
    out.exit_code = kExitFinderExhausted;
    out.first_failure = refusal;
  } else if (refused) {
    out.exit_code = kExitRefused;
    out.first_failure = refusal;
  }
  static const char* const kResults[] = {"PASS", "", "REFUSED", "FINDER_EXHAUSTED", "ASSERTION_FAILED"};
  report["result"] = kResults[out.exit_code];
  report["exit_code"] = out.exit_code;
  report["first_failure"] = out.first_failure;
  report["wall_clock_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.report = std::move(report);
  out.counterexample = std::move(counterexample);
  return out;
}

std::string canonical_report(const Json& report) {
  Json copy = report;
  copy.erase("wall_clock_seconds");
  return copy.dump(2);
}

std::string estimate_csv(const EstimateRequest& req) {
  if (req.lemma != "bv0" && req.lemma != "tv" && req.lemma != "moments") {
    throw ParameterError("unknown lemma '" + req.lemma + "' (expected bv0, tv or moments)");
  }
  if (req.k_min < 1 || req.k_max < req.k_min) throw ParameterError("bad k range");
  const FieldParams params(req.p, req.n);
  Rng rng(req.seed);
  const std::string mode = req.exhaustive ? "exhaustive" : "sampled";
  std::ostringstream out;
  out << "lemma,p,n,k,n_prime,mode,samples,value,stderr,reference\n";
  auto row = [&](const std::string& name, std::size_t k, std::uint32_t dim, std::uint64_t samples, double value,
                 double se, double reference) {
    out << name << ',' << req.p << ',' << req.n << ',' << k << ',' << dim << ',' << mode << ',' << samples << ','
        << format_double(value) << ',' << format_double(se) << ',' << format_double(reference) << '\n';
  };
  const auto g_size = static_cast<std::size_t>(std::llround(req.density * static_cast<double>(params.size())));
  for (std::size_t k = req.k_min; k <= req.k_max; ++k) {
    std::uint32_t dim = 0;
    try {
      dim = choose_dimension(k, params);
    } catch (const InfeasibleError&) {
      continue;
    }
    if (req.lemma == "bv0") {
      if (k > params.size()) continue;
      const SetSpec a = random_set(params, k, rng);
      const auto e = req.exhaustive ? exact_bv0(params, a.members(), dim, req.enumeration_cap)
                                    : estimate_bv0(params, a.members(), dim, req.trials, rng);
      const double bound = 1.0 - pairs_count(k) * std::pow(static_cast<double>(req.p), -double(dim));
      row("bv0", k, dim, e.samples, e.value, e.std_error, bound);
    } else {
      const DenseFunction g = indicator(random_set(params, std::clamp<std::size_t>(g_size, 1, params.size()), rng));
      if (req.lemma == "tv") {
        const auto e = req.exhaustive ? exact_tv(g, dim, req.enumeration_cap) : estimate_tv(g, dim, req.trials, rng);
        row("tv", k, dim, e.samples, e.value, e.std_error, 0.75);
      } else {
        const Moments m = req.exhaustive
                              ? chebyshev_moments(g, dim, MomentMode::kExhaustive, 0, nullptr, req.enumeration_cap)
                              : chebyshev_moments(g, dim, MomentMode::kSampled, req.trials, &rng);
        row("moments_mean", k, dim, m.samples, m.mean, 0.0, params.power(dim) * g.mean());
        row("moments_variance", k, dim, m.samples, m.variance, 0.0, params.power(dim));
      }
    }
  }
  return out.str();
}

std::string bounds_table_csv(std::uint32_t p, std::uint32_t n, const std::vector<double>& thetas,
                             const std::vector<double>& gammas, const std::vector<std::size_t>& ks) {
  const FieldParams params(p, n);
  const double size = static_cast<double>(params.size());
  std::ostringstream out;
  out << "p,n,F,theta,gamma,k,delta,theorem2_rhs,k2_form,optimal_k,corollary_stated,corollary_derived\n";
  for (double theta : thetas) {
    for (double gamma : gammas) {
      const OptimalK ok = optimal_k(p, size, theta, gamma);
      for (std::size_t k : ks) {
        if (k < 2) continue;
        const double delta = corollary_delta(size, gamma, k);
        const BoundValue b = theorem2_rhs({p, size, k, theta, delta, gamma});
        out << p << ',' << n << ',' << params.size() << ',' << format_double(theta) << ',' << format_double(gamma)
            << ',' << k << ',' << format_double(delta) << ',' << format_double(b.value) << ','
            << format_double(corollary_objective(p, size, static_cast<double>(k), theta, gamma)) << ',' << ok.k
            << ',' << format_double(ok.corollary_bound_stated) << ',' << format_double(ok.corollary_bound_derived)
            << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace ap3

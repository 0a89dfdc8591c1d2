#include "ap3/midpoint.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ap3/errors.hpp"
#include "ap3/parallel.hpp"

namespace ap3 {
namespace {

constexpr double kBookkeepingTolerance = 1e-12;

void require_complement_pair(const Subspace& w, const Subspace& v) {
  require_same_field(w.params(), v.params());
  if (!(w.orthogonal_complement() == v)) throw StructuralError("V must equal W^perp");
  if (!DirectSum::is_direct_sum(v, w)) {
    throw StructuralError("W meets W^perp nontrivially; F is not V + W");
  }
}

std::vector<Decomposed> decompose_all(const std::vector<Element>& a, const Subspace& v, const Subspace& w) {
  const DirectSum ds(v, w);
  std::vector<Decomposed> out;
  out.reserve(a.size());
  for (Element x : a) {
    const auto [vx, wx] = ds.decompose(x);
    out.push_back({x, vx, wx});
  }
  return out;
}

void split_w(const Subspace& w, const std::vector<Decomposed>& d, std::vector<Element>& w1,
             std::vector<Element>& w2) {
  for (const auto& x : d) w1.push_back(x.w);
  std::sort(w1.begin(), w1.end());
  w1.erase(std::unique(w1.begin(), w1.end()), w1.end());
  if (w1.size() != d.size()) throw StructuralError("two elements of A share a coset of V");
  auto members = w.members();
  std::sort(members.begin(), members.end());
  std::set_difference(members.begin(), members.end(), w1.begin(), w1.end(), std::back_inserter(w2));
}

}  // namespace

TranslateObjective::TranslateObjective(const Spectrum& f_spectrum, std::vector<Element> a, const Subspace& w,
                                       const Subspace& v)
    : params_(f_spectrum.params()), w_(w), v_(v), indexer_(w) {
  require_same_field(params_, w.params());
  require_complement_pair(w, v);
  decomposition_ = decompose_all(a, v, w);
  split_w(w, decomposition_, w1_, w2_);

  const auto w_members = w.members();
  const auto v_members = v.members();
  w_position_.assign(params_.size(), -1);
  for (std::size_t i = 0; i < w_members.size(); ++i) w_position_[w_members[i]] = static_cast<std::int64_t>(i);

  // Coset key digit j is b_j . t for the j-th basis row b_j of V, and
  // v_members[c] = sum_j c_j b_j, so the transform over coefficient space
  // evaluated at the key gives sum_v fhat(w+v) w^{-v.t}.
  hhat_.resize(w_members.size());
  const std::uint32_t dim_v = v.dim();
  parallel_for(w_members.size(), [&](std::size_t i) {
    std::vector<Complex> x(v_members.size());
    for (std::size_t c = 0; c < v_members.size(); ++c) x[c] = f_spectrum[params_.add(w_members[i], v_members[c])];
    if (dim_v > 0) transform_in_place(FieldParams(params_.p(), dim_v), x, -1);
    hhat_[i] = std::move(x);
  });

  // A representative translate for every coset.
  const std::uint32_t cosets = indexer_.num_cosets();
  std::vector<Element> rep(cosets, 0);
  std::vector<bool> seen(cosets, false);
  for (Element t = 0; t < params_.size(); ++t) {
    const std::uint32_t key = indexer_.keys()[t];
    if (!seen[key]) {
      seen[key] = true;
      rep[key] = t;
    }
  }

  const auto roots = roots_of_unity(params_.p());
  const std::uint32_t p = params_.p();
  q_.assign(cosets, 0.0);
  parallel_for(cosets, [&](std::size_t key) {
    std::vector<double> terms;
    terms.reserve(decomposition_.size() + w2_.size());
    for (const auto& d : decomposition_) {
      const Complex h = hhat_[w_position_[d.w]][key];
      const Complex rotated = f_spectrum[d.x] * roots[(p - params_.dot(d.v, rep[key])) % p];
      terms.push_back(std::norm(h - rotated));
    }
    for (Element x : w2_) terms.push_back(std::norm(hhat_[w_position_[x]][key]));
    q_[key] = pairwise_sum(terms);
  });
}

double TranslateObjective::total_over_field() const {
  return pairwise_sum(q_) * static_cast<double>(w_.size());
}

Complex TranslateObjective::h_hat(Element t, Element w) const {
  if (!params_.contains(w) || w_position_[w] < 0) throw ParameterError("frequency not in W");
  return hhat_[w_position_[w]][indexer_.key(t)];
}

TranslateChoice select_translate(const TranslateObjective& objective, const std::vector<Element>& translates) {
  if (translates.empty()) throw ParameterError("no admissible translates");
  TranslateChoice best{translates.front(), objective.q(translates.front())};
  for (Element t : translates) {
    const double q = objective.q(t);
    if (q < best.q || (q == best.q && t < best.t)) best = {t, q};
  }
  return best;
}

CosetContext build_context(const DenseFunction& f, const Spectrum& f_spectrum, const std::vector<Element>& a,
                           const Subspace& w, const Subspace& v, Element t) {
  const FieldParams& params = f.params();
  require_same_field(params, f_spectrum.params());
  require_same_field(params, w.params());
  require_complement_pair(w, v);
  if (!params.contains(t)) throw ParameterError("translate outside the field");

  const auto coset = coset_members(w, t);
  std::vector<double> alpha(params.size(), 0.0);
  for (Element m : coset) alpha[m] = 1.0;

  std::vector<double> h(params.size(), 0.0);
  const auto v_members = v.members();
  for (Element x : coset) {
    if (f[x] == 0.0) continue;
    for (Element b : v_members) h[params.add(x, b)] += f[x];
  }

  const auto roots = roots_of_unity(params.p());
  const std::uint32_t p = params.p();
  std::vector<Complex> h_hat(params.size(), Complex(0.0, 0.0));
  for (Element x : w.members()) {
    Complex acc(0.0, 0.0);
    for (Element b : v_members) acc += f_spectrum[params.add(x, b)] * roots[(p - params.dot(b, t)) % p];
    h_hat[x] = acc;
  }

  auto decomposition = decompose_all(a, v, w);
  std::vector<Element> w1, w2;
  split_w(w, decomposition, w1, w2);
  return CosetContext{w,
                      v,
                      t,
                      DenseFunction(params, std::move(alpha)),
                      DenseFunction(params, std::move(h)),
                      std::move(h_hat),
                      std::move(w1),
                      std::move(w2),
                      std::move(decomposition)};
}

ContextCheck check_context(const CosetContext& ctx, const DenseFunction& f, const std::vector<Element>& a) {
  const FieldParams& params = f.params();
  const auto roots = roots_of_unity(params.p());
  ContextCheck c;

  const Spectrum alpha_hat = dft(ctx.alpha);
  for (Element x = 0; x < params.size(); ++x) {
    const Complex expected =
        ctx.v.contains(x) ? static_cast<double>(ctx.w.size()) * roots[params.dot(x, ctx.t)] : Complex(0.0, 0.0);
    c.alpha_hat_error = std::max(c.alpha_hat_error, std::abs(alpha_hat[x] - expected));
  }

  const Spectrum h_spec = dft(ctx.h);
  for (Element x = 0; x < params.size(); ++x) {
    c.h_hat_error = std::max(c.h_hat_error, std::abs(h_spec[x] - ctx.h_hat[x]));
  }

  c.v_invariant = true;
  for (Element b : ctx.v.basis_elements()) {
    const auto shift = translation_map(params, b);
    for (Element m = 0; m < params.size(); ++m) c.v_invariant = c.v_invariant && ctx.h[shift[m]] == ctx.h[m];
  }

  c.h_equals_f_on_coset = true;
  for (Element m : coset_members(ctx.w, ctx.t)) c.h_equals_f_on_coset = c.h_equals_f_on_coset && ctx.h[m] == f[m];

  c.unique_witnesses = true;
  for (Element x : ctx.w1) {
    std::size_t hits = 0;
    for (Element y : coset_members(ctx.v, x)) hits += std::ranges::count(a, y);
    c.unique_witnesses = c.unique_witnesses && hits == 1;
  }
  for (Element x : ctx.w2) {
    for (Element y : coset_members(ctx.v, x)) c.unique_witnesses = c.unique_witnesses && std::ranges::count(a, y) == 0;
  }
  return c;
}

MidpointCertificate certify_midpoint(const Subspace& w, Element t, const DenseFunction& f,
                                     const DenseFunction& g_i, double delta, Element m, Ordering ordering,
                                     std::size_t step) {
  const FieldParams& params = f.params();
  require_same_field(params, g_i.params());
  if (!params.contains(m) || !w.contains(params.sub(m, t))) throw ParameterError("midpoint not in t + W");
  MidpointCertificate c;
  c.step = step;
  c.m = m;
  c.g_value = g_i[m];
  c.mean_g = g_i.mean();
  if (c.g_value < c.mean_g / 2.0) throw ParameterError("g_i(m) < E(g_i)/2 at the proposed midpoint");
  const double v_size = static_cast<double>(params.size()) / w.size();
  c.certified_floor = c.mean_g * c.mean_g * v_size / 4.0 - 9.0 * delta * static_cast<double>(params.size());
  c.vacuous = !(c.certified_floor > 0.0);
  c.pair_count = pair_count_direct(f, m, ordering);
  c.holds = c.pair_count >= c.certified_floor;
  return c;
}

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::kCompleted:
      return "completed";
    case RunStatus::kRefused:
      return "refused";
    case RunStatus::kFinderFailed:
      return "finder_failed";
    case RunStatus::kCertificateFailed:
      return "certificate_failed";
  }
  return "unknown";
}

std::string to_string(RefreshPolicy r) { return r == RefreshPolicy::kEveryStep ? "every_step" : "reuse_while_valid"; }

DepletionRun run_depletion(const DenseFunction& f, const DenseFunction& g, std::size_t k, double delta,
                           const DepletionOptions& options) {
  const FieldParams& params = f.params();
  require_same_field(params, g.params());
  if (delta < 0.0) throw ParameterError("delta must be nonnegative");
  if (k < 1 || k > params.size()) throw ParameterError("k must lie in [1, F]");
  const double size = static_cast<double>(params.size());

  DepletionRun run;
  run.ordering = options.ordering;
  run.k = k;
  run.delta = delta;
  const double e_g = g.mean();
  run.theta = density_exponent(e_g, size);

  const Spectrum f_spec = dft(f);
  const auto a = top_places(f_spec, k);
  run.sigma_k = sigma_tail(f_spec, k);
  run.hypotheses = check_hypotheses(f, g, f_spec, k, run.theta, delta);
  if (k >= 2 && std::isfinite(run.theta)) {
    const BoundValue b = theorem2_rhs({params.p(), size, k, run.theta, delta, 0.0});
    run.theorem_rhs = b.value;
    run.theorem_rhs_vacuous = b.vacuous;
  }
  const bool refused =
      !run.hypotheses.structural_pass() || (options.require_density_floor && !run.hypotheses.all_pass());
  if (refused) {
    run.status = RunStatus::kRefused;
    run.diagnostic = run.hypotheses.first_failure();
    return run;
  }
  if (!run.hypotheses.all_pass()) {
    run.warnings.push_back("density floor not enforced: " + run.hypotheses.first_failure());
  }

  run.r = static_cast<std::size_t>(std::ceil(e_g * size / 2.0 - 1e-9));
  Rng rng(options.seed);
  FinderConfig cfg;
  cfg.k = k;
  cfg.max_attempts = options.max_attempts;
  cfg.require_direct_sum = options.require_direct_sum;
  const double q_cap = 4.0 * run.sigma_k + 1e-9 * f_spec.tails()[0];

  DenseFunction g_i = g;
  double mean_i = e_g;
  std::optional<GoodSubspace> good;
  TranslateChoice choice;
  double sum_floors = 0.0;
  run.status = RunStatus::kCompleted;

  for (std::size_t step = 0; step < run.r; ++step) {
    bool reuse = false;
    if (options.refresh == RefreshPolicy::kReuseWhileValid && good) {
      double coset_sum = 0.0;
      for (Element x : coset_members(good->w, choice.t)) coset_sum += g_i[x];
      reuse = coset_sum >= mean_i * good->w.size() / 2.0 - kTranslateTolerance;
    }
    if (!reuse) {
      FinderResult found = find_good_subspace(g_i, a, cfg, rng);
      run.finder.attempts += found.stats.attempts;
      run.finder.rejected_direct_sum += found.stats.rejected_direct_sum;
      run.finder.rejected_bv0 += found.stats.rejected_bv0;
      run.finder.rejected_tv += found.stats.rejected_tv;
      if (!found.found()) {
        run.status = RunStatus::kFinderFailed;
        run.diagnostic = "no good subspace within " + std::to_string(cfg.max_attempts) + " attempts at step " +
                         std::to_string(step);
        break;
      }
      good = std::move(found.good);
      ++run.refreshes;
      if (!good->direct_sum_ok) {
        run.status = RunStatus::kFinderFailed;
        run.diagnostic = "selected W is not complementary to W^perp";
        break;
      }
      const TranslateObjective objective(f_spec, a, good->w, good->v);
      choice = select_translate(objective, good->translates);
      if (run.sigma_k > 0.0) run.worst_q_ratio = std::max(run.worst_q_ratio, choice.q / (4.0 * run.sigma_k));
      if (choice.q > q_cap) run.q_bound_ok = false;
      if (options.check_contexts) {
        const CosetContext ctx = build_context(f, f_spec, a, good->w, good->v, choice.t);
        const ContextCheck cc = check_context(ctx, f, a);
        ++run.contexts_checked;
        run.worst_h_hat_error = std::max(run.worst_h_hat_error, cc.h_hat_error);
        run.contexts_ok = run.contexts_ok && cc.ok();
      }
    }

    Element m = 0;
    double best = -1.0;
    for (Element x : coset_members(good->w, choice.t)) {
      if (g_i[x] > best || (g_i[x] == best && x < m)) {
        best = g_i[x];
        m = x;
      }
    }
    MidpointCertificate cert = certify_midpoint(good->w, choice.t, f, g_i, delta, m, options.ordering, step);
    cert.q = choice.q;
    run.certificates.push_back(cert);
    if (!cert.holds) {
      run.status = RunStatus::kCertificateFailed;
      std::ostringstream os;
      os.precision(17);
      os << "step " << step << ": m=" << m << " pair_count=" << cert.pair_count
         << " < floor=" << cert.certified_floor;
      run.diagnostic = os.str();
      break;
    }
    sum_floors += cert.certified_floor;

    if (mean_i < e_g / 2.0 - kBookkeepingTolerance) run.bookkeeping_ok = false;
    const double removed = g_i[m];
    g_i.set(m, 0.0);
    const double next = g_i.mean();
    if (std::abs(next - (mean_i - removed / size)) > kBookkeepingTolerance) run.bookkeeping_ok = false;
    mean_i = next;
  }

  run.lambda_lower = sum_floors * (e_g / 4.0) / (size * size);
  run.lambda_measured = options.ordering == Ordering::kFgf ? lambda3_brute(f, g, f) : lambda3_brute(g, f, f);
  return run;
}

}  // namespace ap3

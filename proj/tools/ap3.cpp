#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ap3/errors.hpp"
#include "ap3/experiment.hpp"

namespace fs = std::filesystem;
using namespace ap3;

namespace {

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

struct RecipeArgs {
  std::string recipe = "remark2";
  std::size_t set_size = 0;
  double set_exponent = 0.99;
  unsigned power = 7;
  double value = 1.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--recipe", recipe, "remark2, conv_power, indicator or constant")
        ->check(CLI::IsMember({"remark2", "conv_power", "indicator", "constant"}));
    cmd->add_option("--set-size", set_size, "|S|; 0 means ceil(F^exponent)");
    cmd->add_option("--set-exponent", set_exponent);
    cmd->add_option("--power", power, "r in |S|^{-(r-1)} S^{*r}");
    cmd->add_option("--value", value, "constant value");
  }

  FunctionRecipe get() const {
    FunctionRecipe r;
    r.kind = recipe;
    r.set_size = set_size;
    r.set_exponent = set_exponent;
    r.power = power;
    r.value = value;
    return r;
  }
};

void check_brute_limit(const FieldParams& params, bool force) {
  if (static_cast<double>(params.size()) > kBruteForceLimit && !force) {
    throw ParameterError("brute-force Lambda3 refused for F = " + std::to_string(params.size()) +
                         " > 20000; pass --force to override");
  }
}

void dump_counterexample(const Corpus& c, const std::string& dir) {
  write_text_file((fs::path(dir) / "counterexample_f.json").string(), to_json(c.f).dump() + "\n");
  write_text_file((fs::path(dir) / "counterexample_g.json").string(), to_json(c.g).dump() + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-term progression counts on F_p^n with small spectral tails"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::optional<std::uint32_t> p, n;
  std::uint64_t seed = 1;
  bool force = false;
  std::string out;

  // generate
  auto* gen = app.add_subcommand("generate", "Build a function from a recipe and write it as JSON or CSV");
  RecipeArgs gen_recipe;
  gen_recipe.attach(gen);
  gen->add_option("--p", p)->required();
  gen->add_option("--n", n)->required();
  gen->add_option("--seed", seed);
  gen->add_option("--out", out, "output file (.json or .csv); stdout JSON when absent");

  // transform
  auto* tr = app.add_subcommand("transform", "Write the spectrum of a function as CSV");
  std::string input;
  RecipeArgs tr_recipe;
  tr_recipe.attach(tr);
  tr->add_option("--input", input, "function file (.json, or .csv with --p/--n)");
  tr->add_option("--p", p);
  tr->add_option("--n", n);
  tr->add_option("--seed", seed);
  tr->add_option("--out", out, "output CSV; stdout when absent");

  // lambda3
  auto* lam = app.add_subcommand("lambda3", "Evaluate Lambda3 on one, two (f g) or three function files");
  std::vector<std::string> files;
  std::string method = "both";
  std::string lam_ordering = "both";
  lam->add_option("files", files, "f | f g | f1 f2 f3")->required()->expected(1, 3);
  lam->add_option("--method", method)->check(CLI::IsMember({"brute", "spectral", "both"}));
  lam->add_option("--ordering", lam_ordering, "for two files")->check(CLI::IsMember({"fgf", "gff", "both"}));
  lam->add_option("--p", p);
  lam->add_option("--n", n);
  lam->add_flag("--force", force, "allow brute force above F = 20000");
  lam->add_option("--out", out, "output JSON; stdout when absent");

  // verify
  auto* ver = app.add_subcommand("verify", "Run the full pipeline on a config and write a report");
  std::string config_path;
  std::optional<std::uint64_t> v_seed, v_trials;
  std::optional<std::size_t> v_k;
  std::optional<double> v_gamma, v_delta;
  std::optional<std::string> v_ordering;
  bool v_exhaustive = false;
  ver->add_option("--config", config_path)->required()->check(CLI::ExistingFile);
  ver->add_option("--seed", v_seed);
  ver->add_option("--p", p);
  ver->add_option("--n", n);
  ver->add_option("--k", v_k);
  ver->add_option("--gamma", v_gamma);
  ver->add_option("--delta", v_delta);
  ver->add_option("--trials", v_trials);
  ver->add_flag("--exhaustive", v_exhaustive);
  ver->add_option("--ordering", v_ordering)->check(CLI::IsMember({"fgf", "gff", "both"}));
  ver->add_flag("--force", force);
  ver->add_option("--out", out, "directory for report.json; stdout when absent");

  // estimate
  auto* est = app.add_subcommand("estimate", "Estimate the subspace lemma probabilities over a k grid (CSV)");
  EstimateRequest req;
  std::optional<std::size_t> e_k;
  est->add_option("--lemma", req.lemma)->check(CLI::IsMember({"bv0", "tv", "moments"}));
  est->add_option("--p", req.p);
  est->add_option("--n", req.n);
  est->add_option("--k", e_k, "single k");
  est->add_option("--k-min", req.k_min);
  est->add_option("--k-max", req.k_max);
  est->add_option("--trials", req.trials);
  est->add_option("--seed", req.seed);
  est->add_flag("--exhaustive", req.exhaustive);
  est->add_option("--density", req.density);
  est->add_option("--cap", req.enumeration_cap, "enumeration cap for --exhaustive");
  est->add_option("--out", out);

  // bounds
  auto* bnd = app.add_subcommand("bounds", "Tabulate the closed-form bounds (CSV)");
  std::vector<double> thetas{0.01, 0.05, 0.1};
  std::vector<double> gammas{0.03};
  std::vector<std::size_t> ks{2, 3, 4, 5, 10};
  std::uint32_t b_p = 3, b_n = 5;
  bnd->add_option("--p", b_p);
  bnd->add_option("--n", b_n);
  bnd->add_option("--theta", thetas)->delimiter(',');
  bnd->add_option("--gamma", gammas)->delimiter(',');
  bnd->add_option("--k", ks)->delimiter(',');
  bnd->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      const FieldParams params(*p, *n);
      Rng rng(seed);
      const DenseFunction f = build_function(gen_recipe.get(), params, rng);
      if (fs::path(out).extension() == ".csv") {
        std::ofstream os(out);
        if (!os) throw FormatError("cannot write " + out);
        write_function_csv(os, f);
      } else {
        emit(to_json(f).dump() + "\n", out);
      }
      return kExitPass;
    }

    if (tr->parsed()) {
      std::optional<FieldParams> params;
      if (p && n) params.emplace(*p, *n);
      DenseFunction f = DenseFunction::zeros(FieldParams(3, 1));
      if (!input.empty()) {
        f = read_function_file(input, params ? &*params : nullptr);
      } else {
        if (!params) throw ParameterError("transform needs --input or --p/--n with a recipe");
        Rng rng(seed);
        f = build_function(tr_recipe.get(), *params, rng);
      }
      std::ostringstream os;
      write_spectrum_csv(os, dft(f));
      emit(os.str(), out);
      return kExitPass;
    }

    if (lam->parsed()) {
      std::optional<FieldParams> params;
      if (p && n) params.emplace(*p, *n);
      std::vector<DenseFunction> fns;
      for (const auto& path : files) fns.push_back(read_function_file(path, params ? &*params : nullptr));
      for (const auto& fn : fns) {
        if (fn.params() != fns[0].params()) throw FormatError("function files disagree on p, n");
      }
      struct Triple {
        std::string name;
        const DenseFunction *a, *b, *c;
      };
      std::vector<Triple> triples;
      if (fns.size() == 1) {
        triples.push_back({"fff", &fns[0], &fns[0], &fns[0]});
      } else if (fns.size() == 2) {
        if (lam_ordering != "gff") triples.push_back({"fgf", &fns[0], &fns[1], &fns[0]});
        if (lam_ordering != "fgf") triples.push_back({"gff", &fns[1], &fns[0], &fns[0]});
      } else {
        triples.push_back({"f1f2f3", &fns[0], &fns[1], &fns[2]});
      }
      const bool brute = method != "spectral";
      const bool spectral = method != "brute";
      if (brute) check_brute_limit(fns[0].params(), force);
      Json report{{"version", kVersion},
                  {"field", {{"p", fns[0].params().p()}, {"n", fns[0].params().n()}}},
                  {"files", files},
                  {"method", method}};
      bool agree = true;
      Json results = Json::array();
      for (const auto& t : triples) {
        Json r{{"triple", t.name}};
        if (brute) r["brute"] = lambda3_brute(*t.a, *t.b, *t.c);
        if (spectral) {
          const Lambda3Result s = lambda3_spectral(*t.a, *t.b, *t.c);
          r["spectral"] = s.value;
          r["imag_residue"] = s.imag_residue;
        }
        if (brute && spectral) {
          const double diff = std::abs(r["brute"].get<double>() - r["spectral"].get<double>());
          r["abs_diff"] = diff;
          r["agree"] = diff < 1e-8;
          agree = agree && diff < 1e-8;
        }
        results.push_back(r);
      }
      report["results"] = results;
      report["agree"] = agree;
      emit(report.dump(2) + "\n", out);
      return agree ? kExitPass : kExitAssertion;
    }

    if (ver->parsed()) {
      ExperimentConfig c = load_config(config_path);
      if (v_seed) c.seed = *v_seed;
      if (p) c.p = *p;
      if (n) c.n = *n;
      if (v_k) c.k = *v_k;
      if (v_gamma) c.gamma = *v_gamma;
      if (v_delta) c.delta = *v_delta;
      if (v_trials) c.trials = *v_trials;
      if (v_exhaustive) c.exhaustive = true;
      if (v_ordering) {
        c.orderings.clear();
        if (*v_ordering != "gff") c.orderings.push_back(Ordering::kFgf);
        if (*v_ordering != "fgf") c.orderings.push_back(Ordering::kGff);
      }
      if (force) c.force = true;
      const VerifyOutcome res = run_verify(c);
      const std::string text = res.report.dump(2) + "\n";
      if (out.empty()) {
        std::cout << text;
      } else {
        fs::create_directories(out);
        write_text_file((fs::path(out) / "report.json").string(), text);
        if (res.counterexample) dump_counterexample(*res.counterexample, out);
      }
      std::cerr << "verify: " << res.report["result"].get<std::string>();
      if (!res.first_failure.empty()) std::cerr << " (" << res.first_failure << ")";
      std::cerr << "\n";
      return res.exit_code;
    }

    if (est->parsed()) {
      if (e_k) req.k_min = req.k_max = *e_k;
      emit(estimate_csv(req), out);
      return kExitPass;
    }

    if (bnd->parsed()) {
      emit(bounds_table_csv(b_p, b_n, thetas, gammas, ks), out);
      return kExitPass;
    }
  } catch (const HypothesisError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRefused;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

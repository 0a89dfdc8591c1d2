#pragma once

// Config-driven runs: build a corpus (f, g) from a recipe, check oracles and
// hypotheses, run the depletion loop and assemble a JSON report.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ap3/io.hpp"
#include "ap3/lambda3.hpp"
#include "ap3/midpoint.hpp"

namespace ap3 {

inline constexpr const char* kVersion = "1.0.0";

// Exit codes shared by the CLI and run_verify.
inline constexpr int kExitPass = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRefused = 2;
inline constexpr int kExitFinderExhausted = 3;
inline constexpr int kExitAssertion = 4;

inline constexpr double kBruteForceLimit = 2e4;

// f recipes: remark2 (|S|^{-6} S^{*7}), conv_power (|S|^{-(r-1)} S^{*r}),
// indicator (random S), constant, file. |S| is set_size when nonzero,
// otherwise ceil(F^set_exponent).
struct FunctionRecipe {
  std::string kind = "remark2";
  std::size_t set_size = 0;
  double set_exponent = 0.99;
  unsigned power = 7;
  double value = 1.0;
  std::string path;
};

// g recipes: same (g = f), scaled (scale * f), threshold (f where f >= t),
// restrict (f on a random fraction `keep` of its support), constant, zero, file.
struct MinorantRecipe {
  std::string kind = "same";
  double scale = 1.0;
  double threshold = 0.0;
  double keep = 1.0;
  double value = 0.0;
  std::string path;
};

struct ExperimentConfig {
  std::uint32_t p = 3;
  std::uint32_t n = 5;
  std::uint64_t seed = 1;
  FunctionRecipe f;
  MinorantRecipe g;
  std::size_t k = 5;
  // Absent: the tight value sqrt(sigma_k)/F.
  std::optional<double> delta;
  // Absent: measured from ||fhat||_{1/3} = F^{1+gamma}.
  std::optional<double> gamma;
  std::vector<Ordering> orderings{Ordering::kFgf, Ordering::kGff};
  std::uint64_t trials = 2000;
  bool exhaustive = false;
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  std::uint64_t max_attempts = 256;
  RefreshPolicy refresh = RefreshPolicy::kEveryStep;
  bool require_density_floor = true;
  bool check_contexts = true;
  bool force = false;
};

// Throws FormatError on unknown keys, bad types or unknown recipe kinds.
ExperimentConfig config_from_json(const Json& j);
Json to_json(const ExperimentConfig& c);
ExperimentConfig load_config(const std::string& path);

struct Corpus {
  DenseFunction f;
  DenseFunction g;
};

Corpus build_corpus(const ExperimentConfig& c);
DenseFunction build_function(const FunctionRecipe& r, const FieldParams& params, Rng& rng);
DenseFunction build_minorant(const MinorantRecipe& r, const DenseFunction& f, Rng& rng);

struct VerifyOutcome {
  int exit_code = kExitPass;
  std::string first_failure;
  Json report;
  // Set when a certificate failed: the instance that produced it.
  std::optional<Corpus> counterexample;
};

// The report's "wall_clock_seconds" is the only field that varies between
// runs of the same config. Throws ParameterError above the brute-force
// limit unless force, and EnumerationCapError in exhaustive mode.
VerifyOutcome run_verify(const ExperimentConfig& c);

// Serialises without the wall-clock field, for comparing runs.
std::string canonical_report(const Json& report);

struct EstimateRequest {
  std::string lemma = "bv0";  // bv0, tv or moments
  std::uint32_t p = 3;
  std::uint32_t n = 3;
  std::size_t k_min = 2;
  std::size_t k_max = 4;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  bool exhaustive = false;
  double density = 0.9;  // of the random indicator g used for tv and moments
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
};

// CSV: lemma,p,n,k,n_prime,mode,samples,value,stderr,reference
std::string estimate_csv(const EstimateRequest& req);

// CSV over a (theta, gamma, k) grid:
// p,n,F,theta,gamma,k,delta,theorem2_rhs,k2_form,optimal_k,corollary_stated,corollary_derived
std::string bounds_table_csv(std::uint32_t p, std::uint32_t n, const std::vector<double>& thetas,
                             const std::vector<double>& gammas, const std::vector<std::size_t>& ks);

}  // namespace ap3

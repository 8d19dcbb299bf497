#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "satlab/formula.hpp"
#include "satlab/rng.hpp"

namespace satlab {

/// Largest n for which formula buckets are built and verified exhaustively.
inline constexpr unsigned kMaxBucketVars = 20;

/// Direct Bernoulli(gamma) source.
struct OracleMode {
  double gamma = 0.0;
};

/// Formulas whose truth tables all have exactly k ones (the ensemble E_k).
/// Truth tables are kept alongside the formulas so a draw is a table lookup.
struct FormulaBucketMode {
  unsigned n = 1;
  std::uint64_t k = 0;
  std::vector<Formula> members;
  std::vector<TruthTable> tables;
};

class EnsembleSpec {
 public:
  static EnsembleSpec oracle(double gamma, std::string label = {});
  /// Verifies every member's ones count equals k. Requires n <= 20 and a
  /// non-empty member list.
  static EnsembleSpec formula_bucket(unsigned n, std::uint64_t k, std::vector<Formula> members,
                                     std::string label = {});

  const std::string& label() const noexcept { return label_; }
  bool is_oracle() const noexcept { return std::holds_alternative<OracleMode>(mode_); }
  const OracleMode* oracle_mode() const noexcept { return std::get_if<OracleMode>(&mode_); }
  const FormulaBucketMode* bucket_mode() const noexcept { return std::get_if<FormulaBucketMode>(&mode_); }
  /// Output marginal: gamma, or k / 2^n for a bucket.
  double marginal() const noexcept;

 private:
  EnsembleSpec(std::string label, std::variant<OracleMode, FormulaBucketMode> mode)
      : label_(std::move(label)), mode_(std::move(mode)) {}

  std::string label_;
  std::variant<OracleMode, FormulaBucketMode> mode_;
};

struct TrialRecord {
  std::string label;
  std::uint64_t trial = 0;
  /// Input fed to the drawn formula; empty in oracle mode.
  std::optional<std::uint64_t> assignment;
  /// Index of the drawn bucket member; empty in oracle mode.
  std::optional<std::size_t> member;
  bool output = false;
};

/// One draw: Bernoulli(gamma) for an oracle, otherwise a uniform member
/// evaluated on a uniform assignment.
TrialRecord draw_trial(const EnsembleSpec& spec, std::uint64_t trial, Rng& rng);
bool sample_output(const EnsembleSpec& spec, Rng& rng);

/// Generates num_formulas random formulas (formula i from derive_seed(seed, i))
/// and groups them by truth-table ones count.
std::map<std::uint64_t, EnsembleSpec> build_bucket(unsigned n, std::size_t num_formulas, std::size_t size_budget,
                                                   std::uint64_t seed);

/// "same" is part of the record format but the stopping rule below never
/// emits it: a finite run can only fail to separate, never confirm equality.
enum class Decision { Same, Different, Inconclusive };

std::string to_string(Decision d);
/// Throws FormatError for an unknown name.
Decision decision_from_string(std::string_view name);

inline constexpr std::uint64_t kDefaultGuard = 8;

struct DistinguishConfig {
  std::uint64_t max_m = 1;
  std::uint64_t guard = kDefaultGuard;
  std::uint64_t seed = 0;

  friend bool operator==(const DistinguishConfig&, const DistinguishConfig&) = default;
};

struct ExperimentResult {
  Decision decision = Decision::Inconclusive;
  std::uint64_t trials_used = 0;
  std::string label_a;
  std::string label_b;
  double empirical_p_a = 0.0;
  double empirical_p_b = 0.0;
  DistinguishConfig config;

  friend bool operator==(const ExperimentResult&, const ExperimentResult&) = default;
};

/// Paired sampling with the online distinguishability test: after paired draw
/// m, declare "different" once m >= guard and |pA - pB| >= dpA + dpB with the
/// empirical frequencies plugged into the standard error. Gives up as
/// "inconclusive" after max_m draws. A samples from derive_seed(seed, 0) and
/// B from derive_seed(seed, 1).
ExperimentResult sequential_distinguish(const EnsembleSpec& a, const EnsembleSpec& b, const DistinguishConfig& config);

struct WaitingStats {
  double mean = 0.0;
  double median = 0.0;
  std::uint64_t reps = 0;
  /// Runs that saw no success within max_m; counted at max_m in mean/median.
  std::uint64_t censored = 0;
};

/// Draws until the first 1 from Bernoulli(gamma), repeated `reps` times.
WaitingStats first_success_trials(double gamma, std::uint64_t reps, std::uint64_t max_m, std::uint64_t seed,
                                  unsigned threads = 0);

struct ScalingOptions {
  /// 0 selects 2^(n + 6) per n, enough that censoring is negligible.
  std::uint64_t max_m = 0;
  std::uint64_t guard = kDefaultGuard;
  unsigned threads = 0;
};

struct ScalingRow {
  unsigned n = 0;
  double median_trials = 0.0;
  double mean_trials = 0.0;
  std::uint64_t reps = 0;
  std::uint64_t inconclusive = 0;
};

/// For each n, `reps` runs of Oracle(0) vs Oracle(2^-n); repetition r of n uses
/// seed derive_seed(derive_seed(seed, n), r).
std::vector<ScalingRow> scaling_study(std::span<const unsigned> n_list, std::uint64_t reps, std::uint64_t seed,
                                      const ScalingOptions& options = {});

struct PipelineOptions {
  std::size_t num_formulas = 2000;
  std::size_t size_budget = 30;
  std::uint64_t reps = 101;
  /// 0 selects 2^(n + 6).
  std::uint64_t max_m = 0;
  std::uint64_t guard = kDefaultGuard;
  unsigned threads = 0;
};

struct BucketReport {
  std::uint64_t k = 0;
  std::size_t members = 0;
  double log2_p_bound = 0.0;
  /// Median trials to separate from the reference; empty when undefined.
  std::optional<double> median_trials;
  std::uint64_t different = 0;
  std::uint64_t inconclusive = 0;
  bool included = false;
};

struct PipelineReport {
  unsigned n = 0;
  std::uint64_t seed = 0;
  PipelineOptions options;
  std::uint64_t max_m = 0;
  /// "bucket" when random generation produced k = 0 formulas, otherwise
  /// "contradiction" (the single formula x0 & !x0).
  std::string reference;
  std::vector<BucketReport> buckets;
  long double aggregate = 0.0L;
};

/// Buckets random formulas by k, bounds P_U(E_k) by the entropy bound, takes
/// C(E_k) as the median trials to separate E_k from E_0, and sums P_U * C over
/// k >= 1. E_0 against itself is run and reported but excluded from the sum.
PipelineReport complexity_pipeline(unsigned n, std::uint64_t seed, const PipelineOptions& options = {});

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares. Requires at least two distinct x values.
LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys);

double median(std::vector<double> values);

}  // namespace satlab

#include "satlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "satlab/complexity.hpp"
#include "satlab/errors.hpp"

namespace satlab {
namespace {

// Runs fn(i) for i in [0, count) over a fixed partition of the index range.
// Each index owns its output slot, so results do not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([=, &fn] {
      for (std::size_t i = t; i < count; i += threads) fn(i);
    });
  }
}

std::uint64_t auto_max_m(std::uint64_t requested, unsigned n) {
  if (requested != 0) return requested;
  return std::uint64_t{1} << std::min(n + 6, 62u);
}

std::string default_label(std::string label, std::string fallback) {
  return label.empty() ? fallback : label;
}

}  // namespace

EnsembleSpec EnsembleSpec::oracle(double gamma, std::string label) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw PreconditionError("oracle gamma must lie in [0, 1]");
  std::string fallback = "oracle(" + std::to_string(gamma) + ")";
  return EnsembleSpec(default_label(std::move(label), std::move(fallback)), OracleMode{gamma});
}

EnsembleSpec EnsembleSpec::formula_bucket(unsigned n, std::uint64_t k, std::vector<Formula> members,
                                          std::string label) {
  if (n < 1 || n > kMaxBucketVars) {
    throw PreconditionError("formula buckets need 1 <= n <= " + std::to_string(kMaxBucketVars));
  }
  if (members.empty()) throw PreconditionError("formula bucket is empty");
  FormulaBucketMode mode{n, k, std::move(members), {}};
  mode.tables.reserve(mode.members.size());
  for (std::size_t i = 0; i < mode.members.size(); ++i) {
    if (mode.members[i].num_vars() != n) {
      throw PreconditionError("bucket member " + std::to_string(i) + " has n=" +
                              std::to_string(mode.members[i].num_vars()) + ", expected " + std::to_string(n));
    }
    TruthTable table = truth_table(mode.members[i]);
    if (table.ones_count != k) {
      throw PreconditionError("bucket member " + std::to_string(i) + " has k=" + std::to_string(table.ones_count) +
                              ", expected " + std::to_string(k));
    }
    mode.tables.push_back(std::move(table));
  }
  std::string fallback = "E_" + std::to_string(k) + "(n=" + std::to_string(n) + ")";
  return EnsembleSpec(default_label(std::move(label), std::move(fallback)), std::move(mode));
}

double EnsembleSpec::marginal() const noexcept {
  if (const auto* o = oracle_mode()) return o->gamma;
  const auto* b = bucket_mode();
  return std::ldexp(static_cast<double>(b->k), -static_cast<int>(b->n));
}

TrialRecord draw_trial(const EnsembleSpec& spec, std::uint64_t trial, Rng& rng) {
  TrialRecord rec{spec.label(), trial, std::nullopt, std::nullopt, false};
  if (const auto* o = spec.oracle_mode()) {
    rec.output = rng.bernoulli(o->gamma);
    return rec;
  }
  const auto* b = spec.bucket_mode();
  const std::size_t member = static_cast<std::size_t>(rng.uniform_below(b->members.size()));
  const std::uint64_t input = rng.uniform_below(std::uint64_t{1} << b->n);
  rec.member = member;
  rec.assignment = input;
  rec.output = b->tables[member].bits.get(input);
  return rec;
}

bool sample_output(const EnsembleSpec& spec, Rng& rng) { return draw_trial(spec, 0, rng).output; }

std::map<std::uint64_t, EnsembleSpec> build_bucket(unsigned n, std::size_t num_formulas, std::size_t size_budget,
                                                   std::uint64_t seed) {
  if (n < 1 || n > kMaxBucketVars) {
    throw PreconditionError("build_bucket needs 1 <= n <= " + std::to_string(kMaxBucketVars));
  }
  std::map<std::uint64_t, std::vector<Formula>> grouped;
  for (std::size_t i = 0; i < num_formulas; ++i) {
    Formula f = random_formula(n, size_budget, derive_seed(seed, i));
    const std::uint64_t k = truth_table(f).ones_count;
    grouped[k].push_back(std::move(f));
  }
  std::map<std::uint64_t, EnsembleSpec> out;
  for (auto& [k, members] : grouped) out.emplace(k, EnsembleSpec::formula_bucket(n, k, std::move(members)));
  return out;
}

std::string to_string(Decision d) {
  switch (d) {
    case Decision::Same: return "same";
    case Decision::Different: return "different";
    case Decision::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Decision decision_from_string(std::string_view name) {
  if (name == "same") return Decision::Same;
  if (name == "different") return Decision::Different;
  if (name == "inconclusive") return Decision::Inconclusive;
  throw FormatError("unknown decision '" + std::string(name) + "'");
}

ExperimentResult sequential_distinguish(const EnsembleSpec& a, const EnsembleSpec& b,
                                        const DistinguishConfig& config) {
  if (config.max_m < 1) throw PreconditionError("max_m must be >= 1");
  Rng rng_a(derive_seed(config.seed, 0));
  Rng rng_b(derive_seed(config.seed, 1));
  std::uint64_t ones_a = 0;
  std::uint64_t ones_b = 0;
  ExperimentResult result{Decision::Inconclusive, config.max_m, a.label(), b.label(), 0.0, 0.0, config};
  for (std::uint64_t m = 1; m <= config.max_m; ++m) {
    ones_a += sample_output(a, rng_a);
    ones_b += sample_output(b, rng_b);
    if (m < config.guard && m < config.max_m) continue;
    const double md = static_cast<double>(m);
    const double pa = static_cast<double>(ones_a) / md;
    const double pb = static_cast<double>(ones_b) / md;
    const double gap = std::abs(pa - pb);
    const bool separated =
        gap > 0.0 && m >= config.guard && gap >= std::sqrt(pa * (1 - pa) / md) + std::sqrt(pb * (1 - pb) / md);
    if (separated || m == config.max_m) {
      result.empirical_p_a = pa;
      result.empirical_p_b = pb;
      if (separated) {
        result.decision = Decision::Different;
        result.trials_used = m;
      }
      break;
    }
  }
  return result;
}

WaitingStats first_success_trials(double gamma, std::uint64_t reps, std::uint64_t max_m, std::uint64_t seed,
                                  unsigned threads) {
  if (reps < 1) throw PreconditionError("reps must be >= 1");
  if (max_m < 1) throw PreconditionError("max_m must be >= 1");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw PreconditionError("gamma must lie in [0, 1]");
  std::vector<double> waits(reps);
  std::vector<std::uint8_t> censored(reps, 0);
  parallel_for(reps, threads, [&](std::size_t r) {
    Rng rng(derive_seed(seed, r));
    for (std::uint64_t t = 1; t <= max_m; ++t) {
      if (rng.bernoulli(gamma)) {
        waits[r] = static_cast<double>(t);
        return;
      }
    }
    waits[r] = static_cast<double>(max_m);
    censored[r] = 1;
  });
  WaitingStats stats;
  stats.reps = reps;
  stats.censored = static_cast<std::uint64_t>(std::count(censored.begin(), censored.end(), 1));
  stats.mean = std::accumulate(waits.begin(), waits.end(), 0.0) / static_cast<double>(reps);
  stats.median = median(std::move(waits));
  return stats;
}

std::vector<ScalingRow> scaling_study(std::span<const unsigned> n_list, std::uint64_t reps, std::uint64_t seed,
                                      const ScalingOptions& options) {
  if (n_list.empty()) throw PreconditionError("scaling_study needs at least one n");
  if (reps < 1) throw PreconditionError("reps must be >= 1");
  std::vector<ScalingRow> rows;
  const EnsembleSpec reference = EnsembleSpec::oracle(0.0, "Bernoulli(0)");
  for (unsigned n : n_list) {
    if (n > 62) throw PreconditionError("scaling_study supports n <= 62");
    const EnsembleSpec target =
        EnsembleSpec::oracle(std::ldexp(1.0, -static_cast<int>(n)), "Bernoulli(2^-" + std::to_string(n) + ")");
    const std::uint64_t max_m = auto_max_m(options.max_m, n);
    const std::uint64_t n_seed = derive_seed(seed, n);
    std::vector<double> trials(reps);
    std::vector<std::uint8_t> undecided(reps, 0);
    parallel_for(reps, options.threads, [&](std::size_t r) {
      const auto res = sequential_distinguish(reference, target, {max_m, options.guard, derive_seed(n_seed, r)});
      trials[r] = static_cast<double>(res.trials_used);
      undecided[r] = res.decision != Decision::Different;
    });
    ScalingRow row;
    row.n = n;
    row.reps = reps;
    row.inconclusive = static_cast<std::uint64_t>(std::count(undecided.begin(), undecided.end(), 1));
    row.mean_trials = std::accumulate(trials.begin(), trials.end(), 0.0) / static_cast<double>(reps);
    row.median_trials = median(std::move(trials));
    rows.push_back(row);
  }
  return rows;
}

PipelineReport complexity_pipeline(unsigned n, std::uint64_t seed, const PipelineOptions& options) {
  if (n < 1 || n > 12) throw PreconditionError("complexity_pipeline runs at desk scale: 1 <= n <= 12");
  if (options.reps < 1) throw PreconditionError("reps must be >= 1");
  PipelineReport report;
  report.n = n;
  report.seed = seed;
  report.options = options;
  report.max_m = auto_max_m(options.max_m, n);

  const auto buckets = build_bucket(n, options.num_formulas, options.size_budget, seed);
  const auto found = buckets.find(0);
  const EnsembleSpec reference =
      found != buckets.end()
          ? found->second
          : EnsembleSpec::formula_bucket(n, 0, {parse_formula("x0 & !x0", n)}, "E_0(n=" + std::to_string(n) + ")");
  report.reference = found != buckets.end() ? "bucket" : "contradiction";

  const std::uint64_t run_master = derive_seed(seed, 0xc0ffee);
  std::vector<ComplexityBucket> terms;
  for (const auto& [k, spec] : buckets) {
    BucketReport br;
    br.k = k;
    br.members = spec.bucket_mode()->members.size();
    br.log2_p_bound = ensemble_universal_prob_bound_log2(n, k);
    std::vector<double> trials(options.reps);
    std::vector<std::uint8_t> separated(options.reps, 0);
    const std::uint64_t k_seed = derive_seed(run_master, k);
    parallel_for(options.reps, options.threads, [&](std::size_t r) {
      const auto res = sequential_distinguish(spec, reference, {report.max_m, options.guard, derive_seed(k_seed, r)});
      trials[r] = static_cast<double>(res.trials_used);
      separated[r] = res.decision == Decision::Different;
    });
    br.different = static_cast<std::uint64_t>(std::count(separated.begin(), separated.end(), 1));
    br.inconclusive = options.reps - br.different;
    br.included = k != 0;
    if (br.included) {
      br.median_trials = median(std::move(trials));
      terms.push_back({br.log2_p_bound, *br.median_trials});
    }
    report.buckets.push_back(br);
  }
  report.aggregate = terms.empty() ? 0.0L : sat_complexity_aggregate(terms);
  return report;
}

LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw PreconditionError("linear_fit needs >= 2 paired points");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw PreconditionError("linear_fit needs distinct x values");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += r * r;
  }
  fit.r_squared = syy == 0.0 ? 1.0 : 1.0 - ss_res / syy;
  return fit;
}

double median(std::vector<double> values) {
  if (values.empty()) throw PreconditionError("median of an empty set");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace satlab

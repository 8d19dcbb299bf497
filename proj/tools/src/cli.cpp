#include "satlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "satlab/satlab.hpp"

namespace satlab::cli {
namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <typename T>
std::string fmt_opt(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return fmt(*v);
  } else {
    return std::to_string(*v);
  }
}

/// Options every subcommand accepts.
struct OutputOptions {
  std::string out;
  std::string format = "csv";
};

/// Collects one run's config and result and renders them in the chosen format.
class Output {
 public:
  explicit Output(json config) : config_(std::move(config)) {}

  json& config() { return config_; }

  std::string csv(const std::string& body) const {
    return "# format_version=" + std::to_string(kFormatVersion) + " config=" + config_.dump() + "\n" + body;
  }

  std::string json_doc(json result) const {
    json doc{{"format_version", kFormatVersion}, {"config", config_}, {"result", std::move(result)}};
    return doc.dump(2) + "\n";
  }

 private:
  json config_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

BigInt parse_big(const std::string& text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw PreconditionError("index must be a positive decimal integer, got '" + text + "'");
  }
  return BigInt(text);
}

std::uint64_t parse_u64(const std::string& text, const char* what) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw PreconditionError(std::string("bad ") + what + " '" + text + "'");
  }
  return v;
}

double parse_double(const std::string& text, const char* what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw PreconditionError(std::string("bad ") + what + " '" + text + "'");
  return v;
}

/// "uniform:L", "zeros:L" or "bernoulli:GAMMA:L".
BitString generate_bits(const std::string& spec, std::uint64_t seed) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  Rng rng(seed);
  if (parts.size() == 2 && parts[0] == "uniform") {
    return sample_uniform_bits(parse_u64(parts[1], "length"), rng);
  }
  if (parts.size() == 2 && parts[0] == "zeros") return BitString(parse_u64(parts[1], "length"));
  if (parts.size() == 3 && parts[0] == "bernoulli") {
    return sample_bernoulli_bits(parse_u64(parts[2], "length"), parse_double(parts[1], "gamma"), rng);
  }
  throw PreconditionError("generator must be uniform:L, zeros:L or bernoulli:GAMMA:L, got '" + spec + "'");
}

void add_output_options(CLI::App* sub, OutputOptions& o, std::string default_format = "csv") {
  sub->preparse_callback([&o, default_format](std::size_t) { o.format = default_format; });
  sub->add_option("--out", o.out, "Write output to this file instead of stdout");
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

// Each subcommand fills `render` with a function producing the full output text.
using Renderer = std::function<std::string()>;

void add_truth_table(CLI::App& app, OutputOptions& o, Renderer& render) {
  auto* sub = app.add_subcommand("truth-table", "Print the truth-table string of a formula and its ones count");
  auto text = std::make_shared<std::string>();
  auto file = std::make_shared<std::string>();
  auto n = std::make_shared<unsigned>(0);
  auto* f_opt = sub->add_option("--formula", *text, "Formula text, e.g. \"x0 & !x1\"");
  auto* p_opt = sub->add_option("--file", *file, "Read the formula text from a file");
  f_opt->excludes(p_opt);
  sub->add_option("-n,--vars", *n, "Number of variables")->required();
  add_output_options(sub, o);
  sub->callback([&, text, file, n, f_opt, p_opt] {
    if (f_opt->count() == 0 && p_opt->count() == 0) throw CLI::RequiredError("--formula or --file");
    render = [&o, text, file, n, from_file = p_opt->count() > 0] {
      json config{{"subcommand", "truth-table"}, {"vars", *n}};
      std::string formula_text = *text;
      if (from_file) {
        formula_text = trim(read_file(*file));
        config["file"] = *file;
      }
      config["formula"] = formula_text;
      const TruthTable t = truth_table(parse_formula(formula_text, *n));
      Output out(config);
      const std::string bits = t.bits.to_string();
      if (o.format == "json") return out.json_doc({{"bits", bits}, {"k", t.ones_count}});
      return out.csv("bits,k\n" + bits + "," + std::to_string(t.ones_count) + "\n");
    };
  });
}

void add_plant(CLI::App& app, OutputOptions& o, Renderer& render) {
  auto* sub = app.add_subcommand("plant", "Build the DNF whose truth table has ones exactly at the targets");
  auto n = std::make_shared<unsigned>(0);
  auto targets = std::make_shared<std::vector<std::uint64_t>>();
  sub->add_option("-n,--vars", *n, "Number of variables")->required();
  sub->add_option("--targets", *targets, "Assignments (as integers) that should evaluate to 1")->required();
  add_output_options(sub, o);
  sub->callback([&, n, targets] {
    render = [&o, n, targets] {
      const Formula f = plant_dnf(*targets, *n);
      const std::string text = satlab::render(f);
      const TruthTable t = *n <= kMaxTruthTableVars ? truth_table(f) : TruthTable{};
      Output out({{"subcommand", "plant"}, {"vars", *n}, {"targets", *targets}});
      json result{{"formula", text}, {"nodes", f.size()}};
      if (*n <= kMaxTruthTableVars) {
        result["bits"] = t.bits.to_string();
        result["k"] = t.ones_count;
      }
      if (o.format == "json") return out.json_doc(result);
      std::string row = text + "," + std::to_string(f.size());
      if (*n <= kMaxTruthTableVars) row += "," + t.bits.to_string() + "," + std::to_string(t.ones_count);
      return out.csv(std::string(*n <= kMaxTruthTableVars ? "formula,nodes,bits,k\n" : "formula,nodes\n") + row +
                     "\n");
    };
  });
}

void add_unrank(CLI::App& app, OutputOptions& o, Renderer& render) {
  auto* sub = app.add_subcommand("unrank", "Print the I-th length-L string with exactly k ones (1-based)");
  auto length = std::make_shared<std::uint64_t>(0);
  auto ones = std::make_shared<std::uint64_t>(0);
  auto index = std::make_shared<std::string>();
  sub->add_option("-L,--length", *length, "String length")->required();
  sub->add_option("-k,--ones", *ones, "Number of ones")->required();
  sub->add_option("-I,--index", *index, "1-based index in lexicographic order")->required();
  add_output_options(sub, o);
  sub->callback([&, length, ones, index] {
    render = [&o, length, ones, index] {
      const BitString s = unrank_k_ones(KOnesIndex::make(*length, *ones, parse_big(*index)));
      Output out({{"subcommand", "unrank"}, {"length", *length}, {"ones", *ones}, {"index", *index}});
      if (o.format == "json") return out.json_doc({{"bits", s.to_string()}});
      return out.csv("bits\n" + s.to_string() + "\n");
    };
  });
}

void add_rank(CLI::App& app, OutputOptions& o, Renderer& render) {
  auto* sub = app.add_subcommand("rank", "Print the 1-based index of a bit string among strings of its weight");
  auto bits = std::make_shared<std::string>();
  sub->add_option("--bits", *bits, "String of 0 and 1 characters")->required();
  add_output_options(sub, o);
  sub->callback([&, bits] {
    render = [&o, bits] {
      const BitString s = BitString::from_string(*bits);
      const std::string index = rank_k_ones(s).str();
      const std::string count = binomial(s.size(), s.popcount()).str();
      Output out({{"subcommand", "rank"}, {"bits", *bits}});
      if (o.format == "json") return out.json_doc({{"index", index}, {"count", count}});
      return out.csv("index,count\n" + index + "," + count + "\n");
    };
  });
}

void add_distance(CLI::App& app, OutputOptions& o, Renderer& render) {
  auto* sub = app.add_subcommand("distance", "Statistical distance, minimum trials and packing count");
  auto p1 = std::make_shared<double>(0);
  auto p2 = std::make_shared<double>(0);
  auto m = std::make_shared<std::uint64_t>(0);
  sub->add_option("--p1", *p1, "First probability")->required();
  sub->add_option("--p2", *p2, "Second probability")->required();
  auto* m_opt = sub->add_option("-m,--trials", *m, "Trial count for the packing count");
  add_output_options(sub, o);
  sub->callback([&, p1, p2, m, m_opt] {
    render = [&o, p1, p2, m, has_m = m_opt->count() > 0] {
      json config{{"subcommand", "distance"}, {"p1", *p1}, {"p2", *p2}, {"m", has_m ? json(*m) : json(nullptr)}};
      const double d = bernoulli_distance(*p1, *p2);
      const auto trials = min_trials(*p1, *p2);
      std::optional<std::uint64_t> count;
      std::optional<double> normalized;
      if (has_m) {
        count = packing_count(*p1, *p2, *m);
        normalized = static_cast<double>(*count) / std::sqrt(static_cast<double>(*m));
      }
      Output out(config);
      if (o.format == "json") {
        return out.json_doc({{"p1", *p1},
                             {"p2", *p2},
                             {"m", has_m ? json(*m) : json(nullptr)},
                             {"distance_rad", d},
                             {"min_trials", trials ? json(*trials) : json(nullptr)},
                             {"packing_count", count ? json(*count) : json(nullptr)},
                             {"normalized_count", normalized ? json(*normalized) : json(nullptr)}});
      }
      return out.csv("p1,p2,m,distance_rad,min_trials,packing_count,normalized_count\n" + fmt(*p1) + "," +
                     fmt(*p2) + "," + (has_m ? std::to_string(*m) : "") + "," + fmt(d) + "," + fmt_opt(trials) +
                     "," + fmt_opt(count) + "," + fmt_opt(normalized) + "\n");
    };
  });
}

void add_figure1(CLI::App& app, OutputOptions& o, Renderer& render) {
  auto* sub = app.add_subcommand("figure1", "Entropy bound 2^n H(k/2^n) as a function of n for fixed k");
  auto k = std::make_shared<std::uint64_t>(1);
  auto n_min = std::make_shared<unsigned>(10);
  auto n_max = std::make_shared<unsigned>(30);
  sub->add_option("-k,--ones", *k, "Fixed number of ones")->capture_default_str();
  sub->add_option("--n-min", *n_min, "First n")->capture_default_str();
  sub->add_option("--n-max", *n_max, "Last n")->capture_default_str();
  add_output_options(sub, o);
  sub->callback([&, k, n_min, n_max] {
    render = [&o, k, n_min, n_max] {
      const auto curve = figure1_curve(*k, *n_min, *n_max);
      Output out({{"subcommand", "figure1"}, {"ones", *k}, {"n_min", *n_min}, {"n_max", *n_max}});
      if (o.format == "json") {
        json rows = json::array();
        for (const auto& p : curve) rows.push_back({{"n", p.n}, {"y", p.y}});
        return out.json_doc(rows);
      }
      std::ostringstream body;
      write_curve_csv(body, curve);
      return out.csv(body.str());
    };
  });
}

void add_scaling(CLI::App& app, OutputOptions& o, Renderer& render) {
  auto* sub = app.add_subcommand("scaling", "Median trials to separate Bernoulli(0) from Bernoulli(2^-n)");
  auto n_min = std::make_shared<unsigned>(4);
  auto n_max = std::make_shared<unsigned>(10);
  auto reps = std::make_shared<std::uint64_t>(1000);
  auto seed = std::make_shared<std::uint64_t>(0);
  auto opts = std::make_shared<ScalingOptions>();
  sub->add_option("--n-min", *n_min, "First n")->capture_default_str();
  sub->add_option("--n-max", *n_max, "Last n")->capture_default_str();
  sub->add_option("--reps", *reps, "Repetitions per n")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--seed", *seed, "Master seed")->capture_default_str();
  sub->add_option("--max-m", opts->max_m, "Trial cap per run (0 picks 2^(n+6))")->capture_default_str();
  sub->add_option("--guard", opts->guard, "Minimum paired draws before a decision")->capture_default_str();
  sub->add_option("--threads", opts->threads, "Worker threads (0 = all cores); does not change results");
  add_output_options(sub, o);
  sub->callback([&, n_min, n_max, reps, seed, opts] {
    render = [&o, n_min, n_max, reps, seed, opts] {
      if (*n_min > *n_max) throw PreconditionError("n-min must not exceed n-max");
      std::vector<unsigned> ns;
      for (unsigned n = *n_min; n <= *n_max; ++n) ns.push_back(n);
      const auto rows = scaling_study(ns, *reps, *seed, *opts);
      Output out({{"subcommand", "scaling"},
                  {"n_min", *n_min},
                  {"n_max", *n_max},
                  {"reps", *reps},
                  {"seed", *seed},
                  {"max_m", opts->max_m},
                  {"guard", opts->guard}});
      if (o.format == "json") {
        json result{{"rows", rows}};
        if (rows.size() >= 2) {
          std::vector<double> xs, ys;
          for (const auto& r : rows) {
            xs.push_back(r.n);
            ys.push_back(std::log2(r.median_trials));
          }
          const auto fit = linear_fit(xs, ys);
          result["log2_median_fit"] = {{"slope", fit.slope}, {"intercept", fit.intercept}, {"r_squared", fit.r_squared}};
        }
        return out.json_doc(result);
      }
      std::string body = "n,median_trials,mean_trials,reps\n";
      for (const auto& r : rows) {
        body += std::to_string(r.n) + "," + fmt(r.median_trials) + "," + fmt(r.mean_trials) + "," +
                std::to_string(r.reps) + "\n";
      }
      return out.csv(body);
    };
  });
}

void add_kestimate(CLI::App& app, OutputOptions& o, Renderer& render) {
  auto* sub = app.add_subcommand("kestimate", "Compressed-length upper bound on the complexity of a bit string");
  auto input = std::make_shared<std::string>();
  auto input_format = std::make_shared<std::string>("bytes");
  auto generate = std::make_shared<std::string>();
  auto compressor = std::make_shared<std::string>("kt");
  auto seed = std::make_shared<std::uint64_t>(0);
  auto* in_opt = sub->add_option("--input", *input, "File to estimate");
  sub->add_option("--input-format", *input_format, "bytes: raw file bits, text: '0'/'1' characters")
      ->check(CLI::IsMember({"bytes", "text"}))
      ->capture_default_str();
  auto* gen_opt = sub->add_option("--generate", *generate, "uniform:L, zeros:L or bernoulli:GAMMA:L");
  in_opt->excludes(gen_opt);
  sub->add_option("--compressor", *compressor, "Compressor name")
      ->check(CLI::IsMember(compressor_names()))
      ->capture_default_str();
  sub->add_option("--seed", *seed, "Seed for --generate")->capture_default_str();
  // JSON is the natural shape for a single estimate.
  add_output_options(sub, o, "json");
  sub->callback([&, input, input_format, generate, compressor, seed, in_opt, gen_opt] {
    if (in_opt->count() == 0 && gen_opt->count() == 0) throw CLI::RequiredError("--input or --generate");
    render = [&o, input, input_format, generate, compressor, seed, from_file = in_opt->count() > 0] {
      json config{{"subcommand", "kestimate"}, {"compressor", *compressor}};
      BitString bits;
      if (from_file) {
        const std::string data = read_file(*input);
        config["input"] = *input;
        config["input_format"] = *input_format;
        if (*input_format == "text") {
          std::string cleaned;
          for (char c : data) {
            if (!std::isspace(static_cast<unsigned char>(c))) cleaned.push_back(c);
          }
          bits = BitString::from_string(cleaned);
        } else {
          std::vector<std::uint8_t> bytes(data.begin(), data.end());
          bits = BitString::from_bytes(bytes, bytes.size() * 8);
        }
      } else {
        config["generate"] = *generate;
        config["seed"] = *seed;
        bits = generate_bits(*generate, *seed);
      }
      const KEstimate est = k_estimate(bits, *make_compressor(*compressor));
      Output out(config);
      if (o.format == "json") return out.json_doc(est);
      return out.csv("input_bits,k_hat_bits,compressor,log2_p_hat\n" + std::to_string(est.input_bits) + "," +
                     std::to_string(est.k_hat_bits) + "," + est.compressor + "," +
                     fmt(universal_probability_log2(est)) + "\n");
    };
  });
}

void add_distinguish(CLI::App& app, OutputOptions& o, Renderer& render) {
  auto* sub = app.add_subcommand("distinguish", "Sequential test between two Bernoulli oracles");
  auto ga = std::make_shared<double>(0);
  auto gb = std::make_shared<double>(0);
  auto reps = std::make_shared<std::uint64_t>(1);
  auto cfg = std::make_shared<DistinguishConfig>(DistinguishConfig{10000, kDefaultGuard, 0});
  sub->add_option("--gamma-a", *ga, "Success probability of source A")->required();
  sub->add_option("--gamma-b", *gb, "Success probability of source B")->required();
  sub->add_option("--reps", *reps, "Independent repetitions")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--max-m", cfg->max_m, "Trial cap per run")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--guard", cfg->guard, "Minimum paired draws before a decision")->capture_default_str();
  sub->add_option("--seed", cfg->seed, "Master seed")->capture_default_str();
  // Records are JSON lines by default; csv gives a flat table.
  add_output_options(sub, o, "json");
  sub->callback([&, ga, gb, reps, cfg] {
    render = [&o, ga, gb, reps, cfg] {
      const auto a = EnsembleSpec::oracle(*ga, "Bernoulli(" + fmt(*ga) + ")");
      const auto b = EnsembleSpec::oracle(*gb, "Bernoulli(" + fmt(*gb) + ")");
      ResultsFile file;
      file.master_seed = cfg->seed;
      file.config = {{"subcommand", "distinguish"}, {"gamma_a", *ga},     {"gamma_b", *gb},
                     {"reps", *reps},               {"max_m", cfg->max_m}, {"guard", cfg->guard}};
      for (std::uint64_t r = 0; r < *reps; ++r) {
        file.records.push_back(sequential_distinguish(a, b, {cfg->max_m, cfg->guard, derive_seed(cfg->seed, r)}));
      }
      if (o.format == "json") {
        std::ostringstream s;
        write_results(s, file);
        return s.str();
      }
      json config = file.config;
      config["seed"] = cfg->seed;
      std::string body = "decision,trials_used,empirical_p_a,empirical_p_b,seed\n";
      for (const auto& r : file.records) {
        body += to_string(r.decision) + "," + std::to_string(r.trials_used) + "," + fmt(r.empirical_p_a) + "," +
                fmt(r.empirical_p_b) + "," + std::to_string(r.config.seed) + "\n";
      }
      return Output(config).csv(body);
    };
  });
}

void add_pipeline(CLI::App& app, OutputOptions& o, Renderer& render) {
  auto* sub = app.add_subcommand("pipeline", "Bucket random formulas by k and aggregate bound times trials");
  auto n = std::make_shared<unsigned>(4);
  auto seed = std::make_shared<std::uint64_t>(0);
  auto opts = std::make_shared<PipelineOptions>();
  sub->add_option("-n,--vars", *n, "Number of variables (at most 12)")->capture_default_str();
  sub->add_option("--seed", *seed, "Master seed")->capture_default_str();
  sub->add_option("--formulas", opts->num_formulas, "Random formulas to generate")->capture_default_str();
  sub->add_option("--budget", opts->size_budget, "Node budget per formula")->capture_default_str();
  sub->add_option("--reps", opts->reps, "Runs per bucket")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--max-m", opts->max_m, "Trial cap per run (0 picks 2^(n+6))")->capture_default_str();
  sub->add_option("--guard", opts->guard, "Minimum paired draws before a decision")->capture_default_str();
  sub->add_option("--threads", opts->threads, "Worker threads (0 = all cores); does not change results");
  add_output_options(sub, o, "json");
  sub->callback([&, n, seed, opts] {
    render = [&o, n, seed, opts] {
      const PipelineReport report = complexity_pipeline(*n, *seed, *opts);
      Output out({{"subcommand", "pipeline"},
                  {"vars", *n},
                  {"seed", *seed},
                  {"formulas", opts->num_formulas},
                  {"budget", opts->size_budget},
                  {"reps", opts->reps},
                  {"max_m", opts->max_m},
                  {"guard", opts->guard}});
      if (o.format == "json") return out.json_doc(report);
      std::string body = "k,members,log2_p_bound,median_trials,different,inconclusive,included\n";
      for (const auto& b : report.buckets) {
        body += std::to_string(b.k) + "," + std::to_string(b.members) + "," + fmt(b.log2_p_bound) + "," +
                fmt_opt(b.median_trials) + "," + std::to_string(b.different) + "," + std::to_string(b.inconclusive) +
                "," + (b.included ? "1" : "0") + "\n";
      }
      body += "# aggregate=" + fmt(static_cast<double>(report.aggregate)) + " reference=" + report.reference + "\n";
      return out.csv(body);
    };
  });
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"satlab: truth tables, k-ones ranking, complexity bounds and distinguishability experiments",
               "satlab"};
  app.require_subcommand(1);
  OutputOptions output;
  Renderer render;
  add_truth_table(app, output, render);
  add_plant(app, output, render);
  add_unrank(app, output, render);
  add_rank(app, output, render);
  add_distance(app, output, render);
  add_figure1(app, output, render);
  add_scaling(app, output, render);
  add_kestimate(app, output, render);
  add_distinguish(app, output, render);
  add_pipeline(app, output, render);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const std::string text = render();
    if (output.out.empty()) {
      out << text;
    } else {
      std::ofstream file(output.out, std::ios::binary | std::ios::trunc);
      if (!file) throw PreconditionError("cannot open " + output.out + " for writing");
      file << text;
      if (!file) throw PreconditionError("write to " + output.out + " failed");
    }
    return kOk;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const ContractViolation& e) {
    err << "contract violation: " << e.what() << "\n";
    return kContract;
  } catch (const ConvergenceError& e) {
    err << "contract violation: " << e.what() << "\n";
    return kContract;
  }
}

}  // namespace satlab::cli

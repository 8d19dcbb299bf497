#include "satlab/results_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "satlab/errors.hpp"

namespace satlab {

using nlohmann::json;

void to_json(json& j, const KEstimate& k) {
  j = json{{"input_bits", k.input_bits},
           {"k_hat_bits", k.k_hat_bits},
           {"compressor", k.compressor},
           {"log2_p_hat", universal_probability_log2(k)}};
}

void to_json(json& j, const ExperimentResult& r) {
  j = json{{"decision", to_string(r.decision)},
           {"trials_used", r.trials_used},
           {"labels", {{"a", r.label_a}, {"b", r.label_b}}},
           {"empirical_p", {{"a", r.empirical_p_a}, {"b", r.empirical_p_b}}},
           {"seed", r.config.seed},
           {"config", {{"max_m", r.config.max_m}, {"guard", r.config.guard}}}};
}

void from_json(const json& j, ExperimentResult& r) {
  r.decision = decision_from_string(j.at("decision").get<std::string>());
  r.trials_used = j.at("trials_used").get<std::uint64_t>();
  r.label_a = j.at("labels").at("a").get<std::string>();
  r.label_b = j.at("labels").at("b").get<std::string>();
  r.empirical_p_a = j.at("empirical_p").at("a").get<double>();
  r.empirical_p_b = j.at("empirical_p").at("b").get<double>();
  r.config.seed = j.at("seed").get<std::uint64_t>();
  r.config.max_m = j.at("config").at("max_m").get<std::uint64_t>();
  r.config.guard = j.at("config").at("guard").get<std::uint64_t>();
  if (r.trials_used > r.config.max_m) throw FormatError("trials_used exceeds max_m");
}

void to_json(json& j, const ScalingRow& row) {
  j = json{{"n", row.n},
           {"median_trials", row.median_trials},
           {"mean_trials", row.mean_trials},
           {"reps", row.reps},
           {"inconclusive", row.inconclusive}};
}

void to_json(json& j, const BucketReport& b) {
  j = json{{"k", b.k},
           {"members", b.members},
           {"log2_p_bound", b.log2_p_bound},
           {"median_trials", b.median_trials ? json(*b.median_trials) : json(nullptr)},
           {"different", b.different},
           {"inconclusive", b.inconclusive},
           {"included", b.included}};
}

void to_json(json& j, const PipelineReport& r) {
  j = json{{"n", r.n},
           {"seed", r.seed},
           {"num_formulas", r.options.num_formulas},
           {"size_budget", r.options.size_budget},
           {"reps", r.options.reps},
           {"max_m", r.max_m},
           {"guard", r.options.guard},
           {"reference", r.reference},
           {"buckets", r.buckets},
           {"aggregate", static_cast<double>(r.aggregate)}};
}

void write_results(std::ostream& out, const ResultsFile& file) {
  out << json{{"format_version", kFormatVersion}, {"config", file.config}, {"master_seed", file.master_seed}}.dump()
      << '\n';
  for (const auto& r : file.records) out << json(r).dump() << '\n';
}

ResultsFile read_results(std::istream& in) {
  ResultsFile file;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      if (!have_header) {
        const int version = j.at("format_version").get<int>();
        if (version != kFormatVersion) {
          throw FormatError("unsupported format_version " + std::to_string(version) + " (expected " +
                            std::to_string(kFormatVersion) + ")");
        }
        file.config = j.at("config");
        file.master_seed = j.at("master_seed").get<std::uint64_t>();
        have_header = true;
      } else {
        file.records.push_back(j.get<ExperimentResult>());
      }
    } catch (const json::exception& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const FormatError& e) {
      throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_header) throw FormatError("missing header line");
  return file;
}

void persist_results(const std::filesystem::path& path, const ResultsFile& file) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  write_results(out, file);
  if (!out) throw FormatError("write to " + path.string() + " failed");
}

ResultsFile load_results(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_results(in);
}

}  // namespace satlab

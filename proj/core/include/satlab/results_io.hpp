#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include <nlohmann/json.hpp>

#include "satlab/complexity.hpp"
#include "satlab/experiments.hpp"

namespace satlab {

inline constexpr int kFormatVersion = 1;

void to_json(nlohmann::json& j, const KEstimate& k);
void to_json(nlohmann::json& j, const ExperimentResult& r);
void from_json(const nlohmann::json& j, ExperimentResult& r);
void to_json(nlohmann::json& j, const ScalingRow& row);
void to_json(nlohmann::json& j, const BucketReport& b);
void to_json(nlohmann::json& j, const PipelineReport& r);

/// JSON-lines results: a header {format_version, config, master_seed} then
/// one ExperimentResult object per line.
struct ResultsFile {
  nlohmann::json config = nlohmann::json::object();
  std::uint64_t master_seed = 0;
  std::vector<ExperimentResult> records;

  friend bool operator==(const ResultsFile&, const ResultsFile&) = default;
};

void write_results(std::ostream& out, const ResultsFile& file);
/// Throws FormatError naming the 1-based line on malformed content or an
/// unsupported format_version.
ResultsFile read_results(std::istream& in);

void persist_results(const std::filesystem::path& path, const ResultsFile& file);
ResultsFile load_results(const std::filesystem::path& path);

}  // namespace satlab

#pragma once

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lighttail/analysis.hpp"
#include "lighttail/core.hpp"
#include "lighttail/policies.hpp"
#include "lighttail/simulator.hpp"

namespace lighttail {

/// Raised for any failure to create, write or flush an output file.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 17 significant digits, so every finite double round-trips exactly.
/// Non-finite values print as nan, inf, -inf.
std::string format_number(double value);

/// Quotes a CSV field only when it contains a comma, quote or newline.
std::string csv_field(std::string_view text);

/// Line-oriented CSV file. Every call checks the stream and throws IoError.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  void row(const std::vector<std::string>& fields);
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_;
};

void write_text_file(const std::filesystem::path& path, const std::string& content);
void ensure_directory(const std::filesystem::path& dir);

/// Descriptive columns shared by every row of one run.
struct RunMeta {
  std::string policy;
  std::string design;
  double kappa_or_eta;
  int arms;
  Count horizon;
  double sigma0;

  static RunMeta from(const RunConfig& config);
};

std::vector<std::string> results_header();
std::vector<std::string> results_row(Count path, const RunMeta& meta, const EpisodeResult& r);

nlohmann::json summary_json(const RunMeta& meta, const Summary& summary, std::uint64_t seed);

std::vector<std::string> tail_header();
std::vector<std::string> tail_fields(const TailReport& report, TailFunctional functional);

void write_histogram_csv(const std::filesystem::path& path, const Histogram& hist);

}  // namespace lighttail

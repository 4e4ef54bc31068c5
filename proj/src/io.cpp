#include "lighttail/io.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

namespace lighttail {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string() +
                  (ec ? ": " + ec.message() : ""));
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), columns_(header.size()) {
  if (!out_) throw IoError("cannot open " + path.string() + " for writing");
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) {
    throw std::logic_error("CSV row has " + std::to_string(fields.size()) + " fields, expected " +
                           std::to_string(columns_));
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << csv_field(fields[i]);
  }
  out_ << '\n';
  if (!out_) throw IoError("failed writing " + path_.string());
}

void CsvWriter::close() {
  out_.close();
  if (!out_) throw IoError("failed closing " + path_.string());
}

RunMeta RunMeta::from(const RunConfig& config) {
  RunMeta meta;
  meta.policy = config.policy.label();
  meta.design = config.policy.uses_bonus() ? std::string(to_string(config.policy.bonus.design))
                                           : std::string("none");
  meta.kappa_or_eta = config.policy.tuning();
  std::visit(
      [&](const auto& inst) {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, BanditInstance>) {
          meta.arms = inst.arms();
        } else {
          meta.arms = inst.num_actions();
        }
        meta.horizon = inst.horizon();
        meta.sigma0 = inst.noise_scale();
      },
      config.instance);
  return meta;
}

std::vector<std::string> results_header() {
  return {"path_id",          "policy",         "design",           "kappa_or_eta",
          "K",                "T",              "sigma0",           "cumulative_reward",
          "pseudo_regret",    "empirical_regret", "pulls"};
}

std::vector<std::string> results_row(Count path, const RunMeta& meta, const EpisodeResult& r) {
  std::string pulls;
  for (std::size_t i = 0; i < r.pulls.size(); ++i) {
    if (i) pulls += ';';
    pulls += std::to_string(r.pulls[i]);
  }
  return {std::to_string(path),
          meta.policy,
          meta.design,
          format_number(meta.kappa_or_eta),
          std::to_string(meta.arms),
          std::to_string(meta.horizon),
          format_number(meta.sigma0),
          format_number(r.cumulative_reward),
          format_number(r.pseudo_regret),
          format_number(r.empirical_regret),
          pulls};
}

namespace {

nlohmann::json stats_json(const SampleStats& s) {
  nlohmann::json q = nlohmann::json::object();
  for (std::size_t i = 0; i < kSummaryQuantiles.size(); ++i) {
    q[format_number(kSummaryQuantiles[i])] = s.quantiles[i];
  }
  return {{"mean", s.mean}, {"std", s.std}, {"quantiles", q}};
}

// JSON has no NaN; a missing tuning parameter becomes null.
nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json summary_json(const RunMeta& meta, const Summary& summary, std::uint64_t seed) {
  const auto reward = stats_json(summary.reward);
  return {{"policy", meta.policy},
          {"design", meta.design},
          {"kappa", number_or_null(meta.kappa_or_eta)},
          {"K", meta.arms},
          {"T", meta.horizon},
          {"sigma0", meta.sigma0},
          {"seed", seed},
          {"paths", summary.paths},
          {"mean_reward", summary.reward.mean},
          {"std", summary.reward.std},
          {"quantiles", reward["quantiles"]},
          {"pseudo_regret", stats_json(summary.pseudo_regret)},
          {"empirical_regret", stats_json(summary.empirical_regret)},
          {"mean_noise", summary.mean_noise}};
}

std::vector<std::string> tail_header() {
  return {"functional", "threshold",  "empirical_prob", "ci_low",
          "ci_high",    "bound_name", "bound_value",    "bound_clamped"};
}

std::vector<std::string> tail_fields(const TailReport& report, TailFunctional functional) {
  return {std::string(to_string(functional)),
          format_number(report.threshold),
          format_number(report.empirical_prob),
          format_number(report.ci_low),
          format_number(report.ci_high),
          std::string(to_string(report.bound_name)),
          format_number(report.bound_value),
          format_number(report.bound_clamped)};
}

void write_histogram_csv(const std::filesystem::path& path, const Histogram& hist) {
  CsvWriter csv(path, {"bin", "low", "high", "count"});
  const double width = hist.bin_width();
  const auto bins = hist.counts.size();
  for (std::size_t i = 0; i < bins; ++i) {
    const double lo = hist.low + width * static_cast<double>(i);
    // The last edge is the sample maximum itself, not an accumulated sum.
    const double hi = i + 1 == bins ? hist.high : hist.low + width * static_cast<double>(i + 1);
    csv.row({std::to_string(i), format_number(lo), format_number(hi),
             std::to_string(hist.counts[i])});
  }
  csv.close();
}

}  // namespace lighttail

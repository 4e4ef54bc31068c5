#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lighttail/analysis.hpp"
#include "lighttail/bonus.hpp"
#include "lighttail/policies.hpp"
#include "lighttail/simulator.hpp"

namespace lighttail {

/// A config problem tied to a field path ("policy.bonus.eta") or, for syntax
/// errors, a line and column of the document.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}
  ConfigError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  const std::string& field() const noexcept { return field_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string field_;
  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

/// Everything `simulate` needs: the run itself plus reporting options.
struct ExperimentConfig {
  RunConfig run;
  std::vector<double> thresholds;
  TailFunctional tail_functional = TailFunctional::Pseudo;
  int histogram_bins = 50;
};

// Strict JSON schema; unknown keys are errors.
//
// {
//   "instance": {"means": [0.2, 0.8], "sigma0": 1.0, "T": 500}
//            | {"theta": [...], "d": 4, "K_actions": 16, "sigma0": 1.0, "T": 1000,
//               "action_set": "fixed" | "per_round", "actions": [[...], ...]},
//   "policy": {"kind": "SE|UCB|TS|ETC|LinUCB|Random",
//              "bonus": {"design": "...", "sigma": s, "eta": e}
//                     | {"design": "...", "kappa": k}
//                     | {"design": "OptimalK", "sigma": s, "eta1": a, "eta2": b},
//              "kappa": k, "m": budget, "reinvert_every": n},
//   "replications": R, "seed": u64, "record_trace": bool,
//   "thresholds": [...], "tail_functional": "pseudo" | "empirical",
//   "histogram_bins": 50
// }

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

BonusSpec bonus_from_json(const nlohmann::json& node, const std::string& where);
nlohmann::json to_json(const BonusSpec& spec);
PolicySpec policy_from_json(const nlohmann::json& node, const std::string& where);
nlohmann::json to_json(const PolicySpec& spec);

}  // namespace lighttail

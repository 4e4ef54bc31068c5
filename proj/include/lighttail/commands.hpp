#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lighttail {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;  // bad config, arguments or parameters
inline constexpr int kExitIo = 3;     // output could not be written

/// Name of the marker left in the output directory when writing failed
/// part-way. Files next to it must not be trusted.
inline constexpr const char* kIncompleteMarker = "INCOMPLETE";

struct CommonOptions {
  std::filesystem::path out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;  // falls back to BANDIT_WORKERS, then hardware
  std::optional<std::int64_t> replications;
};

int cmd_simulate(const std::filesystem::path& config_path, const CommonOptions& options,
                 std::ostream& log);

/// target: table1, table2, fig1 or fig2.
int cmd_reproduce(const std::string& target, const CommonOptions& options, std::ostream& log);

struct BoundsOptions {
  std::string bound;  // ThmK, ThmKOpt, ThmAnyTime, ThmLinear, NeatForm
  int arms = 2;
  std::int64_t horizon = 100;
  double sigma = 1.0;
  double eta = 1.0;
  std::optional<double> eta1;
  std::optional<double> eta2;
  int dim = 1;
  std::string variant = "ThmK";  // NeatForm only: ThmK or ThmKOpt
  std::vector<double> xs;
};

/// Writes x, raw, clamped, y rows sorted by ascending x to `out`
/// (y is empty except for NeatForm).
int cmd_bounds(const BoundsOptions& options, std::ostream& out, std::ostream& log);

int cmd_fragility(const CommonOptions& options, std::ostream& log);

/// Parses "start:stop:count" into count evenly spaced points, endpoints
/// included. Throws std::invalid_argument on malformed input.
std::vector<double> parse_grid(const std::string& text);

}  // namespace lighttail

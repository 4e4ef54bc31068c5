#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lighttail/commands.hpp"
#include "lighttail/io.hpp"

namespace {

void add_common(CLI::App& cmd, lighttail::CommonOptions& o) {
  cmd.add_option("--out", o.out_dir, "Output directory")->capture_default_str();
  cmd.add_option("--seed", o.seed, "Master seed (default 20240)");
  cmd.add_option("--workers", o.workers, "Worker threads (default: BANDIT_WORKERS or all cores)")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--replications", o.replications, "Override the number of paths");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo lab for regret tails of stochastic bandit policies"};
  app.require_subcommand(1);

  lighttail::CommonOptions common;
  std::string config_path;
  auto* simulate = app.add_subcommand("simulate", "Run one configured experiment");
  simulate->add_option("--config", config_path, "JSON experiment config")->required();
  add_common(*simulate, common);

  std::string target;
  auto* reproduce = app.add_subcommand("reproduce", "Regenerate the table or figure data");
  reproduce->add_option("target", target, "table1, table2, fig1 or fig2")->required();
  add_common(*reproduce, common);

  lighttail::BoundsOptions bounds;
  std::string grid;
  std::optional<std::string> bounds_out;
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate a closed-form tail bound on a grid");
  bounds_cmd->add_option("--bound", bounds.bound, "ThmK, ThmKOpt, ThmAnyTime, ThmLinear, NeatForm")
      ->required();
  bounds_cmd->add_option("--K", bounds.arms, "Number of arms")->capture_default_str();
  bounds_cmd->add_option("--T", bounds.horizon, "Horizon")->capture_default_str();
  bounds_cmd->add_option("--sigma", bounds.sigma, "Noise scale")->capture_default_str();
  bounds_cmd->add_option("--eta", bounds.eta, "Radius weight")->capture_default_str();
  bounds_cmd->add_option("--eta1", bounds.eta1, "ThmKOpt first weight (default eta)");
  bounds_cmd->add_option("--eta2", bounds.eta2, "ThmKOpt second weight (default eta1)");
  bounds_cmd->add_option("--d", bounds.dim, "Dimension (ThmLinear)")->capture_default_str();
  bounds_cmd->add_option("--variant", bounds.variant, "NeatForm variant: ThmK or ThmKOpt")
      ->capture_default_str();
  auto* x_opt = bounds_cmd->add_option("--x", bounds.xs, "Thresholds")->delimiter(',');
  bounds_cmd->add_option("--x-grid", grid, "Evenly spaced thresholds start:stop:count")
      ->excludes(x_opt);
  bounds_cmd->add_option("--out", bounds_out, "Directory for bounds.csv (default: stdout)");

  auto* fragility = app.add_subcommand("fragility", "Standard versus new radius, misspecified noise");
  add_common(*fragility, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? lighttail::kExitOk : lighttail::kExitUsage;
  }

  if (*simulate) return lighttail::cmd_simulate(config_path, common, std::cerr);
  if (*reproduce) return lighttail::cmd_reproduce(target, common, std::cerr);
  if (*fragility) return lighttail::cmd_fragility(common, std::cerr);

  if (!grid.empty()) {
    try {
      bounds.xs = lighttail::parse_grid(grid);
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << '\n';
      return lighttail::kExitUsage;
    }
  }
  if (!bounds_out) return lighttail::cmd_bounds(bounds, std::cout, std::cerr);
  try {
    lighttail::ensure_directory(*bounds_out);
  } catch (const lighttail::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return lighttail::kExitIo;
  }
  const auto path = std::filesystem::path(*bounds_out) / "bounds.csv";
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    std::cerr << "I/O error: cannot open " << path.string() << '\n';
    return lighttail::kExitIo;
  }
  const int rc = lighttail::cmd_bounds(bounds, file, std::cerr);
  if (rc != lighttail::kExitOk) {
    file.close();
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
  return rc;
}

#include "lighttail/commands.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "lighttail/config.hpp"
#include "lighttail/experiments.hpp"
#include "lighttail/io.hpp"

namespace lighttail {
namespace {

namespace fs = std::filesystem;

int workers_for(const CommonOptions& options) {
  return options.workers ? std::max(1, *options.workers) : default_workers();
}

Count replications_for(const CommonOptions& options, Count fallback) {
  if (!options.replications) return fallback;
  if (*options.replications < 1) throw std::invalid_argument("--replications must be at least 1");
  return *options.replications;
}

void mark_incomplete(const fs::path& dir, const std::string& reason) {
  // Best effort: the directory may be the very thing that failed.
  std::ofstream marker(dir / kIncompleteMarker, std::ios::trunc);
  if (marker) marker << reason << '\n';
}

// Runs `body`, mapping failures onto exit codes. Output written before an
// I/O failure is flagged by the INCOMPLETE marker.
template <class Body>
int guarded(const fs::path& out_dir, std::ostream& log, Body&& body) {
  try {
    body();
    return kExitOk;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    log << "I/O error: " << e.what() << '\n';
    mark_incomplete(out_dir, e.what());
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    log << "I/O error: " << e.what() << '\n';
    mark_incomplete(out_dir, e.what());
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

void prepare_output(const fs::path& dir) {
  ensure_directory(dir);
  std::error_code ec;
  fs::remove(dir / kIncompleteMarker, ec);
}

std::string kappa_tag(double kappa) {
  std::ostringstream s;
  s << kappa;
  return s.str();
}

void write_table_csv(const fs::path& path, const std::vector<GridCell>& cells) {
  std::vector<std::string> header = {"policy"};
  for (double k : kGridKappas) header.push_back("kappa=" + kappa_tag(k));
  CsvWriter csv(path, header);
  for (const auto& label : kGridPolicies) {
    std::vector<std::string> row = {label};
    for (double k : kGridKappas) {
      const auto it = std::find_if(cells.begin(), cells.end(), [&](const GridCell& c) {
        return c.policy == label && c.kappa == k;
      });
      row.push_back(format_number(it->summary.reward.mean));
    }
    csv.row(row);
  }
  csv.close();
}

void write_cells_csv(const fs::path& path, const std::vector<GridCell>& cells) {
  std::vector<std::string> header = {"policy", "kappa", "paths", "mean_reward", "std_reward",
                                     "stderr_reward", "mean_pseudo_regret"};
  for (double q : kSummaryQuantiles) header.push_back("reward_q" + format_number(q));
  CsvWriter csv(path, header);
  for (const auto& c : cells) {
    const auto& r = c.summary.reward;
    std::vector<std::string> row = {
        c.policy,
        format_number(c.kappa),
        std::to_string(c.summary.paths),
        format_number(r.mean),
        format_number(r.std),
        format_number(r.std / std::sqrt(static_cast<double>(c.summary.paths))),
        format_number(c.summary.pseudo_regret.mean)};
    for (double q : r.quantiles) row.push_back(format_number(q));
    csv.row(row);
  }
  csv.close();
}

void write_histograms(const fs::path& dir, const std::vector<GridCell>& cells, int bins) {
  const fs::path hist_dir = dir / "histograms";
  ensure_directory(hist_dir);
  CsvWriter index(dir / "histograms.csv",
                  {"policy", "kappa", "file", "paths", "low", "high", "bins"});
  for (const auto& c : cells) {
    const Histogram h = histogram(c.rewards, bins);
    const std::string name = c.policy + "_kappa" + kappa_tag(c.kappa) + ".csv";
    write_histogram_csv(hist_dir / name, h);
    index.row({c.policy, format_number(c.kappa), "histograms/" + name,
               std::to_string(c.rewards.size()), format_number(h.low), format_number(h.high),
               std::to_string(bins)});
  }
  index.close();
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, ':');) parts.push_back(part);
  if (parts.size() != 3) throw std::invalid_argument("grid must look like start:stop:count");
  double start = 0.0;
  double stop = 0.0;
  long count = 0;
  try {
    std::size_t used = 0;
    start = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("trailing text");
    stop = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("trailing text");
    count = std::stol(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("trailing text");
  } catch (const std::exception&) {
    throw std::invalid_argument("grid '" + text + "' is not start:stop:count");
  }
  if (count < 1 || count > 10'000'000) throw std::invalid_argument("grid count out of range");
  if (!std::isfinite(start) || !std::isfinite(stop)) {
    throw std::invalid_argument("grid endpoints must be finite");
  }
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    xs.push_back(count == 1 ? start
                            : start + (stop - start) * static_cast<double>(i) /
                                          static_cast<double>(count - 1));
  }
  return xs;
}

int cmd_simulate(const fs::path& config_path, const CommonOptions& options, std::ostream& log) {
  return guarded(options.out_dir, log, [&] {
    ExperimentConfig cfg = load_config(config_path);
    if (options.seed) cfg.run.master_seed = *options.seed;
    cfg.run.replications = replications_for(options, cfg.run.replications);
    prepare_output(options.out_dir);

    const RunMeta meta = RunMeta::from(cfg.run);
    CsvWriter results(options.out_dir / "results.csv", results_header());
    std::optional<CsvWriter> traces;
    if (cfg.run.record_trace) traces.emplace(options.out_dir / "traces.csv",
                                             std::vector<std::string>{"path_id", "arms"});
    std::vector<EpisodeResult> all;
    all.reserve(static_cast<std::size_t>(cfg.run.replications));
    run_monte_carlo(cfg.run, workers_for(options), [&](Count path, const EpisodeResult& r) {
      results.row(results_row(path, meta, r));
      if (traces) {
        std::string seq;
        for (std::size_t i = 0; i < r.arm_sequence.size(); ++i) {
          if (i) seq += ';';
          seq += std::to_string(r.arm_sequence[i]);
        }
        traces->row({std::to_string(path), seq});
      }
      EpisodeResult slim = r;
      slim.arm_sequence.clear();
      all.push_back(std::move(slim));
    });
    results.close();
    if (traces) traces->close();

    const Summary summary = summarize(all);
    write_text_file(options.out_dir / "summary.json",
                    summary_json(meta, summary, cfg.run.master_seed).dump(2) + "\n");

    const auto rewards = [&] {
      std::vector<double> v;
      v.reserve(all.size());
      for (const auto& r : all) v.push_back(r.cumulative_reward);
      return v;
    }();
    write_histogram_csv(options.out_dir / "histogram.csv", histogram(rewards, cfg.histogram_bins));

    if (!cfg.thresholds.empty()) {
      auto tail = empirical_tail(all, cfg.tail_functional, cfg.thresholds);
      if (const auto bound = theorem_bound_for(cfg.run.policy, cfg.run.instance); bound.evaluate) {
        attach_bound(tail, bound.name, bound.evaluate);
      }
      CsvWriter csv(options.out_dir / "tail.csv", tail_header());
      for (const auto& report : tail) csv.row(tail_fields(report, cfg.tail_functional));
      csv.close();
    }
    log << "simulate: " << meta.policy << ", " << all.size() << " paths, mean reward "
        << format_number(summary.reward.mean) << '\n';
  });
}

int cmd_reproduce(const std::string& target, const CommonOptions& options, std::ostream& log) {
  return guarded(options.out_dir, log, [&] {
    int table = 0;
    bool figure = false;
    if (target == "table1" || target == "fig1") table = 1;
    if (target == "table2" || target == "fig2") table = 2;
    if (table == 0) {
      throw std::invalid_argument("unknown reproduce target '" + target +
                                  "' (expected table1, table2, fig1 or fig2)");
    }
    figure = target.starts_with("fig");
    const Count replications = replications_for(options, kReproReplications);
    const std::uint64_t seed = options.seed.value_or(kDefaultSeed);
    prepare_output(options.out_dir);

    const auto cells =
        run_grid(table_instance(table), replications, seed, workers_for(options));
    write_cells_csv(options.out_dir / "cells.csv", cells);
    if (figure) {
      write_histograms(options.out_dir, cells, 50);
    } else {
      write_table_csv(options.out_dir / (target + ".csv"), cells);
    }
    log << "reproduce " << target << ": " << cells.size() << " cells x " << replications
        << " paths written to " << options.out_dir.string() << '\n';
  });
}

int cmd_bounds(const BoundsOptions& o, std::ostream& out, std::ostream& log) {
  try {
    if (o.xs.empty()) throw std::invalid_argument("no thresholds given (use --x or --x-grid)");
    for (double x : o.xs) {
      if (!std::isfinite(x)) throw std::invalid_argument("thresholds must be finite");
    }
    if (!(o.eta > 0.0)) throw std::invalid_argument("eta must be positive");
    const double eta1 = o.eta1.value_or(o.eta);
    const double eta2 = o.eta2.value_or(eta1);
    if (!(eta1 > 0.0) || eta2 < 0.0) throw std::invalid_argument("eta1 must be positive, eta2 >= 0");

    std::function<std::pair<double, double>(double)> eval;  // (raw, y)
    const double nan = std::nan("");
    if (o.bound == "ThmK") {
      eval = [&](double x) { return std::pair{bound_k_armed(x, o.arms, o.horizon, o.sigma, o.eta), nan}; };
    } else if (o.bound == "ThmKOpt") {
      eval = [&](double x) {
        return std::pair{bound_k_armed_optimal(x, o.arms, o.horizon, o.sigma, eta1, eta2), nan};
      };
    } else if (o.bound == "ThmAnyTime") {
      eval = [&](double x) { return std::pair{bound_anytime(x, o.arms, o.horizon, o.sigma, o.eta), nan}; };
    } else if (o.bound == "ThmLinear") {
      eval = [&](double x) { return std::pair{bound_linear(x, o.dim, o.horizon, o.sigma, o.eta), nan}; };
    } else if (o.bound == "NeatForm") {
      NeatVariant variant;
      if (o.variant == "ThmK") {
        variant = NeatVariant::ThmK;
      } else if (o.variant == "ThmKOpt") {
        variant = NeatVariant::ThmKOpt;
      } else {
        throw std::invalid_argument("unknown NeatForm variant '" + o.variant + "'");
      }
      eval = [&, variant](double x) {
        const auto b = neat_form_bound(x, o.arms, o.horizon, o.sigma, o.eta, variant);
        return std::pair{b.value, b.y};
      };
    } else {
      throw std::invalid_argument("unknown bound '" + o.bound +
                                  "' (expected ThmK, ThmKOpt, ThmAnyTime, ThmLinear, NeatForm)");
    }

    std::vector<double> xs = o.xs;
    std::sort(xs.begin(), xs.end());
    // Evaluate everything first so a precondition failure leaves no partial output.
    std::ostringstream buffer;
    buffer << "x,raw,clamped,y\n";
    for (double x : xs) {
      const auto [raw, y] = eval(x);
      buffer << format_number(x) << ',' << format_number(raw) << ','
             << format_number(clamp_probability(raw)) << ','
             << (std::isnan(y) ? std::string() : format_number(y)) << '\n';
    }
    out << buffer.str();
    out.flush();
    if (!out) throw IoError("failed writing bound table");
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    log << "I/O error: " << e.what() << '\n';
    return kExitIo;
  }
}

int cmd_fragility(const CommonOptions& options, std::ostream& log) {
  return guarded(options.out_dir, log, [&] {
    FragilityConfig config;
    config.replications = replications_for(options, config.replications);
    config.seed = options.seed.value_or(kDefaultSeed);
    prepare_output(options.out_dir);

    const auto cells = run_fragility(config, workers_for(options));
    std::vector<std::string> header = {"part", "policy", "kappa", "sigma0", "paths"};
    for (auto& h : tail_header()) header.push_back(h);
    CsvWriter csv(options.out_dir / "tail.csv", header);
    for (const auto& c : cells) {
      for (const auto& report : c.tail) {
        std::vector<std::string> row = {c.part, c.policy, format_number(c.kappa),
                                        format_number(c.sigma0),
                                        std::to_string(c.pseudo_regret.size())};
        for (auto& f : tail_fields(report, TailFunctional::Pseudo)) row.push_back(std::move(f));
        csv.row(row);
      }
    }
    csv.close();
    log << "fragility: " << cells.size() << " cells written to " << options.out_dir.string()
        << '\n';
  });
}

}  // namespace lighttail

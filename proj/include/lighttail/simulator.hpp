#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "lighttail/core.hpp"
#include "lighttail/policies.hpp"

namespace lighttail {

using Instance = std::variant<BanditInstance, LinearInstance>;

struct RunConfig {
  Instance instance;
  PolicySpec policy;
  Count replications = 1;
  std::uint64_t master_seed = 20240;
  bool record_trace = false;

  void validate() const;
};

/// Path identity: all randomness of a path derives from this pair.
struct PathSeed {
  std::uint64_t master_seed;
  Count path;
};

EpisodeResult run_episode(const BanditInstance& instance, const PolicySpec& policy,
                          PathSeed seed, bool record_trace = false);
EpisodeResult run_episode(const LinearInstance& instance, const PolicySpec& policy,
                          PathSeed seed, bool record_trace = false);
EpisodeResult run_episode(const Instance& instance, const PolicySpec& policy, PathSeed seed,
                          bool record_trace = false);

/// Receives results strictly in path order 0, 1, ..., R-1.
using ResultSink = std::function<void(Count path, const EpisodeResult& result)>;

/// Worker count from BANDIT_WORKERS, else hardware concurrency (at least 1).
int default_workers();

/// Runs paths 0..R-1 on `workers` threads and hands them to `sink` in path
/// order. Output is independent of the worker count. Paths are processed in
/// blocks of a few per worker, so memory stays O(workers). An exception from
/// a path or from the sink stops the run and is rethrown.
void run_monte_carlo(const RunConfig& config, int workers, const ResultSink& sink);

std::vector<EpisodeResult> run_monte_carlo(const RunConfig& config, int workers);

}  // namespace lighttail

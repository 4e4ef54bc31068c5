#include "lighttail/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

namespace lighttail {
namespace {

using nlohmann::json;

std::string join(const std::string& where, std::string_view key) {
  return where.empty() ? std::string(key) : where + "." + std::string(key);
}

void reject_unknown(const json& node, const std::string& where,
                    std::initializer_list<std::string_view> allowed) {
  for (const auto& item : node.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      throw ConfigError(join(where, item.key()), "unknown key");
    }
  }
}

const json& require(const json& node, const std::string& where, std::string_view key) {
  const auto it = node.find(key);
  if (it == node.end()) throw ConfigError(join(where, key), "required field missing");
  return *it;
}

const json& require_object(const json& node, const std::string& where) {
  if (!node.is_object()) throw ConfigError(where, "expected an object");
  return node;
}

double as_number(const json& node, const std::string& where) {
  if (!node.is_number()) throw ConfigError(where, "expected a number");
  const double v = node.get<double>();
  if (!std::isfinite(v)) throw ConfigError(where, "expected a finite number");
  return v;
}

double as_positive(const json& node, const std::string& where) {
  const double v = as_number(node, where);
  if (!(v > 0.0)) throw ConfigError(where, "must be positive");
  return v;
}

std::int64_t as_integer(const json& node, const std::string& where) {
  if (node.is_number_unsigned()) {
    const auto v = node.get<std::uint64_t>();
    if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
      throw ConfigError(where, "integer out of range");
    }
    return static_cast<std::int64_t>(v);
  }
  if (node.is_number_integer()) return node.get<std::int64_t>();
  throw ConfigError(where, "expected an integer");
}

std::string as_string(const json& node, const std::string& where) {
  if (!node.is_string()) throw ConfigError(where, "expected a string");
  return node.get<std::string>();
}

std::vector<double> as_numbers(const json& node, const std::string& where) {
  if (!node.is_array()) throw ConfigError(where, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    out.push_back(as_number(node[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

template <class Fn>
auto rethrow_as_config(const std::string& where, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where, e.what());
  }
}

Instance instance_from_json(const json& node) {
  const std::string where = "instance";
  require_object(node, where);
  const bool linear = node.contains("theta");
  if (!linear) {
    reject_unknown(node, where, {"means", "sigma0", "T", "noise"});
    const auto means = as_numbers(require(node, where, "means"), join(where, "means"));
    const double sigma0 = as_number(require(node, where, "sigma0"), join(where, "sigma0"));
    const Count horizon = as_integer(require(node, where, "T"), join(where, "T"));
    if (const auto it = node.find("noise"); it != node.end()) {
      const std::string noise = as_string(*it, join(where, "noise"));
      if (noise != "gaussian") throw ConfigError(join(where, "noise"), "only 'gaussian' is supported");
    }
    return rethrow_as_config(where, [&] { return Instance{BanditInstance(means, sigma0, horizon)}; });
  }

  reject_unknown(node, where, {"theta", "d", "K_actions", "sigma0", "T", "action_set", "actions"});
  const auto theta_values = as_numbers(node.at("theta"), join(where, "theta"));
  Eigen::VectorXd theta = Eigen::Map<const Eigen::VectorXd>(
      theta_values.data(), static_cast<Eigen::Index>(theta_values.size()));
  if (const auto it = node.find("d"); it != node.end()) {
    if (as_integer(*it, join(where, "d")) != theta.size()) {
      throw ConfigError(join(where, "d"), "does not match the length of theta");
    }
  }
  const double sigma0 = as_number(require(node, where, "sigma0"), join(where, "sigma0"));
  const Count horizon = as_integer(require(node, where, "T"), join(where, "T"));

  if (const auto it = node.find("actions"); it != node.end()) {
    const std::string field = join(where, "actions");
    if (!it->is_array() || it->empty()) throw ConfigError(field, "expected a non-empty array");
    Eigen::MatrixXd actions(theta.size(), static_cast<Eigen::Index>(it->size()));
    for (std::size_t j = 0; j < it->size(); ++j) {
      const std::string item = field + "[" + std::to_string(j) + "]";
      const auto column = as_numbers((*it)[j], item);
      if (static_cast<Eigen::Index>(column.size()) != theta.size()) {
        throw ConfigError(item, "action dimension does not match theta");
      }
      for (std::size_t i = 0; i < column.size(); ++i) {
        actions(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = column[i];
      }
    }
    if (node.contains("K_actions") &&
        as_integer(node.at("K_actions"), join(where, "K_actions")) != actions.cols()) {
      throw ConfigError(join(where, "K_actions"), "does not match the number of actions");
    }
    return rethrow_as_config(where, [&] {
      return Instance{LinearInstance(std::move(theta), std::move(actions), sigma0, horizon)};
    });
  }

  const auto k = as_integer(require(node, where, "K_actions"), join(where, "K_actions"));
  if (k < 1 || k > std::numeric_limits<int>::max()) {
    throw ConfigError(join(where, "K_actions"), "must be a positive integer");
  }
  ActionSetMode mode = ActionSetMode::Fixed;
  if (const auto it = node.find("action_set"); it != node.end()) {
    const std::string text = as_string(*it, join(where, "action_set"));
    if (text == "fixed") {
      mode = ActionSetMode::Fixed;
    } else if (text == "per_round") {
      mode = ActionSetMode::PerRound;
    } else {
      throw ConfigError(join(where, "action_set"), "expected 'fixed' or 'per_round'");
    }
  }
  return rethrow_as_config(where, [&] {
    return Instance{LinearInstance(std::move(theta), static_cast<int>(k), sigma0, horizon, mode)};
  });
}

}  // namespace

BonusSpec bonus_from_json(const json& node, const std::string& where) {
  require_object(node, where);
  reject_unknown(node, where, {"design", "sigma", "eta", "kappa", "eta1", "eta2"});
  const auto design = rethrow_as_config(join(where, "design"), [&] {
    return parse_bonus_design(as_string(require(node, where, "design"), join(where, "design")));
  });

  BonusSpec spec;
  spec.design = design;
  const bool has_kappa = node.contains("kappa");
  const bool has_eta = node.contains("eta");
  const bool has_eta1 = node.contains("eta1");
  if (has_kappa + has_eta + has_eta1 != 1) {
    throw ConfigError(where, "give exactly one of 'eta', 'kappa' or 'eta1'");
  }
  if (has_kappa) {
    if (node.contains("sigma")) {
      throw ConfigError(join(where, "sigma"), "not allowed with 'kappa' (kappa fixes sigma = 1)");
    }
    if (node.contains("eta2")) throw ConfigError(join(where, "eta2"), "not allowed with 'kappa'");
    spec = BonusSpec::from_kappa(design, as_positive(node.at("kappa"), join(where, "kappa")));
    return spec;
  }
  spec.sigma = node.contains("sigma") ? as_positive(node.at("sigma"), join(where, "sigma")) : 1.0;
  if (has_eta1) {
    if (design != BonusDesign::OptimalK) {
      throw ConfigError(join(where, "eta1"), "only valid for the OptimalK design");
    }
    spec.eta = as_positive(node.at("eta1"), join(where, "eta1"));
    spec.eta2 = node.contains("eta2") ? as_number(node.at("eta2"), join(where, "eta2")) : 0.0;
    if (spec.eta2 < 0.0) throw ConfigError(join(where, "eta2"), "must be non-negative");
  } else {
    spec.eta = as_positive(node.at("eta"), join(where, "eta"));
    if (node.contains("eta2")) {
      if (design != BonusDesign::OptimalK) {
        throw ConfigError(join(where, "eta2"), "only valid for the OptimalK design");
      }
      spec.eta2 = as_number(node.at("eta2"), join(where, "eta2"));
      if (spec.eta2 < 0.0) throw ConfigError(join(where, "eta2"), "must be non-negative");
    }
  }
  return spec;
}

json to_json(const BonusSpec& spec) {
  json out = {{"design", std::string(to_string(spec.design))},
              {"sigma", spec.sigma}};
  if (spec.design == BonusDesign::OptimalK) {
    out["eta1"] = spec.eta;
    out["eta2"] = spec.eta2;
  } else {
    out["eta"] = spec.eta;
  }
  return out;
}

PolicySpec policy_from_json(const json& node, const std::string& where) {
  require_object(node, where);
  reject_unknown(node, where, {"kind", "bonus", "kappa", "m", "reinvert_every"});
  PolicySpec spec;
  spec.kind = rethrow_as_config(join(where, "kind"), [&] {
    return parse_policy_kind(as_string(require(node, where, "kind"), join(where, "kind")));
  });
  const auto forbid = [&](std::string_view key) {
    if (node.contains(key)) {
      throw ConfigError(join(where, key), "not used by policy " + std::string(to_string(spec.kind)));
    }
  };
  switch (spec.kind) {
    case PolicyKind::SE:
    case PolicyKind::UCB:
    case PolicyKind::LinUCB:
      spec.bonus = bonus_from_json(require(node, where, "bonus"), join(where, "bonus"));
      forbid("kappa");
      forbid("m");
      if (spec.kind == PolicyKind::LinUCB) {
        if (node.contains("reinvert_every")) {
          const auto n = as_integer(node.at("reinvert_every"), join(where, "reinvert_every"));
          if (n < 1 || n > std::numeric_limits<int>::max()) {
            throw ConfigError(join(where, "reinvert_every"), "must be a positive integer");
          }
          spec.reinvert_every = static_cast<int>(n);
        }
      } else {
        forbid("reinvert_every");
      }
      break;
    case PolicyKind::TS:
      spec.kappa = as_positive(require(node, where, "kappa"), join(where, "kappa"));
      forbid("bonus");
      forbid("m");
      forbid("reinvert_every");
      break;
    case PolicyKind::ETC:
      if (node.contains("m")) {
        const auto m = as_integer(node.at("m"), join(where, "m"));
        if (m < 0) throw ConfigError(join(where, "m"), "must be non-negative");
        spec.etc_budget = m;
      }
      forbid("bonus");
      forbid("kappa");
      forbid("reinvert_every");
      break;
    case PolicyKind::Random:
      forbid("bonus");
      forbid("kappa");
      forbid("m");
      forbid("reinvert_every");
      break;
  }
  rethrow_as_config(where, [&] {
    spec.validate();
    return 0;
  });
  return spec;
}

json to_json(const PolicySpec& spec) {
  json out = {{"kind", std::string(to_string(spec.kind))}};
  if (spec.uses_bonus()) out["bonus"] = to_json(spec.bonus);
  if (spec.kind == PolicyKind::TS) out["kappa"] = spec.kappa;
  if (spec.kind == PolicyKind::ETC && spec.etc_budget) out["m"] = *spec.etc_budget;
  if (spec.kind == PolicyKind::LinUCB) out["reinvert_every"] = spec.reinvert_every;
  return out;
}

ExperimentConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line and column.
    const std::size_t offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ConfigError(line, column, "malformed JSON");
  }

  require_object(doc, "config");
  reject_unknown(doc, "", {"instance", "policy", "replications", "seed", "record_trace",
                           "thresholds", "tail_functional", "histogram_bins"});

  ExperimentConfig cfg{RunConfig{instance_from_json(require(doc, "", "instance")),
                                 policy_from_json(require(doc, "", "policy"), "policy")},
                       {}};
  cfg.run.replications = as_integer(require(doc, "", "replications"), "replications");
  if (cfg.run.replications < 1) throw ConfigError("replications", "must be at least 1");
  if (const auto it = doc.find("seed"); it != doc.end()) {
    if (!it->is_number_unsigned()) throw ConfigError("seed", "expected a non-negative integer");
    cfg.run.master_seed = it->get<std::uint64_t>();
  }
  if (const auto it = doc.find("record_trace"); it != doc.end()) {
    if (!it->is_boolean()) throw ConfigError("record_trace", "expected true or false");
    cfg.run.record_trace = it->get<bool>();
  }
  if (const auto it = doc.find("thresholds"); it != doc.end()) {
    cfg.thresholds = as_numbers(*it, "thresholds");
  }
  if (const auto it = doc.find("tail_functional"); it != doc.end()) {
    const std::string f = as_string(*it, "tail_functional");
    if (f == "pseudo") {
      cfg.tail_functional = TailFunctional::Pseudo;
    } else if (f == "empirical") {
      cfg.tail_functional = TailFunctional::Empirical;
    } else {
      throw ConfigError("tail_functional", "expected 'pseudo' or 'empirical'");
    }
  }
  if (const auto it = doc.find("histogram_bins"); it != doc.end()) {
    const auto bins = as_integer(*it, "histogram_bins");
    if (bins < 1 || bins > 100000) throw ConfigError("histogram_bins", "must be in [1, 100000]");
    cfg.histogram_bins = static_cast<int>(bins);
  }
  rethrow_as_config("policy", [&] {
    cfg.run.validate();
    return 0;
  });
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace lighttail

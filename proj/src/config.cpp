#include "semival/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "semival/errors.hpp"
#include "semival/version.hpp"

namespace semival {

namespace {

void check_keys(const Json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) {
    throw ConfigError(where + " must be a JSON object");
  }
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      throw ConfigError(where + ": unknown key '" + item.key() + "'");
    }
  }
}

double get_number(const Json& obj, const std::string& where,
                  const std::string& key) {
  if (!obj.contains(key)) {
    throw ConfigError(where + ": missing required key '" + key + "'");
  }
  if (!obj[key].is_number()) {
    throw ConfigError(where + "." + key + " must be a number");
  }
  return obj[key].get<double>();
}

double get_number_or(const Json& obj, const std::string& where,
                     const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) {
    throw ConfigError(where + "." + key + " must be a number");
  }
  return obj[key].get<double>();
}

std::string get_string(const Json& obj, const std::string& where,
                       const std::string& key) {
  if (!obj.contains(key)) {
    throw ConfigError(where + ": missing required key '" + key + "'");
  }
  if (!obj[key].is_string()) {
    throw ConfigError(where + "." + key + " must be a string");
  }
  return obj[key].get<std::string>();
}

std::string get_string_or(const Json& obj, const std::string& where,
                          const std::string& key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string()) {
    throw ConfigError(where + "." + key + " must be a string");
  }
  return obj[key].get<std::string>();
}

std::uint64_t get_seed(const Json& obj, const std::string& where,
                       const std::string& key, std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer() && !obj[key].is_number_unsigned()) {
    throw ConfigError(where + "." + key + " must be an integer seed");
  }
  return obj[key].get<std::uint64_t>();
}

LearnerBase parse_learner_base(const Json& j, const std::string& where) {
  check_keys(j, where, {"kind", "lambda", "steps", "lr", "l2"});
  LearnerBase base;
  std::string kind = get_string(j, where, "kind");
  if (kind == "ridge") {
    base.kind = LearnerBase::Kind::kRidge;
    base.ridge.lambda = get_number_or(j, where, "lambda", base.ridge.lambda);
    if (j.contains("steps") || j.contains("lr") || j.contains("l2")) {
      throw ConfigError(where + ": ridge takes only 'lambda'");
    }
  } else if (kind == "logistic") {
    base.kind = LearnerBase::Kind::kLogistic;
    base.logistic.steps = static_cast<int>(
        get_number_or(j, where, "steps", base.logistic.steps));
    base.logistic.lr = get_number_or(j, where, "lr", base.logistic.lr);
    base.logistic.l2 = get_number_or(j, where, "l2", base.logistic.l2);
    if (j.contains("lambda")) {
      throw ConfigError(where + ": logistic does not take 'lambda'");
    }
  } else {
    throw ConfigError(where + ": unknown learner kind '" + kind + "'");
  }
  base.validate();
  return base;
}

Transform parse_transform(const Json& j, const std::string& where) {
  check_keys(j, where, {"id", "a", "b"});
  std::string id = get_string(j, where, "id");
  return Transform::from_id(id, get_number_or(j, where, "a", 1.0),
                            get_number_or(j, where, "b", 0.0));
}

ScoreMetric parse_metric(const Json& j, const std::string& where) {
  check_keys(j, where, {"kind", "p_t", "transform", "clip"});
  ScoreMetric m = metric_from_kind(get_string(j, where, "kind"));
  m.p_t = get_number_or(j, where, "p_t", m.p_t);
  if (j.contains("transform")) {
    m.transform = parse_transform(j["transform"], where + ".transform");
  }
  if (j.contains("clip")) {
    const Json& c = j["clip"];
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() ||
        !c[1].is_number()) {
      throw ConfigError(where + ".clip must be [lo, hi]");
    }
    m.clip_bounds = {c[0].get<double>(), c[1].get<double>()};
  }
  m.validate();
  return m;
}

BehaviorOption parse_option(const Json& j, const std::string& where) {
  BehaviorOption opt;
  if (j.is_string()) {
    if (j.get<std::string>() == "untrained") return opt;
    throw ConfigError(where + ": string option must be \"untrained\"");
  }
  std::string kind = get_string(j, where, "kind");
  if (kind == "untrained") {
    check_keys(j, where, {"kind"});
    return opt;
  }
  opt.untrained = false;
  opt.base = parse_learner_base(j, where);
  opt.label = opt.base.fingerprint();
  return opt;
}

void parse_candidates(const Json& j, RunConfig& cfg) {
  const std::string where = "candidates";
  std::string family = get_string(j, where, "family");
  if (family == "u0" || family == "min-cardinality") {
    check_keys(j, where, {"family", "k_star"});
    cfg.family = Family::kMinCardinality;
    cfg.k_star = static_cast<int>(get_number_or(j, where, "k_star", -1));
  } else if (family == "behaviors") {
    check_keys(j, where, {"family", "k_star", "options"});
    cfg.family = Family::kBehaviors;
    cfg.k_star = static_cast<int>(get_number(j, where, "k_star"));
    BehaviorTable table;
    table.k_star = cfg.k_star;
    table.options.resize(static_cast<std::size_t>(cfg.k_star));
    if (!j.contains("options") || !j["options"].is_object()) {
      throw ConfigError("candidates.options must map cardinality to a list");
    }
    for (const auto& item : j["options"].items()) {
      int k = 0;
      try {
        k = std::stoi(item.key());
      } catch (...) {
        throw ConfigError("candidates.options: key '" + item.key() +
                          "' is not a cardinality");
      }
      if (k < 0 || k >= cfg.k_star) {
        throw ConfigError("candidates.options: cardinality " + item.key() +
                          " outside [0, k_star)");
      }
      if (!item.value().is_array() || item.value().empty()) {
        throw ConfigError("candidates.options." + item.key() +
                          " must be a non-empty list");
      }
      std::vector<BehaviorOption> opts;
      for (const auto& o : item.value()) {
        opts.push_back(
            parse_option(o, "candidates.options." + item.key()));
      }
      table.options[static_cast<std::size_t>(k)] = std::move(opts);
    }
    // Cardinality 0 defaults to the single untrained option.
    if (table.options[0].empty()) table.options[0] = {BehaviorOption{}};
    for (int k = 1; k < cfg.k_star; ++k) {
      if (table.options[static_cast<std::size_t>(k)].empty()) {
        throw ConfigError("candidates.options: missing cardinality " +
                          std::to_string(k));
      }
    }
    cfg.behavior_table = std::move(table);
  } else if (family == "mono" || family == "monotone") {
    check_keys(j, where, {"family", "transforms"});
    cfg.family = Family::kMonotone;
    if (!j.contains("transforms") || !j["transforms"].is_array() ||
        j["transforms"].empty()) {
      throw ConfigError("candidates.transforms must be a non-empty list");
    }
    for (const auto& t : j["transforms"]) {
      cfg.transforms.push_back(parse_transform(t, "candidates.transforms[]"));
    }
  } else if (family == "cost") {
    check_keys(j, where, {"family", "a", "b", "grid"});
    cfg.family = Family::kCost;
    cfg.cost_a = get_number_or(j, where, "a", 0.5);
    cfg.cost_b = get_number_or(j, where, "b", 0.6);
    cfg.cost_grid = static_cast<int>(get_number_or(j, where, "grid", 2));
    if (!(cfg.cost_a > 0.0 && cfg.cost_a < 1.0 && cfg.cost_b > 0.0 &&
          cfg.cost_b < 1.0 && cfg.cost_a <= cfg.cost_b)) {
      throw ConfigError("candidates: cost interval needs 0 < a <= b < 1");
    }
    if (cfg.cost_grid < 2) {
      throw ConfigError("candidates.grid must be >= 2");
    }
  } else if (family == "custom") {
    check_keys(j, where, {"family", "members"});
    cfg.family = Family::kCustom;
    if (!j.contains("members") || !j["members"].is_array() ||
        j["members"].empty()) {
      throw ConfigError("candidates.members must be a non-empty list");
    }
    std::set<std::string> seen;
    for (const auto& m : j["members"]) {
      check_keys(m, "candidates.members[]", {"id", "learner", "metric", "k_min"});
      CustomMember member;
      member.id = get_string(m, "candidates.members[]", "id");
      if (!seen.insert(member.id).second) {
        throw ConfigError("candidates.members: duplicate id '" + member.id +
                          "'");
      }
      if (!m.contains("learner")) {
        throw ConfigError("candidates.members[]: missing learner");
      }
      member.learner.base =
          parse_learner_base(m["learner"], "candidates.members[].learner");
      member.learner.k_min = static_cast<int>(
          get_number_or(m, "candidates.members[]", "k_min", 0));
      if (!m.contains("metric")) {
        throw ConfigError("candidates.members[]: missing metric");
      }
      member.metric = parse_metric(m["metric"], "candidates.members[].metric");
      cfg.custom_members.push_back(std::move(member));
    }
  } else {
    throw ConfigError("candidates: unknown family '" + family + "'");
  }
  cfg.has_candidates = true;
}

}  // namespace

int RunConfig::resolved_k_star(int n) const {
  if (k_star >= 0) return k_star;
  return std::max(1, static_cast<int>(std::floor(0.1 * n)));
}

RunConfig parse_config(const Json& j) {
  check_keys(j, "config",
             {"schema", "task", "data", "learner", "metric", "weights", "mode",
              "exact_cap", "cache", "threads", "candidates", "favorability",
              "target", "algorithm", "game", "output"});
  if (j.contains("schema")) {
    std::string schema = get_string(j, "config", "schema");
    if (schema != kConfigSchema) {
      throw ConfigError("unsupported config schema '" + schema + "'");
    }
  }

  RunConfig cfg;
  cfg.raw = j;
  cfg.task = task_from_string(get_string(j, "config", "task"));

  if (!j.contains("data")) throw ConfigError("config: missing 'data'");
  {
    const Json& d = j["data"];
    check_keys(d, "data",
               {"csv", "label_column", "inline", "test_fraction", "split_seed"});
    cfg.test_fraction = get_number_or(d, "data", "test_fraction", 0.25);
    cfg.split_seed = get_seed(d, "data", "split_seed", 1);
    if (d.contains("csv") == d.contains("inline")) {
      throw ConfigError("data: provide exactly one of 'csv' or 'inline'");
    }
    if (d.contains("csv")) {
      cfg.csv_path = get_string(d, "data", "csv");
      cfg.label_column = get_string_or(d, "data", "label_column", "y");
    } else {
      const Json& t = d["inline"];
      check_keys(t, "data.inline", {"features", "labels"});
      if (!t.contains("features") || !t["features"].is_array() ||
          !t.contains("labels") || !t["labels"].is_array()) {
        throw ConfigError("data.inline needs 'features' and 'labels' arrays");
      }
      const auto& rows = t["features"];
      const auto& labels = t["labels"];
      if (rows.empty() || rows.size() != labels.size()) {
        throw ConfigError("data.inline: features and labels sizes disagree");
      }
      std::size_t dim = rows[0].is_array() ? rows[0].size() : 0;
      if (dim == 0) {
        throw ConfigError("data.inline: each feature row must be a non-empty "
                          "array");
      }
      cfg.inline_features.resize(static_cast<int>(rows.size()),
                                 static_cast<int>(dim));
      cfg.inline_labels.resize(static_cast<int>(labels.size()));
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!rows[r].is_array() || rows[r].size() != dim) {
          throw ConfigError("data.inline: ragged feature rows");
        }
        for (std::size_t c = 0; c < dim; ++c) {
          if (!rows[r][c].is_number()) {
            throw ConfigError("data.inline: features must be numbers");
          }
          cfg.inline_features(static_cast<int>(r), static_cast<int>(c)) =
              rows[r][c].get<double>();
        }
        if (!labels[r].is_number()) {
          throw ConfigError("data.inline: labels must be numbers");
        }
        cfg.inline_labels[static_cast<int>(r)] = labels[r].get<double>();
      }
      cfg.has_inline = true;
    }
  }

  if (!j.contains("learner")) throw ConfigError("config: missing 'learner'");
  cfg.learner.base = parse_learner_base(j["learner"], "learner");
  cfg.learner.k_min = 0;

  if (!j.contains("metric")) throw ConfigError("config: missing 'metric'");
  cfg.metric = parse_metric(j["metric"], "metric");
  cfg.explicit_clip = j["metric"].contains("clip");

  if (j.contains("weights")) {
    const Json& w = j["weights"];
    check_keys(w, "weights", {"name", "w"});
    cfg.weights_name = get_string(w, "weights", "name");
    if (cfg.weights_name == "custom") {
      if (!w.contains("w") || !w["w"].is_array() || w["w"].empty()) {
        throw ConfigError("weights: custom scheme needs the 'w' array");
      }
      cfg.custom_w.resize(static_cast<int>(w["w"].size()));
      for (std::size_t k = 0; k < w["w"].size(); ++k) {
        if (!w["w"][k].is_number()) {
          throw ConfigError("weights.w must contain numbers");
        }
        cfg.custom_w[static_cast<int>(k)] = w["w"][k].get<double>();
      }
    } else if (w.contains("w")) {
      throw ConfigError("weights: 'w' applies to the custom scheme only");
    }
  }

  if (j.contains("mode")) {
    const Json& m = j["mode"];
    check_keys(m, "mode", {"kind", "budget", "seed"});
    std::string kind = get_string(m, "mode", "kind");
    if (kind == "exact") {
      cfg.exact = true;
      if (m.contains("budget") || m.contains("seed")) {
        throw ConfigError("mode: exact takes no budget or seed");
      }
    } else if (kind == "sampled") {
      cfg.exact = false;
      cfg.budget = static_cast<long long>(
          get_number_or(m, "mode", "budget", 64));
      if (cfg.budget < 1) throw ConfigError("mode.budget must be >= 1");
      cfg.seed = get_seed(m, "mode", "seed", 0);
    } else {
      throw ConfigError("mode.kind must be 'exact' or 'sampled'");
    }
  }

  if (j.contains("exact_cap")) {
    cfg.exact_cap = static_cast<int>(get_number(j, "config", "exact_cap"));
    if (cfg.exact_cap < 1 || cfg.exact_cap > 26) {
      throw ConfigError("exact_cap must lie in [1, 26]");
    }
  }
  if (j.contains("cache")) {
    if (!j["cache"].is_boolean()) throw ConfigError("cache must be a boolean");
    cfg.cache = j["cache"].get<bool>();
  }
  if (j.contains("threads")) {
    cfg.threads = static_cast<int>(get_number(j, "config", "threads"));
    if (cfg.threads < 1) throw ConfigError("threads must be >= 1");
  }

  if (j.contains("candidates")) parse_candidates(j["candidates"], cfg);

  if (j.contains("favorability")) {
    const Json& f = j["favorability"];
    check_keys(f, "favorability", {"kind", "alpha"});
    cfg.fav = favorability_from_string(
        get_string(f, "favorability", "kind"),
        get_number_or(f, "favorability", "alpha", 0.1));
  }

  if (j.contains("target")) {
    const Json& t = j["target"];
    check_keys(t, "target", {"indices", "all_singletons", "groups"});
    int forms = (t.contains("indices") ? 1 : 0) +
                (t.contains("all_singletons") ? 1 : 0) +
                (t.contains("groups") ? 1 : 0);
    if (forms != 1) {
      throw ConfigError(
          "target: provide exactly one of indices, all_singletons, groups");
    }
    if (t.contains("indices")) {
      if (!t["indices"].is_array() || t["indices"].empty()) {
        throw ConfigError("target.indices must be a non-empty list");
      }
      for (const auto& v : t["indices"]) {
        if (!v.is_number_integer()) {
          throw ConfigError("target.indices must be integers");
        }
        cfg.target_indices.push_back(v.get<int>());
      }
    } else if (t.contains("all_singletons")) {
      if (!t["all_singletons"].is_boolean() || !t["all_singletons"].get<bool>()) {
        throw ConfigError("target.all_singletons must be true when present");
      }
      cfg.all_singletons = true;
    } else {
      const Json& g = t["groups"];
      check_keys(g, "target.groups", {"count", "fraction", "seed"});
      cfg.has_groups = true;
      cfg.group_count =
          static_cast<int>(get_number_or(g, "target.groups", "count", 100));
      cfg.group_fraction =
          get_number_or(g, "target.groups", "fraction", 0.1);
      cfg.group_seed = get_seed(g, "target.groups", "seed", 0);
      if (cfg.group_count < 1) {
        throw ConfigError("target.groups.count must be >= 1");
      }
      if (!(cfg.group_fraction > 0.0 && cfg.group_fraction <= 1.0)) {
        throw ConfigError("target.groups.fraction must lie in (0, 1]");
      }
    }
  }

  if (j.contains("algorithm")) {
    cfg.algorithm = get_string(j, "config", "algorithm");
    if (cfg.algorithm != "auto" && cfg.algorithm != "discrete") {
      throw ConfigError("algorithm must be 'auto' or 'discrete'");
    }
  }
  if (j.contains("game")) {
    const Json& g = j["game"];
    check_keys(g, "game", {"shared_draws"});
    if (g.contains("shared_draws")) {
      if (!g["shared_draws"].is_boolean()) {
        throw ConfigError("game.shared_draws must be a boolean");
      }
      cfg.shared_draws = g["shared_draws"].get<bool>();
    }
  }
  if (j.contains("output")) {
    const Json& o = j["output"];
    check_keys(o, "output", {"dir"});
    cfg.out_dir = get_string_or(o, "output", "dir", cfg.out_dir);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const std::exception& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

}  // namespace semival

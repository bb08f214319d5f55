#include "adhoc/bench/config.hpp"

#include <fstream>

#include "adhoc/errors.hpp"

namespace adhoc::bench {

using nlohmann::json;

SweepConfig SweepConfig::desk() { return SweepConfig{}; }

SweepConfig SweepConfig::full() {
  SweepConfig c;
  c.name = "full";
  c.width = 20;
  c.height = 20;
  c.stations = 50;
  c.toolboxes = 5;
  c.instances = 100;
  return c;
}

void SweepConfig::validate() const {
  if (width <= 0 || height <= 0) throw ConfigError("grid dimensions must be positive");
  if (stations < 2) throw ConfigError("at least two stations are required");
  if (toolboxes < 1) throw ConfigError("at least one toolbox is required");
  if (stations > width * height || toolboxes > width * height)
    throw ConfigError("more stations or toolboxes than grid cells");
  if (instances < 1) throw ConfigError("instance count must be positive");
  if (episodes_per_instance < 1) throw ConfigError("episodes_per_instance must be positive");
  if (priors.empty()) throw ConfigError("at least one prior is required");
  if (!(temperature > 0.0)) throw ConfigError("temperature must be positive");
  if (per_station_costs.empty()) throw ConfigError("at least one per-station cost is required");
  for (double c : per_station_costs)
    if (!(c >= 0.0)) throw ConfigError("per-station costs must be >= 0");
  if (!(query_base >= 0.0)) throw ConfigError("query base cost must be >= 0");
  if (planners.empty()) throw ConfigError("at least one planner is required");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  try {
    adhoc::validate(ga);
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
}

json to_json(const SweepConfig& c) {
  json j;
  j["name"] = c.name;
  j["width"] = c.width;
  j["height"] = c.height;
  j["stations"] = c.stations;
  j["toolboxes"] = c.toolboxes;
  j["instances"] = c.instances;
  j["episodes_per_instance"] = c.episodes_per_instance;
  j["master_seed"] = c.master_seed;
  j["priors"] = json::array();
  for (auto p : c.priors) j["priors"].push_back(to_string(p));
  j["temperature"] = c.temperature;
  j["per_station_costs"] = c.per_station_costs;
  j["query_base"] = c.query_base;
  j["planners"] = json::array();
  for (auto p : c.planners) j["planners"].push_back(to_string(p));
  j["query_cost_mode"] = to_string(c.query_cost_mode);
  j["baseline_query_sizes"] = kBaselineQuerySizes;
  j["ga"] = {{"population", c.ga.population},
             {"generations", c.ga.generations},
             {"tournament_size", c.ga.tournament_size},
             {"mutation_rate", c.ga.mutation_rate},
             {"seed", c.ga.seed}};
  j["epsilon"] = c.epsilon;
  return j;
}

namespace {

void apply_key(SweepConfig& c, const std::string& key, const json& v) {
  if (key == "profile") return;
  if (key == "baseline_query_sizes") {
    if (v.get<std::string>() != kBaselineQuerySizes)
      throw ConfigError("baseline_query_sizes only supports '" + std::string(kBaselineQuerySizes) + "'");
    return;
  }
  if (key == "name") c.name = v.get<std::string>();
  else if (key == "width") c.width = v.get<int>();
  else if (key == "height") c.height = v.get<int>();
  else if (key == "stations") c.stations = v.get<int>();
  else if (key == "toolboxes") c.toolboxes = v.get<int>();
  else if (key == "instances") c.instances = v.get<int>();
  else if (key == "episodes_per_instance") c.episodes_per_instance = v.get<int>();
  else if (key == "master_seed") c.master_seed = v.get<std::uint64_t>();
  else if (key == "priors") {
    c.priors.clear();
    for (const auto& p : v) c.priors.push_back(parse_prior_kind(p.get<std::string>()));
  } else if (key == "temperature") c.temperature = v.get<double>();
  else if (key == "per_station_costs") c.per_station_costs = v.get<std::vector<double>>();
  else if (key == "query_base") c.query_base = v.get<double>();
  else if (key == "planners") {
    c.planners.clear();
    for (const auto& p : v) c.planners.push_back(parse_planner_kind(p.get<std::string>()));
  } else if (key == "query_cost_mode") c.query_cost_mode = parse_query_cost_mode(v.get<std::string>());
  else if (key == "ga") {
    for (const auto& [k, gv] : v.items()) apply_key(c, "ga." + k, gv);
  } else if (key == "ga.population") c.ga.population = v.get<std::size_t>();
  else if (key == "ga.generations") c.ga.generations = v.get<std::size_t>();
  else if (key == "ga.tournament_size") c.ga.tournament_size = v.get<std::size_t>();
  else if (key == "ga.mutation_rate") c.ga.mutation_rate = v.get<double>();
  else if (key == "ga.seed") c.ga.seed = v.get<std::uint64_t>();
  else if (key == "epsilon") c.epsilon = v.get<double>();
  else throw ConfigError("unknown config key '" + key + "'");
}

}  // namespace

SweepConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  SweepConfig c;
  try {
    if (j.contains("profile")) {
      const auto profile = j["profile"].get<std::string>();
      if (profile == "full") c = SweepConfig::full();
      else if (profile != "desk") throw ConfigError("unknown profile '" + profile + "'");
    }
    for (const auto& [key, v] : j.items()) apply_key(c, key, v);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
  c.validate();
  return c;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

void apply_override(SweepConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override must look like key=value");
  const std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;
  SweepConfig updated = config;
  try {
    apply_key(updated, key, value);
  } catch (const json::exception& e) {
    throw ConfigError("bad value for '" + key + "': " + e.what());
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
  updated.validate();
  config = std::move(updated);
}

}  // namespace adhoc::bench

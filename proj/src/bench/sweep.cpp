#include "adhoc/bench/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "adhoc/bench/cache.hpp"
#include "adhoc/bench/instance_gen.hpp"
#include "adhoc/errors.hpp"

namespace adhoc::bench {

namespace fs = std::filesystem;

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw IoError("number formatting failed");
  return std::string(buf, end);
}

std::uint64_t episode_seed(const SweepConfig& config, int instance_id, PriorKind prior, int episode) {
  return derive_seed(config.master_seed, {0xe915, static_cast<std::uint64_t>(instance_id),
                                          static_cast<std::uint64_t>(prior),
                                          static_cast<std::uint64_t>(episode)});
}

int sample_true_goal(const DomainInstance& instance, const GoalPrior& goal_prior, std::uint64_t seed) {
  const Belief p = prior(instance, goal_prior);
  Rng rng(derive_seed(seed, {0x60a1}));
  double u = rng.uniform01();
  for (int g : p.support()) {
    if (u < p[g]) return g;
    u -= p[g];
  }
  return p.support().back();
}

EpisodeConfig episode_config(const SweepConfig& config, PriorKind prior, double per_station_cost,
                             PlannerKind planner, std::uint64_t seed) {
  EpisodeConfig ec;
  ec.planner = planner;
  ec.cost = CostModel{config.query_base, per_station_cost};
  ec.mode = config.query_cost_mode;
  ec.ga = config.ga;
  ec.prior = GoalPrior{prior, config.temperature};
  ec.seed = seed;
  return ec;
}

namespace {

struct InstanceOutput {
  std::vector<SweepRow> rows;
  std::vector<std::string> diagnostics;
  double precompute_seconds = 0.0;
};

PrecomputeCache obtain_cache(const SweepConfig& config, const DomainInstance& instance, int id,
                             const std::optional<std::string>& cache_dir) {
  if (!cache_dir) return precompute(instance, config.epsilon);
  const fs::path path = fs::path(*cache_dir) / ("instance_" + std::to_string(id) + ".cache");
  if (fs::exists(path)) {
    try {
      PrecomputeCache cache = load_cache(path.string(), instance);
      if (cache.epsilon == config.epsilon) return cache;
    } catch (const IoError&) {
      // stale or foreign cache; rebuilt below
    }
  }
  PrecomputeCache cache = precompute(instance, config.epsilon);
  fs::create_directories(*cache_dir);
  save_cache(path.string(), cache, instance);
  return cache;
}

InstanceOutput run_instance(const SweepConfig& config, int id, const std::optional<std::string>& cache_dir) {
  InstanceOutput out;
  const DomainInstance instance = generate_instance(config, instance_seed(config, id));
  std::optional<Scenario> scenario;
  try {
    PrecomputeCache cache = obtain_cache(config, instance, id, cache_dir);
    out.precompute_seconds = cache.seconds;
    scenario.emplace(instance, std::move(cache.tables));
  } catch (const std::exception& e) {
    out.diagnostics.push_back("instance " + std::to_string(id) + ": precompute failed: " + e.what());
    return out;
  }

  for (PriorKind prior : config.priors) {
    const GoalPrior goal_prior{prior, config.temperature};
    for (int episode = 0; episode < config.episodes_per_instance; ++episode) {
      const std::uint64_t seed = episode_seed(config, id, prior, episode);
      const int goal = sample_true_goal(instance, goal_prior, seed);
      for (double cost : config.per_station_costs) {
        for (PlannerKind planner : config.planners) {
          try {
            const EpisodeResult r =
                run_episode(*scenario, goal, episode_config(config, prior, cost, planner, seed));
            SweepRow row;
            row.instance_id = id;
            row.prior = prior;
            row.per_station_cost = cost;
            row.planner = planner;
            row.seed = seed;
            row.true_goal = goal;
            row.total_cost = r.total_cost;
            row.marginal_cost = r.marginal_cost;
            row.num_queries = static_cast<int>(r.queries.size());
            for (const auto& q : r.queries) row.query_timesteps.push_back(q.timestep);
            row.trace = encode_trace(r.trace);
            row.max_decision_seconds = r.max_decision_seconds;
            out.rows.push_back(std::move(row));
          } catch (const std::exception& e) {
            out.diagnostics.push_back("instance " + std::to_string(id) + " prior " + to_string(prior) +
                                      " cost " + format_number(cost) + " planner " + to_string(planner) +
                                      " seed " + std::to_string(seed) + ": " + e.what());
          }
        }
      }
    }
  }
  return out;
}

auto row_key(const SweepRow& r) {
  return std::make_tuple(r.instance_id, r.prior, r.per_station_cost, r.planner, r.seed);
}

}  // namespace

SweepResults run_sweep(const SweepConfig& config, const std::optional<std::string>& cache_dir) {
  config.validate();
  std::vector<InstanceOutput> outputs(config.instances);
#pragma omp parallel for schedule(dynamic)
  for (int id = 0; id < config.instances; ++id) {
    try {
      outputs[id] = run_instance(config, id, cache_dir);
    } catch (const std::exception& e) {
      outputs[id].diagnostics.push_back("instance " + std::to_string(id) + ": " + e.what());
    }
  }

  SweepResults results;
  for (auto& o : outputs) {
    for (auto& r : o.rows) results.rows.push_back(std::move(r));
    for (auto& d : o.diagnostics) results.diagnostics.push_back(std::move(d));
    results.precompute_seconds += o.precompute_seconds;
  }
  std::sort(results.rows.begin(), results.rows.end(),
            [](const SweepRow& a, const SweepRow& b) { return row_key(a) < row_key(b); });
  for (const auto& r : results.rows) {
    results.max_decision_seconds = std::max(results.max_decision_seconds, r.max_decision_seconds);
    for (int t : r.query_timesteps) ++results.histogram[{r.prior, r.per_station_cost, r.planner, t}];
  }
  for (const auto& d : results.diagnostics) std::cerr << "sweep: " << d << '\n';
  return results;
}

double sign_test_p_value(int wins, int losses) {
  const int n = wins + losses;
  if (n == 0) return 1.0;
  const int k = std::min(wins, losses);
  double tail = 0.0;
  for (int i = 0; i <= k; ++i)
    tail += std::exp(std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) -
                     n * std::log(2.0));
  return std::min(1.0, 2.0 * tail);
}

std::vector<SummaryRow> summarize(const SweepResults& results) {
  using CellKey = std::tuple<PriorKind, double, PlannerKind>;
  std::map<CellKey, std::vector<const SweepRow*>> cells;
  std::map<std::tuple<PriorKind, double, int, std::uint64_t>, double> ezq_cost;
  for (const auto& r : results.rows) {
    cells[{r.prior, r.per_station_cost, r.planner}].push_back(&r);
    if (r.planner == PlannerKind::EZQ)
      ezq_cost[{r.prior, r.per_station_cost, r.instance_id, r.seed}] = r.marginal_cost;
  }

  std::vector<SummaryRow> out;
  for (const auto& [key, rows] : cells) {
    SummaryRow s;
    std::tie(s.prior, s.per_station_cost, s.planner) = key;
    s.episodes = static_cast<int>(rows.size());
    double sum = 0.0, sum_sq = 0.0;
    for (const auto* r : rows) {
      sum += r->marginal_cost;
      sum_sq += r->marginal_cost * r->marginal_cost;
      s.total_queries += r->num_queries;
      auto it = ezq_cost.find({r->prior, r->per_station_cost, r->instance_id, r->seed});
      if (it != ezq_cost.end() && s.planner != PlannerKind::EZQ) {
        if (it->second < r->marginal_cost) ++s.ezq_better;
        else if (it->second > r->marginal_cost) ++s.ezq_worse;
      }
    }
    const double n = s.episodes;
    s.mean_marginal_cost = sum / n;
    if (s.episodes > 1) {
      const double var = std::max(0.0, (sum_sq - n * s.mean_marginal_cost * s.mean_marginal_cost) / (n - 1));
      s.stderr_marginal_cost = std::sqrt(var / n);
    }
    s.sign_test_p = sign_test_p_value(s.ezq_better, s.ezq_worse);
    out.push_back(s);
  }
  return out;
}

namespace {

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw IoError("cannot write " + p.string());
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw IoError("bad number '" + s + "' in results");
  return v;
}

}  // namespace

void write_sweep_outputs(const SweepResults& results, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());

  {
    auto out = open_out(fs::path(dir) / "results.csv");
    out << "instance_id,prior,per_station_cost,planner,seed,total_cost,marginal_cost,num_queries\n";
    for (const auto& r : results.rows)
      out << r.instance_id << ',' << to_string(r.prior) << ',' << format_number(r.per_station_cost) << ','
          << to_string(r.planner) << ',' << r.seed << ',' << format_number(r.total_cost) << ','
          << format_number(r.marginal_cost) << ',' << r.num_queries << '\n';
    if (!out) throw IoError("failed writing results.csv");
  }
  {
    auto out = open_out(fs::path(dir) / "histogram.csv");
    out << "prior,per_station_cost,planner,timestep,query_count\n";
    for (const auto& [key, count] : results.histogram) {
      const auto& [prior, cost, planner, t] = key;
      out << to_string(prior) << ',' << format_number(cost) << ',' << to_string(planner) << ',' << t << ','
          << count << '\n';
    }
    if (!out) throw IoError("failed writing histogram.csv");
  }
  {
    auto out = open_out(fs::path(dir) / "summary.csv");
    out << "prior,per_station_cost,planner,episodes,mean_marginal_cost,stderr_marginal_cost,total_queries,"
           "ezq_better,ezq_worse,sign_test_p\n";
    for (const auto& s : summarize(results))
      out << to_string(s.prior) << ',' << format_number(s.per_station_cost) << ',' << to_string(s.planner)
          << ',' << s.episodes << ',' << format_number(s.mean_marginal_cost) << ','
          << format_number(s.stderr_marginal_cost) << ',' << s.total_queries << ',' << s.ezq_better << ','
          << s.ezq_worse << ',' << format_number(s.sign_test_p) << '\n';
    if (!out) throw IoError("failed writing summary.csv");
  }
  {
    auto out = open_out(fs::path(dir) / "traces.csv");
    out << "instance_id,prior,per_station_cost,planner,seed,true_goal,trace\n";
    for (const auto& r : results.rows)
      out << r.instance_id << ',' << to_string(r.prior) << ',' << format_number(r.per_station_cost) << ','
          << to_string(r.planner) << ',' << r.seed << ',' << r.true_goal << ',' << r.trace << '\n';
    if (!out) throw IoError("failed writing traces.csv");
  }
}

SweepResults load_sweep_outputs(const std::string& dir) {
  SweepResults results;
  auto open_in = [&](const char* name) {
    std::ifstream in(fs::path(dir) / name);
    if (!in) throw IoError("cannot open " + (fs::path(dir) / name).string());
    return in;
  };
  {
    auto in = open_in("results.csv");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto f = split(line);
      if (f.size() != 8) throw IoError("malformed results.csv line: " + line);
      SweepRow r;
      try {
        r.instance_id = std::stoi(f[0]);
        r.prior = parse_prior_kind(f[1]);
        r.per_station_cost = parse_double(f[2]);
        r.planner = parse_planner_kind(f[3]);
        r.seed = std::stoull(f[4]);
        r.total_cost = parse_double(f[5]);
        r.marginal_cost = parse_double(f[6]);
        r.num_queries = std::stoi(f[7]);
      } catch (const std::logic_error& e) {
        throw IoError("malformed results.csv line: " + line);
      }
      results.rows.push_back(std::move(r));
    }
  }
  {
    auto in = open_in("histogram.csv");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto f = split(line);
      if (f.size() != 5) throw IoError("malformed histogram.csv line: " + line);
      try {
        results.histogram[{parse_prior_kind(f[0]), parse_double(f[1]), parse_planner_kind(f[2]), std::stoi(f[3])}] =
            std::stoi(f[4]);
      } catch (const std::logic_error& e) {
        throw IoError("malformed histogram.csv line: " + line);
      }
    }
  }
  return results;
}

}  // namespace adhoc::bench

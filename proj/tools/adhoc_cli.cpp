#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "adhoc/bench/cache.hpp"
#include "adhoc/bench/config.hpp"
#include "adhoc/bench/instance_gen.hpp"
#include "adhoc/bench/plots.hpp"
#include "adhoc/bench/sweep.hpp"
#include "adhoc/errors.hpp"

namespace fs = std::filesystem;
using namespace adhoc;
using namespace adhoc::bench;

namespace {

enum ExitCode { kOk = 0, kOther = 1, kConfig = 2, kConvergence = 3, kIo = 4, kReplayMismatch = 5 };

struct Common {
  std::string config_path;
  std::string profile = "desk";
  std::vector<std::string> overrides;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "JSON sweep configuration");
  cmd->add_option("--profile", c.profile, "base profile when no config file is given (desk|full)");
  cmd->add_option("--set", c.overrides, "override a config key, e.g. --set instances=5");
  cmd->add_option("--out", c.out, "output directory (relative paths resolve under $ADHOC_OUTPUT_ROOT)");
}

SweepConfig resolve_config(const Common& c) {
  SweepConfig config;
  if (!c.config_path.empty()) {
    config = load_config(c.config_path);
  } else if (c.profile == "desk") {
    config = SweepConfig::desk();
  } else if (c.profile == "full") {
    config = SweepConfig::full();
  } else {
    throw ConfigError("unknown profile '" + c.profile + "'");
  }
  for (const auto& o : c.overrides) apply_override(config, o);
  config.validate();
  return config;
}

fs::path output_dir(const Common& c, const SweepConfig& config) {
  const char* env = std::getenv("ADHOC_OUTPUT_ROOT");
  const fs::path root = env && *env ? fs::path(env) : fs::path("out");
  if (c.out.empty()) return root / config.name;
  const fs::path p(c.out);
  return p.is_absolute() ? p : root / p;
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

int cmd_gen(const Common& c) {
  const SweepConfig config = resolve_config(c);
  const fs::path dir = output_dir(c, config) / "instances";
  ensure_dir(dir);
  for (int id = 0; id < config.instances; ++id)
    save_instance((dir / ("instance_" + std::to_string(id) + ".json")).string(),
                  generate_instance(config, instance_seed(config, id)));
  std::cout << "wrote " << config.instances << " instances to " << dir.string() << '\n';
  return kOk;
}

int cmd_precompute(const Common& c) {
  const SweepConfig config = resolve_config(c);
  const fs::path dir = output_dir(c, config) / "cache";
  ensure_dir(dir);
  double seconds = 0.0;
  for (int id = 0; id < config.instances; ++id) {
    const DomainInstance instance = generate_instance(config, instance_seed(config, id));
    const PrecomputeCache cache = precompute(instance, config.epsilon);
    seconds += cache.seconds;
    save_cache((dir / ("instance_" + std::to_string(id) + ".cache")).string(), cache, instance);
  }
  std::cout << "precomputed " << config.instances << " instances in " << seconds << " s ("
            << seconds / config.instances << " s per instance)\n";
  return kOk;
}

int cmd_sweep(const Common& c, bool use_cache) {
  const SweepConfig config = resolve_config(c);
  const fs::path dir = output_dir(c, config);
  ensure_dir(dir);
  const auto start = std::chrono::steady_clock::now();
  std::optional<std::string> cache_dir;
  if (use_cache) cache_dir = (dir / "cache").string();
  const SweepResults results = run_sweep(config, cache_dir);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_sweep_outputs(results, dir.string());
  write_json(dir / "config.json", to_json(config));
  write_json(dir / "timing.json", {{"wall_seconds", wall},
                                   {"precompute_seconds", results.precompute_seconds},
                                   {"max_decision_seconds", results.max_decision_seconds}});
  std::cout << "sweep '" << config.name << "': " << results.rows.size() << " episodes, "
            << results.diagnostics.size() << " failed cells, precompute " << results.precompute_seconds
            << " s, max decision " << results.max_decision_seconds << " s, wall " << wall << " s\n";
  for (const auto& s : summarize(results))
    std::cout << "  " << to_string(s.prior) << " cost=" << format_number(s.per_station_cost) << ' '
              << to_string(s.planner) << " marginal=" << s.mean_marginal_cost << " +- "
              << s.stderr_marginal_cost << " queries=" << s.total_queries << '\n';
  return kOk;
}

int cmd_plot(const std::string& in, const std::string& out) {
  const SweepResults results = load_sweep_outputs(in);
  for (const auto& p : emit_plots(results, out.empty() ? in : out)) std::cout << p << '\n';
  return kOk;
}

struct ReplayArgs {
  int instance = 0;
  std::string prior = "boltzmann_distance";
  double cost = 0.0;
  std::string planner = "ezq";
  int episode = 0;
  std::string traces;
};

std::optional<std::string> logged_trace(const std::string& path, int instance, const std::string& prior,
                                        double cost, const std::string& planner, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (f.size() < 7) continue;
    if (std::stoi(f[0]) == instance && f[1] == prior && std::stod(f[2]) == cost && f[3] == planner &&
        std::stoull(f[4]) == seed)
      return f[6];
  }
  return std::nullopt;
}

int cmd_replay(const Common& c, const ReplayArgs& a) {
  const SweepConfig config = resolve_config(c);
  if (a.instance < 0 || a.instance >= config.instances)
    throw ConfigError("instance id out of range for this config");
  const PriorKind prior = parse_prior_kind(a.prior);
  const PlannerKind planner = parse_planner_kind(a.planner);
  const DomainInstance instance = generate_instance(config, instance_seed(config, a.instance));
  const PrecomputeCache cache = precompute(instance, config.epsilon);
  const Scenario scenario(instance, cache.tables);
  const std::uint64_t seed = episode_seed(config, a.instance, prior, a.episode);
  const int goal = sample_true_goal(instance, GoalPrior{prior, config.temperature}, seed);
  const EpisodeResult r = run_episode(scenario, goal, episode_config(config, prior, a.cost, planner, seed));
  const std::string trace = encode_trace(r.trace);
  std::cout << "true_goal=" << goal << " seed=" << seed << " total_cost=" << r.total_cost
            << " marginal_cost=" << r.marginal_cost << " queries=" << r.queries.size() << '\n'
            << trace << '\n';
  if (a.traces.empty()) return kOk;
  const auto logged = logged_trace(a.traces, a.instance, to_string(prior), a.cost, to_string(planner), seed);
  if (!logged) throw IoError("episode not found in " + a.traces);
  if (*logged != trace) {
    std::cerr << "replay mismatch\nlogged: " << *logged << '\n';
    return kReplayMismatch;
  }
  std::cout << "replay matches logged trace\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ad hoc teamwork query planning experiments"};
  app.require_subcommand(1);

  Common common;
  auto* gen = app.add_subcommand("gen", "generate instances as JSON");
  add_common(gen, common);
  auto* pre = app.add_subcommand("precompute", "build and cache EDP and zone tables");
  add_common(pre, common);
  auto* sweep = app.add_subcommand("sweep", "run the experiment grid and write CSVs");
  add_common(sweep, common);
  bool no_cache = false;
  sweep->add_flag("--no-cache", no_cache, "do not read or write precompute caches");

  std::string plot_in, plot_out;
  auto* plot = app.add_subcommand("plot", "render plot data and SVGs from sweep CSVs");
  plot->add_option("--in", plot_in, "sweep output directory")->required();
  plot->add_option("--out", plot_out, "plot directory (defaults to --in)");

  ReplayArgs replay_args;
  auto* replay = app.add_subcommand("replay", "re-run one logged episode");
  add_common(replay, common);
  replay->add_option("--instance", replay_args.instance)->required();
  replay->add_option("--prior", replay_args.prior);
  replay->add_option("--cost", replay_args.cost, "per-station cost");
  replay->add_option("--planner", replay_args.planner);
  replay->add_option("--episode", replay_args.episode);
  replay->add_option("--traces", replay_args.traces, "traces.csv to compare against");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*gen) return cmd_gen(common);
    if (*pre) return cmd_precompute(common);
    if (*sweep) return cmd_sweep(common, !no_cache);
    if (*plot) return cmd_plot(plot_in, plot_out);
    if (*replay) return cmd_replay(common, replay_args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kConfig;
  } catch (const NonConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << '\n';
    return kConvergence;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
  return kOther;
}

#include "adhoc/bench/instance_gen.hpp"

#include <fstream>
#include <numeric>

#include "adhoc/errors.hpp"
#include "adhoc/rng.hpp"

namespace adhoc::bench {

using nlohmann::json;

namespace {

// k distinct cells by partial Fisher-Yates.
std::vector<Coord> distinct_cells(int width, int height, int k, Rng& rng) {
  std::vector<int> cells(static_cast<std::size_t>(width) * height);
  std::iota(cells.begin(), cells.end(), 0);
  std::vector<Coord> out;
  for (int i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(cells.size() - i));
    std::swap(cells[i], cells[j]);
    out.push_back({cells[i] % width, cells[i] / width});
  }
  return out;
}

Coord any_cell(int width, int height, Rng& rng) {
  const auto c = static_cast<int>(rng.below(static_cast<std::uint64_t>(width) * height));
  return {c % width, c / width};
}

}  // namespace

std::uint64_t instance_seed(const SweepConfig& config, int id) {
  return derive_seed(config.master_seed, {0x1257a9ce, static_cast<std::uint64_t>(id)});
}

DomainInstance generate_instance(const SweepConfig& config, std::uint64_t seed) {
  config.validate();
  Rng rng(seed);
  auto stations = distinct_cells(config.width, config.height, config.stations, rng);
  auto toolboxes = distinct_cells(config.width, config.height, config.toolboxes, rng);
  std::vector<int> tool_of(config.stations);
  for (auto& t : tool_of) t = static_cast<int>(rng.below(config.toolboxes));
  const Coord worker = any_cell(config.width, config.height, rng);
  const Coord fetcher = any_cell(config.width, config.height, rng);
  return DomainInstance(config.width, config.height, std::move(stations), std::move(toolboxes),
                        std::move(tool_of), worker, fetcher);
}

namespace {

json coord_json(Coord c) { return json::array({c.x, c.y}); }

Coord coord_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw InputError("coordinate must be [x, y]");
  return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

json to_json(const DomainInstance& instance) {
  json j;
  j["width"] = instance.width();
  j["height"] = instance.height();
  j["stations"] = json::array();
  for (auto c : instance.stations()) j["stations"].push_back(coord_json(c));
  j["toolboxes"] = json::array();
  for (auto c : instance.toolboxes()) j["toolboxes"].push_back(coord_json(c));
  j["tool_of"] = instance.tool_of();
  j["worker_start"] = coord_json(instance.worker_start());
  j["fetcher_start"] = coord_json(instance.fetcher_start());
  return j;
}

DomainInstance instance_from_json(const json& j) {
  try {
    std::vector<Coord> stations, toolboxes;
    for (const auto& c : j.at("stations")) stations.push_back(coord_from(c));
    for (const auto& c : j.at("toolboxes")) toolboxes.push_back(coord_from(c));
    return DomainInstance(j.at("width").get<int>(), j.at("height").get<int>(), std::move(stations),
                          std::move(toolboxes), j.at("tool_of").get<std::vector<int>>(),
                          coord_from(j.at("worker_start")), coord_from(j.at("fetcher_start")));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed instance: ") + e.what());
  }
}

void save_instance(const std::string& path, const DomainInstance& instance) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write instance file " + path);
  out << to_json(instance).dump(2) << '\n';
  if (!out) throw IoError("failed writing instance file " + path);
}

DomainInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open instance file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError("instance " + path + " is not valid JSON: " + e.what());
  }
  return instance_from_json(j);
}

std::uint64_t instance_digest(const DomainInstance& instance) {
  const std::string text = to_json(instance).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace adhoc::bench

#ifndef ADHOC_BENCH_INSTANCE_GEN_HPP
#define ADHOC_BENCH_INSTANCE_GEN_HPP

#include <cstdint>
#include <string>

#include "json.hpp"

#include "adhoc/bench/config.hpp"
#include "adhoc/domain.hpp"

namespace adhoc::bench {

/// Random tool-fetching instance: stations and toolboxes on uniformly chosen
/// distinct cells (a station may share a cell with a toolbox), each tool in a
/// uniformly chosen toolbox, agents placed uniformly.
DomainInstance generate_instance(const SweepConfig& config, std::uint64_t seed);

/// Seed of instance `id` under the config's master seed.
std::uint64_t instance_seed(const SweepConfig& config, int id);

nlohmann::json to_json(const DomainInstance& instance);
DomainInstance instance_from_json(const nlohmann::json& j);

void save_instance(const std::string& path, const DomainInstance& instance);
DomainInstance load_instance(const std::string& path);

/// FNV-1a digest of the instance's canonical encoding.
std::uint64_t instance_digest(const DomainInstance& instance);

}  // namespace adhoc::bench

#endif  // ADHOC_BENCH_INSTANCE_GEN_HPP

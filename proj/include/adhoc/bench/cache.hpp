#ifndef ADHOC_BENCH_CACHE_HPP
#define ADHOC_BENCH_CACHE_HPP

#include <cstdint>
#include <string>

#include "adhoc/domain.hpp"
#include "adhoc/zones.hpp"

namespace adhoc::bench {

inline constexpr std::uint32_t kCacheFormatVersion = 1;

/// Offline tables for one instance, tagged with the instance digest.
struct PrecomputeCache {
  std::uint64_t digest = 0;
  double epsilon = 0.0;
  ZoneTables tables;
  double seconds = 0.0;  // wall time of the build; not serialized

  friend bool operator==(const PrecomputeCache& a, const PrecomputeCache& b) {
    return a.digest == b.digest && a.epsilon == b.epsilon && a.tables == b.tables;
  }
};

/// EDP tables for every ordered worker-goal pair and WCD thresholds for every
/// unordered pair. Non-convergence propagates with the offending pair named.
PrecomputeCache precompute(const DomainInstance& instance, double epsilon);

/// Layout (little-endian):
///   "ADHOCZT\0"  u32 version  u64 digest  u32 width  u32 height  u32 goals  f64 epsilon
///   per ordered pair (first, second), row-major, first != second:
///     u32 first  u32 second  u64 sweeps  f64 last_change  u64 n  f64[n] EDP
///   per unordered pair (a > b, ordered by a then b):
///     u64 n  f64[n] info_until   u64 n  f64[n] branch_from
/// Tables are in row-major grid order (index = y * width + x).
std::string serialize_cache(const PrecomputeCache& cache, const DomainInstance& instance);

/// Throws IoError on bad magic, a version mismatch, a digest that does not
/// match `instance`, or truncated data.
PrecomputeCache deserialize_cache(const std::string& bytes, const DomainInstance& instance);

void save_cache(const std::string& path, const PrecomputeCache& cache, const DomainInstance& instance);
PrecomputeCache load_cache(const std::string& path, const DomainInstance& instance);

}  // namespace adhoc::bench

#endif  // ADHOC_BENCH_CACHE_HPP

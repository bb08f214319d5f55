#include "adhoc/bench/cache.hpp"

#include <bit>
#include <chrono>
#include <cstring>
#include <fstream>
#include <sstream>

#include "adhoc/bench/instance_gen.hpp"
#include "adhoc/errors.hpp"

namespace adhoc::bench {

namespace {

constexpr char kMagic[8] = {'A', 'D', 'H', 'O', 'C', 'Z', 'T', '\0'};

class Writer {
 public:
  template <typename T>
  void put(T v) {
    static_assert(std::is_arithmetic_v<T>);
    std::uint64_t bits = 0;
    if constexpr (std::is_floating_point_v<T>) {
      static_assert(sizeof(T) == 8);
      bits = std::bit_cast<std::uint64_t>(v);
    } else {
      bits = static_cast<std::uint64_t>(v);
    }
    for (std::size_t i = 0; i < sizeof(T); ++i) out_.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
  }
  void raw(const char* p, std::size_t n) { out_.append(p, n); }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(const std::string& in) : in_(in) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
      bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(in_[pos_ + i])) << (8 * i);
    pos_ += sizeof(T);
    if constexpr (std::is_floating_point_v<T>)
      return std::bit_cast<T>(bits);
    else
      return static_cast<T>(bits);
  }
  void expect_raw(const char* p, std::size_t n) {
    need(n);
    if (std::memcmp(in_.data() + pos_, p, n) != 0) throw IoError("cache: bad magic bytes");
    pos_ += n;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  void need(std::size_t n) {
    if (pos_ + n > in_.size()) throw IoError("cache: truncated data");
  }
  const std::string& in_;
  std::size_t pos_ = 0;
};

void put_table(Writer& w, const std::vector<int>& values) {
  w.put<std::uint64_t>(values.size());
  for (int v : values) w.put<double>(static_cast<double>(v));
}

std::vector<int> get_int_table(Reader& r, std::size_t expected) {
  const auto n = r.get<std::uint64_t>();
  if (n != expected) throw IoError("cache: table length mismatch");
  std::vector<int> out(n);
  for (auto& v : out) v = static_cast<int>(r.get<double>());
  return out;
}

}  // namespace

PrecomputeCache precompute(const DomainInstance& instance, double epsilon) {
  const auto start = std::chrono::steady_clock::now();
  PrecomputeCache cache;
  cache.digest = instance_digest(instance);
  cache.epsilon = epsilon;
  cache.tables = ZoneTables::build(instance, PolicySet::build(instance), epsilon);
  cache.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return cache;
}

std::string serialize_cache(const PrecomputeCache& cache, const DomainInstance& instance) {
  const ZoneTables& t = cache.tables;
  const int n = t.num_goals();
  if (n != instance.num_stations() || t.num_cells() != instance.num_cells())
    throw InputError("cache does not match the instance");
  Writer w;
  w.raw(kMagic, sizeof kMagic);
  w.put<std::uint32_t>(kCacheFormatVersion);
  w.put<std::uint64_t>(cache.digest);
  w.put<std::uint32_t>(instance.width());
  w.put<std::uint32_t>(instance.height());
  w.put<std::uint32_t>(n);
  w.put<double>(cache.epsilon);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      const EdpTable& e = t.edp(a, b);
      w.put<std::uint32_t>(a);
      w.put<std::uint32_t>(b);
      w.put<std::uint64_t>(e.sweeps());
      w.put<double>(e.last_change());
      w.put<std::uint64_t>(e.size());
      for (double v : e.values()) w.put<double>(v);
    }
  }
  for (int a = 1; a < n; ++a) {
    for (int b = 0; b < a; ++b) {
      const std::size_t p = ZoneTables::pair_index(a, b);
      put_table(w, t.info_tables()[p]);
      put_table(w, t.branch_tables()[p]);
    }
  }
  return w.take();
}

PrecomputeCache deserialize_cache(const std::string& bytes, const DomainInstance& instance) {
  Reader r(bytes);
  r.expect_raw(kMagic, sizeof kMagic);
  const auto version = r.get<std::uint32_t>();
  if (version != kCacheFormatVersion)
    throw IoError("cache format version " + std::to_string(version) + " is not supported (expected " +
                  std::to_string(kCacheFormatVersion) + ")");
  PrecomputeCache cache;
  cache.digest = r.get<std::uint64_t>();
  if (cache.digest != instance_digest(instance))
    throw IoError("cache digest does not match the instance");
  const auto width = r.get<std::uint32_t>();
  const auto height = r.get<std::uint32_t>();
  const auto n = static_cast<int>(r.get<std::uint32_t>());
  if (static_cast<int>(width) != instance.width() || static_cast<int>(height) != instance.height() ||
      n != instance.num_stations())
    throw IoError("cache dimensions do not match the instance");
  cache.epsilon = r.get<double>();
  const auto cells = static_cast<std::size_t>(instance.num_cells());

  std::vector<EdpTable> edp(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      const auto first = static_cast<int>(r.get<std::uint32_t>());
      const auto second = static_cast<int>(r.get<std::uint32_t>());
      if (first != a || second != b) throw IoError("cache: EDP tables out of order");
      const auto sweeps = r.get<std::uint64_t>();
      const auto last_change = r.get<double>();
      const auto len = r.get<std::uint64_t>();
      if (len != cells) throw IoError("cache: table length mismatch");
      std::vector<double> values(len);
      for (auto& v : values) v = r.get<double>();
      edp[static_cast<std::size_t>(a) * n + b] =
          EdpTable(a, b, std::move(values), cache.epsilon, sweeps, last_change);
    }
  }
  std::vector<std::vector<int>> info(ZoneTables::pair_count(n));
  std::vector<std::vector<int>> branch(ZoneTables::pair_count(n));
  for (int a = 1; a < n; ++a) {
    for (int b = 0; b < a; ++b) {
      const std::size_t p = ZoneTables::pair_index(a, b);
      info[p] = get_int_table(r, cells);
      branch[p] = get_int_table(r, cells);
    }
  }
  if (!r.done()) throw IoError("cache: trailing bytes");
  cache.tables = ZoneTables(n, static_cast<int>(cells), std::move(edp), std::move(info), std::move(branch));
  return cache;
}

void save_cache(const std::string& path, const PrecomputeCache& cache, const DomainInstance& instance) {
  const std::string bytes = serialize_cache(cache, instance);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write cache file " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing cache file " + path);
}

PrecomputeCache load_cache(const std::string& path, const DomainInstance& instance) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open cache file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return deserialize_cache(ss.str(), instance);
}

}  // namespace adhoc::bench

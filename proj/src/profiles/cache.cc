#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "tdarc/profiles.h"

namespace tdarc::profiles {

namespace {

constexpr char kMagic[8] = {'T', 'D', 'A', 'R', 'C', 'P', 'M', '\0'};
constexpr std::uint32_t kCacheVersion = 1U;

template <typename T>
void write(std::ofstream& out, T const& x) {
  out.write(reinterpret_cast<char const*>(&x), sizeof(T));
}

template <typename T>
bool read(std::ifstream& in, T& x) {
  return static_cast<bool>(in.read(reinterpret_cast<char*>(&x), sizeof(T)));
}

}  // namespace

std::uint64_t instance_hash(network::instance const& inst) {
  auto h = std::uint64_t{0xcbf29ce484222325ULL};
  for (auto const c : network::serialize_instance(inst)) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string cache_file_name(network::instance const& inst) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx.tdpm",
                static_cast<unsigned long long>(instance_hash(inst)));
  return buf;
}

void save_profile_cache(profile_matrix const& pm, network::instance const& inst,
                        std::string const& path) {
  std::ofstream out{path, std::ios::binary | std::ios::trunc};
  if (!out) {
    throw error{"cannot write profile cache " + path};
  }
  out.write(kMagic, sizeof(kMagic));
  write(out, kCacheVersion);
  write(out, instance_hash(inst));
  write(out, pm.horizon());
  write(out, static_cast<std::uint64_t>(pm.bucket_count()));
  write(out, static_cast<std::uint32_t>(pm.vertex_count()));
  write(out, static_cast<std::uint32_t>(pm.origins().size()));
  write(out, pm.telemetry.build_seconds);
  write(out, static_cast<std::uint64_t>(pm.telemetry.max_rounds));
  for (auto const o : pm.origins()) {
    write(out, static_cast<std::uint32_t>(o));
  }
  for (auto const o : pm.origins()) {
    for (auto j = 0U; j != pm.vertex_count(); ++j) {
      auto const& f = pm.psi(o, j).f;
      write(out, static_cast<std::uint32_t>(f.times().size()));
      out.write(reinterpret_cast<char const*>(f.times().data()),
                static_cast<std::streamsize>(f.times().size() * sizeof(double)));
      out.write(reinterpret_cast<char const*>(f.values().data()),
                static_cast<std::streamsize>(f.values().size() * sizeof(double)));
    }
  }
  if (!out) {
    throw error{"failed writing profile cache " + path};
  }
}

std::optional<profile_matrix> load_profile_cache(network::instance const& inst,
                                                 std::string const& path) {
  std::ifstream in{path, std::ios::binary};
  if (!in) {
    return std::nullopt;
  }
  char magic[8];
  std::uint32_t version = 0U, vertex_count = 0U, origin_count = 0U;
  std::uint64_t hash = 0U, buckets = 0U, max_rounds = 0U;
  double horizon = 0.0, build_seconds = 0.0;
  if (!in.read(magic, sizeof(magic)) ||
      std::memcmp(magic, kMagic, sizeof(kMagic)) != 0 || !read(in, version) ||
      version != kCacheVersion || !read(in, hash) ||
      hash != instance_hash(inst) || !read(in, horizon) || !read(in, buckets) ||
      !read(in, vertex_count) || vertex_count != inst.vertex_count ||
      !read(in, origin_count) || !read(in, build_seconds) ||
      !read(in, max_rounds)) {
    return std::nullopt;
  }
  std::vector<vertex_t> origins(origin_count);
  for (auto& o : origins) {
    if (!read(in, o) || o >= vertex_count) {
      return std::nullopt;
    }
  }
  std::vector<std::vector<pl_time::arrival_function>> rows(origin_count);
  for (auto& row : rows) {
    row.reserve(vertex_count);
    for (auto j = 0U; j != vertex_count; ++j) {
      std::uint32_t size = 0U;
      if (!read(in, size) || size > (1U << 24U)) {
        return std::nullopt;
      }
      std::vector<double> times(size), values(size);
      in.read(reinterpret_cast<char*>(times.data()),
              static_cast<std::streamsize>(size * sizeof(double)));
      in.read(reinterpret_cast<char*>(values.data()),
              static_cast<std::streamsize>(size * sizeof(double)));
      if (!in) {
        return std::nullopt;
      }
      try {
        row.emplace_back(std::move(times), std::move(values));
      } catch (invariant_violation const&) {
        return std::nullopt;
      }
    }
  }
  profile_matrix pm{std::move(origins), vertex_count, horizon, std::move(rows),
                    static_cast<std::size_t>(buckets)};
  pm.telemetry.build_seconds = build_seconds;
  pm.telemetry.max_rounds = static_cast<std::size_t>(max_rounds);
  return pm;
}

profile_matrix cached_profile_matrix(network::instance const& inst,
                                     matrix_options const& opt) {
  auto const* dir = std::getenv("TDARC_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') {
    return build_profile_matrix(inst, opt);
  }
  auto const path = (std::filesystem::path{dir} / cache_file_name(inst)).string();
  if (auto pm = load_profile_cache(inst, path);
      pm.has_value() && pm->horizon() == opt.horizon_factor * inst.duration_limit &&
      pm->bucket_count() == opt.bucket_count) {
    return std::move(*pm);
  }
  auto pm = build_profile_matrix(inst, opt);
  std::filesystem::create_directories(dir);
  save_profile_cache(pm, inst, path);
  return pm;
}

}  // namespace tdarc::profiles

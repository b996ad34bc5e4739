#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tdarc/network.h"
#include "tdarc/pl_time.h"

namespace tdarc::profiles {

using network::vertex_t;

struct indexed_function {
  pl_time::arrival_function f;
  pl_time::bucket_index idx;
  double min_gap{pl_time::kInfinity};

  indexed_function() = default;
  indexed_function(pl_time::arrival_function fn, std::size_t bucket_count);

  double at(double t) const { return pl_time::query_or_inf(f, idx, t); }
  double at_binary(double t) const { return pl_time::query_binary(f, t); }
};

// Travel functions per oriented link, [link][direction]. Empty when even a
// departure at time 0 misses the horizon.
using link_functions = std::vector<std::array<pl_time::arrival_function, 2>>;

link_functions build_travel_functions(network::instance const&, double horizon);

struct origin_stats {
  std::size_t rounds{0};
  std::size_t relaxations{0};
};

// Earliest-arrival functions from `origin` to every vertex, computed by
// round-based relaxation until no function changes.
std::vector<pl_time::arrival_function> profile_from_origin(
    network::instance const&, link_functions const&, vertex_t origin,
    double horizon, origin_stats* stats = nullptr);

// depot plus every endpoint of a required link, sorted
std::vector<vertex_t> relevant_origins(network::instance const&);

struct matrix_options {
  // profiles cover departures whose arrival stays within factor * D
  double horizon_factor{2.0};
  std::size_t bucket_count{0};  // 0: default per function
};

struct profile_telemetry {
  std::size_t functions{0};
  std::size_t total_pieces{0};
  double mean_pieces{0.0};
  std::size_t max_rounds{0};
  double build_seconds{0.0};
};

class profile_matrix {
public:
  profile_matrix() = default;
  profile_matrix(std::vector<vertex_t> origins, vertex_t vertex_count,
                 double horizon,
                 std::vector<std::vector<pl_time::arrival_function>> rows,
                 std::size_t bucket_count);

  std::vector<vertex_t> const& origins() const { return origins_; }
  vertex_t vertex_count() const { return vertex_count_; }
  double horizon() const { return horizon_; }
  std::size_t bucket_count() const { return bucket_count_; }
  bool is_origin(vertex_t v) const { return row_of_[v] >= 0; }

  // throws invariant_violation when i is not an origin
  indexed_function const& psi(vertex_t i, vertex_t j) const;

  profile_telemetry telemetry;

private:
  std::vector<vertex_t> origins_;
  std::vector<std::int32_t> row_of_;
  vertex_t vertex_count_{0};
  double horizon_{0.0};
  std::size_t bucket_count_{0};
  std::vector<std::vector<indexed_function>> rows_;
};

profile_matrix build_profile_matrix(network::instance const&,
                                    matrix_options const& = {});

struct discrete_path {
  std::vector<vertex_t> vertices;
  std::vector<network::link_id_t> links;
  double departure{0.0};
  double arrival{0.0};
};

// Fixed-departure time-dependent Dijkstra with the iterative link queries.
// Arrivals beyond the hard cap count as unreachable.
std::vector<double> discrete_arrivals(network::instance const&, vertex_t from,
                                      double departure);
discrete_path discrete_quickest_path(network::instance const&, vertex_t from,
                                     vertex_t to, double departure);

// Instance, quickest-path profiles and indexed service functions, everything
// the heuristic and the exact solver evaluate routes with.
class travel_model {
public:
  explicit travel_model(network::instance inst, matrix_options const& = {});
  travel_model(network::instance inst, profile_matrix pm);

  network::instance const& inst() const { return inst_; }
  profile_matrix const& profiles() const { return pm_; }
  double horizon() const { return pm_.horizon(); }
  double duration_limit() const { return inst_.duration_limit; }
  std::size_t service_count() const { return inst_.service_count(); }

  // Ψ_ij(t), +inf outside the domain
  double travel(vertex_t i, vertex_t j, double t) const {
    auto const& p = pm_.psi(i, j);
    return use_buckets ? p.at(t) : p.at_binary(t);
  }
  double travel_gap(vertex_t i, vertex_t j) const { return pm_.psi(i, j).min_gap; }

  // completion time of service s in `mode` started at t, +inf outside
  double service(std::uint32_t s, unsigned mode, double t) const {
    auto const& p = service_[s][mode - 1U];
    return use_buckets ? p.at(t) : p.at_binary(t);
  }
  double service_gap(std::uint32_t s, unsigned mode) const {
    return service_[s][mode - 1U].min_gap;
  }
  indexed_function const& service_function(std::uint32_t s, unsigned mode) const {
    return service_[s][mode - 1U];
  }

  // From the end of `from` to the start of `to`; throws query_out_of_domain.
  double mode_pair_arrival(network::service_ref const& from,
                           network::service_ref const& to, double t) const;

  // static closeness of two services, minimised over their modes
  double proximity(std::uint32_t a, std::uint32_t b) const {
    return proximity_[a][b];
  }
  // the k closest other services, ties by index
  std::vector<std::uint32_t> nearest(std::uint32_t s, std::size_t k) const;

  bool use_buckets{true};

private:
  void build_services();

  network::instance inst_;
  profile_matrix pm_;
  std::vector<std::array<indexed_function, 2>> service_;
  std::vector<std::vector<double>> proximity_;
};

// ---- binary cache

std::uint64_t instance_hash(network::instance const&);
std::string cache_file_name(network::instance const&);

void save_profile_cache(profile_matrix const&, network::instance const&,
                        std::string const& path);
// nullopt when missing, stale or unreadable
std::optional<profile_matrix> load_profile_cache(network::instance const&,
                                                 std::string const& path);

// Uses TDARC_CACHE_DIR when set; otherwise just builds.
profile_matrix cached_profile_matrix(network::instance const&,
                                     matrix_options const& = {});

}  // namespace tdarc::profiles

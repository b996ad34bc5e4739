#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "tdarc/errors.h"
#include "tdarc/pl_time.h"

namespace tdarc::network {

using vertex_t = std::uint32_t;
using link_id_t = std::uint32_t;

enum class link_kind : std::uint8_t { edge, arc };

// direction 0 runs from -> to, direction 1 runs to -> from (edges only)
struct link {
  link_id_t id{0};
  link_kind kind{link_kind::edge};
  vertex_t from{0}, to{0};
  double distance{1.0};
  double demand{0.0};
  bool required{false};
  std::array<pl_time::speed_function, 2> travel;
  std::array<pl_time::speed_function, 2> service;

  vertex_t tail(unsigned dir) const { return dir == 0U ? from : to; }
  vertex_t head(unsigned dir) const { return dir == 0U ? to : from; }
  unsigned direction_count() const { return kind == link_kind::edge ? 2U : 1U; }

  friend bool operator==(link const&, link const&) = default;
};

// A required link serviced in a given mode. Mode 1 traverses from -> to,
// mode 2 (edges only) traverses to -> from.
struct service_ref {
  std::uint32_t service{0};
  link_id_t link{0};
  std::uint8_t mode{1};
  vertex_t from{0}, to{0};

  unsigned direction() const { return mode - 1U; }
  friend bool operator==(service_ref const&, service_ref const&) = default;
};

struct instance {
  std::string name;
  vertex_t vertex_count{0};
  std::vector<link> links;
  std::uint32_t fleet{1};
  double capacity{pl_time::kInfinity};
  double duration_limit{pl_time::kInfinity};

  // link ids of required links; the service index is the position here
  std::vector<link_id_t> required;

  static constexpr vertex_t depot = 0U;

  std::size_t service_count() const { return required.size(); }
  link const& service_link(std::uint32_t s) const { return links[required[s]]; }
  double demand(std::uint32_t s) const { return service_link(s).demand; }
  unsigned mode_count(std::uint32_t s) const {
    return service_link(s).direction_count();
  }
  service_ref service(std::uint32_t s, unsigned mode) const;
  double total_demand() const;

  friend bool operator==(instance const&, instance const&) = default;
};

// Rebuilds `required` from the link flags.
void index_services(instance&);

// Throws invariant_violation naming the offending entity.
void validate(instance const&);

// Re-horizons every speed function to the new limit.
void set_duration_limit(instance&, double duration_limit);

// Scales demands and capacity by 10^k (k <= 6) until all demands are
// integral; returns the applied factor.
double make_demands_integral(instance&);

struct oriented_link {
  link_id_t link;
  std::uint8_t direction;
  vertex_t head;
};

// outgoing oriented links per vertex, ordered by link id then direction
std::vector<std::vector<oriented_link>> outgoing_links(instance const&);

// ---- file formats

enum class file_format { classic_carp, td_native };

instance parse_instance(std::string_view text, file_format);
instance parse_native(std::string_view text);
instance parse_classic(std::string_view text);
std::string serialize_instance(instance const&);

instance load_instance(std::string const& path, file_format);
file_format guess_format(std::string const& path, std::string_view text);

// ---- speed profile generation

enum class speed_level { low, medium, high };

speed_level parse_level(std::string_view);
char level_name(speed_level);

struct speed_bounds {
  double lo, hi;
};
std::array<speed_bounds, 7> const& level_bounds(speed_level);

inline constexpr double kServiceSpeedRatio = 0.7;

// Greedy uniform-speed path scanning (travel speed 1, service speed 0.7);
// returns the longest route duration.
double greedy_longest_route(instance const&);

// 2 x greedy_longest_route
double default_duration_limit(instance const&);

// Assigns fresh travel and service speeds to every oriented link. Sets the
// duration limit to default_duration_limit first when it is unset.
instance generate_speed_profiles(instance inst, speed_level, std::uint64_t seed);

struct scenario_params {
  double sigma{0.1};
  std::uint64_t seed{0};
  std::uint32_t count{1};
};

instance perturb_instance(instance const&, double sigma, std::uint64_t seed,
                          std::uint32_t scenario);
std::vector<instance> perturb_scenario(instance const&, scenario_params const&);

// Uniform speed with the distance-weighted time average of the nominal
// travel and service speeds.
instance static_equivalent(instance const&);

// ---- synthetic instances

struct synthetic_params {
  std::uint32_t vertices{10};
  std::uint32_t services{8};
  double arc_share{0.3};  // fraction of links that are arcs
  double extra_links{0.5};  // links beyond the spanning tree, per vertex
  std::uint32_t fleet{0};  // 0: one vehicle per service
  double capacity{0.0};  // 0: total demand / 2.5, at least the max demand
  int max_demand{10};
  std::uint64_t seed{0};
  std::string name{"synthetic"};
};

// Random connected network from points in the plane.
instance random_network(synthetic_params const&);

// rows x cols grid with unit-spaced vertices, all links edges
instance grid_network(std::uint32_t rows, std::uint32_t cols,
                      std::uint32_t services, std::uint64_t seed);

// ---- static shortest paths

using link_weight =
    std::function<double(link const&, unsigned direction)>;

std::vector<double> static_distances(instance const&, vertex_t source,
                                     link_weight const&);
std::vector<std::vector<double>> all_pairs_static(instance const&,
                                                  link_weight const&);

}  // namespace tdarc::network

#pragma once

#include <cstdint>
#include <span>

#include "tdarc/hgs/local_search.h"
#include "tdarc/hgs/split.h"

namespace tdarc::hgs {

struct hgs_params {
  std::size_t mu{25};
  std::size_t lambda{40};
  double elite_fraction{0.4};
  std::size_t n_close{5};
  std::size_t granularity{15};
  double target_feasible{0.25};
  double repair_probability{0.5};
  std::uint64_t restart_after{10000};
  std::uint64_t max_no_improvement{20000};
  std::uint64_t max_iterations{UINT64_MAX};
  double time_limit{3600.0};
  bool use_filters{true};
  bool audit{false};
  std::uint64_t seed{0};
};

struct hgs_result {
  route_plan best;
  bool feasible{false};
  ls_stats ls;
  std::uint64_t iterations{0};
  std::uint64_t restarts{0};
  double seconds{0.0};
  double seconds_to_best{0.0};
};

// Ordered crossover: child keeps p1[start..end] (cyclic, inclusive) and
// fills the rest in p2's order after end.
std::vector<service_t> crossover_ox(std::span<service_t const> p1,
                                    std::span<service_t const> p2,
                                    std::size_t start, std::size_t end);
std::vector<service_t> crossover_ox(std::span<service_t const> p1,
                                    std::span<service_t const> p2, rng&);

// Proportion of services whose successor differs (reversal-insensitive).
double broken_pairs_distance(route_plan const&, route_plan const&,
                             std::size_t service_count);

hgs_result run_hgs(profiles::travel_model const&, hgs_params const&);

}  // namespace tdarc::hgs

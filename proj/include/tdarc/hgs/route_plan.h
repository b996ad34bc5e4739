#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tdarc/hgs/decoder.h"

namespace tdarc::hgs {

struct penalties {
  double capacity{1.0};
  double duration{1.0};
};

// Duration plus linear excess penalties. Durations beyond the profile domain
// map to a finite cost larger than any in-domain route.
double penalized_cost(double duration, double load, penalties const&,
                      profiles::travel_model const&);

struct route_plan {
  std::vector<std::vector<service_t>> routes;
  std::vector<decoded_route> decoded;
  std::vector<double> loads;
  double total_duration{0.0};
  double capacity_excess{0.0};
  double duration_excess{0.0};
  bool feasible{false};

  double penalized(penalties const&, profiles::travel_model const&) const;
};

// Decodes every route; empty routes are dropped.
route_plan evaluate_plan(std::vector<std::vector<service_t>> routes,
                         profiles::travel_model const&);

// every service exactly once
bool covers_all_services(route_plan const&, std::size_t service_count);

// giant tour: routes concatenated in order
std::vector<service_t> giant_tour(route_plan const&);

using stat_list = std::vector<std::pair<std::string, std::string>>;

// ROUTE <k> DUR <d> LOAD <q> : <link_id>:<mode> ... lines, OBJECTIVE, STAT
std::string write_solution(route_plan const&, profiles::travel_model const&,
                           stat_list const& stats = {});

// Reads the routes back and re-evaluates them (modes are re-optimised).
route_plan read_solution(std::string_view text, profiles::travel_model const&);

}  // namespace tdarc::hgs

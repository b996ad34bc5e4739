#pragma once

#include <vector>

#include "tdarc/hgs/genetic.h"

namespace tdarc::cli {

struct compare_options {
  double sigma{0.2};
  std::uint32_t scenarios{20};
  std::uint64_t seed{0};
  hgs::hgs_params hgs;
  std::size_t bucket_count{0};
  double horizon_factor{2.0};
};

struct scenario_outcome {
  double baseline{0.0};  // scenario solved with its true speeds
  double td{0.0};  // nominal time-dependent solution replayed
  double carp{0.0};  // static solution replayed
  double td_gap{0.0};  // percent
  double carp_gap{0.0};
};

struct compare_report {
  double sigma{0.0};
  double nominal_td{0.0};
  double nominal_carp{0.0};  // static routes evaluated under nominal speeds
  std::vector<scenario_outcome> scenarios;
  std::size_t skipped{0};  // replay left the profile domain
  double mean_td_gap{0.0};
  double mean_carp_gap{0.0};

  // gain of time-dependent optimisation, in gap points
  double value_of_time_dependence() const { return mean_carp_gap - mean_td_gap; }
};

// Duration of fixed service orders under another model; modes are re-decoded
// but orders and route assignment are kept.
double replay(std::vector<std::vector<hgs::service_t>> const& routes,
              profiles::travel_model const&);

compare_report run_compare(network::instance const& nominal, compare_options const&);

}  // namespace tdarc::cli

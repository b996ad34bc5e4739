#pragma once

#include <array>

#include "tdarc/hgs/decoder.h"

namespace tdarc::hgs {

// Lower bound on travel plus service time over a contiguous service
// sequence, per (first-service mode, last-service mode).
struct seq_bound {
  service_t first{0}, last{0};
  std::array<std::array<double, 2>, 2> t{{{pl_time::kInfinity, pl_time::kInfinity},
                                          {pl_time::kInfinity, pl_time::kInfinity}}};
};

seq_bound seq_single(service_t, profiles::travel_model const&);

// the depot as a one-mode pseudo service with zero duration
seq_bound seq_depot(profiles::travel_model const&);

seq_bound seq_concat(seq_bound const& a, seq_bound const& b,
                     profiles::travel_model const&);

// Exact completion times of the last service of an unchanged route prefix,
// per mode (the depot start is service_count() with time 0).
struct prefix_times {
  service_t last{0};
  std::array<double, 2> t{pl_time::kInfinity, pl_time::kInfinity};
};

prefix_times depot_start(profiles::travel_model const&);

// min over (x, y) of Ψ^{xy}(prefix[x]) + rest[y, last mode]; `rest` must
// end with the depot.
double move_lower_bound(prefix_times const& prefix, seq_bound const& rest,
                        profiles::travel_model const&);

}  // namespace tdarc::hgs

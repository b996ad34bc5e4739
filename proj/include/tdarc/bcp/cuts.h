#pragma once

#include <span>
#include <vector>

#include "tdarc/bcp/master.h"

namespace tdarc::bcp {

// Columns with positive value in the current master solution.
struct support {
  std::vector<column const*> columns;
  std::vector<double> lambda;
};

double crossing(transition_row const&, support const&, node_table const&);

// Deadhead crossings of a vertex set S with an odd number of required links
// in δ(S) must be at least one.
std::vector<transition_row> separate_odd_edge_cuts(profiles::travel_model const&,
                                                   node_table const&, support const&,
                                                   std::span<transition_row const> pool);

// Transitions crossing a service set S are at least 2 ⌈q(S) / Q⌉.
std::vector<transition_row> separate_capacity_cuts(profiles::travel_model const&,
                                                   node_table const&, support const&,
                                                   std::span<transition_row const> pool);

}  // namespace tdarc::bcp

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tdarc/bcp/master.h"

namespace tdarc::bcp {

// ng neighbourhoods: members[s][0] = s, then the closest services by the
// static proximity estimate, ties by index.
struct ng_sets {
  std::vector<std::vector<service_t>> members;
};

ng_sets build_ng_sets(profiles::travel_model const&, std::size_t size = 4);

class completion_bounds;

// Everything the labeling algorithms need for one dual vector.
struct pricing_problem {
  pricing_problem(profiles::travel_model const&, node_table const&, ng_sets const&,
                  dual_state const&, std::span<transition_row const> rows,
                  std::span<transition_row const> forbidden = {});

  profiles::travel_model const& model;
  node_table const& nodes;
  ng_sets const& ng;
  dual_state duals;
  std::vector<transition_row> rows;
  std::vector<std::vector<double>> td;  // transition duals incl. target β
  std::vector<std::vector<bool>> allowed;  // [p][q]
};

// L(P) = (last node, load, completion time Φ, dual sum ξ, ng memory).
// Bit k of memory stands for ng.members[service of node][k].
struct label {
  node_t node{0};
  double load{0.0};
  double time{0.0};
  double xi{0.0};
  std::uint8_t memory{0};
  std::int32_t pred{-1};
};

label depot_label(pricing_problem const&);

// nullopt when the extension breaks capacity, the duration limit, the ng
// memory or a branching filter
std::optional<label> extend(label const&, node_t to, pricing_problem const&);

// Φ(P + return) - ξ(P + return), +inf if the return misses the limit
double completion_reduced_cost(label const&, pricing_problem const&);

// a dominates b, both ending at the same node
bool dominates_exact(label const& a, label const& b);
// dual condition relaxed to ξa + μ (Φb - Φa) >= ξb
bool dominates_heuristic(label const& a, label const& b, double mu);
// the unsafe single comparison Φ - ξ, kept for demonstration
bool dominates_reduced_cost(label const& a, label const& b);

struct pricing_options {
  std::size_t max_columns{200};
  std::size_t max_labels{4000000};
  completion_bounds const* bounds{nullptr};
};

struct pricing_result {
  std::vector<column> columns;
  std::vector<double> reduced_costs;  // as computed by the labeling
  std::size_t labels{0};
  std::size_t fathomed{0};
  bool truncated{false};  // label limit hit, emptiness proves nothing
};

pricing_result price_exact(pricing_problem const&, pricing_options const& = {});
pricing_result price_heuristic_dominance(pricing_problem const&, double mu,
                                         pricing_options const& = {});
// one label per (node, integer load), no dominance lists
pricing_result price_fast(pricing_problem const&, pricing_options const& = {});

}  // namespace tdarc::bcp

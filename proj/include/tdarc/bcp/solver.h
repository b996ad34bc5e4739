#pragma once

#include <chrono>
#include <limits>
#include <set>
#include <vector>

#include "json.hpp"

#include "tdarc/bcp/cuts.h"
#include "tdarc/bcp/pricing.h"

namespace tdarc::bcp {

struct bcp_options {
  double time_limit{600.0};  // seconds; the root node is always solved
  std::size_t max_nodes{100000};
  std::size_t cut_rounds{5};
  std::size_t max_cg_iterations{5000};
  std::size_t strong_branching_candidates{50};
  std::size_t strong_branching_iterations{40};
  double rank_alpha{0.75};
  double stabilization{0.9};
  double mu{0.5};
  std::size_t ng_size{4};
  bool completion_bounds{true};
  std::size_t max_columns_per_pricing{200};
  std::size_t max_labels{4000000};

  double initial_upper_bound{std::numeric_limits<double>::infinity()};
  std::vector<column> initial_columns;  // e.g. the routes of a heuristic solution
};

// Everything shared by the nodes of one tree.
struct bcp_context {
  bcp_context(profiles::travel_model const&, bcp_options);

  profiles::travel_model const& model;
  bcp_options options;
  node_table nodes;
  ng_sets ng;
  double big_m;
  std::vector<column> pool;
  std::set<std::vector<oriented_service>> pool_index;
  std::vector<transition_row> cuts;
  std::chrono::steady_clock::time_point start;

  std::size_t strong_branching_evaluations{0};
  std::size_t pricing_truncations{0};

  void add_to_pool(column const&);
  double elapsed() const;
};

// Branching decisions active at a node: `rows` are enforced in the master,
// `forbidden` rows (a <= 0) remove transitions from pricing and columns.
struct node_constraints {
  std::vector<transition_row> rows;
  std::vector<transition_row> forbidden;
};

bool compatible(column const&, node_constraints const&, node_table const&);

enum class pricing_level : std::uint8_t { full, fast_only };

struct cg_result {
  bool feasible{true};
  bool converged{false};
  double bound{0.0};
  std::vector<column> columns;  // master columns in lambda order
  std::vector<double> lambda;
  std::size_t iterations{0};
};

// Column generation (and cut rounds for the full level) at one node.
cg_result solve_node(bcp_context&, node_constraints const&, pricing_level,
                     std::size_t max_iterations, bool separate);

double rank(double z_left, double z_right, double alpha = 0.75);

struct branch_candidate {
  transition_row row;  // kind, a, b; sense and rhs set per child
  double value{0.0};
  double low{0.0}, high{0.0};  // child bounds: a <= low, a >= high
};

// Fractional branching entities of a master solution, closest to 0.5 first.
std::vector<branch_candidate> branching_candidates(bcp_context const&, cg_result const&,
                                                   std::size_t limit);

std::pair<node_constraints, node_constraints> children(node_constraints const&,
                                                       branch_candidate const&);

// Strong branching: ranks every candidate by fast-pricing column generation
// in both children and returns the best one.
branch_candidate select_branch(bcp_context&, node_constraints const&,
                               std::vector<branch_candidate> const&);

struct bcp_result {
  double lb{0.0};
  double ub{std::numeric_limits<double>::infinity()};
  double gap_percent{0.0};
  std::size_t nodes_exact{0};
  std::size_t nodes_heuristic{0};
  std::size_t columns{0};
  std::size_t cuts{0};
  double wall_seconds{0.0};
  bool optimal{false};
  std::size_t unresolved{0};
  double root_bound{0.0};
  std::vector<column> routes;
};

bcp_result run_bcp(profiles::travel_model const&, bcp_options = {});

nlohmann::json to_json(bcp_result const&);

}  // namespace tdarc::bcp

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "tdarc/bcp/lp.h"
#include "tdarc/hgs/decoder.h"

namespace tdarc::bcp {

using hgs::service_t;

struct oriented_service {
  service_t service{0};
  std::uint8_t mode{1};

  friend bool operator==(oriented_service const&, oriented_service const&) = default;
  friend auto operator<=>(oriented_service const&, oriented_service const&) = default;
};

// Pricing graph node: 0 is the depot, 1 + 2s + (mode - 1) a service mode.
using node_t = std::uint32_t;

inline node_t node_of(service_t s, unsigned mode) { return 1U + 2U * s + (mode - 1U); }

struct node_info {
  bool depot{true};
  service_t service{0};
  std::uint8_t mode{1};
  network::vertex_t start{0}, end{0};
  bool valid{true};  // mode 2 of an arc is not a node
};

class node_table {
public:
  explicit node_table(profiles::travel_model const&);

  std::size_t size() const { return nodes_.size(); }
  std::size_t service_count() const { return (nodes_.size() - 1U) / 2U; }
  node_info const& operator[](node_t p) const { return nodes_[p]; }

private:
  std::vector<node_info> nodes_;
};

struct column {
  std::vector<oriented_service> seq;
  double cost{0.0};  // route duration

  friend bool operator==(column const&, column const&) = default;
};

// Route-time recursion for fixed modes from the depot at time 0. Throws
// infeasible_route when a step leaves the time domain.
double route_duration(std::span<oriented_service const>, profiles::travel_model const&);

// Builds the column with its duration; nullopt if the duration is infinite.
std::optional<column> make_column(std::vector<oriented_service> seq,
                                  profiles::travel_model const&);

// Rows whose coefficients add up over the transitions of a route
// (depot -> first, ..., last -> depot).
enum class row_kind : std::uint8_t {
  odd_edge,  // deadheads with exactly one endpoint in a vertex set
  capacity,  // required-graph transitions with exactly one end in a service set
  vertex_degree,  // deadheads starting or ending at vertex a
  deadhead_arc,  // deadheads from vertex a to vertex b
  required_pair,  // transitions between required-graph nodes a and b (n = depot)
  node_arc  // transitions from pricing node a to pricing node b
};

struct transition_row {
  row_kind kind{row_kind::odd_edge};
  row_sense sense{row_sense::geq};
  double rhs{0.0};
  std::vector<bool> members;
  std::uint32_t a{0}, b{0};
};

double coefficient(transition_row const&, node_info const& from, node_info const& to,
                   std::size_t service_count);
double coefficient(transition_row const&, column const&, node_table const&);

struct dual_state {
  double gamma{0.0};
  std::vector<double> beta;  // per service
  std::vector<double> rows;  // per transition row

  // alpha * center + (1 - alpha) * this
  dual_state smoothed(dual_state const& center, double alpha) const;
};

// ξ increments: duals earned when moving from node p to node q, including
// the service dual of q.
std::vector<std::vector<double>> transition_duals(node_table const&, dual_state const&,
                                                  std::span<transition_row const>);

// Reduced cost recomputed from scratch: cost - γ - Σ β a - Σ row duals.
double reduced_cost(column const&, dual_state const&, std::span<transition_row const>,
                    node_table const&);

struct master_solution {
  double objective{0.0};
  std::vector<double> lambda;  // per column
  double empty_routes{0.0};
  double artificial{0.0};  // total artificial activity, > 0 means infeasible
  dual_state duals;
};

// Set partitioning master: cover every service once, use exactly `fleet`
// routes (an empty zero-cost route absorbs unused vehicles), plus
// transition rows for cuts and branching.
class master_problem {
public:
  master_problem(profiles::travel_model const&, node_table const&, double big_m,
                 std::unique_ptr<lp_backend> = std::make_unique<dense_simplex>());

  void add_row(transition_row);
  bool add_column(column);  // false on duplicates

  std::vector<column> const& columns() const { return columns_; }
  std::vector<transition_row> const& rows() const { return rows_; }
  master_solution solve();

private:
  profiles::travel_model const& model_;
  node_table const& nodes_;
  double big_m_;
  std::unique_ptr<lp_backend> lp_;
  std::vector<column> columns_;
  std::vector<std::uint32_t> lp_index_;
  std::map<std::vector<oriented_service>, std::size_t> known_;
  std::vector<transition_row> rows_;
  std::vector<std::uint32_t> artificial_index_;
  std::uint32_t empty_index_{0};
};

}  // namespace tdarc::bcp

#include <algorithm>
#include <cmath>

#include "tdarc/bcp/master.h"

namespace tdarc::bcp {

using pl_time::kInfinity;

node_table::node_table(profiles::travel_model const& m) {
  auto const n = m.service_count();
  nodes_.resize(1U + 2U * n);
  for (auto s = 0U; s != n; ++s) {
    for (auto k = 1U; k <= 2U; ++k) {
      auto& info = nodes_[node_of(s, k)];
      info.depot = false;
      info.service = s;
      info.mode = static_cast<std::uint8_t>(k);
      info.valid = k <= m.inst().mode_count(s);
      if (info.valid) {
        auto const ref = m.inst().service(s, k);
        info.start = ref.from;
        info.end = ref.to;
      }
    }
  }
}

double route_duration(std::span<oriented_service const> seq,
                      profiles::travel_model const& m) {
  auto t = 0.0;
  auto at = network::instance::depot;
  for (auto const& x : seq) {
    auto const ref = m.inst().service(x.service, x.mode);
    t = m.service(x.service, x.mode, m.travel(at, ref.from, t));
    if (t == kInfinity) {
      throw infeasible_route{"service " + std::to_string(x.service) +
                             " completes outside the time domain"};
    }
    at = ref.to;
  }
  t = m.travel(at, network::instance::depot, t);
  if (t == kInfinity) {
    throw infeasible_route{"return to the depot outside the time domain"};
  }
  return t;
}

std::optional<column> make_column(std::vector<oriented_service> seq,
                                  profiles::travel_model const& m) {
  try {
    auto const d = route_duration(seq, m);
    return column{std::move(seq), d};
  } catch (infeasible_route const&) {
    return std::nullopt;
  }
}

double coefficient(transition_row const& row, node_info const& from,
                   node_info const& to, std::size_t service_count) {
  if (row.kind == row_kind::node_arc) {
    auto const p = from.depot ? 0U : node_of(from.service, from.mode);
    auto const q = to.depot ? 0U : node_of(to.service, to.mode);
    return p == row.a && q == row.b ? 1.0 : 0.0;
  }
  auto const x = from.end;
  auto const y = to.start;
  switch (row.kind) {
    case row_kind::odd_edge: return row.members[x] != row.members[y] ? 1.0 : 0.0;
    case row_kind::capacity: {
      auto const in_a = !from.depot && row.members[from.service];
      auto const in_b = !to.depot && row.members[to.service];
      return in_a != in_b ? 1.0 : 0.0;
    }
    case row_kind::vertex_degree:
      return x != y && (x == row.a || y == row.a) ? 1.0 : 0.0;
    case row_kind::deadhead_arc: return x == row.a && y == row.b && x != y ? 1.0 : 0.0;
    case row_kind::required_pair: {
      auto const u = from.depot ? service_count : from.service;
      auto const v = to.depot ? service_count : to.service;
      return (u == row.a && v == row.b) || (u == row.b && v == row.a) ? 1.0 : 0.0;
    }
    case row_kind::node_arc: break;
  }
  return 0.0;
}

double coefficient(transition_row const& row, column const& c, node_table const& nodes) {
  auto sum = 0.0;
  auto prev = node_t{0};
  for (auto const& x : c.seq) {
    auto const p = node_of(x.service, x.mode);
    sum += coefficient(row, nodes[prev], nodes[p], nodes.service_count());
    prev = p;
  }
  if (!c.seq.empty()) {
    sum += coefficient(row, nodes[prev], nodes[0], nodes.service_count());
  }
  return sum;
}

dual_state dual_state::smoothed(dual_state const& center, double alpha) const {
  auto out = *this;
  out.gamma = alpha * center.gamma + (1.0 - alpha) * gamma;
  for (auto i = 0U; i != beta.size(); ++i) {
    out.beta[i] = alpha * center.beta[i] + (1.0 - alpha) * beta[i];
  }
  for (auto i = 0U; i != rows.size() && i != center.rows.size(); ++i) {
    out.rows[i] = alpha * center.rows[i] + (1.0 - alpha) * rows[i];
  }
  return out;
}

std::vector<std::vector<double>> transition_duals(node_table const& nodes,
                                                  dual_state const& d,
                                                  std::span<transition_row const> rows) {
  auto const size = nodes.size();
  std::vector<std::vector<double>> td(size, std::vector<double>(size, 0.0));
  for (auto p = 0U; p != size; ++p) {
    if (!nodes[p].valid) {
      continue;
    }
    for (auto q = 0U; q != size; ++q) {
      if (!nodes[q].valid) {
        continue;
      }
      auto v = nodes[q].depot ? 0.0 : d.beta[nodes[q].service];
      for (auto r = 0U; r != rows.size(); ++r) {
        if (d.rows[r] != 0.0) {
          v += d.rows[r] * coefficient(rows[r], nodes[p], nodes[q], nodes.service_count());
        }
      }
      td[p][q] = v;
    }
  }
  return td;
}

double reduced_cost(column const& c, dual_state const& d,
                    std::span<transition_row const> rows, node_table const& nodes) {
  auto rc = c.cost - d.gamma;
  for (auto const& x : c.seq) {
    rc -= d.beta[x.service];
  }
  for (auto r = 0U; r != rows.size(); ++r) {
    rc -= d.rows[r] * coefficient(rows[r], c, nodes);
  }
  return rc;
}

master_problem::master_problem(profiles::travel_model const& m,
                               node_table const& nodes, double big_m,
                               std::unique_ptr<lp_backend> lp)
    : model_{m}, nodes_{nodes}, big_m_{big_m}, lp_{std::move(lp)} {
  auto const n = m.service_count();
  for (auto s = 0U; s != n; ++s) {
    lp_->add_row(row_sense::eq, 1.0);
  }
  lp_->add_row(row_sense::eq, static_cast<double>(m.inst().fleet));
  for (auto s = 0U; s != n; ++s) {
    artificial_index_.push_back(lp_->add_column({big_m_, {{s, 1.0}}}));
  }
  empty_index_ = lp_->add_column({0.0, {{static_cast<std::uint32_t>(n), 1.0}}});
}

void master_problem::add_row(transition_row row) {
  lp_backend::row_entries entries;
  for (auto k = 0U; k != columns_.size(); ++k) {
    auto const a = coefficient(row, columns_[k], nodes_);
    if (a != 0.0) {
      entries.emplace_back(lp_index_[k], a);
    }
  }
  auto const r = lp_->add_row(row.sense, row.rhs, entries);
  if (row.sense == row_sense::geq) {
    artificial_index_.push_back(lp_->add_column({big_m_, {{r, 1.0}}}));
  } else if (row.sense == row_sense::eq) {
    artificial_index_.push_back(
        lp_->add_column({big_m_, {{r, row.rhs >= 0.0 ? 1.0 : -1.0}}}));
  }
  rows_.push_back(std::move(row));
}

bool master_problem::add_column(column c) {
  if (known_.contains(c.seq)) {
    return false;
  }
  auto const n = model_.service_count();
  lp_column lc;
  lc.cost = c.cost;
  std::vector<double> count(n, 0.0);
  for (auto const& x : c.seq) {
    count[x.service] += 1.0;
  }
  for (auto s = 0U; s != n; ++s) {
    if (count[s] != 0.0) {
      lc.coefs.emplace_back(s, count[s]);
    }
  }
  lc.coefs.emplace_back(static_cast<std::uint32_t>(n), 1.0);
  for (auto r = 0U; r != rows_.size(); ++r) {
    auto const a = coefficient(rows_[r], c, nodes_);
    if (a != 0.0) {
      lc.coefs.emplace_back(static_cast<std::uint32_t>(n + 1U + r), a);
    }
  }
  known_.emplace(c.seq, columns_.size());
  lp_index_.push_back(lp_->add_column(std::move(lc)));
  columns_.push_back(std::move(c));
  return true;
}

master_solution master_problem::solve() {
  auto const res = lp_->solve_relaxation();
  if (res.status != lp_status::optimal) {
    throw lp_backend_failure{"restricted master not solved to optimality"};
  }
  auto const n = model_.service_count();
  master_solution out;
  out.objective = res.objective;
  out.lambda.resize(columns_.size());
  for (auto k = 0U; k != columns_.size(); ++k) {
    out.lambda[k] = res.primal[lp_index_[k]];
  }
  out.empty_routes = res.primal[empty_index_];
  for (auto const a : artificial_index_) {
    out.artificial += res.primal[a];
  }
  out.duals.beta.assign(begin(res.dual), begin(res.dual) + static_cast<std::ptrdiff_t>(n));
  out.duals.gamma = res.dual[n];
  out.duals.rows.assign(begin(res.dual) + static_cast<std::ptrdiff_t>(n + 1U), end(res.dual));
  return out;
}

}  // namespace tdarc::bcp

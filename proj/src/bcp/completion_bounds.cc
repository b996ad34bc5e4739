#include <algorithm>
#include <cmath>

#include "tdarc/bcp/completion_bounds.h"

namespace tdarc::bcp {

using pl_time::kInfinity;

namespace {

struct step {
  node_t to;
  std::size_t dr, db;
  double cost;
};

}  // namespace

completion_bounds::completion_bounds(pricing_problem const& pp,
                                     std::size_t max_time_steps,
                                     std::size_t max_load_steps) {
  auto const& m = pp.model;
  auto const& nodes = pp.nodes;
  nodes_ = nodes.size();
  capacity_ = m.inst().capacity;
  limit_ = std::min(m.duration_limit(), m.horizon());

  auto const finite_q = std::isfinite(capacity_);
  load_step_ = finite_q ? std::max(1.0, std::ceil(capacity_ / static_cast<double>(
                                                              max_load_steps)))
                        : kInfinity;
  time_step_ = std::max(1.0, limit_ / static_cast<double>(max_time_steps));
  load_budgets_ = finite_q ? static_cast<std::size_t>(std::floor(capacity_ / load_step_)) + 1U
                           : 1U;
  time_budgets_ = static_cast<std::size_t>(std::floor(limit_ / time_step_)) + 1U;
  table_.assign(nodes_ * load_budgets_ * time_budgets_, kInfinity);

  auto const units = [](double x, double unit) {
    return std::isfinite(unit) ? static_cast<std::size_t>(std::floor(x / unit)) : 0U;
  };

  // per node: return leg and successor steps with their consumption
  std::vector<std::vector<step>> out(nodes_);
  std::vector<double> back_cost(nodes_, kInfinity);
  std::vector<std::size_t> back_db(nodes_, 0U);
  for (auto p = node_t{0}; p != nodes_; ++p) {
    if (!nodes[p].valid) {
      continue;
    }
    if (!nodes[p].depot && pp.allowed[p][0]) {
      auto const gap = m.travel_gap(nodes[p].end, network::instance::depot);
      if (gap != kInfinity) {
        back_cost[p] = gap - pp.td[p][0];
        back_db[p] = units(gap, time_step_);
      }
    }
    for (auto q = node_t{1}; q != nodes_; ++q) {
      if (!pp.allowed[p][q]) {
        continue;
      }
      auto const& t = nodes[q];
      auto const w = m.travel_gap(nodes[p].end, t.start) + m.service_gap(t.service, t.mode);
      if (w == kInfinity) {
        continue;
      }
      out[p].push_back({q, units(m.inst().demand(t.service), load_step_),
                        units(w, time_step_), w - pp.td[p][q]});
    }
  }

  for (auto r = 0U; r != load_budgets_; ++r) {
    for (auto b = 0U; b != time_budgets_; ++b) {
      for (auto p = node_t{0}; p != nodes_; ++p) {
        auto v = back_db[p] <= b ? back_cost[p] : kInfinity;
        for (auto const& s : out[p]) {
          if ((s.dr != 0U || s.db != 0U) && s.dr <= r && s.db <= b) {
            auto const next = table_[(s.to * load_budgets_ + r - s.dr) * time_budgets_ +
                                     b - s.db];
            v = std::min(v, s.cost + next);
          }
        }
        cell(p, r, b) = v;
      }
      // zero-consumption steps stay in the layer
      auto changed = true;
      for (auto pass = 0U; changed && pass != nodes_ + 1U; ++pass) {
        changed = false;
        for (auto p = node_t{0}; p != nodes_; ++p) {
          for (auto const& s : out[p]) {
            if (s.dr == 0U && s.db == 0U) {
              auto const v = s.cost + cell(s.to, r, b);
              if (v < cell(p, r, b) - 1e-12) {
                cell(p, r, b) = v;
                changed = true;
              }
            }
          }
        }
      }
      if (changed) {
        for (auto p = node_t{0}; p != nodes_; ++p) {
          cell(p, r, b) = -kInfinity;
        }
      }
    }
  }
}

double completion_bounds::at(node_t p, std::size_t r, std::size_t b) const {
  r = std::min(r, load_budgets_ - 1U);
  b = std::min(b, time_budgets_ - 1U);
  return table_[(p * load_budgets_ + r) * time_budgets_ + b];
}

double completion_bounds::lookup(label const& l) const {
  if (l.time > limit_ || (std::isfinite(capacity_) && l.load > capacity_)) {
    return kInfinity;
  }
  auto const r = std::isfinite(capacity_)
                     ? static_cast<std::size_t>(std::floor((capacity_ - l.load) / load_step_ + 1e-9))
                     : 0U;
  auto const b = static_cast<std::size_t>(std::floor((limit_ - l.time) / time_step_ + 1e-9));
  return at(l.node, r, b);
}

}  // namespace tdarc::bcp

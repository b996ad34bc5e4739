#include <algorithm>
#include <cmath>
#include <queue>

#include "tdarc/bcp/solver.h"

namespace tdarc::bcp {

namespace {

constexpr auto kPrune = 1e-6;
constexpr auto kIntegral = 1e-6;

struct open_node {
  double bound;
  std::size_t id;
  node_constraints cons;

  friend bool operator>(open_node const& a, open_node const& b) {
    return a.bound != b.bound ? a.bound > b.bound : a.id > b.id;
  }
};

bool is_solution(std::vector<column> const& routes, profiles::travel_model const& m) {
  std::vector<unsigned> seen(m.service_count(), 0U);
  auto used = 0U;
  for (auto const& c : routes) {
    if (c.seq.empty()) {
      continue;
    }
    ++used;
    auto load = 0.0;
    for (auto const& x : c.seq) {
      ++seen[x.service];
      load += m.inst().demand(x.service);
    }
    if (load > m.inst().capacity || c.cost > m.duration_limit()) {
      return false;
    }
  }
  return used <= m.inst().fleet &&
         std::all_of(begin(seen), end(seen), [](auto v) { return v == 1U; });
}

double total(std::vector<column> const& routes) {
  auto sum = 0.0;
  for (auto const& c : routes) {
    sum += c.cost;
  }
  return sum;
}

}  // namespace

bcp_result run_bcp(profiles::travel_model const& m, bcp_options opt) {
  bcp_context ctx{m, std::move(opt)};
  auto const& o = ctx.options;
  bcp_result out;
  out.ub = o.initial_upper_bound;
  if (is_solution(o.initial_columns, m) && total(o.initial_columns) <= out.ub + kPrune) {
    out.ub = std::min(out.ub, total(o.initial_columns));
    out.routes = o.initial_columns;
  }
  if (m.service_count() == 0U) {
    out.lb = out.ub = 0.0;
    out.routes.clear();
    out.optimal = true;
    out.wall_seconds = ctx.elapsed();
    return out;
  }

  std::priority_queue<open_node, std::vector<open_node>, std::greater<>> open;
  auto next_id = std::size_t{0};
  open.push({-std::numeric_limits<double>::infinity(), next_id++, {}});
  auto dropped = std::numeric_limits<double>::infinity();

  while (!open.empty()) {
    if (open.top().bound >= out.ub - kPrune) {
      open.pop();
      continue;
    }
    if (out.nodes_exact != 0U &&
        (ctx.elapsed() > o.time_limit || out.nodes_exact >= o.max_nodes)) {
      break;
    }
    auto node = open.top();
    open.pop();

    auto const res = solve_node(ctx, node.cons, pricing_level::full, o.max_cg_iterations,
                                o.cut_rounds != 0U);
    ++out.nodes_exact;
    if (!res.feasible) {
      if (!res.converged) {
        ++out.unresolved;
        dropped = std::min(dropped, node.bound);
      }
      continue;
    }
    auto const bound = res.converged ? std::max(res.bound, node.bound) : node.bound;
    if (node.id == 0U) {
      out.root_bound = bound;
    }
    if (bound >= out.ub - kPrune) {
      continue;
    }

    auto const integral = std::all_of(begin(res.lambda), end(res.lambda), [](double l) {
      return l < kIntegral || l > 1.0 - kIntegral;
    });
    if (integral) {
      std::vector<column> routes;
      for (auto k = 0U; k != res.columns.size(); ++k) {
        if (res.lambda[k] > 1.0 - kIntegral) {
          routes.push_back(res.columns[k]);
        }
      }
      if (is_solution(routes, m) && total(routes) < out.ub) {
        out.ub = total(routes);
        out.routes = std::move(routes);
      }
      if (res.converged) {
        continue;
      }
    }

    try {
      auto const cands = branching_candidates(ctx, res, o.strong_branching_candidates);
      auto const chosen = select_branch(ctx, node.cons, cands);
      auto [left, right] = children(node.cons, chosen);
      open.push({bound, next_id++, std::move(left)});
      open.push({bound, next_id++, std::move(right)});
    } catch (no_fractional_entity const&) {
      ++out.unresolved;
      dropped = std::min(dropped, bound);
    }
  }

  auto lb = std::min(out.ub, dropped);
  while (!open.empty()) {
    if (open.top().bound < out.ub - kPrune) {
      lb = std::min(lb, open.top().bound);
      ++out.unresolved;
    }
    open.pop();
  }
  out.lb = lb;
  out.optimal = out.unresolved == 0U && std::isfinite(out.ub);
  out.gap_percent = out.lb > 0.0 && std::isfinite(out.ub)
                        ? 100.0 * (out.ub - out.lb) / out.lb
                        : (out.ub == out.lb ? 0.0 : std::numeric_limits<double>::infinity());
  out.nodes_heuristic = ctx.strong_branching_evaluations;
  out.columns = ctx.pool.size();
  out.cuts = ctx.cuts.size();
  out.wall_seconds = ctx.elapsed();
  return out;
}

nlohmann::json to_json(bcp_result const& r) {
  auto const num = [](double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
  };
  auto routes = nlohmann::json::array();
  for (auto const& c : r.routes) {
    auto seq = nlohmann::json::array();
    for (auto const& x : c.seq) {
      seq.push_back({{"service", x.service}, {"mode", x.mode}});
    }
    routes.push_back({{"duration", c.cost}, {"services", std::move(seq)}});
  }
  return {{"lb", num(r.lb)},
          {"ub", num(r.ub)},
          {"gap_percent", num(r.gap_percent)},
          {"nodes_exact", r.nodes_exact},
          {"nodes_heuristic", r.nodes_heuristic},
          {"columns", r.columns},
          {"cuts", r.cuts},
          {"wall_seconds", r.wall_seconds},
          {"optimal", r.optimal},
          {"unresolved", r.unresolved},
          {"root_bound", num(r.root_bound)},
          {"routes", std::move(routes)}};
}

}  // namespace tdarc::bcp

#include <algorithm>
#include <cmath>
#include <map>

#include "tdarc/bcp/solver.h"

namespace tdarc::bcp {

namespace {

constexpr auto kIntegral = 1e-6;

struct scored {
  branch_candidate c;
  double distance;  // of the fractional part to 0.5
};

void consider(std::vector<scored>& out, transition_row row, double value, double low,
              double high) {
  if (value - low <= kIntegral || high - value <= kIntegral) {
    return;
  }
  auto const frac = (value - low) / (high - low);
  out.push_back({{std::move(row), value, low, high}, std::abs(frac - 0.5)});
}

transition_row entity(row_kind kind, std::uint32_t a, std::uint32_t b = 0U) {
  transition_row r;
  r.kind = kind;
  r.a = a;
  r.b = b;
  return r;
}

}  // namespace

double rank(double z_left, double z_right, double alpha) {
  return alpha * std::min(z_left, z_right) + (1.0 - alpha) * std::max(z_left, z_right);
}

std::vector<branch_candidate> branching_candidates(bcp_context const& ctx,
                                                   cg_result const& sol, std::size_t limit) {
  auto const& inst = ctx.model.inst();
  auto const& nodes = ctx.nodes;
  auto const n = static_cast<std::uint32_t>(nodes.service_count());

  std::vector<double> degree(inst.vertex_count, 0.0);
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> deadhead, pair, arc;
  for (auto k = 0U; k != sol.columns.size(); ++k) {
    auto const l = sol.lambda[k];
    auto prev = node_t{0};
    auto const visit = [&](node_t p, node_t q) {
      auto const& a = nodes[p];
      auto const& b = nodes[q];
      if (a.end != b.start) {
        degree[a.end] += l;
        degree[b.start] += l;
        deadhead[{a.end, b.start}] += l;
      }
      auto const u = a.depot ? n : a.service;
      auto const v = b.depot ? n : b.service;
      pair[{std::min(u, v), std::max(u, v)}] += l;
      arc[{p, q}] += l;
    };
    for (auto const& x : sol.columns[k].seq) {
      auto const p = node_of(x.service, x.mode);
      visit(prev, p);
      prev = p;
    }
    visit(prev, 0);
  }

  std::vector<unsigned> parity(inst.vertex_count, 0U);
  for (auto const& link : inst.links) {
    if (link.required) {
      parity[link.from] ^= 1U;
      parity[link.to] ^= 1U;
    }
  }

  std::vector<scored> found;
  for (auto v = 0U; v != inst.vertex_count; ++v) {
    auto low = std::floor(degree[v] + kIntegral);
    if (static_cast<unsigned>(low) % 2U != parity[v]) {
      low -= 1.0;
    }
    consider(found, entity(row_kind::vertex_degree, v), degree[v], low, low + 2.0);
  }
  for (auto const& [key, value] : deadhead) {
    consider(found, entity(row_kind::deadhead_arc, key.first, key.second), value,
             std::floor(value), std::ceil(value));
  }
  for (auto const& [key, value] : pair) {
    consider(found, entity(row_kind::required_pair, key.first, key.second),
             value, std::floor(value), std::ceil(value));
  }
  if (found.empty()) {
    for (auto const& [key, value] : arc) {
      consider(found, entity(row_kind::node_arc, key.first, key.second), value,
               std::floor(value), std::ceil(value));
    }
  }

  std::stable_sort(begin(found), end(found),
                   [](auto const& x, auto const& y) { return x.distance < y.distance; });
  std::vector<branch_candidate> out;
  for (auto i = 0U; i != found.size() && i != limit; ++i) {
    out.push_back(found[i].c);
  }
  return out;
}

std::pair<node_constraints, node_constraints> children(node_constraints const& parent,
                                                       branch_candidate const& c) {
  auto left = parent;
  auto right = parent;
  auto down = c.row;
  down.sense = row_sense::leq;
  down.rhs = c.low;
  if (c.low <= 0.0) {
    left.forbidden.push_back(std::move(down));
  } else {
    left.rows.push_back(std::move(down));
  }
  auto up = c.row;
  up.sense = row_sense::geq;
  up.rhs = c.high;
  right.rows.push_back(std::move(up));
  return {std::move(left), std::move(right)};
}

branch_candidate select_branch(bcp_context& ctx, node_constraints const& cons,
                               std::vector<branch_candidate> const& candidates) {
  if (candidates.empty()) {
    throw no_fractional_entity{"no fractional branching entity in a fractional solution"};
  }
  if (candidates.size() == 1U) {
    return candidates.front();
  }
  auto best = 0U;
  auto best_rank = -std::numeric_limits<double>::infinity();
  for (auto i = 0U; i != candidates.size(); ++i) {
    if (i != 0U && ctx.elapsed() > ctx.options.time_limit) {
      break;
    }
    auto const [left, right] = children(cons, candidates[i]);
    auto const z = [&](node_constraints const& child) {
      ++ctx.strong_branching_evaluations;
      auto const r = solve_node(ctx, child, pricing_level::fast_only,
                                ctx.options.strong_branching_iterations, false);
      return r.feasible ? r.bound : std::numeric_limits<double>::infinity();
    };
    auto const score = rank(z(left), z(right), ctx.options.rank_alpha);
    if (score > best_rank) {
      best_rank = score;
      best = i;
    }
  }
  return candidates[best];
}

}  // namespace tdarc::bcp

#include <algorithm>

#include "tdarc/hgs/split.h"

namespace tdarc::hgs {

namespace {

using pl_time::kInfinity;

// cost[i][len-1] of the route perm[i .. i+len-1], up to the window
std::vector<std::vector<double>> route_costs(std::span<service_t const> perm,
                                             profiles::travel_model const& m,
                                             penalties const& pen,
                                             std::size_t window) {
  auto const n = perm.size();
  auto const Q = m.inst().capacity;
  std::vector<std::vector<double>> costs(n);
  for (auto i = 0U; i != n; ++i) {
    std::array<double, 2> t{kInfinity, kInfinity};
    auto load = 0.0;
    for (auto j = i; j != n && j - i < window; ++j) {
      auto const s = perm[j];
      load += m.inst().demand(s);
      if (j != i && load > 2.0 * Q) {
        break;
      }
      std::array<double, 2> next{kInfinity, kInfinity};
      for (auto l = 1U; l <= m.inst().mode_count(s); ++l) {
        auto const from = start_vertex(m, s, l);
        if (j == i) {
          next[l - 1U] = m.service(s, l, m.travel(network::instance::depot, from, 0.0));
          continue;
        }
        auto const prev = perm[j - 1U];
        for (auto k = 1U; k <= m.inst().mode_count(prev); ++k) {
          if (t[k - 1U] != kInfinity) {
            next[l - 1U] = std::min(
                next[l - 1U],
                m.service(s, l, m.travel(end_vertex(m, prev, k), from, t[k - 1U])));
          }
        }
      }
      t = next;
      auto duration = kInfinity;
      for (auto k = 1U; k <= m.inst().mode_count(s); ++k) {
        if (t[k - 1U] != kInfinity) {
          duration = std::min(duration, m.travel(end_vertex(m, s, k),
                                                 network::instance::depot, t[k - 1U]));
        }
      }
      costs[i].push_back(penalized_cost(duration, load, pen, m));
    }
  }
  return costs;
}

}  // namespace

route_plan split_giant_tour(std::span<service_t const> perm,
                            profiles::travel_model const& m,
                            penalties const& pen, std::size_t max_routes) {
  auto const n = perm.size();
  if (n == 0U) {
    return evaluate_plan({}, m);
  }
  max_routes = std::clamp<std::size_t>(max_routes, 1U, n);

  auto window = n;
  auto costs = route_costs(perm, m, pen, window);
  // f[k][j]: best cost of perm[0 .. j-1] with exactly k routes
  std::vector<std::vector<double>> f(max_routes + 1U,
                                     std::vector<double>(n + 1U, kInfinity));
  std::vector<std::vector<std::size_t>> from(
      max_routes + 1U, std::vector<std::size_t>(n + 1U, 0U));
  f[0][0] = 0.0;
  for (auto k = 1U; k <= max_routes; ++k) {
    for (auto i = 0U; i != n; ++i) {
      if (f[k - 1U][i] == kInfinity) {
        continue;
      }
      for (auto len = 1U; len <= costs[i].size(); ++len) {
        auto const c = f[k - 1U][i] + costs[i][len - 1U];
        if (c < f[k][i + len]) {
          f[k][i + len] = c;
          from[k][i + len] = i;
        }
      }
    }
  }
  auto best_k = 0U;
  for (auto k = 1U; k <= max_routes; ++k) {
    if (f[k][n] < (best_k == 0U ? kInfinity : f[best_k][n])) {
      best_k = k;
    }
  }
  std::vector<std::vector<service_t>> routes;
  if (best_k == 0U) {
    // the load cut-off left no partition within the route limit
    auto const per = (n + max_routes - 1U) / max_routes;
    for (auto i = 0U; i < n; i += per) {
      routes.emplace_back(perm.begin() + i, perm.begin() + std::min(n, i + per));
    }
    return evaluate_plan(std::move(routes), m);
  }
  auto j = n;
  for (auto k = best_k; k > 0U; --k) {
    auto const i = from[k][j];
    routes.emplace_back(perm.begin() + i, perm.begin() + j);
    j = i;
  }
  std::reverse(begin(routes), end(routes));
  return evaluate_plan(std::move(routes), m);
}

}  // namespace tdarc::hgs

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tdarc/bcp/cuts.h"

namespace tdarc::bcp {

namespace {

constexpr auto kViolation = 1e-6;

bool known(transition_row const& r, std::span<transition_row const> pool) {
  return std::any_of(begin(pool), end(pool), [&](auto const& o) {
    return o.kind == r.kind && o.members == r.members;
  });
}

// connected components of an undirected graph given by weighted pairs
std::vector<std::vector<std::uint32_t>> components(
    std::size_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> const& edges) {
  std::vector<std::uint32_t> parent(n);
  std::iota(begin(parent), end(parent), 0U);
  auto const find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      x = parent[x] = parent[parent[x]];
    }
    return x;
  };
  for (auto const& [a, b] : edges) {
    parent[find(a)] = find(b);
  }
  std::vector<std::vector<std::uint32_t>> by_root(n);
  for (auto v = 0U; v != n; ++v) {
    by_root[find(v)].push_back(v);
  }
  std::erase_if(by_root, [](auto const& c) { return c.empty(); });
  return by_root;
}

template <typename Fn>
void for_each_transition(support const& sup, node_table const& nodes, Fn&& fn) {
  for (auto k = 0U; k != sup.columns.size(); ++k) {
    auto prev = node_t{0};
    for (auto const& x : sup.columns[k]->seq) {
      auto const p = node_of(x.service, x.mode);
      fn(nodes[prev], nodes[p], sup.lambda[k]);
      prev = p;
    }
    fn(nodes[prev], nodes[0], sup.lambda[k]);
  }
}

}  // namespace

double crossing(transition_row const& r, support const& sup, node_table const& nodes) {
  auto sum = 0.0;
  for (auto k = 0U; k != sup.columns.size(); ++k) {
    sum += sup.lambda[k] * coefficient(r, *sup.columns[k], nodes);
  }
  return sum;
}

std::vector<transition_row> separate_odd_edge_cuts(profiles::travel_model const& m,
                                                   node_table const& nodes,
                                                   support const& sup,
                                                   std::span<transition_row const> pool) {
  auto const& inst = m.inst();
  auto const nv = inst.vertex_count;

  std::vector<std::vector<bool>> candidates;
  for (auto v = 1U; v < nv; ++v) {
    std::vector<bool> s(nv, false);
    s[v] = true;
    candidates.push_back(std::move(s));
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> deadheads;
  for_each_transition(sup, nodes, [&](node_info const& a, node_info const& b, double) {
    if (a.end != b.start) {
      deadheads.emplace_back(a.end, b.start);
    }
  });
  std::vector<std::pair<std::uint32_t, std::uint32_t>> required;
  for (auto s = 0U; s != inst.service_count(); ++s) {
    required.emplace_back(inst.service_link(s).from, inst.service_link(s).to);
  }
  for (auto const* graph : {&deadheads, &required}) {
    for (auto const& c : components(nv, *graph)) {
      if (c.size() < 2U || std::find(begin(c), end(c), 0U) != end(c)) {
        continue;
      }
      std::vector<bool> s(nv, false);
      for (auto const v : c) {
        s[v] = true;
      }
      candidates.push_back(std::move(s));
    }
  }

  std::vector<transition_row> out;
  for (auto& s : candidates) {
    auto odd = 0U;
    for (auto const& l : inst.links) {
      if (l.required && s[l.from] != s[l.to]) {
        ++odd;
      }
    }
    if (odd % 2U == 0U) {
      continue;
    }
    transition_row r{.kind = row_kind::odd_edge, .sense = row_sense::geq, .rhs = 1.0,
                     .members = std::move(s)};
    if (crossing(r, sup, nodes) < r.rhs - kViolation && !known(r, pool) && !known(r, out)) {
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<transition_row> separate_capacity_cuts(profiles::travel_model const& m,
                                                   node_table const& nodes,
                                                   support const& sup,
                                                   std::span<transition_row const> pool) {
  auto const& inst = m.inst();
  auto const n = inst.service_count();
  std::vector<transition_row> out;
  if (n == 0U || !std::isfinite(inst.capacity)) {
    return out;
  }

  auto const consider = [&](std::vector<bool> s) {
    auto q = 0.0;
    for (auto i = 0U; i != n; ++i) {
      q += s[i] ? inst.demand(i) : 0.0;
    }
    auto const vehicles = std::ceil(q / inst.capacity - 1e-9);
    if (vehicles < 1.0) {
      return;
    }
    transition_row r{.kind = row_kind::capacity, .sense = row_sense::geq,
                     .rhs = 2.0 * vehicles, .members = std::move(s)};
    if (crossing(r, sup, nodes) < r.rhs - kViolation && !known(r, pool) && !known(r, out)) {
      out.push_back(std::move(r));
    }
  };

  if (n <= 12U) {
    for (auto mask = 1UL; mask != (1UL << n); ++mask) {
      std::vector<bool> s(n);
      for (auto i = 0U; i != n; ++i) {
        s[i] = (mask >> i) & 1UL;
      }
      consider(std::move(s));
    }
    return out;
  }

  // service-to-service flow of the current solution
  std::vector<std::vector<double>> flow(n, std::vector<double>(n, 0.0));
  std::vector<std::pair<std::uint32_t, std::uint32_t>> linked;
  for_each_transition(sup, nodes, [&](node_info const& a, node_info const& b, double l) {
    if (!a.depot && !b.depot) {
      flow[a.service][b.service] += l;
      flow[b.service][a.service] += l;
      linked.emplace_back(a.service, b.service);
    }
  });
  for (auto const& c : components(n, linked)) {
    std::vector<bool> s(n, false);
    for (auto const v : c) {
      s[v] = true;
    }
    consider(std::move(s));
  }
  for (auto seed = 0U; seed != n; ++seed) {
    std::vector<bool> s(n, false);
    s[seed] = true;
    for (auto size = 1U; size < std::min<std::size_t>(n, 16U); ++size) {
      auto best = n;
      auto best_flow = 0.0;
      for (auto v = 0U; v != n; ++v) {
        if (s[v]) {
          continue;
        }
        auto f = 0.0;
        for (auto u = 0U; u != n; ++u) {
          f += s[u] ? flow[u][v] : 0.0;
        }
        if (best == n || f > best_flow) {
          best = v;
          best_flow = f;
        }
      }
      s[best] = true;
      consider(s);
    }
  }
  return out;
}

}  // namespace tdarc::bcp

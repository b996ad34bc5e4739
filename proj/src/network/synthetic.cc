#include <algorithm>
#include <cmath>
#include <set>

#include "tdarc/network.h"
#include "tdarc/rng.h"

namespace tdarc::network {

namespace {

link make_link(link_id_t id, link_kind kind, vertex_t from, vertex_t to,
               double distance) {
  link l;
  l.id = id;
  l.kind = kind;
  l.from = from;
  l.to = to;
  l.distance = distance;
  for (auto d = 0U; d != 2U; ++d) {
    l.travel[d] = pl_time::speed_function::constant(1.0, pl_time::kInfinity);
    l.service[d] = l.travel[d];
  }
  return l;
}

void pick_services(instance& inst, std::uint32_t services, int max_demand,
                   double capacity, std::uint32_t fleet, rng& r) {
  std::vector<link_id_t> ids(inst.links.size());
  for (auto i = 0U; i != ids.size(); ++i) {
    ids[i] = i;
  }
  r.shuffle(ids);
  ids.resize(std::min<std::size_t>(services, ids.size()));
  auto max_q = 0.0, total = 0.0;
  for (auto const id : ids) {
    auto& l = inst.links[id];
    l.required = true;
    l.demand = 1.0 + r.below(max_demand);
    max_q = std::max(max_q, l.demand);
    total += l.demand;
  }
  index_services(inst);
  inst.capacity =
      capacity > 0.0 ? capacity : std::max(max_q, std::ceil(total / 2.5));
  inst.fleet = fleet > 0U ? fleet : static_cast<std::uint32_t>(ids.size());
}

}  // namespace

instance random_network(synthetic_params const& p) {
  if (p.vertices < 2U) {
    throw invariant_violation{"random network needs at least 2 vertices"};
  }
  rng r{p.seed, 0x5e7};
  std::vector<std::pair<double, double>> pts(p.vertices);
  for (auto& [x, y] : pts) {
    x = r.uniform(0.0, 100.0);
    y = r.uniform(0.0, 100.0);
  }
  auto const dist = [&](vertex_t a, vertex_t b) {
    auto const d = std::hypot(pts[a].first - pts[b].first,
                              pts[a].second - pts[b].second);
    return std::max(1.0, std::round(d * 10.0) / 10.0);
  };

  instance inst;
  inst.name = p.name;
  inst.vertex_count = p.vertices;
  std::set<std::pair<vertex_t, vertex_t>> used;
  auto const add = [&](link_kind kind, vertex_t a, vertex_t b) {
    used.insert({std::min(a, b), std::max(a, b)});
    inst.links.push_back(make_link(static_cast<link_id_t>(inst.links.size()),
                                   kind, a, b, dist(a, b)));
  };

  // Prim's tree keeps the network strongly connected through edges
  std::vector<bool> in_tree(p.vertices, false);
  std::vector<double> best(p.vertices, pl_time::kInfinity);
  std::vector<vertex_t> parent(p.vertices, 0U);
  best[0] = 0.0;
  for (auto step = 0U; step != p.vertices; ++step) {
    auto u = p.vertices;
    for (auto v = 0U; v != p.vertices; ++v) {
      if (!in_tree[v] && (u == p.vertices || best[v] < best[u])) {
        u = v;
      }
    }
    in_tree[u] = true;
    if (step != 0U) {
      add(link_kind::edge, parent[u], u);
    }
    for (auto v = 0U; v != p.vertices; ++v) {
      if (!in_tree[v] && dist(u, v) < best[v]) {
        best[v] = dist(u, v);
        parent[v] = u;
      }
    }
  }

  auto const max_links =
      static_cast<std::size_t>(p.vertices) * (p.vertices - 1U) / 2U;
  auto extra = static_cast<std::size_t>(std::lround(p.extra_links * p.vertices));
  extra = std::max<std::size_t>(extra, p.services > inst.links.size()
                                           ? p.services - inst.links.size()
                                           : 0U);
  extra = std::min(extra, max_links - inst.links.size());
  while (extra != 0U) {
    auto const a = static_cast<vertex_t>(r.below(static_cast<int>(p.vertices)));
    auto const b = static_cast<vertex_t>(r.below(static_cast<int>(p.vertices)));
    if (a == b || used.contains({std::min(a, b), std::max(a, b)})) {
      continue;
    }
    add(r.bernoulli(p.arc_share) ? link_kind::arc : link_kind::edge, a, b);
    --extra;
  }
  pick_services(inst, p.services, p.max_demand, p.capacity, p.fleet, r);
  make_demands_integral(inst);
  validate(inst);
  return inst;
}

instance grid_network(std::uint32_t rows, std::uint32_t cols,
                      std::uint32_t services, std::uint64_t seed) {
  rng r{seed, 0x671d};
  instance inst;
  inst.name = "grid_" + std::to_string(rows) + "x" + std::to_string(cols);
  inst.vertex_count = rows * cols;
  auto const id = [&](std::uint32_t i, std::uint32_t j) { return i * cols + j; };
  for (auto i = 0U; i != rows; ++i) {
    for (auto j = 0U; j != cols; ++j) {
      if (j + 1U < cols) {
        inst.links.push_back(make_link(static_cast<link_id_t>(inst.links.size()),
                                       link_kind::edge, id(i, j), id(i, j + 1U),
                                       1.0 + r.below(3)));
      }
      if (i + 1U < rows) {
        inst.links.push_back(make_link(static_cast<link_id_t>(inst.links.size()),
                                       link_kind::edge, id(i, j), id(i + 1U, j),
                                       1.0 + r.below(3)));
      }
    }
  }
  pick_services(inst, services, 5, 0.0, 0U, r);
  validate(inst);
  return inst;
}

}  // namespace tdarc::network

#include <algorithm>
#include <queue>

#include "tdarc/profiles.h"

namespace tdarc::profiles {

namespace {

struct search_result {
  std::vector<double> arrival;
  std::vector<network::link_id_t> pred_link;
  std::vector<vertex_t> pred_vertex;
};

search_result search(network::instance const& inst, vertex_t from,
                     double departure) {
  auto const n = inst.vertex_count;
  auto const out = network::outgoing_links(inst);
  search_result r{std::vector<double>(n, pl_time::kInfinity),
                  std::vector<network::link_id_t>(n, 0U),
                  std::vector<vertex_t>(n, n)};
  using entry = std::pair<double, vertex_t>;
  std::priority_queue<entry, std::vector<entry>, std::greater<>> pq;
  r.arrival[from] = departure;
  pq.push({departure, from});
  while (!pq.empty()) {
    auto const [t, u] = pq.top();
    pq.pop();
    if (t > r.arrival[u]) {
      continue;
    }
    for (auto const& o : out[u]) {
      auto const& l = inst.links[o.link];
      double a;
      try {
        a = pl_time::arrival_query_iterative(l.travel[o.direction], l.distance, t);
      } catch (arrival_beyond_horizon const&) {
        continue;
      }
      if (a < r.arrival[o.head]) {
        r.arrival[o.head] = a;
        r.pred_link[o.head] = o.link;
        r.pred_vertex[o.head] = u;
        pq.push({a, o.head});
      }
    }
  }
  return r;
}

}  // namespace

std::vector<double> discrete_arrivals(network::instance const& inst,
                                      vertex_t from, double departure) {
  return search(inst, from, departure).arrival;
}

discrete_path discrete_quickest_path(network::instance const& inst,
                                     vertex_t from, vertex_t to,
                                     double departure) {
  if (departure < 0.0) {
    throw query_out_of_domain{"negative departure time"};
  }
  discrete_path p;
  p.departure = departure;
  if (from == to) {
    p.vertices = {from};
    p.arrival = departure;
    return p;
  }
  auto const r = search(inst, from, departure);
  if (r.arrival[to] == pl_time::kInfinity) {
    throw unreachable{"vertex " + std::to_string(to) + " unreachable from " +
                      std::to_string(from) + " before the hard cap"};
  }
  p.arrival = r.arrival[to];
  for (auto v = to; v != from; v = r.pred_vertex[v]) {
    p.vertices.push_back(v);
    p.links.push_back(r.pred_link[v]);
  }
  p.vertices.push_back(from);
  std::reverse(begin(p.vertices), end(p.vertices));
  std::reverse(begin(p.links), end(p.links));
  return p;
}

}  // namespace tdarc::profiles

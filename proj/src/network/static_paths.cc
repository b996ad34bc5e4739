#include <queue>

#include "tdarc/network.h"

namespace tdarc::network {

std::vector<double> static_distances(instance const& inst, vertex_t source,
                                     link_weight const& weight) {
  auto const out = outgoing_links(inst);
  std::vector<double> dist(inst.vertex_count, pl_time::kInfinity);
  using entry = std::pair<double, vertex_t>;
  std::priority_queue<entry, std::vector<entry>, std::greater<>> pq;
  dist[source] = 0.0;
  pq.push({0.0, source});
  while (!pq.empty()) {
    auto const [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) {
      continue;
    }
    for (auto const& o : out[u]) {
      auto const nd = d + weight(inst.links[o.link], o.direction);
      if (nd < dist[o.head]) {
        dist[o.head] = nd;
        pq.push({nd, o.head});
      }
    }
  }
  return dist;
}

std::vector<std::vector<double>> all_pairs_static(instance const& inst,
                                                  link_weight const& weight) {
  std::vector<std::vector<double>> dist;
  dist.reserve(inst.vertex_count);
  for (auto v = 0U; v != inst.vertex_count; ++v) {
    dist.push_back(static_distances(inst, v, weight));
  }
  return dist;
}

}  // namespace tdarc::network

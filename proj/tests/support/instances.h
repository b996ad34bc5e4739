#pragma once

#include "tdarc/network.h"

namespace tdarc::test {

inline network::instance make_instance(std::uint32_t vertices,
                                       std::uint32_t services,
                                       network::speed_level level,
                                       std::uint64_t seed,
                                       double arc_share = 0.3) {
  network::synthetic_params p;
  p.vertices = vertices;
  p.services = services;
  p.arc_share = arc_share;
  p.seed = seed;
  p.name = "t" + std::to_string(seed);
  return network::generate_speed_profiles(network::random_network(p), level,
                                          seed);
}

inline network::link plain_link(network::link_id_t id, network::link_kind kind,
                                network::vertex_t from, network::vertex_t to,
                                double distance, double horizon) {
  network::link l;
  l.id = id;
  l.kind = kind;
  l.from = from;
  l.to = to;
  l.distance = distance;
  for (auto d = 0U; d != 2U; ++d) {
    l.travel[d] = pl_time::speed_function::constant(1.0, horizon);
    l.service[d] = l.travel[d];
  }
  return l;
}

}  // namespace tdarc::test

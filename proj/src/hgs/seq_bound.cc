#include <algorithm>

#include "tdarc/hgs/seq_bound.h"

namespace tdarc::hgs {

using pl_time::kInfinity;

seq_bound seq_single(service_t s, profiles::travel_model const& m) {
  seq_bound b;
  b.first = b.last = s;
  for (auto k = 1U; k <= m.inst().mode_count(s); ++k) {
    b.t[k - 1U][k - 1U] = m.service_gap(s, k);
  }
  return b;
}

seq_bound seq_depot(profiles::travel_model const& m) {
  seq_bound b;
  b.first = b.last = static_cast<service_t>(m.service_count());
  b.t[0][0] = 0.0;
  return b;
}

seq_bound seq_concat(seq_bound const& a, seq_bound const& b,
                     profiles::travel_model const& m) {
  seq_bound out;
  out.first = a.first;
  out.last = b.last;
  auto const mx = mode_count(m, a.last);
  auto const my = mode_count(m, b.first);
  std::array<std::array<double, 2>, 2> gap{{{kInfinity, kInfinity},
                                            {kInfinity, kInfinity}}};
  for (auto x = 1U; x <= mx; ++x) {
    for (auto y = 1U; y <= my; ++y) {
      gap[x - 1U][y - 1U] =
          m.travel_gap(end_vertex(m, a.last, x), start_vertex(m, b.first, y));
    }
  }
  for (auto k = 0U; k != mode_count(m, a.first); ++k) {
    for (auto l = 0U; l != mode_count(m, b.last); ++l) {
      auto best = kInfinity;
      for (auto x = 0U; x != mx; ++x) {
        for (auto y = 0U; y != my; ++y) {
          best = std::min(best, a.t[k][x] + gap[x][y] + b.t[y][l]);
        }
      }
      out.t[k][l] = best;
    }
  }
  return out;
}

prefix_times depot_start(profiles::travel_model const& m) {
  prefix_times p;
  p.last = static_cast<service_t>(m.service_count());
  p.t[0] = 0.0;
  return p;
}

double move_lower_bound(prefix_times const& prefix, seq_bound const& rest,
                        profiles::travel_model const& m) {
  auto best = kInfinity;
  for (auto x = 1U; x <= mode_count(m, prefix.last); ++x) {
    if (prefix.t[x - 1U] == kInfinity) {
      continue;
    }
    for (auto y = 1U; y <= mode_count(m, rest.first); ++y) {
      auto const arrive = m.travel(end_vertex(m, prefix.last, x),
                                   start_vertex(m, rest.first, y), prefix.t[x - 1U]);
      if (arrive == kInfinity) {
        continue;
      }
      for (auto l = 0U; l != mode_count(m, rest.last); ++l) {
        best = std::min(best, arrive + rest.t[y - 1U][l]);
      }
    }
  }
  return best;
}

}  // namespace tdarc::hgs

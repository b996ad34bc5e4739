#include <algorithm>
#include <cmath>
#include <numeric>

#include "tdarc/network.h"
#include "tdarc/rng.h"

namespace tdarc::network {

speed_level parse_level(std::string_view s) {
  if (s == "L" || s == "l") {
    return speed_level::low;
  }
  if (s == "M" || s == "m") {
    return speed_level::medium;
  }
  if (s == "H" || s == "h") {
    return speed_level::high;
  }
  throw error{"unknown speed level '" + std::string{s} + "' (use L, M or H)"};
}

char level_name(speed_level l) {
  switch (l) {
    case speed_level::low: return 'L';
    case speed_level::medium: return 'M';
    case speed_level::high: return 'H';
  }
  return '?';
}

std::array<speed_bounds, 7> const& level_bounds(speed_level l) {
  static std::array<speed_bounds, 7> const low{{{0.6, 0.9},
                                                {0.8, 1.0},
                                                {1.0, 1.3},
                                                {0.9, 1.1},
                                                {1.0, 1.3},
                                                {0.8, 1.0},
                                                {0.6, 0.9}}};
  static std::array<speed_bounds, 7> const medium{{{0.5, 0.8},
                                                   {0.7, 1.0},
                                                   {1.0, 1.4},
                                                   {0.8, 1.2},
                                                   {1.0, 1.4},
                                                   {0.7, 1.0},
                                                   {0.5, 0.8}}};
  static std::array<speed_bounds, 7> const high{{{0.4, 0.7},
                                                 {0.6, 1.0},
                                                 {1.0, 1.6},
                                                 {0.7, 1.3},
                                                 {1.0, 1.6},
                                                 {0.6, 1.0},
                                                 {0.4, 0.7}}};
  switch (l) {
    case speed_level::low: return low;
    case speed_level::medium: return medium;
    case speed_level::high: return high;
  }
  return low;
}

double greedy_longest_route(instance const& inst) {
  auto const dist = all_pairs_static(
      inst, [](link const& l, unsigned) { return l.distance; });
  auto const n = inst.service_count();
  std::vector<bool> served(n, false);
  auto remaining = n;
  auto longest = 0.0;
  while (remaining != 0U) {
    auto at = instance::depot;
    auto time = 0.0;
    auto load = 0.0;
    while (true) {
      auto best = pl_time::kInfinity;
      auto best_s = n;
      auto best_mode = 1U;
      for (auto s = 0U; s != n; ++s) {
        if (served[s] || load + inst.demand(s) > inst.capacity) {
          continue;
        }
        for (auto mode = 1U; mode <= inst.mode_count(s); ++mode) {
          auto const d = dist[at][inst.service(s, mode).from];
          if (d < best) {
            best = d;
            best_s = s;
            best_mode = mode;
          }
        }
      }
      if (best_s == n) {
        break;
      }
      auto const ref = inst.service(best_s, best_mode);
      time += best + inst.service_link(best_s).distance / kServiceSpeedRatio;
      load += inst.demand(best_s);
      at = ref.to;
      served[best_s] = true;
      --remaining;
    }
    if (time == 0.0 && remaining != 0U) {
      throw invariant_violation{"greedy construction: unreachable service"};
    }
    time += dist[at][instance::depot];
    if (!std::isfinite(time)) {
      throw invariant_violation{"greedy construction: depot unreachable"};
    }
    longest = std::max(longest, time);
  }
  return longest;
}

double default_duration_limit(instance const& inst) {
  return 2.0 * greedy_longest_route(inst);
}

instance generate_speed_profiles(instance inst, speed_level level,
                                 std::uint64_t seed) {
  if (!std::isfinite(inst.duration_limit)) {
    set_duration_limit(inst, default_duration_limit(inst));
  }
  auto const D = inst.duration_limit;
  auto const& bounds = level_bounds(level);
  for (auto& l : inst.links) {
    rng r{seed, l.id};
    for (auto d = 0U; d != 2U; ++d) {
      if (d >= l.direction_count()) {
        l.travel[d] = pl_time::speed_function::constant(1.0, D);
        l.service[d] = l.travel[d];
        continue;
      }
      std::vector<int> grid(19);
      std::iota(begin(grid), end(grid), 1);
      r.shuffle(grid);
      grid.resize(6);
      std::sort(begin(grid), end(grid));
      std::vector<double> bps;
      for (auto const k : grid) {
        bps.push_back(k * D / 20.0);
      }
      std::vector<double> speeds;
      for (auto const& b : bounds) {
        speeds.push_back(r.uniform(b.lo, b.hi));
      }
      l.travel[d] = pl_time::speed_function{bps, speeds, D};
      l.service[d] = l.travel[d].scaled(kServiceSpeedRatio);
    }
  }
  return inst;
}

instance perturb_instance(instance const& inst, double sigma,
                          std::uint64_t seed, std::uint32_t scenario) {
  auto out = inst;
  for (auto& l : out.links) {
    rng r{seed, (static_cast<std::uint64_t>(scenario) << 32U) | l.id};
    for (auto d = 0U; d != l.direction_count(); ++d) {
      auto const& v = l.travel[d];
      auto const& w = l.service[d];
      std::vector<double> factors;
      for (auto k = 0U; k != v.piece_count(); ++k) {
        factors.push_back(r.truncated_normal(1.0, sigma, 1.0 - sigma, 1.0 + sigma));
      }
      auto const shared = std::equal(begin(v.breakpoints()), end(v.breakpoints()),
                                     begin(w.breakpoints()), end(w.breakpoints()));
      std::vector<double> vs{begin(v.speeds()), end(v.speeds())};
      std::vector<double> ws{begin(w.speeds()), end(w.speeds())};
      for (auto k = 0U; k != vs.size(); ++k) {
        vs[k] *= factors[k];
      }
      for (auto k = 0U; k != ws.size(); ++k) {
        ws[k] *= shared ? factors[k]
                        : r.truncated_normal(1.0, sigma, 1.0 - sigma, 1.0 + sigma);
      }
      l.travel[d] = pl_time::speed_function{
          {begin(v.breakpoints()), end(v.breakpoints())}, vs, v.horizon()};
      l.service[d] = pl_time::speed_function{
          {begin(w.breakpoints()), end(w.breakpoints())}, ws, w.horizon()};
    }
  }
  return out;
}

std::vector<instance> perturb_scenario(instance const& inst,
                                       scenario_params const& p) {
  std::vector<instance> out;
  out.reserve(p.count);
  for (auto s = 0U; s != p.count; ++s) {
    out.push_back(perturb_instance(inst, p.sigma, p.seed, s));
  }
  return out;
}

namespace {

double time_average(pl_time::speed_function const& v) {
  auto const D = v.horizon();
  if (!std::isfinite(D)) {
    return v.speeds().back();
  }
  auto sum = 0.0;
  auto prev = 0.0;
  for (auto k = 0U; k != v.piece_count(); ++k) {
    auto const end = k < v.breakpoints().size() ? v.breakpoints()[k] : D;
    sum += v.speeds()[k] * (end - prev);
    prev = end;
  }
  return sum / D;
}

}  // namespace

instance static_equivalent(instance const& inst) {
  auto travel_num = 0.0, travel_den = 0.0, service_num = 0.0, service_den = 0.0;
  for (auto const& l : inst.links) {
    for (auto d = 0U; d != l.direction_count(); ++d) {
      travel_num += l.distance * time_average(l.travel[d]);
      travel_den += l.distance;
      if (l.required) {
        service_num += l.distance * time_average(l.service[d]);
        service_den += l.distance;
      }
    }
  }
  auto const travel = travel_num / travel_den;
  auto const service = service_den > 0.0 ? service_num / service_den : travel;
  auto out = inst;
  for (auto& l : out.links) {
    for (auto d = 0U; d != 2U; ++d) {
      l.travel[d] = pl_time::speed_function::constant(
          d < l.direction_count() ? travel : 1.0, inst.duration_limit);
      l.service[d] = pl_time::speed_function::constant(
          d < l.direction_count() ? service : 1.0, inst.duration_limit);
    }
  }
  return out;
}

}  // namespace tdarc::network

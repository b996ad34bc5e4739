#include <algorithm>

#include "tdarc/hgs/decoder.h"

namespace tdarc::hgs {

using pl_time::kInfinity;

decoded_route decode_route(std::span<service_t const> route,
                           profiles::travel_model const& m) {
  decoded_route out;
  if (route.empty()) {
    out.duration = 0.0;
    return out;
  }
  auto const L = route.size();
  // best completion per (position, mode) and the predecessor mode
  std::vector<std::array<double, 2>> t(L, {kInfinity, kInfinity});
  std::vector<std::array<std::uint8_t, 2>> pred(L, {0U, 0U});

  for (auto i = 0U; i != L; ++i) {
    auto const s = route[i];
    for (auto l = 1U; l <= m.inst().mode_count(s); ++l) {
      auto const from = start_vertex(m, s, l);
      if (i == 0U) {
        t[i][l - 1U] = m.service(s, l, m.travel(network::instance::depot, from, 0.0));
        continue;
      }
      auto const prev = route[i - 1U];
      for (auto k = 1U; k <= m.inst().mode_count(prev); ++k) {
        auto const start = t[i - 1U][k - 1U];
        if (start == kInfinity) {
          continue;
        }
        auto const done =
            m.service(s, l, m.travel(end_vertex(m, prev, k), from, start));
        if (done < t[i][l - 1U]) {  // strict: ties keep the lower mode
          t[i][l - 1U] = done;
          pred[i][l - 1U] = static_cast<std::uint8_t>(k);
        }
      }
    }
  }

  auto const last = route[L - 1U];
  auto best_mode = 0U;
  for (auto k = 1U; k <= m.inst().mode_count(last); ++k) {
    if (t[L - 1U][k - 1U] == kInfinity) {
      continue;
    }
    auto const back =
        m.travel(end_vertex(m, last, k), network::instance::depot, t[L - 1U][k - 1U]);
    if (back < out.duration) {
      out.duration = back;
      best_mode = k;
    }
  }
  if (best_mode == 0U) {
    out.duration = kInfinity;
    return out;
  }
  out.modes.resize(L);
  out.completion.resize(L);
  auto mode = best_mode;
  for (auto i = L; i-- > 0U;) {
    out.modes[i] = static_cast<std::uint8_t>(mode);
    out.completion[i] = t[i][mode - 1U];
    mode = pred[i][mode - 1U];
  }
  return out;
}

decoded_route decode_route_checked(std::span<service_t const> route,
                                   profiles::travel_model const& m) {
  auto r = decode_route(route, m);
  if (r.duration == kInfinity) {
    throw infeasible_route{"route leaves the time horizon"};
  }
  return r;
}

double evaluate_fixed_modes(std::span<service_t const> route,
                            std::span<std::uint8_t const> modes,
                            profiles::travel_model const& m) {
  auto t = 0.0;
  auto at = network::instance::depot;
  for (auto i = 0U; i != route.size(); ++i) {
    auto const ref = m.inst().service(route[i], modes[i]);
    t = m.service(route[i], modes[i], m.travel(at, ref.from, t));
    if (t == kInfinity) {
      return kInfinity;
    }
    at = ref.to;
  }
  return m.travel(at, network::instance::depot, t);
}

}  // namespace tdarc::hgs

namespace tdarc::hgs {

std::vector<std::array<double, 2>> completion_table(
    std::span<service_t const> route, profiles::travel_model const& m) {
  std::vector<std::array<double, 2>> t(route.size() + 1U, {kInfinity, kInfinity});
  t[0][0] = 0.0;
  auto prev = static_cast<service_t>(m.service_count());
  for (auto i = 0U; i != route.size(); ++i) {
    auto const s = route[i];
    for (auto l = 1U; l <= m.inst().mode_count(s); ++l) {
      auto const from = start_vertex(m, s, l);
      for (auto k = 1U; k <= mode_count(m, prev); ++k) {
        if (t[i][k - 1U] != kInfinity) {
          t[i + 1U][l - 1U] = std::min(
              t[i + 1U][l - 1U],
              m.service(s, l, m.travel(end_vertex(m, prev, k), from, t[i][k - 1U])));
        }
      }
    }
    prev = s;
  }
  return t;
}

double route_end(service_t last, std::array<double, 2> const& times,
                 profiles::travel_model const& m) {
  auto best = kInfinity;
  for (auto k = 1U; k <= mode_count(m, last); ++k) {
    if (times[k - 1U] != kInfinity) {
      best = std::min(best, m.travel(end_vertex(m, last, k),
                                     network::instance::depot, times[k - 1U]));
    }
  }
  return best;
}

}  // namespace tdarc::hgs

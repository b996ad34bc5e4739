#include <algorithm>
#include <cmath>

#include "tdarc/pl_time.h"

namespace tdarc::pl_time {

namespace {

void check_distance(double distance) {
  if (!(distance > 0.0) || !std::isfinite(distance)) {
    throw invariant_violation{"link distance must be positive"};
  }
}

double arrival_uncapped(speed_function const& v, double distance,
                        double departure) {
  auto const bps = v.breakpoints();
  auto const speeds = v.speeds();
  auto t = departure;
  auto remaining = distance;
  auto k = v.piece_after(t);
  while (true) {
    auto const arrival = t + remaining / speeds[k];
    if (k < bps.size() && arrival > bps[k]) {
      remaining -= speeds[k] * (bps[k] - t);
      t = bps[k];
      ++k;
    } else {
      return arrival;
    }
  }
}

}  // namespace

double arrival_query_iterative(speed_function const& v, double distance,
                               double departure) {
  check_distance(distance);
  if (departure < 0.0) {
    throw query_out_of_domain{"negative departure time"};
  }
  auto const arrival = arrival_uncapped(v, distance, departure);
  auto const cap = 2.0 * v.horizon();
  if (arrival > cap + kTimeTolerance * cap) {
    throw arrival_beyond_horizon{"arrival after the hard cap 2*D"};
  }
  return arrival;
}

double departure_query_iterative(speed_function const& v, double distance,
                                 double arrival) {
  check_distance(distance);
  auto const bps = v.breakpoints();
  auto const speeds = v.speeds();
  auto t = arrival;
  auto remaining = distance;
  auto k = v.piece_before(t);  // speed in effect just before t
  while (true) {
    auto const departure = t - remaining / speeds[k];
    if (k > 0U && departure < bps[k - 1]) {
      remaining -= speeds[k] * (t - bps[k - 1]);
      t = bps[k - 1];
      --k;
      continue;
    }
    if (departure < 0.0) {
      if (arrival_uncapped(v, distance, 0.0) > arrival) {
        throw departure_before_zero{
            "cannot arrive that early even when departing at time 0"};
      }
      return 0.0;
    }
    return departure;
  }
}

arrival_function build_arrival_function(speed_function const& v,
                                        double distance, double horizon) {
  check_distance(distance);
  auto const eps = kTimeTolerance * std::max(1.0, horizon);

  auto const first_arrival = arrival_query_iterative(v, distance, 0.0);
  if (first_arrival > horizon + eps) {
    throw degenerate_horizon{"no departure reaches the end of the link in time"};
  }
  auto const last_departure = departure_query_iterative(v, distance, horizon);

  struct point {
    double t, value;
  };
  std::vector<point> pts;
  pts.push_back({0.0, first_arrival});
  for (auto const bp : v.breakpoints()) {
    if (bp <= last_departure) {
      pts.push_back({bp, arrival_query_iterative(v, distance, bp)});
    }
  }
  for (auto const bp : v.breakpoints()) {
    if (bp >= first_arrival && bp <= horizon) {
      pts.push_back({departure_query_iterative(v, distance, bp), bp});
    }
  }
  pts.push_back({last_departure, horizon});

  std::stable_sort(begin(pts), end(pts),
                   [](point const& a, point const& b) { return a.t < b.t; });

  std::vector<double> times, values;
  for (auto const& p : pts) {
    if (!times.empty() && p.t - times.back() < eps) {
      if (&p == &pts.back()) {
        // the domain end is kept exact
        times.back() = p.t;
        values.back() = p.value;
      }
      continue;
    }
    times.push_back(p.t);
    values.push_back(p.value);
  }
  if (times.size() < 2U) {
    throw degenerate_horizon{"feasible departure window has zero length"};
  }
  return arrival_function{std::move(times), std::move(values)};
}

}  // namespace tdarc::pl_time

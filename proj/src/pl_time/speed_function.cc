#include <algorithm>
#include <cmath>

#include "tdarc/pl_time.h"

namespace tdarc::pl_time {

speed_function::speed_function(std::vector<double> breakpoints,
                               std::vector<double> speeds, double horizon)
    : breakpoints_{std::move(breakpoints)},
      speeds_{std::move(speeds)},
      horizon_{horizon} {
  if (!(horizon_ > 0.0)) {
    throw invariant_violation{"speed function: horizon must be positive"};
  }
  if (speeds_.size() != breakpoints_.size() + 1U) {
    throw invariant_violation{
        "speed function: need exactly one more speed than breakpoints"};
  }
  for (auto const s : speeds_) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw invariant_violation{"speed function: speeds must be positive"};
    }
  }
  for (auto i = 0U; i != breakpoints_.size(); ++i) {
    auto const t = breakpoints_[i];
    if (!(t > 0.0) || !(t < horizon_)) {
      throw invariant_violation{
          "speed function: breakpoints must lie strictly inside (0, D)"};
    }
    if (i != 0U && !(t > breakpoints_[i - 1])) {
      throw invariant_violation{
          "speed function: breakpoints must be strictly increasing"};
    }
  }
}

speed_function speed_function::constant(double speed, double horizon) {
  return speed_function{{}, {speed}, horizon};
}

std::size_t speed_function::piece_after(double t) const {
  return static_cast<std::size_t>(
      std::upper_bound(begin(breakpoints_), end(breakpoints_), t) -
      begin(breakpoints_));
}

std::size_t speed_function::piece_before(double t) const {
  return static_cast<std::size_t>(
      std::lower_bound(begin(breakpoints_), end(breakpoints_), t) -
      begin(breakpoints_));
}

double speed_function::max_speed() const {
  return *std::max_element(begin(speeds_), end(speeds_));
}

double speed_function::min_speed() const {
  return *std::min_element(begin(speeds_), end(speeds_));
}

speed_function speed_function::scaled(double factor) const {
  auto copy = *this;
  for (auto& s : copy.speeds_) {
    s *= factor;
  }
  return copy;
}

}  // namespace tdarc::pl_time

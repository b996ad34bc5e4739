#include <algorithm>
#include <cmath>

#include "tdarc/pl_time.h"

namespace tdarc::pl_time {

arrival_function::arrival_function(std::vector<double> times,
                                   std::vector<double> values)
    : times_{std::move(times)}, values_{std::move(values)} {
  if (times_.size() != values_.size()) {
    throw invariant_violation{"arrival function: size mismatch"};
  }
  if (times_.empty()) {
    return;
  }
  if (times_.size() < 2U) {
    throw invariant_violation{"arrival function: need at least one piece"};
  }
  for (auto i = 0U; i != times_.size(); ++i) {
    if (!std::isfinite(times_[i]) || !std::isfinite(values_[i])) {
      throw invariant_violation{"arrival function: non-finite breakpoint"};
    }
    if (i != 0U && !(times_[i] > times_[i - 1])) {
      throw invariant_violation{
          "arrival function: breakpoints must be strictly increasing"};
    }
    if (i != 0U && values_[i] < values_[i - 1]) {
      throw invariant_violation{"arrival function: must be non-decreasing"};
    }
  }
}

arrival_function arrival_function::identity(double domain_end) {
  return arrival_function{{0.0, domain_end}, {0.0, domain_end}};
}

arrival_function arrival_function::affine(double slope, double intercept,
                                          double domain_begin,
                                          double domain_end) {
  return arrival_function{
      {domain_begin, domain_end},
      {slope * domain_begin + intercept, slope * domain_end + intercept}};
}

linear_piece arrival_function::piece(std::size_t i) const {
  auto const t0 = times_[i];
  auto const t1 = times_[i + 1];
  auto const slope = (values_[i + 1] - values_[i]) / (t1 - t0);
  return {t0, t1, slope, values_[i] - slope * t0};
}

std::size_t arrival_function::find_piece(double t) const {
  return find_piece_between(t, 0U, piece_count() - 1U);
}

std::size_t arrival_function::find_piece_between(double t, std::size_t first,
                                                 std::size_t last) const {
  auto const b = begin(times_);
  auto const it = std::lower_bound(b + static_cast<std::ptrdiff_t>(first) + 1,
                                   b + static_cast<std::ptrdiff_t>(last) + 1, t);
  auto const j = static_cast<std::size_t>(it - b);
  return j == 0U ? 0U : std::min(j - 1U, last);
}

double arrival_function::tolerance() const {
  return empty() ? kTimeTolerance
                 : kTimeTolerance * std::max(1.0, std::abs(domain_end()));
}

bool arrival_function::contains(double t) const {
  if (empty()) {
    return false;
  }
  auto const tol = tolerance();
  return t >= domain_begin() - tol && t <= domain_end() + tol;
}

double arrival_function::operator()(double t) const {
  return query_binary(*this, t);
}

double query_binary(arrival_function const& f, double t) {
  if (!f.contains(t)) {
    return kInfinity;
  }
  t = std::clamp(t, f.domain_begin(), f.domain_end());
  return f.eval_piece(f.find_piece(t), t);
}

}  // namespace tdarc::pl_time

#include <algorithm>
#include <cmath>

#include "tdarc/pl_time.h"

namespace tdarc::pl_time {

bucket_index::bucket_index(arrival_function const& f, std::size_t bucket_count)
    : bucket_count_{std::max<std::size_t>(1U, bucket_count)} {
  if (f.empty()) {
    return;
  }
  span_ = f.domain_end();
  width_ = span_ / static_cast<double>(bucket_count_);
  pieces_.resize(bucket_count_ + 1U);
  for (auto i = 0U; i <= bucket_count_; ++i) {
    auto const t = i == bucket_count_ ? span_ : static_cast<double>(i) * width_;
    pieces_[i] = static_cast<std::uint32_t>(f.find_piece(t));
  }
}

std::size_t bucket_index::lower_bucket(double t) const {
  auto const b = std::floor(t / width_);
  return b <= 0.0 ? 0U
                  : std::min(bucket_count_, static_cast<std::size_t>(b));
}

std::size_t bucket_index::upper_bucket(double t) const {
  auto const b = std::ceil(t / width_);
  return b <= 0.0 ? 0U
                  : std::min(bucket_count_, static_cast<std::size_t>(b));
}

std::size_t default_bucket_count(arrival_function const& f) {
  return std::clamp<std::size_t>(4U * f.piece_count(), 1U, 1024U);
}

bucket_index build_bucket_index(arrival_function const& f,
                                std::size_t bucket_count) {
  return bucket_index{f, bucket_count};
}

query_stats& global_query_stats() {
  static query_stats stats;
  return stats;
}

double query_or_inf(arrival_function const& f, bucket_index const& idx,
                    double t) {
  if (!f.contains(t)) {
    return kInfinity;
  }
  t = std::clamp(t, f.domain_begin(), f.domain_end());
  auto const pieces = idx.bucket_to_piece();
  auto const lo = pieces[idx.lower_bucket(t)];
  auto const hi = pieces[idx.upper_bucket(t)];
  auto& stats = global_query_stats();
  if (lo == hi) {
    if (stats.enabled.load(std::memory_order_relaxed)) {
      stats.direct_hits.fetch_add(1, std::memory_order_relaxed);
    }
    return f.eval_piece(lo, t);
  }
  if (stats.enabled.load(std::memory_order_relaxed)) {
    stats.binary_searches.fetch_add(1, std::memory_order_relaxed);
  }
  return f.eval_piece(f.find_piece_between(t, lo, hi), t);
}

double query(arrival_function const& f, bucket_index const& idx, double t) {
  auto const v = query_or_inf(f, idx, t);
  if (v == kInfinity) {
    throw query_out_of_domain{"departure time outside the function domain"};
  }
  return v;
}

}  // namespace tdarc::pl_time

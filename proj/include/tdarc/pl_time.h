#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "tdarc/errors.h"

namespace tdarc::pl_time {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Relative time tolerance; absolute tolerances are kTimeTolerance * horizon.
inline constexpr double kTimeTolerance = 1e-9;

// Piecewise-constant positive speed on one oriented link. Piece k covers
// [breakpoints[k-1], breakpoints[k]); the last piece extends past the
// horizon indefinitely.
class speed_function {
public:
  speed_function() = default;
  speed_function(std::vector<double> breakpoints, std::vector<double> speeds,
                 double horizon);

  static speed_function constant(double speed, double horizon);

  std::span<double const> breakpoints() const { return breakpoints_; }
  std::span<double const> speeds() const { return speeds_; }
  double horizon() const { return horizon_; }
  std::size_t piece_count() const { return speeds_.size(); }

  // index of the piece in effect right after / right before t
  std::size_t piece_after(double t) const;
  std::size_t piece_before(double t) const;

  double speed_after(double t) const { return speeds_[piece_after(t)]; }
  double speed_before(double t) const { return speeds_[piece_before(t)]; }

  double max_speed() const;
  double min_speed() const;

  // same breakpoints, every speed multiplied by factor
  speed_function scaled(double factor) const;

  friend bool operator==(speed_function const&,
                         speed_function const&) = default;

private:
  std::vector<double> breakpoints_;
  std::vector<double> speeds_{1.0};
  double horizon_{kInfinity};
};

// Iterative O(h) queries. The arrival query refuses to go past
// 2 * horizon (the hard cap).
double arrival_query_iterative(speed_function const& v, double distance,
                               double departure);
double departure_query_iterative(speed_function const& v, double distance,
                                 double arrival);

struct linear_piece {
  double t_start, t_end, slope, intercept;
  double operator()(double t) const { return slope * t + intercept; }
};

// Continuous, increasing piecewise-linear map stored as its breakpoints.
// A default-constructed function is +inf everywhere (no feasible departure).
class arrival_function {
public:
  arrival_function() = default;
  arrival_function(std::vector<double> times, std::vector<double> values);

  static arrival_function identity(double domain_end);
  static arrival_function affine(double slope, double intercept,
                                 double domain_begin, double domain_end);

  bool empty() const { return times_.empty(); }
  std::size_t piece_count() const {
    return times_.empty() ? 0U : times_.size() - 1U;
  }
  double domain_begin() const { return times_.front(); }
  double domain_end() const { return times_.back(); }

  std::span<double const> times() const { return times_; }
  std::span<double const> values() const { return values_; }

  linear_piece piece(std::size_t i) const;

  // Piece containing t. A time exactly on a breakpoint belongs to the
  // earlier piece. Times outside the domain clamp to the first/last piece.
  std::size_t find_piece(double t) const;
  std::size_t find_piece_between(double t, std::size_t first,
                                 std::size_t last) const;

  double eval_piece(std::size_t i, double t) const {
    auto const t0 = times_[i];
    auto const t1 = times_[i + 1];
    auto const v0 = values_[i];
    auto const v1 = values_[i + 1];
    return v0 + (t - t0) * ((v1 - v0) / (t1 - t0));
  }

  // Binary-search evaluation; +inf outside the domain (a tolerance of
  // kTimeTolerance * max(1, domain_end) is accepted at both ends).
  double operator()(double t) const;

  bool contains(double t) const;
  double tolerance() const;

  friend bool operator==(arrival_function const&,
                         arrival_function const&) = default;

private:
  std::vector<double> times_;
  std::vector<double> values_;
};

// Closed-form construction from breakpoint queries; the domain ends at the
// latest departure that still arrives by `horizon`.
arrival_function build_arrival_function(speed_function const& v,
                                        double distance, double horizon);

arrival_function lower_envelope(arrival_function const& f,
                                arrival_function const& g);

// result(t) = outer(inner(t)) wherever inner(t) lies in outer's domain.
arrival_function compose(arrival_function const& outer,
                         arrival_function const& inner);

// Drops interior breakpoints whose removal changes the function by at most
// `tolerance` and merges breakpoints closer than kTimeTolerance * scale.
arrival_function simplify(arrival_function const& f, double tolerance);

// min over the domain of f(t) - t; +inf for the empty function.
double min_gap(arrival_function const& f);

// Max |f - g| over the union of their breakpoints, +inf when the domains
// disagree by more than the tolerance.
double max_difference(arrival_function const& f, arrival_function const& g);

bool approximately_equal(arrival_function const& f, arrival_function const& g,
                         double tolerance);

// JSON array of [t, value] pairs.
std::string to_json(arrival_function const& f);

class bucket_index {
public:
  bucket_index() = default;
  bucket_index(arrival_function const& f, std::size_t bucket_count);

  std::size_t bucket_count() const { return bucket_count_; }
  double span() const { return span_; }
  std::span<std::uint32_t const> bucket_to_piece() const { return pieces_; }

  // bucket range [floor, ceil] of t, clamped to the table
  std::size_t lower_bucket(double t) const;
  std::size_t upper_bucket(double t) const;

private:
  std::size_t bucket_count_{0};
  double span_{0.0};
  double width_{0.0};
  std::vector<std::uint32_t> pieces_;
};

// 4 x piece count, at least 1 and at most 1024.
std::size_t default_bucket_count(arrival_function const& f);

bucket_index build_bucket_index(arrival_function const& f,
                                std::size_t bucket_count);

struct query_stats {
  std::atomic<std::uint64_t> direct_hits{0};
  std::atomic<std::uint64_t> binary_searches{0};
  std::atomic<bool> enabled{false};

  void reset() {
    direct_hits = 0;
    binary_searches = 0;
  }
  double direct_hit_rate() const {
    auto const d = direct_hits.load();
    auto const b = binary_searches.load();
    return d + b == 0 ? 1.0 : static_cast<double>(d) / static_cast<double>(d + b);
  }
};

query_stats& global_query_stats();

// Bucket-indexed evaluation. Throws query_out_of_domain.
double query(arrival_function const& f, bucket_index const& idx, double t);

// Same, but returns +inf instead of throwing.
double query_or_inf(arrival_function const& f, bucket_index const& idx,
                    double t);

// Plain binary search over all pieces; +inf outside the domain.
double query_binary(arrival_function const& f, double t);

}  // namespace tdarc::pl_time

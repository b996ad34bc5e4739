#include <algorithm>
#include <cmath>
#include <set>

#include "gtest/gtest.h"

#include "tdarc/pl_time.h"
#include "tdarc/rng.h"

#include "support/generators.h"

using namespace tdarc;
using namespace tdarc::pl_time;

namespace {

// distance covered on [a, b]: adaptive refinement until the speed is
// constant on the sub-interval
double covered(speed_function const& v, double a, double b, int depth = 0) {
  auto const va = test::speed_at(v, a);
  auto const vm = test::speed_at(v, 0.5 * (a + b));
  auto const vb = test::speed_at(v, std::nextafter(b, a));
  if ((va == vm && vm == vb) || depth > 60 || b - a < 1e-14) {
    return vm * (b - a);
  }
  auto const m = 0.5 * (a + b);
  return covered(v, a, m, depth + 1) + covered(v, m, b, depth + 1);
}

double quadrature_arrival(speed_function const& v, double d, double t) {
  auto lo = t;
  auto hi = t + d / v.min_speed();
  for (auto i = 0; i != 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++i) {
    auto const mid = 0.5 * (lo + hi);
    (covered(v, t, mid) < d ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

speed_function step_example() { return speed_function{{5.0}, {1.0, 2.0}, 100.0}; }

arrival_function random_built(rng& r, double horizon) {
  while (true) {
    auto const v = test::random_speed_function(r, horizon, 8);
    try {
      return build_arrival_function(v, r.uniform(0.01, 0.3) * horizon, horizon);
    } catch (degenerate_horizon const&) {
    }
  }
}

}  // namespace

TEST(speed_function, rejects_invalid_input) {
  EXPECT_THROW((speed_function{{}, {0.0}, 10.0}), invariant_violation);
  EXPECT_THROW((speed_function{{5.0}, {1.0}, 10.0}), invariant_violation);
  EXPECT_THROW((speed_function{{5.0, 4.0}, {1.0, 1.0, 1.0}, 10.0}),
               invariant_violation);
  EXPECT_THROW((speed_function{{10.0}, {1.0, 1.0}, 10.0}), invariant_violation);
  EXPECT_NO_THROW((speed_function{{2.0, 4.0}, {1.0, 3.0, 2.0}, 10.0}));
}

TEST(speed_function, piece_lookup_at_breakpoints) {
  auto const v = step_example();
  EXPECT_EQ(v.piece_before(5.0), 0U);
  EXPECT_EQ(v.piece_after(5.0), 1U);
  EXPECT_EQ(v.speed_after(0.0), 1.0);
  EXPECT_EQ(v.speed_after(500.0), 2.0);
}

TEST(arrival_query_iterative, step_example) {
  EXPECT_DOUBLE_EQ(arrival_query_iterative(step_example(), 6.0, 0.0), 5.5);
}

TEST(arrival_query_iterative, constant_speed) {
  auto const v = speed_function::constant(2.0, 100.0);
  for (auto const t : {0.0, 1.5, 33.0, 90.0}) {
    EXPECT_DOUBLE_EQ(arrival_query_iterative(v, 4.0, t), t + 2.0);
  }
}

TEST(arrival_query_iterative, hard_cap) {
  auto const v = speed_function::constant(1.0, 10.0);
  EXPECT_NO_THROW(arrival_query_iterative(v, 20.0, 0.0));
  EXPECT_THROW(arrival_query_iterative(v, 20.5, 0.0), arrival_beyond_horizon);
  EXPECT_THROW(arrival_query_iterative(v, 0.0, 0.0), invariant_violation);
}

TEST(arrival_query_iterative, matches_quadrature) {
  rng r{11, 0};
  for (auto i = 0; i != 1000; ++i) {
    auto const horizon = r.uniform(10.0, 1000.0);
    auto const v = test::random_speed_function(r, horizon, 8);
    auto const d = r.uniform(0.01, 0.5) * horizon * v.min_speed();
    auto const t = r.uniform(0.0, 0.9 * horizon);
    auto const expected = quadrature_arrival(v, d, t);
    EXPECT_NEAR(arrival_query_iterative(v, d, t), expected, 1e-10 * horizon);
  }
}

TEST(departure_query_iterative, examples) {
  EXPECT_DOUBLE_EQ(
      departure_query_iterative(speed_function::constant(2.0, 100.0), 4.0, 10.0),
      8.0);
  EXPECT_DOUBLE_EQ(departure_query_iterative(step_example(), 6.0, 5.5), 0.0);
  EXPECT_THROW(departure_query_iterative(step_example(), 6.0, 5.4),
               departure_before_zero);
}

TEST(departure_query_iterative, round_trip_and_error_condition) {
  rng r{12, 0};
  for (auto i = 0; i != 2000; ++i) {
    auto const horizon = r.uniform(10.0, 1000.0);
    auto const v = test::random_speed_function(r, horizon, 10);
    auto const d = r.uniform(0.01, 0.5) * horizon * v.min_speed();
    auto const t = r.uniform(0.0, horizon);
    auto const a = arrival_query_iterative(v, d, t);
    EXPECT_NEAR(departure_query_iterative(v, d, a), t, 1e-9 * horizon);

    auto const target = r.uniform(0.0, 2.0 * horizon);
    auto const a0 = arrival_query_iterative(v, d, 0.0);
    if (a0 > target) {
      EXPECT_THROW(departure_query_iterative(v, d, target), departure_before_zero);
    } else {
      EXPECT_NO_THROW(departure_query_iterative(v, d, target));
    }
  }
}

TEST(build_arrival_function, constant_speed_single_piece) {
  auto const f = build_arrival_function(speed_function::constant(2.0, 50.0),
                                        6.0, 50.0);
  ASSERT_EQ(f.piece_count(), 1U);
  EXPECT_DOUBLE_EQ(f.domain_begin(), 0.0);
  EXPECT_DOUBLE_EQ(f.domain_end(), 47.0);
  EXPECT_DOUBLE_EQ(f(10.0), 13.0);
}

TEST(build_arrival_function, breakpoint_bound) {
  rng r{13, 0};
  for (auto i = 0; i != 500; ++i) {
    auto const horizon = 100.0;
    std::vector<double> bps;
    for (auto k = 1; k <= 6; ++k) {
      bps.push_back(horizon * (k / 7.0 + r.uniform(-0.05, 0.05)));
    }
    std::vector<double> speeds;
    for (auto k = 0; k != 7; ++k) {
      speeds.push_back(r.uniform(0.4, 1.6));
    }
    speed_function const v{bps, speeds, horizon};
    auto const f = build_arrival_function(v, r.uniform(1.0, 30.0), horizon);
    // at most 2(h-1) interior breakpoints, hence at most 2(h-1)+1 pieces
    EXPECT_LE(f.times().size() - 2U, 12U);
    EXPECT_LE(f.piece_count(), 13U);
  }
}

TEST(build_arrival_function, breakpoints_are_the_deduplicated_union) {
  rng r{14, 0};
  for (auto i = 0; i != 300; ++i) {
    auto const horizon = r.uniform(10.0, 500.0);
    auto const v = test::random_speed_function(r, horizon, 8);
    auto const d = r.uniform(0.01, 0.3) * horizon;
    auto const f = build_arrival_function(v, d, horizon);

    auto const a0 = arrival_query_iterative(v, d, 0.0);
    auto const t_max = departure_query_iterative(v, d, horizon);
    std::vector<double> expected{0.0, t_max};
    for (auto const bp : v.breakpoints()) {
      if (bp <= t_max) {
        expected.push_back(bp);
      }
      if (bp >= a0) {
        expected.push_back(departure_query_iterative(v, d, bp));
      }
    }
    std::sort(begin(expected), end(expected));
    std::vector<double> dedup;
    for (auto const t : expected) {
      if (dedup.empty() || t - dedup.back() >= 1e-9 * horizon) {
        dedup.push_back(t);
      }
    }
    ASSERT_EQ(f.times().size(), dedup.size());
    for (auto k = 0U; k != dedup.size(); ++k) {
      EXPECT_NEAR(f.times()[k], dedup[k], 1e-9 * horizon);
    }
    EXPECT_NEAR(f.domain_end(), t_max, 1e-12 * horizon);
  }
}

TEST(build_arrival_function, matches_iterative_and_is_fifo) {
  rng r{15, 0};
  for (auto i = 0; i != 300; ++i) {
    auto const horizon = r.uniform(10.0, 500.0);
    auto const v = test::random_speed_function(r, horizon, 10);
    auto const d = r.uniform(0.01, 0.3) * horizon;
    auto const f = build_arrival_function(v, d, horizon);
    auto prev = -kInfinity;
    for (auto k = 0; k <= 200; ++k) {
      auto const t = f.domain_end() * k / 200.0;
      auto const value = f(t);
      EXPECT_NEAR(value, arrival_query_iterative(v, d, t), 1e-9 * horizon);
      EXPECT_GT(value, t);
      EXPECT_GE(value, prev);
      prev = value;
    }
  }
}

TEST(build_arrival_function, degenerate_horizon) {
  EXPECT_THROW(build_arrival_function(speed_function::constant(1.0, 10.0),
                                      11.0, 10.0),
               degenerate_horizon);
}

TEST(lower_envelope, idempotent) {
  rng r{16, 0};
  auto const f = random_built(r, 100.0);
  EXPECT_LE(max_difference(lower_envelope(f, f), f), 1e-12);
}

TEST(lower_envelope, single_crossing) {
  auto const f = arrival_function::affine(1.0, 2.0, 0.0, 10.0);
  auto const g = arrival_function::affine(1.5, 1.0, 0.0, 10.0);
  auto const e = lower_envelope(f, g);
  ASSERT_EQ(e.piece_count(), 2U);
  EXPECT_DOUBLE_EQ(e.times()[1], 2.0);
  EXPECT_DOUBLE_EQ(e(1.0), 2.5);
  EXPECT_DOUBLE_EQ(e(6.0), 8.0);
}

TEST(lower_envelope, empty_is_neutral) {
  auto const f = arrival_function::affine(1.0, 2.0, 0.0, 10.0);
  EXPECT_EQ(lower_envelope(f, arrival_function{}), f);
  EXPECT_EQ(lower_envelope(arrival_function{}, f), f);
}

TEST(lower_envelope, pointwise_minimum) {
  rng r{17, 0};
  for (auto i = 0; i != 100; ++i) {
    auto const f = random_built(r, 100.0);
    auto const g = random_built(r, 100.0);
    auto const e = lower_envelope(f, g);
    for (auto k = 0; k != 500; ++k) {
      auto const t = r.uniform(0.0, e.domain_end());
      auto const expected = std::min(f(t), g(t));
      EXPECT_NEAR(e(t), expected, 1e-9 * 100.0);
      EXPECT_LE(e(t), f(t) + 1e-9 * 100.0);
      EXPECT_LE(e(t), g(t) + 1e-9 * 100.0);
    }
    EXPECT_NEAR(e.domain_end(), std::max(f.domain_end(), g.domain_end()),
                1e-12);
  }
}

TEST(compose, identity_inner) {
  rng r{18, 0};
  auto const f = random_built(r, 100.0);
  auto const c = compose(f, arrival_function::identity(f.domain_end()));
  EXPECT_LE(max_difference(c, f), 1e-12);
}

TEST(compose, affine) {
  auto const outer = arrival_function::affine(1.0, 3.0, 0.0, 100.0);
  auto const inner = arrival_function::affine(2.0, 1.0, 0.0, 4.0);
  auto const c = compose(outer, inner);
  ASSERT_EQ(c.piece_count(), 1U);
  EXPECT_DOUBLE_EQ(c(0.0), 4.0);
  EXPECT_DOUBLE_EQ(c(4.0), 12.0);
}

TEST(compose, truncates_where_inner_leaves_outer_domain) {
  auto const outer = arrival_function::affine(1.0, 3.0, 0.0, 10.0);
  auto const inner = arrival_function::affine(2.0, 1.0, 0.0, 8.0);
  auto const c = compose(outer, inner);
  EXPECT_DOUBLE_EQ(c.domain_end(), 4.5);
  EXPECT_EQ(c(5.0), kInfinity);
  EXPECT_TRUE(compose(arrival_function::affine(1.0, 1.0, 0.0, 1.0),
                      arrival_function::affine(1.0, 5.0, 0.0, 2.0))
                  .empty());
}

TEST(compose, pointwise_oracle_and_breakpoints) {
  rng r{19, 0};
  for (auto i = 0; i != 100; ++i) {
    auto const inner = random_built(r, 100.0);
    auto const outer = random_built(r, 100.0);
    auto const c = compose(outer, inner);
    if (c.empty()) {
      continue;
    }
    for (auto k = 0; k != 500; ++k) {
      auto const t = r.uniform(0.0, c.domain_end());
      EXPECT_NEAR(c(t), outer(inner(t)), 1e-9 * 100.0);
    }
    // every breakpoint is an inner breakpoint, a preimage of an outer one,
    // or the truncated domain end
    for (auto const t : c.times()) {
      auto const y = inner(t);
      auto const near = [&](std::span<double const> xs, double x) {
        return std::any_of(begin(xs), end(xs), [&](double z) {
          return std::abs(z - x) < 1e-7;
        });
      };
      EXPECT_TRUE(near(inner.times(), t) || near(outer.times(), y) ||
                  t == c.domain_end());
    }
  }
}

TEST(bucket_index, single_piece) {
  auto const f = arrival_function::affine(1.0, 3.0, 0.0, 10.0);
  for (auto const b : {1U, 7U, 64U}) {
    auto const idx = build_bucket_index(f, b);
    for (auto const p : idx.bucket_to_piece()) {
      EXPECT_EQ(p, 0U);
    }
  }
}

TEST(bucket_index, boundary_ties_to_earlier_piece) {
  arrival_function const f{{0.0, 5.0, 10.0}, {1.0, 7.0, 12.0}};
  auto const idx = build_bucket_index(f, 2);
  auto const p = idx.bucket_to_piece();
  ASSERT_EQ(p.size(), 3U);
  EXPECT_EQ(p[0], 0U);
  EXPECT_EQ(p[1], 0U);
  EXPECT_EQ(p[2], 1U);
}

TEST(bucket_index, linear_scan_oracle) {
  rng r{20, 0};
  for (auto i = 0; i != 100; ++i) {
    auto const f = random_built(r, 100.0);
    auto const idx = build_bucket_index(f, 64);
    auto const p = idx.bucket_to_piece();
    ASSERT_EQ(p.size(), 65U);
    for (auto b = 0U; b != p.size(); ++b) {
      auto const t = f.domain_end() * b / 64.0;
      auto expected = 0U;
      while (expected + 1U < f.piece_count() && f.times()[expected + 1] < t) {
        ++expected;
      }
      EXPECT_EQ(p[b], expected);
      EXPECT_LE(f.times()[p[b]], t + 1e-12);
      if (b != 0U) {
        EXPECT_GE(p[b], p[b - 1]);
      }
    }
  }
}

TEST(query, examples) {
  auto const f = build_arrival_function(speed_function::constant(2.0, 50.0),
                                        6.0, 50.0);
  auto const idx = build_bucket_index(f, default_bucket_count(f));
  EXPECT_DOUBLE_EQ(query(f, idx, 3.0), 6.0);
  EXPECT_DOUBLE_EQ(query(f, idx, 0.0), f.eval_piece(0, 0.0));
  EXPECT_THROW(query(f, idx, 48.0), query_out_of_domain);
  EXPECT_THROW(query(f, idx, -1.0), query_out_of_domain);
}

TEST(query, identical_to_binary_search) {
  rng r{21, 0};
  auto& stats = global_query_stats();
  stats.reset();
  stats.enabled = true;
  for (auto i = 0; i != 50; ++i) {
    auto const f = random_built(r, 100.0);
    auto const idx = build_bucket_index(f, default_bucket_count(f));
    for (auto k = 0; k != 200; ++k) {
      auto const t = r.uniform(0.0, f.domain_end());
      EXPECT_EQ(query(f, idx, t), query_binary(f, t));
    }
    for (auto const t : f.times()) {
      EXPECT_EQ(query(f, idx, t), query_binary(f, t));
    }
  }
  stats.enabled = false;
  EXPECT_GT(stats.direct_hits.load() + stats.binary_searches.load(), 0U);
  EXPECT_GT(stats.direct_hit_rate(), 0.5);
}

TEST(min_gap, examples) {
  EXPECT_DOUBLE_EQ(min_gap(arrival_function::affine(1.0, 4.0, 0.0, 10.0)), 4.0);
  arrival_function const f{{0.0, 5.0, 10.0}, {6.0, 9.0, 15.0}};
  EXPECT_DOUBLE_EQ(min_gap(f), 4.0);
  EXPECT_EQ(min_gap(arrival_function{}), kInfinity);
}

TEST(min_gap, dense_sampling) {
  rng r{22, 0};
  for (auto i = 0; i != 50; ++i) {
    auto const f = random_built(r, 100.0);
    auto sampled = kInfinity;
    for (auto k = 0; k <= 10000; ++k) {
      auto const t = f.domain_end() * k / 10000.0;
      sampled = std::min(sampled, f(t) - t);
    }
    for (auto const t : f.times()) {
      sampled = std::min(sampled, f(t) - t);
    }
    EXPECT_LE(min_gap(f), sampled + 1e-12);
    EXPECT_NEAR(min_gap(f), sampled, 1e-9);
  }
}

TEST(simplify, merges_collinear_pieces) {
  arrival_function const f{{0.0, 1.0, 2.0, 3.0}, {1.0, 2.0, 3.0, 5.0}};
  auto const s = simplify(f, 1e-12);
  ASSERT_EQ(s.piece_count(), 2U);
  EXPECT_DOUBLE_EQ(s.times()[1], 2.0);
}

TEST(to_json, breakpoint_pairs) {
  arrival_function const f{{0.0, 2.5}, {1.0, 4.0}};
  EXPECT_EQ(to_json(f), "[[0,1],[2.5,4]]");
}

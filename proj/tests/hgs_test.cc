#include <algorithm>
#include <numeric>
#include <set>

#include "gtest/gtest.h"

#include "tdarc/hgs/genetic.h"
#include "tdarc/rng.h"

#include "support/brute_force.h"
#include "support/instances.h"

using namespace tdarc;
using namespace tdarc::hgs;
using network::link_kind;
using network::speed_level;

namespace {

profiles::travel_model model_of(network::instance inst) {
  return profiles::travel_model{std::move(inst)};
}

std::vector<service_t> random_route(rng& r, std::size_t n, std::size_t len) {
  std::vector<service_t> all(n);
  std::iota(begin(all), end(all), 0U);
  r.shuffle(all);
  all.resize(std::min(len, n));
  return all;
}

// depot 0 joined to a unit triangle 1-2-3 by a long edge
network::instance detour_toy() {
  network::instance inst;
  inst.name = "detour";
  inst.vertex_count = 4;
  inst.fleet = 2;
  inst.capacity = 10;
  inst.duration_limit = 200;
  inst.links.push_back(test::plain_link(0, link_kind::edge, 0, 1, 10, 200));
  inst.links.push_back(test::plain_link(1, link_kind::edge, 1, 2, 1, 200));
  inst.links.push_back(test::plain_link(2, link_kind::edge, 2, 3, 1, 200));
  inst.links.push_back(test::plain_link(3, link_kind::edge, 3, 1, 1, 200));
  inst.links[1].required = inst.links[2].required = true;
  inst.links[1].demand = inst.links[2].demand = 1;
  network::index_services(inst);
  network::validate(inst);
  return inst;
}

double brute_force_split(std::vector<service_t> const& perm,
                         profiles::travel_model const& m, penalties const& pen,
                         std::size_t max_routes) {
  auto const n = perm.size();
  auto best = pl_time::kInfinity;
  for (auto cuts = 0U; cuts < (1U << (n - 1U)); ++cuts) {
    if (static_cast<std::size_t>(__builtin_popcount(cuts)) + 1U > max_routes) {
      continue;
    }
    auto total = 0.0;
    std::vector<service_t> route{perm[0]};
    auto close = [&] {
      auto load = 0.0;
      for (auto const s : route) {
        load += m.inst().demand(s);
      }
      total += penalized_cost(test::enumerate_modes(m, route), load, pen, m);
      route.clear();
    };
    for (auto i = 1U; i != n; ++i) {
      if ((cuts >> (i - 1U)) & 1U) {
        close();
      }
      route.push_back(perm[i]);
    }
    close();
    best = std::min(best, total);
  }
  return best;
}

}  // namespace

TEST(decode_route, single_arc_next_to_depot) {
  network::instance inst;
  inst.vertex_count = 3;
  inst.fleet = 1;
  inst.capacity = 5;
  inst.duration_limit = 100;
  inst.links.push_back(test::plain_link(0, link_kind::edge, 0, 1, 2, 100));
  inst.links.push_back(test::plain_link(1, link_kind::arc, 1, 2, 3, 100));
  inst.links.push_back(test::plain_link(2, link_kind::edge, 2, 0, 4, 100));
  inst.links[1].required = true;
  inst.links[1].demand = 1;
  inst.links[1].service[0] = pl_time::speed_function::constant(0.5, 100);
  network::index_services(inst);
  auto const m = model_of(inst);
  std::vector<service_t> route{0};
  auto const d = decode_route(route, m);
  EXPECT_NEAR(d.duration, 2.0 + 6.0 + 4.0, 1e-12);
  EXPECT_EQ(d.modes, (std::vector<std::uint8_t>{1}));
  EXPECT_NEAR(d.completion[0], 8.0, 1e-12);
}

TEST(decode_route, matches_mode_enumeration) {
  rng r{11};
  for (auto seed = 0U; seed != 6U; ++seed) {
    auto const m = model_of(test::make_instance(12, 9, speed_level::high, seed, 0.0));
    for (auto k = 0; k != 15; ++k) {
      auto const route = random_route(r, m.service_count(), 1U + r.below(9));
      auto const d = decode_route(route, m);
      EXPECT_EQ(d.duration, test::enumerate_modes(m, route));
      if (d.duration != pl_time::kInfinity) {
        std::vector<unsigned> modes(begin(d.modes), end(d.modes));
        EXPECT_EQ(test::chain_duration(m, route, modes), d.duration);
      }
    }
  }
}

TEST(decode_route, agrees_with_discrete_oracle) {
  auto const inst = test::make_instance(10, 6, speed_level::medium, 3);
  auto const m = model_of(inst);
  rng r{5};
  for (auto k = 0; k != 20; ++k) {
    auto const route = random_route(r, m.service_count(), 1U + r.below(6));
    auto const d = decode_route(route, m);
    if (d.duration == pl_time::kInfinity) {
      continue;
    }
    // replay the chosen modes with fixed-departure searches and the
    // iterative service query
    auto t = 0.0;
    auto at = network::instance::depot;
    for (auto i = 0U; i != route.size(); ++i) {
      auto const ref = inst.service(route[i], d.modes[i]);
      t = profiles::discrete_arrivals(inst, at, t)[ref.from];
      auto const& l = inst.links[ref.link];
      t = pl_time::arrival_query_iterative(l.service[ref.direction()], l.distance, t);
      at = ref.to;
    }
    t = profiles::discrete_arrivals(inst, at, t)[network::instance::depot];
    EXPECT_NEAR(t, d.duration, 1e-7 * inst.duration_limit);
  }
}

TEST(decode_route, empty_and_checked) {
  auto const m = model_of(test::make_instance(6, 3, speed_level::low, 1));
  EXPECT_EQ(decode_route({}, m).duration, 0.0);
  std::vector<service_t> route{0, 1, 2};
  EXPECT_NO_THROW(decode_route_checked(route, m));
}

TEST(seq_single, constant_service_speed) {
  network::instance inst;
  inst.vertex_count = 2;
  inst.duration_limit = 100;
  inst.links.push_back(test::plain_link(0, link_kind::edge, 0, 1, 6, 100));
  inst.links[0].required = true;
  inst.links[0].service[0] = pl_time::speed_function::constant(2.0, 100);
  inst.links[0].service[1] = pl_time::speed_function::constant(3.0, 100);
  network::index_services(inst);
  auto const m = model_of(inst);
  auto const b = seq_single(0, m);
  EXPECT_NEAR(b.t[0][0], 3.0, 1e-12);
  EXPECT_NEAR(b.t[1][1], 2.0, 1e-12);
  EXPECT_EQ(b.t[0][1], pl_time::kInfinity);
  EXPECT_EQ(b.t[1][0], pl_time::kInfinity);
}

TEST(seq_single, sampled_service_gap) {
  auto const m = model_of(test::make_instance(10, 6, speed_level::high, 4));
  for (auto s = 0U; s != m.service_count(); ++s) {
    auto const b = seq_single(s, m);
    for (auto k = 1U; k <= m.inst().mode_count(s); ++k) {
      auto const& f = m.service_function(s, k).f;
      auto sampled = pl_time::kInfinity;
      for (auto i = 0; i <= 20000; ++i) {
        auto const t = f.domain_end() * i / 20000.0;
        sampled = std::min(sampled, f(t) - t);
      }
      for (auto const t : f.times()) {
        sampled = std::min(sampled, f(t) - t);
      }
      EXPECT_NEAR(b.t[k - 1U][k - 1U], sampled, 1e-9);
    }
  }
}

TEST(seq_concat, associative) {
  auto const m = model_of(test::make_instance(14, 10, speed_level::high, 7));
  rng r{3};
  for (auto k = 0; k != 200; ++k) {
    auto const a = seq_single(static_cast<service_t>(r.below(10)), m);
    auto const b = seq_single(static_cast<service_t>(r.below(10)), m);
    auto const c = seq_single(static_cast<service_t>(r.below(10)), m);
    auto const left = seq_concat(seq_concat(a, b, m), c, m);
    auto const right = seq_concat(a, seq_concat(b, c, m), m);
    for (auto i = 0U; i != 2U; ++i) {
      for (auto j = 0U; j != 2U; ++j) {
        if (left.t[i][j] == pl_time::kInfinity) {
          EXPECT_EQ(right.t[i][j], pl_time::kInfinity);
        } else {
          EXPECT_NEAR(left.t[i][j], right.t[i][j], 1e-9 * m.horizon());
        }
      }
    }
  }
}

TEST(seq_concat, bounds_fixed_mode_pairs) {
  auto const m = model_of(test::make_instance(12, 8, speed_level::high, 9));
  for (auto a = 0U; a != m.service_count(); ++a) {
    for (auto b = 0U; b != m.service_count(); ++b) {
      if (a == b) {
        continue;
      }
      auto const bound = seq_concat(seq_single(a, m), seq_single(b, m), m);
      for (auto k = 1U; k <= m.inst().mode_count(a); ++k) {
        for (auto l = 1U; l <= m.inst().mode_count(b); ++l) {
          auto const fa = m.inst().service(a, k);
          auto const fb = m.inst().service(b, l);
          for (auto i = 0; i <= 40; ++i) {
            auto const t = m.duration_limit() * i / 40.0;
            auto const done = m.service(
                b, l, m.travel(fa.to, fb.from, m.service(a, k, t)));
            if (done != pl_time::kInfinity) {
              EXPECT_LE(bound.t[k - 1U][l - 1U], done - t + 1e-9 * m.horizon());
            }
          }
        }
      }
    }
  }
}

TEST(move_lower_bound, whole_prefix_is_exact) {
  auto const m = model_of(test::make_instance(12, 8, speed_level::medium, 2));
  rng r{8};
  for (auto k = 0; k != 30; ++k) {
    auto const route = random_route(r, m.service_count(), 1U + r.below(8));
    auto const table = completion_table(route, m);
    prefix_times p;
    p.last = route.back();
    p.t = table.back();
    auto const lb = move_lower_bound(p, seq_depot(m), m);
    EXPECT_NEAR(lb, decode_route(route, m).duration, 1e-9 * m.horizon());
  }
}

TEST(move_lower_bound, admissible_for_random_splits) {
  auto const m = model_of(test::make_instance(14, 10, speed_level::high, 5));
  rng r{21};
  for (auto k = 0; k != 300; ++k) {
    auto const route = random_route(r, m.service_count(), 2U + r.below(8));
    auto const exact = decode_route(route, m).duration;
    auto const cut = r.below(route.size());
    auto const table = completion_table(route, m);
    prefix_times p = depot_start(m);
    if (cut != 0U) {
      p.last = route[cut - 1U];
      p.t = table[cut];
    }
    auto rest = seq_single(route[cut], m);
    for (auto i = cut + 1U; i < route.size(); ++i) {
      rest = seq_concat(rest, seq_single(route[i], m), m);
    }
    rest = seq_concat(rest, seq_depot(m), m);
    EXPECT_LE(move_lower_bound(p, rest, m), exact + 1e-9 * m.horizon());
  }
}

TEST(move_lower_bound, tight_under_uniform_speeds) {
  auto const m = model_of(network::static_equivalent(
      test::make_instance(12, 8, speed_level::high, 6)));
  rng r{4};
  for (auto k = 0; k != 100; ++k) {
    auto const route = random_route(r, m.service_count(), 1U + r.below(8));
    auto rest = seq_single(route[0], m);
    for (auto i = 1U; i < route.size(); ++i) {
      rest = seq_concat(rest, seq_single(route[i], m), m);
    }
    rest = seq_concat(rest, seq_depot(m), m);
    EXPECT_NEAR(move_lower_bound(depot_start(m), rest, m),
                decode_route(route, m).duration, 1e-9 * m.horizon());
  }
}

TEST(local_search, finds_the_relocation) {
  auto const m = model_of(detour_toy());
  auto const start = evaluate_plan({{0}, {1}}, m);
  rng r{1};
  local_search ls{m, {}, r};
  auto const out = ls.run(start, {1.0, 1.0});
  ASSERT_EQ(out.routes.size(), 1U);
  EXPECT_NEAR(out.total_duration, 10 + 1 + 1 + 1 + 10, 1e-9);
  EXPECT_LT(out.total_duration, start.total_duration);
  EXPECT_GE(ls.stats.improvements, 1U);
}

TEST(local_search, local_optimum_is_a_fixpoint) {
  auto const m = model_of(test::make_instance(16, 12, speed_level::medium, 3));
  rng r{2};
  local_search ls{m, {}, r};
  std::vector<service_t> perm(m.service_count());
  std::iota(begin(perm), end(perm), 0U);
  penalties const pen{10.0, 10.0};
  auto const first = ls.run(split_giant_tour(perm, m, pen, m.inst().fleet), pen);
  ls.stats = {};
  auto const second = ls.run(first, pen);
  EXPECT_EQ(ls.stats.improvements, 0U);
  EXPECT_EQ(second.routes, first.routes);
}

TEST(local_search, monotone_and_sound) {
  for (auto seed = 0U; seed != 5U; ++seed) {
    auto const m = model_of(test::make_instance(18, 14, speed_level::high, seed));
    rng r{seed};
    local_search ls{m, {15, true, true}, r};
    std::vector<service_t> perm(m.service_count());
    std::iota(begin(perm), end(perm), 0U);
    r.shuffle(perm);
    penalties const pen{5.0, 5.0};
    auto const start = split_giant_tour(perm, m, pen, m.inst().fleet);
    auto const out = ls.run(start, pen);
    EXPECT_LE(out.penalized(pen, m), start.penalized(pen, m) + 1e-9);
    EXPECT_TRUE(covers_all_services(out, m.service_count()));
    EXPECT_EQ(ls.stats.audit_violations, 0U);
    EXPECT_EQ(ls.stats.audit_checked, ls.stats.filtered);
    EXPECT_GT(ls.stats.filtered, 0U);
  }
}

TEST(crossover_ox, identical_parents) {
  std::vector<service_t> p{3, 1, 4, 0, 2, 5};
  rng r{1};
  for (auto k = 0; k != 20; ++k) {
    EXPECT_EQ(crossover_ox(p, p, r), p);
  }
}

TEST(crossover_ox, whole_section_copies_first_parent) {
  std::vector<service_t> p1{3, 1, 4, 0, 2, 5};
  std::vector<service_t> p2{0, 1, 2, 3, 4, 5};
  EXPECT_EQ(crossover_ox(p1, p2, 0, 5), p1);
}

TEST(crossover_ox, fills_in_second_parent_order) {
  std::vector<service_t> p1{0, 1, 2, 3, 4, 5, 6};
  std::vector<service_t> p2{6, 5, 4, 3, 2, 1, 0};
  // keeps 2,3,4 at positions 2..4, then 1,0,6,5 from p2 after position 4
  EXPECT_EQ(crossover_ox(p1, p2, 2, 4),
            (std::vector<service_t>{6, 5, 2, 3, 4, 1, 0}));
}

TEST(crossover_ox, random_parents_give_permutations) {
  rng r{9};
  for (auto k = 0; k != 500; ++k) {
    auto const n = 2U + r.below(30);
    std::vector<service_t> a(n), b(n);
    std::iota(begin(a), end(a), 0U);
    std::iota(begin(b), end(b), 0U);
    r.shuffle(a);
    r.shuffle(b);
    auto child = crossover_ox(a, b, r);
    std::sort(begin(child), end(child));
    EXPECT_EQ(child, (std::sort(begin(a), end(a)), a));
  }
}

TEST(broken_pairs_distance, basics) {
  auto const m = model_of(test::make_instance(10, 6, speed_level::low, 1));
  auto const a = evaluate_plan({{0, 1, 2}, {3, 4, 5}}, m);
  auto const reversed = evaluate_plan({{2, 1, 0}, {5, 4, 3}}, m);
  auto const other = evaluate_plan({{0, 3}, {1, 4}, {2, 5}}, m);
  EXPECT_EQ(broken_pairs_distance(a, a, 6), 0.0);
  EXPECT_EQ(broken_pairs_distance(a, reversed, 6), 0.0);
  EXPECT_GT(broken_pairs_distance(a, other, 6), 0.0);
}

TEST(split_giant_tour, single_service) {
  auto const m = model_of(test::make_instance(6, 1, speed_level::low, 2));
  std::vector<service_t> perm{0};
  auto const plan = split_giant_tour(perm, m, {}, m.inst().fleet);
  ASSERT_EQ(plan.routes.size(), 1U);
  EXPECT_EQ(plan.routes[0], perm);
}

TEST(split_giant_tour, capacity_forces_singletons) {
  auto inst = test::make_instance(10, 5, speed_level::low, 3);
  for (auto const l : inst.required) {
    inst.links[l].demand = 4;
  }
  inst.capacity = 4;
  inst.fleet = 5;
  auto const m = model_of(inst);
  std::vector<service_t> perm{4, 2, 0, 1, 3};
  auto const plan = split_giant_tour(perm, m, {1000.0, 1.0}, m.inst().fleet);
  EXPECT_EQ(plan.routes.size(), 5U);
  EXPECT_TRUE(plan.feasible);
}

TEST(split_giant_tour, matches_brute_force_partition) {
  rng r{17};
  for (auto seed = 0U; seed != 12U; ++seed) {
    auto const n = 2U + seed % 6U;
    auto const m = model_of(test::make_instance(10, n, speed_level::high, seed));
    std::vector<service_t> perm(n);
    std::iota(begin(perm), end(perm), 0U);
    r.shuffle(perm);
    penalties const pen{10.0, 10.0};
    for (auto const routes : {std::size_t{n}, std::size_t{2}}) {
      auto const plan = split_giant_tour(perm, m, pen, routes);
      EXPECT_NEAR(plan.penalized(pen, m), brute_force_split(perm, m, pen, routes),
                  1e-9 * m.horizon());
      EXPECT_EQ(giant_tour(plan), perm);
    }
  }
}

TEST(solution_file, round_trip) {
  auto const m = model_of(test::make_instance(12, 7, speed_level::medium, 4));
  auto const plan = evaluate_plan({{0, 3, 5}, {6, 1}, {2, 4}}, m);
  auto const text = write_solution(plan, m, {{"seed", "4"}});
  auto const back = read_solution(text, m);
  EXPECT_EQ(back.routes, plan.routes);
  EXPECT_EQ(back.total_duration, plan.total_duration);
  EXPECT_NE(text.find("STAT seed 4"), std::string::npos);
  EXPECT_THROW(read_solution("ROUTE 1 DUR 1 LOAD 1 : 999:1\n", m), parse_error);
}

TEST(run_hgs, deterministic_under_seed) {
  auto const m = model_of(test::make_instance(14, 10, speed_level::high, 8));
  hgs_params p;
  p.mu = 6;
  p.lambda = 8;
  p.max_iterations = 60;
  p.seed = 42;
  auto const a = run_hgs(m, p);
  auto const b = run_hgs(m, p);
  EXPECT_EQ(a.best.total_duration, b.best.total_duration);
  EXPECT_EQ(a.best.routes, b.best.routes);
  EXPECT_EQ(a.ls.moves, b.ls.moves);
  EXPECT_EQ(a.ls.filtered, b.ls.filtered);
  EXPECT_EQ(a.iterations, 60U);
}

TEST(run_hgs, zero_iterations_returns_initial_best) {
  auto const m = model_of(test::make_instance(10, 6, speed_level::low, 2));
  hgs_params p;
  p.mu = 4;
  p.max_iterations = 0;
  auto const res = run_hgs(m, p);
  EXPECT_EQ(res.iterations, 0U);
  EXPECT_TRUE(res.feasible);
  EXPECT_TRUE(covers_all_services(res.best, m.service_count()));
}

TEST(brute_force, subset_dp_matches_enumeration) {
  for (auto seed = 0U; seed != 8U; ++seed) {
    auto const m = model_of(test::make_instance(8, 2U + seed % 4U, speed_level::high, seed));
    EXPECT_NEAR(test::subset_dp_optimum(m), test::enumerate_optimum(m), 1e-9);
  }
}

TEST(run_hgs, reaches_small_optima) {
  for (auto seed = 0U; seed != 4U; ++seed) {
    auto const m = model_of(test::make_instance(12, 7, speed_level::high, seed));
    hgs_params p;
    p.mu = 10;
    p.lambda = 15;
    p.max_iterations = 300;
    p.seed = seed;
    auto const res = run_hgs(m, p);
    ASSERT_TRUE(res.feasible);
    EXPECT_NEAR(res.best.total_duration, test::subset_dp_optimum(m), 1e-6);
  }
}

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "gtest/gtest.h"

#include "tdarc/network.h"

using namespace tdarc;
using namespace tdarc::network;

namespace {

std::string read_data(std::string const& name) {
  std::ifstream in{std::string{TDARC_TEST_DATA_DIR} + "/" + name};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

constexpr auto kMinimal = R"(NAME minimal
VERTICES 2
EDGES 1
ARCS 0
REQUIRED_EDGES 1
REQUIRED_ARCS 0
VEHICLES 1
CAPACITY 10
DURATION_LIMIT 50
E 0 0 1 3 4
)";

instance generated(std::uint64_t seed, speed_level level = speed_level::medium) {
  synthetic_params p;
  p.vertices = 12;
  p.services = 10;
  p.seed = seed;
  return generate_speed_profiles(random_network(p), level, seed);
}

double speed_at(pl_time::speed_function const& v, double t) {
  return v.speed_after(t);
}

}  // namespace

TEST(parse_native, minimal_file) {
  auto const inst = parse_native(kMinimal);
  ASSERT_EQ(inst.service_count(), 1U);
  EXPECT_EQ(inst.mode_count(0), 2U);
  EXPECT_EQ(inst.service(0, 1).from, 0U);
  EXPECT_EQ(inst.service(0, 2).from, 1U);
  EXPECT_EQ(inst.links[0].travel[0], pl_time::speed_function::constant(1.0, 50.0));
  EXPECT_EQ(inst.links[0].service[1], inst.links[0].travel[1]);
}

TEST(parse_native, demand_above_capacity) {
  std::string text = kMinimal;
  text.replace(text.find("E 0 0 1 3 4"), 11, "E 0 0 1 3 12");
  EXPECT_THROW(parse_native(text), invariant_violation);
}

TEST(parse_native, reports_line_numbers) {
  std::string text = kMinimal;
  text.replace(text.find("E 0 0 1 3 4"), 11, "E 0 0 1 x 4");
  try {
    parse_native(text);
    FAIL();
  } catch (parse_error const& e) {
    EXPECT_EQ(e.line(), 10U);
  }
  EXPECT_THROW(parse_native(std::string{kMinimal} + "SPEED 0 + 2 70 1 1\n"),
               parse_error);
  EXPECT_THROW(parse_native(std::string{kMinimal} + "BOGUS 1\n"), parse_error);
  EXPECT_THROW(parse_native(std::string{kMinimal} + "E 3 0 1 2 -\n"), parse_error);
}

TEST(parse_native, golden_round_trip) {
  auto const inst = parse_native(read_data("tiny.td"));
  EXPECT_EQ(inst.name, "tiny triangle");
  EXPECT_EQ(inst.service_count(), 2U);
  EXPECT_EQ(inst.mode_count(1), 1U);
  EXPECT_EQ(inst.links[0].travel[0].piece_count(), 3U);
  EXPECT_EQ(inst.links[2].service[0].speeds()[0], 0.5);
  EXPECT_EQ(parse_native(serialize_instance(inst)), inst);
}

TEST(serialize_instance, generated_round_trip) {
  for (auto seed = 0U; seed != 5U; ++seed) {
    auto const inst = generated(seed);
    auto const text = serialize_instance(inst);
    auto const back = parse_native(text);
    EXPECT_EQ(back, inst);
    EXPECT_EQ(serialize_instance(back), text);
  }
}

TEST(serialize_instance, empty_required_set) {
  auto inst = parse_native(kMinimal);
  inst.links[0].required = false;
  index_services(inst);
  std::string text;
  EXPECT_NO_THROW(text = serialize_instance(inst));
  EXPECT_THROW(parse_native(text), invariant_violation);
}

TEST(parse_classic, gdb_layout_and_depot_swap) {
  auto const inst = parse_classic(read_data("toy.dat"));
  EXPECT_EQ(inst.name, "toy1");
  EXPECT_EQ(inst.vertex_count, 4U);
  EXPECT_EQ(inst.fleet, 2U);
  EXPECT_EQ(inst.capacity, 5.0);
  ASSERT_EQ(inst.links.size(), 4U);
  EXPECT_EQ(inst.service_count(), 3U);
  // depot was vertex 2 (1-based), i.e. 1 (0-based), swapped with 0
  EXPECT_EQ(inst.links[0].from, 1U);
  EXPECT_EQ(inst.links[0].to, 0U);
  EXPECT_EQ(inst.links[1].from, 0U);
  EXPECT_EQ(inst.links[1].to, 2U);
  EXPECT_FALSE(inst.links[3].required);
  EXPECT_EQ(inst.mode_count(0), 2U);
  EXPECT_FALSE(std::isfinite(inst.duration_limit));
}

TEST(parse_classic, required_arcs_and_demand_rescaling) {
  auto const inst = parse_classic(read_data("mixed.dat"));
  ASSERT_EQ(inst.service_count(), 4U);
  EXPECT_EQ(inst.mode_count(2), 1U);
  EXPECT_EQ(inst.mode_count(3), 1U);
  EXPECT_EQ(inst.service_link(2).kind, link_kind::arc);
  EXPECT_EQ(inst.demand(0), 25.0);
  EXPECT_EQ(inst.capacity, 100.0);
  EXPECT_EQ(inst.fleet, 4U);
  EXPECT_EQ(inst.links.size(), 7U);
}

TEST(generate_speed_profiles, table_bounds_and_service_ratio) {
  for (auto const level : {speed_level::low, speed_level::medium, speed_level::high}) {
    auto const inst = generated(3, level);
    auto const& bounds = level_bounds(level);
    auto const D = inst.duration_limit;
    for (auto const& l : inst.links) {
      for (auto d = 0U; d != l.direction_count(); ++d) {
        auto const& v = l.travel[d];
        ASSERT_EQ(v.breakpoints().size(), 6U);
        std::set<long> grid;
        for (auto const t : v.breakpoints()) {
          auto const k = std::lround(t / (0.05 * D));
          EXPECT_NEAR(t, k * D / 20.0, 1e-9 * D);
          EXPECT_GE(k, 1);
          EXPECT_LE(k, 19);
          grid.insert(k);
        }
        EXPECT_EQ(grid.size(), 6U);
        for (auto k = 0U; k != 7U; ++k) {
          EXPECT_GE(v.speeds()[k], bounds[k].lo);
          EXPECT_LE(v.speeds()[k], bounds[k].hi);
        }
        for (auto i = 0; i <= 100; ++i) {
          auto const t = D * i / 100.0;
          EXPECT_NEAR(speed_at(l.service[d], t) / speed_at(v, t), 0.7, 1e-12);
        }
      }
    }
  }
  EXPECT_EQ(level_bounds(speed_level::low)[2].lo, 1.0);
  EXPECT_EQ(level_bounds(speed_level::low)[2].hi, 1.3);
}

TEST(generate_speed_profiles, deterministic_and_stream_per_link) {
  EXPECT_EQ(serialize_instance(generated(9)), serialize_instance(generated(9)));
  EXPECT_NE(serialize_instance(generated(9)),
            serialize_instance(generate_speed_profiles(generated(9),
                                                       speed_level::medium, 10)));

  synthetic_params p;
  p.vertices = 12;
  p.services = 10;
  auto base = random_network(p);
  auto grown = base;
  auto extra = grown.links.back();
  extra.id = static_cast<link_id_t>(grown.links.size());
  extra.required = false;
  grown.links.push_back(extra);
  set_duration_limit(base, 500.0);
  set_duration_limit(grown, 500.0);
  auto const a = generate_speed_profiles(base, speed_level::high, 4);
  auto const b = generate_speed_profiles(grown, speed_level::high, 4);
  for (auto i = 0U; i != a.links.size(); ++i) {
    EXPECT_EQ(a.links[i], b.links[i]);
  }
}

TEST(generate_speed_profiles, default_duration_limit) {
  synthetic_params p;
  p.vertices = 10;
  p.services = 6;
  auto const inst = random_network(p);
  auto const g = generate_speed_profiles(inst, speed_level::low, 1);
  EXPECT_DOUBLE_EQ(g.duration_limit, 2.0 * greedy_longest_route(inst));
  EXPECT_NO_THROW(validate(g));
}

TEST(greedy_longest_route, single_service) {
  auto inst = parse_native(kMinimal);
  // depot -> service (3 / 0.7) -> back to depot (3)
  EXPECT_DOUBLE_EQ(greedy_longest_route(inst), 3.0 / 0.7 + 3.0);
}

TEST(perturb_scenario, zero_sigma_identity) {
  auto const inst = generated(5);
  for (auto const& s : perturb_scenario(inst, {0.0, 1, 3})) {
    EXPECT_EQ(s, inst);
  }
}

TEST(perturb_scenario, truncation_and_shared_factor) {
  auto const inst = generated(6, speed_level::high);
  auto const scenarios = perturb_scenario(inst, {0.6, 7, 5});
  ASSERT_EQ(scenarios.size(), 5U);
  for (auto const& s : scenarios) {
    for (auto i = 0U; i != inst.links.size(); ++i) {
      auto const& l0 = inst.links[i];
      auto const& l1 = s.links[i];
      for (auto d = 0U; d != l0.direction_count(); ++d) {
        ASSERT_EQ(l1.travel[d].breakpoints().size(), l0.travel[d].breakpoints().size());
        for (auto k = 0U; k != l0.travel[d].piece_count(); ++k) {
          auto const c = l1.travel[d].speeds()[k] / l0.travel[d].speeds()[k];
          EXPECT_GE(c, 0.4 - 1e-12);
          EXPECT_LE(c, 1.6 + 1e-12);
          EXPECT_NEAR(l1.service[d].speeds()[k] / l0.service[d].speeds()[k], c,
                      1e-12);
        }
      }
    }
  }
}

TEST(perturb_scenario, reproducible) {
  auto const inst = generated(8);
  auto const a = perturb_scenario(inst, {0.2, 42, 20});
  auto const b = perturb_scenario(inst, {0.2, 42, 20});
  for (auto i = 0U; i != a.size(); ++i) {
    EXPECT_EQ(serialize_instance(a[i]), serialize_instance(b[i]));
  }
  EXPECT_NE(serialize_instance(a[0]), serialize_instance(a[1]));
}

TEST(static_equivalent, uniform_weighted_average) {
  auto const inst = parse_native(read_data("tiny.td"));
  auto const s = static_equivalent(inst);
  auto const v = s.links[0].travel[0].speeds();
  ASSERT_EQ(v.size(), 1U);
  for (auto const& l : s.links) {
    EXPECT_EQ(l.travel[0].speeds()[0], v[0]);
  }
  // travel: link 0 (+: 20*1 + 40*0.5 + 40*1.5 = 100 over 100 -> 1.0,
  // -: 1.2), link 1 (+: 50 + 100 = 1.5, -: 1), link 2 (+: 0.8)
  auto const expected =
      (4 * 1.0 + 4 * 1.2 + 3 * 1.5 + 3 * 1.0 + 5 * 0.8) / (4 + 4 + 3 + 3 + 5);
  EXPECT_NEAR(v[0], expected, 1e-12);
}

TEST(synthetic, generators_are_valid) {
  for (auto seed = 0U; seed != 20U; ++seed) {
    synthetic_params p;
    p.vertices = 5 + seed;
    p.services = 3 + seed % 6;
    p.seed = seed;
    auto const inst = random_network(p);
    EXPECT_NO_THROW(validate(inst));
    EXPECT_EQ(inst.service_count(), p.services);
    auto const dist = all_pairs_static(
        inst, [](network::link const& l, unsigned) { return l.distance; });
    for (auto const& row : dist) {
      for (auto const x : row) {
        EXPECT_TRUE(std::isfinite(x));
      }
    }
  }
  auto const g = grid_network(5, 5, 8, 1);
  EXPECT_EQ(g.vertex_count, 25U);
  EXPECT_EQ(g.links.size(), 40U);
  EXPECT_EQ(g.service_count(), 8U);
}

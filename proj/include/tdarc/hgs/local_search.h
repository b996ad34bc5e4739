#pragma once

#include <cstdint>

#include "tdarc/hgs/route_plan.h"
#include "tdarc/hgs/seq_bound.h"
#include "tdarc/rng.h"

namespace tdarc::hgs {

struct ls_params {
  std::size_t granularity{15};
  bool use_filters{true};
  // decode every filtered move and count the ones that would have improved
  bool audit{false};
};

struct ls_stats {
  std::uint64_t moves{0};
  std::uint64_t filtered{0};
  std::uint64_t exact{0};
  std::uint64_t improvements{0};
  std::uint64_t audit_checked{0};
  std::uint64_t audit_violations{0};

  void add(ls_stats const&);
  double filter_rate() const {
    return moves == 0U ? 0.0 : static_cast<double>(filtered) / static_cast<double>(moves);
  }
};

class local_search {
public:
  local_search(profiles::travel_model const&, ls_params const&, rng&);

  // First-improvement descent over relocate, swap, 2-opt and 2-opt* moves;
  // never increases the penalised cost.
  route_plan run(route_plan const&, penalties const&);

  ls_stats stats;

private:
  struct route_data {
    std::vector<service_t> services;
    double load{0.0};
    double duration{0.0};
    double cost{0.0};
    std::vector<double> load_prefix;  // load of positions 1..p
    // exact completion times, position 0 is the depot start
    std::vector<std::array<double, 2>> exact;
    // bounds of [i..j] forward and reversed, i <= j, positions 1-based
    std::vector<seq_bound> fwd, rev;

    seq_bound const& forward(std::size_t i, std::size_t j) const;
    seq_bound const& reversed(std::size_t i, std::size_t j) const;
  };

  struct entry {
    std::uint32_t route, pos;
  };

  void load(route_plan const&);
  void update(std::uint32_t r);
  bool try_moves(service_t u, std::uint32_t rv, std::uint32_t pv);
  bool evaluate(std::uint32_t ra, std::vector<entry> const& a, std::uint32_t rb,
                std::vector<entry> const& b);
  double lower_bound_cost(std::vector<entry> const&) const;
  double exact_cost(std::vector<entry> const&) const;
  double cost_of(double duration, double load) const;
  double load_of(std::vector<entry> const&) const;

  profiles::travel_model const& model_;
  ls_params params_;
  rng& rng_;
  penalties pen_;
  std::vector<std::vector<service_t>> neighbors_;
  std::vector<route_data> routes_;
  std::vector<std::uint32_t> route_of_, pos_of_;
};

}  // namespace tdarc::hgs

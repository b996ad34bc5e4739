#include <algorithm>
#include <numeric>

#include "tdarc/profiles.h"

namespace tdarc::profiles {

travel_model::travel_model(network::instance inst, matrix_options const& opt)
    : inst_{std::move(inst)}, pm_{build_profile_matrix(inst_, opt)} {
  build_services();
}

travel_model::travel_model(network::instance inst, profile_matrix pm)
    : inst_{std::move(inst)}, pm_{std::move(pm)} {
  build_services();
}

void travel_model::build_services() {
  auto const n = inst_.service_count();
  service_.resize(n);
  for (auto s = 0U; s != n; ++s) {
    auto const& l = inst_.service_link(s);
    for (auto mode = 1U; mode <= l.direction_count(); ++mode) {
      pl_time::arrival_function f;
      try {
        f = pl_time::build_arrival_function(l.service[mode - 1U], l.distance,
                                            horizon());
      } catch (degenerate_horizon const&) {
      } catch (arrival_beyond_horizon const&) {
      }
      service_[s][mode - 1U] = indexed_function{std::move(f), pm_.bucket_count()};
    }
  }

  proximity_.assign(n, std::vector<double>(n, pl_time::kInfinity));
  for (auto a = 0U; a != n; ++a) {
    for (auto b = 0U; b != n; ++b) {
      if (a == b) {
        continue;
      }
      auto best = pl_time::kInfinity;
      for (auto ka = 1U; ka <= inst_.mode_count(a); ++ka) {
        auto const ra = inst_.service(a, ka);
        auto const da = service(a, ka, 0.0);
        for (auto kb = 1U; kb <= inst_.mode_count(b); ++kb) {
          auto const rb = inst_.service(b, kb);
          auto const db = service(b, kb, 0.0);
          best = std::min(best, da / 2.0 + travel(ra.to, rb.from, 0.0) + db / 2.0);
        }
      }
      proximity_[a][b] = best;
    }
  }
}

double travel_model::mode_pair_arrival(network::service_ref const& from,
                                       network::service_ref const& to,
                                       double t) const {
  auto const a = travel(from.to, to.from, t);
  if (a == pl_time::kInfinity) {
    throw query_out_of_domain{"no arrival within the horizon between services " +
                              std::to_string(from.service) + " and " +
                              std::to_string(to.service)};
  }
  return a;
}

std::vector<std::uint32_t> travel_model::nearest(std::uint32_t s,
                                                 std::size_t k) const {
  std::vector<std::uint32_t> others;
  for (auto b = 0U; b != service_count(); ++b) {
    if (b != s) {
      others.push_back(b);
    }
  }
  std::stable_sort(begin(others), end(others), [&](auto x, auto y) {
    return proximity_[s][x] < proximity_[s][y];
  });
  others.resize(std::min(k, others.size()));
  return others;
}

}  // namespace tdarc::profiles

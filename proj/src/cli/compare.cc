#include <cmath>

#include "tdarc/cli/compare.h"

namespace tdarc::cli {

double replay(std::vector<std::vector<hgs::service_t>> const& routes,
              profiles::travel_model const& m) {
  auto total = 0.0;
  for (auto const& r : routes) {
    if (!r.empty()) {
      total += hgs::decode_route(r, m).duration;
    }
  }
  return total;
}

compare_report run_compare(network::instance const& nominal, compare_options const& opt) {
  profiles::matrix_options const mo{.horizon_factor = opt.horizon_factor,
                                    .bucket_count = opt.bucket_count};
  profiles::travel_model const td_model{nominal, mo};
  profiles::travel_model const carp_model{network::static_equivalent(nominal), mo};

  auto const td = hgs::run_hgs(td_model, opt.hgs).best.routes;
  auto const carp = hgs::run_hgs(carp_model, opt.hgs).best.routes;

  compare_report out;
  out.sigma = opt.sigma;
  out.nominal_td = replay(td, td_model);
  out.nominal_carp = replay(carp, td_model);

  auto const scenarios = network::perturb_scenario(
      nominal, {.sigma = opt.sigma, .seed = opt.seed, .count = opt.scenarios});
  auto td_sum = 0.0;
  auto carp_sum = 0.0;
  for (auto const& inst : scenarios) {
    profiles::travel_model const m{inst, mo};
    scenario_outcome s;
    s.baseline = hgs::run_hgs(m, opt.hgs).best.total_duration;
    s.td = replay(td, m);
    s.carp = replay(carp, m);
    if (!std::isfinite(s.baseline) || !std::isfinite(s.td) || !std::isfinite(s.carp) ||
        s.baseline <= 0.0) {
      ++out.skipped;
      continue;
    }
    s.td_gap = 100.0 * (s.td - s.baseline) / s.baseline;
    s.carp_gap = 100.0 * (s.carp - s.baseline) / s.baseline;
    td_sum += s.td_gap;
    carp_sum += s.carp_gap;
    out.scenarios.push_back(s);
  }
  if (!out.scenarios.empty()) {
    auto const k = static_cast<double>(out.scenarios.size());
    out.mean_td_gap = td_sum / k;
    out.mean_carp_gap = carp_sum / k;
  }
  return out;
}

}  // namespace tdarc::cli

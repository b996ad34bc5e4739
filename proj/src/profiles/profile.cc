#include <algorithm>
#include <chrono>
#include <cmath>

#include "tdarc/profiles.h"

namespace tdarc::profiles {

using pl_time::arrival_function;

indexed_function::indexed_function(arrival_function fn, std::size_t bucket_count)
    : f{std::move(fn)},
      idx{f, bucket_count == 0U ? pl_time::default_bucket_count(f) : bucket_count},
      min_gap{pl_time::min_gap(f)} {}

link_functions build_travel_functions(network::instance const& inst,
                                      double horizon) {
  link_functions out(inst.links.size());
  for (auto const& l : inst.links) {
    for (auto d = 0U; d != l.direction_count(); ++d) {
      try {
        out[l.id][d] =
            pl_time::build_arrival_function(l.travel[d], l.distance, horizon);
      } catch (degenerate_horizon const&) {
      } catch (arrival_beyond_horizon const&) {
      }
    }
  }
  return out;
}

std::vector<arrival_function> profile_from_origin(network::instance const& inst,
                                                  link_functions const& phi,
                                                  vertex_t origin,
                                                  double horizon,
                                                  origin_stats* stats) {
  auto const n = inst.vertex_count;
  auto const out = network::outgoing_links(inst);
  auto const eps = pl_time::kTimeTolerance * std::max(1.0, horizon);

  std::vector<arrival_function> psi(n);
  psi[origin] = arrival_function::identity(horizon);
  std::vector<vertex_t> active{origin};
  origin_stats local;

  for (auto round = 0U;; ++round) {
    if (round > n) {
      throw non_termination{"quickest path profile from vertex " +
                            std::to_string(origin) + " still changing after " +
                            std::to_string(round) + " rounds (" +
                            std::to_string(active.size()) + " active)"};
    }
    auto next = psi;
    std::vector<bool> touched(n, false);
    for (auto const x : active) {
      for (auto const& o : out[x]) {
        auto const& f = phi[o.link][o.direction];
        if (f.empty()) {
          continue;
        }
        ++local.relaxations;
        auto cand = pl_time::compose(f, psi[x]);
        if (cand.empty()) {
          continue;
        }
        next[o.head] = pl_time::lower_envelope(next[o.head], cand);
        touched[o.head] = true;
      }
    }
    active.clear();
    for (auto y = 0U; y != n; ++y) {
      if (!touched[y]) {
        continue;
      }
      if (pl_time::approximately_equal(next[y], psi[y], eps)) {
        continue;
      }
      psi[y] = std::move(next[y]);
      active.push_back(y);
    }
    local.rounds = round + 1U;
    if (active.empty()) {
      break;
    }
  }
  if (stats != nullptr) {
    *stats = local;
  }
  return psi;
}

std::vector<vertex_t> relevant_origins(network::instance const& inst) {
  std::vector<vertex_t> v{network::instance::depot};
  for (auto const id : inst.required) {
    v.push_back(inst.links[id].from);
    v.push_back(inst.links[id].to);
  }
  std::sort(begin(v), end(v));
  v.erase(std::unique(begin(v), end(v)), end(v));
  return v;
}

profile_matrix::profile_matrix(std::vector<vertex_t> origins,
                               vertex_t vertex_count, double horizon,
                               std::vector<std::vector<arrival_function>> rows,
                               std::size_t bucket_count)
    : origins_{std::move(origins)},
      row_of_(vertex_count, -1),
      vertex_count_{vertex_count},
      horizon_{horizon},
      bucket_count_{bucket_count} {
  if (rows.size() != origins_.size()) {
    throw invariant_violation{"profile matrix: one row per origin expected"};
  }
  rows_.resize(rows.size());
  for (auto r = 0U; r != rows.size(); ++r) {
    row_of_[origins_[r]] = static_cast<std::int32_t>(r);
    if (rows[r].size() != vertex_count) {
      throw invariant_violation{"profile matrix: row size mismatch"};
    }
    rows_[r].reserve(vertex_count);
    for (auto& f : rows[r]) {
      telemetry.functions += f.empty() ? 0U : 1U;
      telemetry.total_pieces += f.piece_count();
      rows_[r].emplace_back(std::move(f), bucket_count);
    }
  }
  telemetry.mean_pieces =
      telemetry.functions == 0U
          ? 0.0
          : static_cast<double>(telemetry.total_pieces) /
                static_cast<double>(telemetry.functions);
}

indexed_function const& profile_matrix::psi(vertex_t i, vertex_t j) const {
  auto const r = row_of_[i];
  if (r < 0) {
    throw invariant_violation{"vertex " + std::to_string(i) +
                              " is not a profile origin"};
  }
  return rows_[static_cast<std::size_t>(r)][j];
}

profile_matrix build_profile_matrix(network::instance const& inst,
                                    matrix_options const& opt) {
  if (!std::isfinite(inst.duration_limit)) {
    throw invariant_violation{"profiles need a finite duration limit"};
  }
  if (!(opt.horizon_factor >= 1.0 && opt.horizon_factor <= 2.0)) {
    throw invariant_violation{"horizon factor must lie in [1, 2]"};
  }
  auto const start = std::chrono::steady_clock::now();
  auto const horizon = opt.horizon_factor * inst.duration_limit;
  auto const phi = build_travel_functions(inst, horizon);
  auto origins = relevant_origins(inst);
  std::vector<std::vector<arrival_function>> rows;
  auto max_rounds = std::size_t{0};
  for (auto const o : origins) {
    origin_stats s;
    rows.push_back(profile_from_origin(inst, phi, o, horizon, &s));
    max_rounds = std::max(max_rounds, s.rounds);
  }
  profile_matrix pm{std::move(origins), inst.vertex_count, horizon,
                    std::move(rows), opt.bucket_count};
  pm.telemetry.max_rounds = max_rounds;
  pm.telemetry.build_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return pm;
}

}  // namespace tdarc::profiles

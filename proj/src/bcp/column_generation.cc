#include <algorithm>
#include <optional>

#include "tdarc/bcp/completion_bounds.h"
#include "tdarc/bcp/solver.h"

namespace tdarc::bcp {

namespace {

constexpr auto kArtificialTolerance = 1e-7;

}  // namespace

bcp_context::bcp_context(profiles::travel_model const& m, bcp_options opt)
    : model{m},
      options{std::move(opt)},
      nodes{m},
      ng{build_ng_sets(m, options.ng_size)},
      big_m{2.0 * std::min(m.duration_limit(), m.horizon()) *
            static_cast<double>(m.service_count() + 1U)},
      start{std::chrono::steady_clock::now()} {
  for (auto s = 0U; s != m.service_count(); ++s) {
    for (auto k = 1U; k <= m.inst().mode_count(s); ++k) {
      auto c = make_column({{s, static_cast<std::uint8_t>(k)}}, m);
      if (c.has_value() && c->cost <= std::min(m.duration_limit(), m.horizon())) {
        add_to_pool(*c);
      }
    }
  }
  for (auto const& c : options.initial_columns) {
    add_to_pool(c);
  }
}

void bcp_context::add_to_pool(column const& c) {
  if (pool_index.insert(c.seq).second) {
    pool.push_back(c);
  }
}

double bcp_context::elapsed() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool compatible(column const& c, node_constraints const& cons, node_table const& nodes) {
  return std::all_of(begin(cons.forbidden), end(cons.forbidden), [&](auto const& f) {
    return coefficient(f, c, nodes) == 0.0;
  });
}

cg_result solve_node(bcp_context& ctx, node_constraints const& cons, pricing_level level,
                     std::size_t max_iterations, bool separate) {
  auto const& m = ctx.model;
  master_problem mp{m, ctx.nodes, ctx.big_m};
  for (auto const& r : ctx.cuts) {
    mp.add_row(r);
  }
  for (auto const& r : cons.rows) {
    mp.add_row(r);
  }
  for (auto const& c : ctx.pool) {
    if (compatible(c, cons, ctx.nodes)) {
      mp.add_column(c);
    }
  }

  pricing_options popt{.max_columns = ctx.options.max_columns_per_pricing,
                       .max_labels = ctx.options.max_labels};
  cg_result out;
  master_solution sol;
  auto rounds = 0U;
  auto exact_proof = true;
  while (true) {
    auto alpha = ctx.options.stabilization;
    std::optional<dual_state> center;
    auto done = false;
    while (!done && out.iterations != max_iterations) {
      sol = mp.solve();
      ++out.iterations;
      auto const& current = sol.duals;
      while (true) {
        auto const sep = center.has_value() ? current.smoothed(*center, alpha) : current;
        pricing_problem pp{m, ctx.nodes, ctx.ng, sep, mp.rows(), cons.forbidden};
        auto res = price_fast(pp, popt);
        auto exact = false;
        if (res.columns.empty() && level == pricing_level::full) {
          res = price_heuristic_dominance(pp, ctx.options.mu, popt);
          if (res.columns.empty()) {
            std::optional<completion_bounds> cb;
            auto exact_opt = popt;
            if (ctx.options.completion_bounds) {
              cb.emplace(pp);
              exact_opt.bounds = &*cb;
            }
            res = price_exact(pp, exact_opt);
            exact = true;
            if (res.truncated) {
              ++ctx.pricing_truncations;
            }
          }
        }
        auto added = 0U;
        for (auto& c : res.columns) {
          auto const negative = reduced_cost(c, current, mp.rows(), ctx.nodes) < -1e-9;
          ctx.add_to_pool(c);
          if (mp.add_column(std::move(c)) && negative) {
            ++added;
          }
        }
        if (added != 0U) {
          center = sep;
          break;
        }
        if (alpha > 0.0) {
          alpha = std::max(0.0, alpha - 0.1);
          if (alpha < 1e-9) {
            alpha = 0.0;
          }
          continue;
        }
        exact_proof = level == pricing_level::full && exact && !res.truncated;
        done = true;
        break;
      }
    }
    out.converged = done && exact_proof;
    if (!done || !separate || level != pricing_level::full ||
        rounds == ctx.options.cut_rounds || sol.artificial > kArtificialTolerance) {
      break;
    }
    ++rounds;
    support sup;
    for (auto k = 0U; k != sol.lambda.size(); ++k) {
      if (sol.lambda[k] > 1e-9) {
        sup.columns.push_back(&mp.columns()[k]);
        sup.lambda.push_back(sol.lambda[k]);
      }
    }
    auto cuts = separate_odd_edge_cuts(m, ctx.nodes, sup, ctx.cuts);
    auto cap = separate_capacity_cuts(m, ctx.nodes, sup, ctx.cuts);
    cuts.insert(end(cuts), std::make_move_iterator(begin(cap)),
                std::make_move_iterator(end(cap)));
    if (cuts.empty()) {
      break;
    }
    for (auto& r : cuts) {
      ctx.cuts.push_back(r);
      mp.add_row(std::move(r));
    }
  }

  out.feasible = sol.artificial <= kArtificialTolerance;
  out.bound = sol.objective;
  for (auto k = 0U; k != sol.lambda.size(); ++k) {
    if (sol.lambda[k] > 1e-9) {
      out.columns.push_back(mp.columns()[k]);
      out.lambda.push_back(sol.lambda[k]);
    }
  }
  return out;
}

}  // namespace tdarc::bcp

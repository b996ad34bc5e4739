#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>

#include "tdarc/bcp/completion_bounds.h"
#include "tdarc/bcp/pricing.h"

namespace tdarc::bcp {

using pl_time::kInfinity;

namespace {

constexpr auto kNegative = -1e-9;

double limit_of(profiles::travel_model const& m) {
  return std::min(m.duration_limit(), m.horizon());
}

bool in_memory(label const& l, service_t s, pricing_problem const& pp) {
  if (pp.nodes[l.node].depot) {
    return false;
  }
  auto const& ng = pp.ng.members[pp.nodes[l.node].service];
  for (auto k = 0U; k != ng.size(); ++k) {
    if (ng[k] == s) {
      return (l.memory >> k) & 1U;
    }
  }
  return false;
}

std::vector<oriented_service> sequence_of(std::vector<label> const& labels,
                                          std::int32_t idx, pricing_problem const& pp) {
  std::vector<oriented_service> seq;
  for (; idx >= 0 && !pp.nodes[labels[idx].node].depot; idx = labels[idx].pred) {
    auto const& info = pp.nodes[labels[idx].node];
    seq.push_back({info.service, info.mode});
  }
  std::reverse(begin(seq), end(seq));
  return seq;
}

struct candidate {
  double rc;
  std::int32_t idx;
};

// Best distinct negative columns, rechecked against the duals from scratch.
void collect(std::vector<candidate>& cands, std::vector<label> const& labels,
             pricing_problem const& pp, std::size_t max_columns, pricing_result& out) {
  std::sort(begin(cands), end(cands),
            [](auto const& a, auto const& b) { return a.rc < b.rc; });
  std::set<std::vector<oriented_service>> seen;
  for (auto const& c : cands) {
    if (out.columns.size() == max_columns) {
      break;
    }
    auto seq = sequence_of(labels, c.idx, pp);
    if (seq.empty() || seen.contains(seq)) {
      continue;
    }
    seen.insert(seq);
    auto col = make_column(std::move(seq), pp.model);
    if (!col.has_value() || col->cost > limit_of(pp.model) ||
        reduced_cost(*col, pp.duals, pp.rows, pp.nodes) >= kNegative) {
      continue;
    }
    out.columns.push_back(std::move(*col));
    out.reduced_costs.push_back(c.rc);
  }
}

enum class dominance_kind : std::uint8_t { exact, heuristic };

pricing_result label_setting(pricing_problem const& pp, dominance_kind kind, double mu,
                             pricing_options const& opt) {
  pricing_result out;
  std::vector<label> labels{depot_label(pp)};
  std::vector<bool> alive{true};
  std::vector<std::vector<std::int32_t>> bucket(pp.nodes.size());
  std::vector<candidate> cands;

  using entry = std::pair<double, std::int32_t>;
  std::priority_queue<entry, std::vector<entry>, std::greater<>> heap;
  heap.emplace(0.0, 0);

  auto const dominated = [&](label const& a, label const& b) {
    return kind == dominance_kind::exact ? dominates_exact(a, b)
                                         : dominates_heuristic(a, b, mu);
  };

  while (!heap.empty()) {
    auto const idx = heap.top().second;
    heap.pop();
    if (!alive[idx]) {
      continue;
    }
    auto const cur = labels[idx];
    if (!pp.nodes[cur.node].depot) {
      auto const rc = completion_reduced_cost(cur, pp);
      if (rc < kNegative) {
        cands.push_back({rc, idx});
      }
    }
    for (auto q = node_t{1}; q != pp.nodes.size(); ++q) {
      auto next = extend(cur, q, pp);
      if (!next.has_value()) {
        continue;
      }
      if (opt.bounds != nullptr &&
          next->time - next->xi + opt.bounds->lookup(*next) >= kNegative) {
        ++out.fathomed;
        continue;
      }
      next->pred = idx;
      auto& list = bucket[q];
      auto const beaten = std::any_of(begin(list), end(list), [&](auto o) {
        return dominated(labels[o], *next);
      });
      if (beaten) {
        continue;
      }
      std::erase_if(list, [&](auto o) {
        if (dominated(*next, labels[o])) {
          alive[o] = false;
          return true;
        }
        return false;
      });
      if (labels.size() == opt.max_labels) {
        out.truncated = true;
        break;
      }
      auto const id = static_cast<std::int32_t>(labels.size());
      labels.push_back(*next);
      alive.push_back(true);
      list.push_back(id);
      heap.emplace(next->time, id);
    }
    if (out.truncated) {
      break;
    }
  }
  out.labels = labels.size();
  collect(cands, labels, pp, opt.max_columns, out);
  return out;
}

}  // namespace

ng_sets build_ng_sets(profiles::travel_model const& m, std::size_t size) {
  ng_sets out;
  auto const n = m.service_count();
  auto const k = std::clamp<std::size_t>(size, 1U, 8U);
  out.members.resize(n);
  for (auto s = 0U; s != n; ++s) {
    out.members[s].push_back(s);
    for (auto const o : m.nearest(s, k - 1U)) {
      out.members[s].push_back(o);
    }
  }
  return out;
}

pricing_problem::pricing_problem(profiles::travel_model const& m, node_table const& n,
                                 ng_sets const& g, dual_state const& d,
                                 std::span<transition_row const> r,
                                 std::span<transition_row const> forbidden)
    : model{m},
      nodes{n},
      ng{g},
      duals{d},
      rows(begin(r), end(r)),
      td{transition_duals(n, d, r)},
      allowed(n.size(), std::vector<bool>(n.size(), true)) {
  for (auto p = 0U; p != n.size(); ++p) {
    for (auto q = 0U; q != n.size(); ++q) {
      auto ok = n[p].valid && n[q].valid && p != q;
      for (auto const& f : forbidden) {
        if (ok && coefficient(f, n[p], n[q], n.service_count()) != 0.0) {
          ok = false;
        }
      }
      allowed[p][q] = ok;
    }
  }
}

label depot_label(pricing_problem const& pp) {
  return label{.node = 0, .load = 0.0, .time = 0.0, .xi = pp.duals.gamma};
}

std::optional<label> extend(label const& l, node_t to, pricing_problem const& pp) {
  auto const& target = pp.nodes[to];
  if (target.depot || !pp.allowed[l.node][to] ||
      in_memory(l, target.service, pp)) {
    return std::nullopt;
  }
  auto const& m = pp.model;
  auto const load = l.load + m.inst().demand(target.service);
  if (load > m.inst().capacity) {
    return std::nullopt;
  }
  auto const& from = pp.nodes[l.node];
  auto const arrive = m.travel(from.end, target.start, l.time);
  auto const done =
      arrive == kInfinity ? kInfinity : m.service(target.service, target.mode, arrive);
  if (done == kInfinity || done > limit_of(m)) {
    return std::nullopt;
  }
  label out{.node = to, .load = load, .time = done, .xi = l.xi + pp.td[l.node][to]};
  auto const& ng = pp.ng.members[target.service];
  for (auto k = 0U; k != ng.size(); ++k) {
    if (k == 0U || in_memory(l, ng[k], pp)) {
      out.memory |= static_cast<std::uint8_t>(1U << k);
    }
  }
  return out;
}

double completion_reduced_cost(label const& l, pricing_problem const& pp) {
  if (!pp.allowed[l.node][0]) {
    return kInfinity;
  }
  auto const back = pp.model.travel(pp.nodes[l.node].end, network::instance::depot, l.time);
  if (back == kInfinity || back > limit_of(pp.model)) {
    return kInfinity;
  }
  return back - l.xi - pp.td[l.node][0];
}

bool dominates_exact(label const& a, label const& b) {
  return a.load <= b.load && a.time <= b.time && a.xi >= b.xi &&
         (a.memory & ~b.memory) == 0U;
}

bool dominates_heuristic(label const& a, label const& b, double mu) {
  return a.load <= b.load && a.time <= b.time && a.xi + mu * (b.time - a.time) >= b.xi &&
         (a.memory & ~b.memory) == 0U;
}

bool dominates_reduced_cost(label const& a, label const& b) {
  return a.time - a.xi <= b.time - b.xi;
}

pricing_result price_exact(pricing_problem const& pp, pricing_options const& opt) {
  return label_setting(pp, dominance_kind::exact, 0.0, opt);
}

pricing_result price_heuristic_dominance(pricing_problem const& pp, double mu,
                                         pricing_options const& opt) {
  return label_setting(pp, dominance_kind::heuristic, mu, opt);
}

pricing_result price_fast(pricing_problem const& pp, pricing_options const& opt) {
  pricing_result out;
  auto const& inst = pp.model.inst();
  auto const finite_q = std::isfinite(inst.capacity);
  auto const step = finite_q ? std::max(1.0, std::ceil(inst.capacity / 200.0)) : 1.0;
  auto const slot = [&](label const& l) {
    return finite_q ? static_cast<std::size_t>(std::floor(l.load / step)) : 0U;
  };

  std::vector<label> labels{depot_label(pp)};
  std::map<std::pair<node_t, std::size_t>, std::int32_t> best;
  std::vector<candidate> cands;

  using entry = std::pair<double, std::int32_t>;
  std::priority_queue<entry, std::vector<entry>, std::greater<>> heap;
  heap.emplace(0.0, 0);
  while (!heap.empty()) {
    auto const idx = heap.top().second;
    heap.pop();
    auto const cur = labels[idx];
    if (idx != 0) {
      auto const it = best.find({cur.node, slot(cur)});
      if (it == end(best) || it->second != idx) {
        continue;
      }
      auto const rc = completion_reduced_cost(cur, pp);
      if (rc < kNegative) {
        cands.push_back({rc, idx});
      }
    }
    for (auto q = node_t{1}; q != pp.nodes.size(); ++q) {
      auto next = extend(cur, q, pp);
      if (!next.has_value()) {
        continue;
      }
      if (opt.bounds != nullptr &&
          next->time - next->xi + opt.bounds->lookup(*next) >= kNegative) {
        ++out.fathomed;
        continue;
      }
      next->pred = idx;
      auto const key = std::pair{q, slot(*next)};
      auto const it = best.find(key);
      if (it != end(best)) {
        auto const& o = labels[it->second];
        if (o.time - o.xi <= next->time - next->xi) {
          continue;
        }
      }
      if (labels.size() == opt.max_labels) {
        out.truncated = true;
        break;
      }
      auto const id = static_cast<std::int32_t>(labels.size());
      labels.push_back(*next);
      best[key] = id;
      heap.emplace(next->time, id);
    }
    if (out.truncated) {
      break;
    }
  }
  out.labels = labels.size();
  collect(cands, labels, pp, opt.max_columns, out);
  return out;
}

}  // namespace tdarc::bcp

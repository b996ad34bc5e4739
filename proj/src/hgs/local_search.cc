#include <algorithm>
#include <cmath>

#include "tdarc/hgs/local_search.h"

namespace tdarc::hgs {

namespace {

constexpr double kImprovement = 1e-7;

}  // namespace

void ls_stats::add(ls_stats const& o) {
  moves += o.moves;
  filtered += o.filtered;
  exact += o.exact;
  improvements += o.improvements;
  audit_checked += o.audit_checked;
  audit_violations += o.audit_violations;
}

seq_bound const& local_search::route_data::forward(std::size_t i,
                                                   std::size_t j) const {
  return fwd[(i - 1U) * services.size() + (j - 1U)];
}

seq_bound const& local_search::route_data::reversed(std::size_t i,
                                                    std::size_t j) const {
  return rev[(i - 1U) * services.size() + (j - 1U)];
}

local_search::local_search(profiles::travel_model const& m, ls_params const& p,
                           rng& r)
    : model_{m}, params_{p}, rng_{r} {
  auto const n = m.service_count();
  neighbors_.resize(n);
  for (auto s = 0U; s != n; ++s) {
    neighbors_[s] = m.nearest(s, params_.granularity);
  }
}

void local_search::load(route_plan const& plan) {
  auto const n = model_.service_count();
  route_of_.assign(n, 0U);
  pos_of_.assign(n, 0U);
  routes_.clear();
  for (auto const& r : plan.routes) {
    if (!r.empty()) {
      routes_.emplace_back().services = r;
    }
  }
  if (routes_.size() < model_.inst().fleet) {
    routes_.emplace_back();
  }
  for (auto r = 0U; r != routes_.size(); ++r) {
    update(r);
  }
}

void local_search::update(std::uint32_t r) {
  auto& rd = routes_[r];
  auto const L = rd.services.size();
  rd.load_prefix.assign(L + 1U, 0.0);
  for (auto i = 0U; i != L; ++i) {
    auto const s = rd.services[i];
    rd.load_prefix[i + 1U] = rd.load_prefix[i] + model_.inst().demand(s);
    route_of_[s] = r;
    pos_of_[s] = i + 1U;
  }
  rd.load = rd.load_prefix[L];
  rd.exact = completion_table(rd.services, model_);
  rd.duration = L == 0U ? 0.0 : route_end(rd.services[L - 1U], rd.exact[L], model_);
  rd.cost = L == 0U ? 0.0 : cost_of(rd.duration, rd.load);

  rd.fwd.assign(L * L, seq_bound{});
  rd.rev.assign(L * L, seq_bound{});
  for (auto i = 0U; i != L; ++i) {
    auto const single = seq_single(rd.services[i], model_);
    rd.fwd[i * L + i] = single;
    rd.rev[i * L + i] = single;
  }
  for (auto i = 0U; i != L; ++i) {
    for (auto j = i + 1U; j < L; ++j) {
      rd.fwd[i * L + j] = seq_concat(rd.fwd[i * L + j - 1U], rd.fwd[j * L + j], model_);
      // reversed [i..j] runs s_j, ..., s_i
      rd.rev[i * L + j] = seq_concat(rd.rev[j * L + j], rd.rev[i * L + j - 1U], model_);
    }
  }

  auto const has_empty = std::any_of(begin(routes_), end(routes_),
                                     [](auto const& x) { return x.services.empty(); });
  if (!has_empty && routes_.size() < model_.inst().fleet) {
    routes_.emplace_back();
  }
}

double local_search::cost_of(double duration, double load) const {
  return penalized_cost(duration, load, pen_, model_);
}

double local_search::load_of(std::vector<entry> const& e) const {
  auto load = 0.0;
  for (auto const& x : e) {
    load += model_.inst().demand(routes_[x.route].services[x.pos - 1U]);
  }
  return load;
}

double local_search::exact_cost(std::vector<entry> const& e) const {
  if (e.empty()) {
    return 0.0;
  }
  std::vector<service_t> seq;
  seq.reserve(e.size());
  for (auto const& x : e) {
    seq.push_back(routes_[x.route].services[x.pos - 1U]);
  }
  return cost_of(decode_route(seq, model_).duration, load_of(e));
}

double local_search::lower_bound_cost(std::vector<entry> const& e) const {
  if (e.empty()) {
    return 0.0;
  }
  auto p = 0U;
  auto const r0 = e[0].route;
  while (p != e.size() && e[p].route == r0 && e[p].pos == p + 1U) {
    ++p;
  }
  auto prefix = depot_start(model_);
  if (p != 0U) {
    prefix.last = routes_[r0].services[p - 1U];
    prefix.t = routes_[r0].exact[p];
  }

  auto rest = seq_depot(model_);
  auto have_rest = false;
  auto append = [&](seq_bound const& b) {
    rest = have_rest ? seq_concat(rest, b, model_) : b;
    have_rest = true;
  };
  for (auto k = p; k != e.size();) {
    auto const r = e[k].route;
    auto end = k + 1U;
    if (end != e.size() && e[end].route == r && e[end].pos == e[k].pos + 1U) {
      while (end != e.size() && e[end].route == r &&
             e[end].pos == e[end - 1U].pos + 1U) {
        ++end;
      }
      append(routes_[r].forward(e[k].pos, e[end - 1U].pos));
    } else if (end != e.size() && e[end].route == r &&
               e[end].pos + 1U == e[k].pos) {
      while (end != e.size() && e[end].route == r &&
             e[end].pos + 1U == e[end - 1U].pos) {
        ++end;
      }
      append(routes_[r].reversed(e[end - 1U].pos, e[k].pos));
    } else {
      append(routes_[r].forward(e[k].pos, e[k].pos));
    }
    k = end;
  }
  rest = have_rest ? seq_concat(rest, seq_depot(model_), model_) : seq_depot(model_);
  return cost_of(move_lower_bound(prefix, rest, model_), load_of(e));
}

bool local_search::evaluate(std::uint32_t ra, std::vector<entry> const& a,
                            std::uint32_t rb, std::vector<entry> const& b) {
  auto const same = ra == rb;
  auto const old = routes_[ra].cost + (same ? 0.0 : routes_[rb].cost);
  auto const eps = kImprovement * (1.0 + std::abs(old));
  ++stats.moves;
  auto exact = [&] { return exact_cost(a) + (same ? 0.0 : exact_cost(b)); };
  if (params_.use_filters) {
    auto const lb = lower_bound_cost(a) + (same ? 0.0 : lower_bound_cost(b));
    if (lb - old > -eps) {
      ++stats.filtered;
      if (params_.audit) {
        ++stats.audit_checked;
        if (exact() - old < -eps) {
          ++stats.audit_violations;
        }
      }
      return false;
    }
  }
  ++stats.exact;
  if (exact() - old >= -eps) {
    return false;
  }

  auto services_of = [&](std::vector<entry> const& e) {
    std::vector<service_t> seq;
    seq.reserve(e.size());
    for (auto const& x : e) {
      seq.push_back(routes_[x.route].services[x.pos - 1U]);
    }
    return seq;
  };
  auto sa = services_of(a);
  auto sb = same ? std::vector<service_t>{} : services_of(b);
  routes_[ra].services = std::move(sa);
  update(ra);
  if (!same) {
    routes_[rb].services = std::move(sb);
    update(rb);
  }
  ++stats.improvements;
  return true;
}

bool local_search::try_moves(service_t u, std::uint32_t rv, std::uint32_t pv) {
  auto const ru = route_of_[u];
  auto const pu = pos_of_[u];
  auto const lu = static_cast<std::uint32_t>(routes_[ru].services.size());
  auto const lv = static_cast<std::uint32_t>(routes_[rv].services.size());

  auto seq = [](std::vector<entry>& out, std::uint32_t r, std::uint32_t i,
                std::uint32_t j) {
    for (auto p = i; p <= j; ++p) {
      out.push_back({r, p});
    }
  };
  auto rseq = [](std::vector<entry>& out, std::uint32_t r, std::uint32_t i,
                 std::uint32_t j) {
    for (auto p = j; p >= i && p != 0U; --p) {
      out.push_back({r, p});
    }
  };

  auto const has_x = pu < lu;
  auto const has_v = pv >= 1U;
  auto const has_y = pv < lv;

  if (ru != rv) {
    std::vector<entry> a, b;
    auto reset = [&] {
      a.clear();
      b.clear();
    };
    // relocate u after v
    reset();
    seq(a, ru, 1U, pu - 1U);
    seq(a, ru, pu + 1U, lu);
    seq(b, rv, 1U, pv);
    b.push_back({ru, pu});
    seq(b, rv, pv + 1U, lv);
    if (evaluate(ru, a, rv, b)) {
      return true;
    }
    if (has_x) {
      // relocate (u, x) after v, then reversed
      for (auto const reversed : {false, true}) {
        reset();
        seq(a, ru, 1U, pu - 1U);
        seq(a, ru, pu + 2U, lu);
        seq(b, rv, 1U, pv);
        reversed ? rseq(b, ru, pu, pu + 1U) : seq(b, ru, pu, pu + 1U);
        seq(b, rv, pv + 1U, lv);
        if (evaluate(ru, a, rv, b)) {
          return true;
        }
      }
    }
    if (has_v) {
      // swap u and v
      reset();
      seq(a, ru, 1U, pu - 1U);
      a.push_back({rv, pv});
      seq(a, ru, pu + 1U, lu);
      seq(b, rv, 1U, pv - 1U);
      b.push_back({ru, pu});
      seq(b, rv, pv + 1U, lv);
      if (evaluate(ru, a, rv, b)) {
        return true;
      }
      if (has_x) {
        // swap (u, x) and v
        reset();
        seq(a, ru, 1U, pu - 1U);
        a.push_back({rv, pv});
        seq(a, ru, pu + 2U, lu);
        seq(b, rv, 1U, pv - 1U);
        seq(b, ru, pu, pu + 1U);
        seq(b, rv, pv + 1U, lv);
        if (evaluate(ru, a, rv, b)) {
          return true;
        }
      }
      if (has_x && has_y) {
        // swap (u, x) and (v, y)
        reset();
        seq(a, ru, 1U, pu - 1U);
        seq(a, rv, pv, pv + 1U);
        seq(a, ru, pu + 2U, lu);
        seq(b, rv, 1U, pv - 1U);
        seq(b, ru, pu, pu + 1U);
        seq(b, rv, pv + 2U, lv);
        if (evaluate(ru, a, rv, b)) {
          return true;
        }
      }
    }
    // 2-opt*: tails exchanged reversed, then straight
    reset();
    seq(a, ru, 1U, pu);
    rseq(a, rv, 1U, pv);
    rseq(b, ru, pu + 1U, lu);
    seq(b, rv, pv + 1U, lv);
    if (evaluate(ru, a, rv, b)) {
      return true;
    }
    reset();
    seq(a, ru, 1U, pu);
    seq(a, rv, pv + 1U, lv);
    seq(b, rv, 1U, pv);
    seq(b, ru, pu + 1U, lu);
    return evaluate(ru, a, rv, b);
  }

  // intra-route moves on the position list
  std::vector<entry> base;
  seq(base, ru, 1U, lu);
  auto at = [&](std::vector<entry> const& e, std::uint32_t pos) {
    return static_cast<std::size_t>(
        std::find_if(begin(e), end(e), [&](entry const& x) { return x.pos == pos; }) -
        begin(e));
  };
  auto insert_after = [&](std::vector<entry>& e, std::uint32_t pos,
                          std::vector<entry> const& block) {
    auto const i = pos == 0U ? 0U : at(e, pos) + 1U;
    e.insert(e.begin() + static_cast<std::ptrdiff_t>(i), begin(block), end(block));
  };
  auto remove = [&](std::vector<entry>& e, std::uint32_t pos, std::uint32_t len) {
    auto const i = at(e, pos);
    e.erase(e.begin() + static_cast<std::ptrdiff_t>(i),
            e.begin() + static_cast<std::ptrdiff_t>(i + len));
  };
  std::vector<entry> empty;

  if (pv != pu && pv + 1U != pu) {
    auto e = base;
    remove(e, pu, 1U);
    insert_after(e, pv, {{ru, pu}});
    if (evaluate(ru, e, ru, empty)) {
      return true;
    }
  }
  if (has_x && pv != pu && pv != pu + 1U && pv + 1U != pu) {
    for (auto const reversed : {false, true}) {
      auto e = base;
      remove(e, pu, 2U);
      std::vector<entry> block{{ru, pu}, {ru, pu + 1U}};
      if (reversed) {
        std::reverse(begin(block), end(block));
      }
      insert_after(e, pv, block);
      if (evaluate(ru, e, ru, empty)) {
        return true;
      }
    }
  }
  if (has_v && pv != pu) {
    auto e = base;
    std::swap(e[pu - 1U], e[pv - 1U]);
    if (evaluate(ru, e, ru, empty)) {
      return true;
    }
  }
  if (has_v && has_x && pv != pu && pv != pu + 1U) {
    // swap (u, x) with v
    auto e = base;
    std::vector<entry> out;
    for (auto const& x : e) {
      if (x.pos == pu) {
        out.push_back({ru, pv});
      } else if (x.pos == pu + 1U) {
        continue;
      } else if (x.pos == pv) {
        out.push_back({ru, pu});
        out.push_back({ru, pu + 1U});
      } else {
        out.push_back(x);
      }
    }
    if (evaluate(ru, out, ru, empty)) {
      return true;
    }
  }
  if (has_v && has_x && has_y && (pv + 1U < pu || pu + 1U < pv)) {
    // swap (u, x) with (v, y), disjoint
    std::vector<entry> out;
    for (auto const& x : base) {
      if (x.pos == pu) {
        out.push_back({ru, pv});
        out.push_back({ru, pv + 1U});
      } else if (x.pos == pv) {
        out.push_back({ru, pu});
        out.push_back({ru, pu + 1U});
      } else if (x.pos != pu + 1U && x.pos != pv + 1U) {
        out.push_back(x);
      }
    }
    if (evaluate(ru, out, ru, empty)) {
      return true;
    }
  }
  if (pu + 1U < pv) {
    // 2-opt: reverse the stretch after u up to v
    auto e = base;
    std::reverse(e.begin() + pu, e.begin() + pv);
    return evaluate(ru, e, ru, empty);
  }
  return false;
}

route_plan local_search::run(route_plan const& plan, penalties const& pen) {
  pen_ = pen;
  load(plan);
  auto const n = static_cast<service_t>(model_.service_count());
  std::vector<service_t> order(n);
  for (auto s = 0U; s != n; ++s) {
    order[s] = s;
  }
  auto improved = true;
  while (improved) {
    improved = false;
    rng_.shuffle(order);
    for (auto const u : order) {
      auto nbrs = neighbors_[u];
      rng_.shuffle(nbrs);
      for (auto const v : nbrs) {
        if (try_moves(u, route_of_[v], pos_of_[v])) {
          improved = true;
        }
        if (pos_of_[v] == 1U && try_moves(u, route_of_[v], 0U)) {
          improved = true;
        }
      }
      auto const empty = std::find_if(begin(routes_), end(routes_),
                                      [](auto const& r) { return r.services.empty(); });
      if (empty != end(routes_) &&
          try_moves(u, static_cast<std::uint32_t>(empty - begin(routes_)), 0U)) {
        improved = true;
      }
    }
  }
  std::vector<std::vector<service_t>> out;
  for (auto& r : routes_) {
    out.push_back(r.services);
  }
  return evaluate_plan(std::move(out), model_);
}

}  // namespace tdarc::hgs

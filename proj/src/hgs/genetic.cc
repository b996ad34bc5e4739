#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <optional>

#include "tdarc/hgs/genetic.h"

namespace tdarc::hgs {

std::vector<service_t> crossover_ox(std::span<service_t const> p1,
                                    std::span<service_t const> p2,
                                    std::size_t start, std::size_t end) {
  auto const n = p1.size();
  std::vector<service_t> child(n);
  std::vector<bool> taken(n, false);
  auto pos = start;
  while (true) {
    child[pos] = p1[pos];
    taken[p1[pos]] = true;
    if (pos == end) {
      break;
    }
    pos = (pos + 1U) % n;
  }
  auto fill = (end + 1U) % n;
  for (auto k = 0U; k != n; ++k) {
    auto const s = p2[(end + 1U + k) % n];
    if (!taken[s]) {
      child[fill] = s;
      taken[s] = true;
      fill = (fill + 1U) % n;
    }
  }
  return child;
}

std::vector<service_t> crossover_ox(std::span<service_t const> p1,
                                    std::span<service_t const> p2, rng& r) {
  auto const n = p1.size();
  if (n < 2U) {
    return {p1.begin(), p1.end()};
  }
  auto const start = r.below(n);
  auto end = r.below(n);
  while (end == start) {
    end = r.below(n);
  }
  return crossover_ox(p1, p2, start, end);
}

namespace {

struct links {
  std::vector<std::uint32_t> succ, pred;
};

// the depot is service_count
links successor_links(route_plan const& plan, std::size_t n) {
  auto const depot = static_cast<std::uint32_t>(n);
  links l{std::vector<std::uint32_t>(n, depot), std::vector<std::uint32_t>(n, depot)};
  for (auto const& r : plan.routes) {
    for (auto i = 0U; i != r.size(); ++i) {
      l.pred[r[i]] = i == 0U ? depot : r[i - 1U];
      l.succ[r[i]] = i + 1U == r.size() ? depot : r[i + 1U];
    }
  }
  return l;
}

double broken_pairs(links const& a, links const& b) {
  auto const n = a.succ.size();
  auto const depot = static_cast<std::uint32_t>(n);
  auto broken = 0U;
  for (auto i = 0U; i != n; ++i) {
    if (a.succ[i] != b.succ[i] && a.succ[i] != b.pred[i]) {
      ++broken;
    }
    if (a.pred[i] == depot && b.pred[i] != depot && b.succ[i] != depot) {
      ++broken;
    }
  }
  return n == 0U ? 0.0 : static_cast<double>(broken) / static_cast<double>(n);
}

struct individual {
  route_plan plan;
  std::vector<service_t> tour;
  links adj;
  double cost{0.0};
  double fitness{0.0};
};

struct subpopulation {
  std::vector<individual> members;
  std::vector<std::vector<double>> dist;

  void add(individual ind) {
    std::vector<double> row;
    row.reserve(members.size() + 1U);
    for (auto i = 0U; i != members.size(); ++i) {
      auto const d = broken_pairs(ind.adj, members[i].adj);
      row.push_back(d);
      dist[i].push_back(d);
    }
    row.push_back(0.0);
    dist.push_back(std::move(row));
    members.push_back(std::move(ind));
  }

  void remove(std::size_t k) {
    members.erase(members.begin() + static_cast<std::ptrdiff_t>(k));
    dist.erase(dist.begin() + static_cast<std::ptrdiff_t>(k));
    for (auto& row : dist) {
      row.erase(row.begin() + static_cast<std::ptrdiff_t>(k));
    }
  }

  double diversity(std::size_t k, std::size_t n_close) const {
    std::vector<double> d;
    for (auto i = 0U; i != members.size(); ++i) {
      if (i != k) {
        d.push_back(dist[k][i]);
      }
    }
    auto const c = std::min(n_close, d.size());
    if (c == 0U) {
      return 0.0;
    }
    std::partial_sort(begin(d), begin(d) + static_cast<std::ptrdiff_t>(c), end(d));
    return std::accumulate(begin(d), begin(d) + static_cast<std::ptrdiff_t>(c), 0.0) /
           static_cast<double>(c);
  }

  void update_fitness(hgs_params const& p) {
    auto const size = members.size();
    if (size == 0U) {
      return;
    }
    if (size == 1U) {
      members[0].fitness = 0.0;
      return;
    }
    std::vector<std::size_t> by_cost(size);
    std::iota(begin(by_cost), end(by_cost), 0U);
    std::stable_sort(begin(by_cost), end(by_cost), [&](auto a, auto b) {
      return members[a].cost < members[b].cost;
    });
    std::vector<double> div(size);
    for (auto i = 0U; i != size; ++i) {
      div[i] = diversity(i, p.n_close);
    }
    std::vector<std::size_t> by_div(size);
    std::iota(begin(by_div), end(by_div), 0U);
    std::stable_sort(begin(by_div), end(by_div),
                     [&](auto a, auto b) { return div[a] > div[b]; });
    std::vector<double> cost_rank(size), div_rank(size);
    auto const denom = static_cast<double>(size - 1U);
    for (auto r = 0U; r != size; ++r) {
      cost_rank[by_cost[r]] = r / denom;
      div_rank[by_div[r]] = r / denom;
    }
    auto const elite = std::floor(p.elite_fraction * static_cast<double>(p.mu));
    for (auto i = 0U; i != size; ++i) {
      members[i].fitness =
          cost_rank[i] + (1.0 - elite / static_cast<double>(size)) * div_rank[i];
    }
  }

  void select_survivors(hgs_params const& p) {
    while (members.size() > p.mu) {
      update_fitness(p);
      auto worst = std::size_t{0};
      auto worst_clone = false;
      for (auto i = 0U; i != members.size(); ++i) {
        auto clone = false;
        for (auto j = 0U; j != members.size(); ++j) {
          if (j != i && dist[i][j] < 1e-12) {
            clone = true;
            break;
          }
        }
        if ((clone && !worst_clone) ||
            (clone == worst_clone && members[i].fitness > members[worst].fitness)) {
          worst = i;
          worst_clone = clone;
        }
      }
      remove(worst);
    }
    update_fitness(p);
  }
};

class genetic {
public:
  genetic(profiles::travel_model const& m, hgs_params const& p)
      : model_{m},
        params_{p},
        rng_{p.seed},
        ls_{m, ls_params{p.granularity, p.use_filters, p.audit}, rng_},
        n_{m.service_count()},
        start_{std::chrono::steady_clock::now()} {
    auto const q = m.inst().capacity;
    auto const scale = m.duration_limit() == pl_time::kInfinity ? m.horizon()
                                                               : m.duration_limit();
    pen_.capacity = q == pl_time::kInfinity
                        ? 1.0
                        : std::clamp(scale / std::max(1.0, q), 0.1, 1000.0);
    pen_.duration = 1.0;
  }

  hgs_result run() {
    initialize();
    auto since_improvement = std::uint64_t{0};
    while (result_.iterations < params_.max_iterations &&
           since_improvement < params_.max_no_improvement && !timed_out()) {
      ++result_.iterations;
      auto const& a = tournament();
      auto const& b = tournament();
      auto const child_tour = crossover_ox(a.tour, b.tour, rng_);
      auto const improved = educate(child_tour);
      since_improvement = improved ? 0U : since_improvement + 1U;
      if (result_.iterations % 100U == 0U) {
        adapt_penalties();
      }
      if (since_improvement != 0U && since_improvement % params_.restart_after == 0U) {
        ++result_.restarts;
        feasible_ = {};
        infeasible_ = {};
        initialize();
      }
    }
    result_.seconds = elapsed();
    result_.ls = ls_.stats;
    if (!best_) {
      result_.best = evaluate_plan({}, model_);
    } else {
      result_.best = *best_;
    }
    result_.feasible = best_ && best_->feasible && covers_all_services(*best_, n_);
    return result_;
  }

private:
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }
  bool timed_out() const { return elapsed() >= params_.time_limit; }

  void initialize() {
    auto const count = 4U * params_.mu;
    for (auto k = 0U; k != count; ++k) {
      if (k != 0U && timed_out()) {
        break;
      }
      std::vector<service_t> perm(n_);
      std::iota(begin(perm), end(perm), 0U);
      rng_.shuffle(perm);
      educate(perm);
    }
  }

  // split, local search, optional repair, insertion; true on a new best
  bool educate(std::vector<service_t> const& perm) {
    auto plan = split_giant_tour(perm, model_, pen_, model_.inst().fleet);
    plan = ls_.run(plan, pen_);
    record_feasibility(plan);
    auto improved = insert(plan);
    if (!plan.feasible && rng_.bernoulli(params_.repair_probability)) {
      auto const strict = penalties{pen_.capacity * 10.0, pen_.duration * 10.0};
      auto repaired = ls_.run(plan, strict);
      if (repaired.feasible) {
        improved = insert(repaired) || improved;
      }
    }
    return improved;
  }

  void record_feasibility(route_plan const& plan) {
    cap_history_.push_back(plan.capacity_excess <= 1e-9);
    dur_history_.push_back(plan.duration_excess <= 1e-9 * model_.duration_limit());
    if (cap_history_.size() > 100U) {
      cap_history_.erase(cap_history_.begin());
      dur_history_.erase(dur_history_.begin());
    }
  }

  void adapt_penalties() {
    auto adjust = [&](double& w, std::vector<bool> const& hist) {
      if (hist.empty()) {
        return;
      }
      auto const ok = static_cast<double>(std::count(begin(hist), end(hist), true)) /
                      static_cast<double>(hist.size());
      if (ok < params_.target_feasible - 0.05) {
        w = std::min(1e5, w * 1.2);
      } else if (ok > params_.target_feasible + 0.05) {
        w = std::max(0.1, w / 1.15);
      }
    };
    adjust(pen_.capacity, cap_history_);
    adjust(pen_.duration, dur_history_);
    for (auto& ind : infeasible_.members) {
      ind.cost = ind.plan.penalized(pen_, model_);
    }
    infeasible_.update_fitness(params_);
  }

  bool insert(route_plan const& plan) {
    individual ind;
    ind.tour = giant_tour(plan);
    ind.adj = successor_links(plan, n_);
    ind.cost = plan.penalized(pen_, model_);
    ind.plan = plan;

    auto improved = false;
    if (plan.feasible && (!best_ || !best_->feasible ||
                          plan.total_duration < best_->total_duration - 1e-9)) {
      best_ = plan;
      result_.seconds_to_best = elapsed();
      improved = true;
    } else if (!plan.feasible && (!best_ || (!best_->feasible &&
                                             ind.cost < best_infeasible_cost_))) {
      best_ = plan;
      best_infeasible_cost_ = ind.cost;
      result_.seconds_to_best = elapsed();
    }

    auto& pop = plan.feasible ? feasible_ : infeasible_;
    pop.add(std::move(ind));
    if (pop.members.size() > params_.mu + params_.lambda) {
      pop.select_survivors(params_);
    } else {
      pop.update_fitness(params_);
    }
    return improved;
  }

  individual const& pick() {
    auto const total = feasible_.members.size() + infeasible_.members.size();
    auto const k = rng_.below(static_cast<std::uint64_t>(total));
    return k < feasible_.members.size()
               ? feasible_.members[k]
               : infeasible_.members[k - feasible_.members.size()];
  }

  individual const& tournament() {
    auto const& a = pick();
    auto const& b = pick();
    return a.fitness <= b.fitness ? a : b;
  }

  profiles::travel_model const& model_;
  hgs_params params_;
  rng rng_;
  local_search ls_;
  std::size_t n_;
  std::chrono::steady_clock::time_point start_;
  penalties pen_;
  subpopulation feasible_, infeasible_;
  std::vector<bool> cap_history_, dur_history_;
  std::optional<route_plan> best_;
  double best_infeasible_cost_{pl_time::kInfinity};
  hgs_result result_;
};

}  // namespace

double broken_pairs_distance(route_plan const& a, route_plan const& b,
                             std::size_t service_count) {
  return broken_pairs(successor_links(a, service_count),
                      successor_links(b, service_count));
}

hgs_result run_hgs(profiles::travel_model const& m, hgs_params const& p) {
  if (m.service_count() == 0U) {
    hgs_result r;
    r.best = evaluate_plan({}, m);
    r.feasible = true;
    return r;
  }
  return genetic{m, p}.run();
}

}  // namespace tdarc::hgs

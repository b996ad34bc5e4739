#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "tdarc/hgs/route_plan.h"

namespace tdarc::hgs {

double penalized_cost(double duration, double load, penalties const& p,
                      profiles::travel_model const& m) {
  auto const D = m.duration_limit();
  auto const Q = m.inst().capacity;
  auto const cap = p.capacity * std::max(0.0, load - Q);
  if (duration == pl_time::kInfinity) {
    auto const H = m.horizon();
    return 10.0 * H * (1.0 + p.duration) + cap;
  }
  return duration + p.duration * std::max(0.0, duration - D) + cap;
}

double route_plan::penalized(penalties const& p,
                             profiles::travel_model const& m) const {
  auto sum = 0.0;
  for (auto r = 0U; r != routes.size(); ++r) {
    sum += penalized_cost(decoded[r].duration, loads[r], p, m);
  }
  return sum;
}

route_plan evaluate_plan(std::vector<std::vector<service_t>> routes,
                         profiles::travel_model const& m) {
  route_plan plan;
  routes.erase(std::remove_if(begin(routes), end(routes),
                              [](auto const& r) { return r.empty(); }),
               end(routes));
  plan.routes = std::move(routes);
  plan.feasible = plan.routes.size() <= m.inst().fleet;
  for (auto const& r : plan.routes) {
    auto d = decode_route(r, m);
    auto load = 0.0;
    for (auto const s : r) {
      load += m.inst().demand(s);
    }
    plan.total_duration += d.duration;
    plan.capacity_excess += std::max(0.0, load - m.inst().capacity);
    plan.duration_excess += d.duration == pl_time::kInfinity
                                ? pl_time::kInfinity
                                : std::max(0.0, d.duration - m.duration_limit());
    plan.decoded.push_back(std::move(d));
    plan.loads.push_back(load);
  }
  plan.feasible = plan.feasible && plan.capacity_excess <= 1e-9 &&
                  plan.duration_excess <= 1e-9 * m.duration_limit();
  return plan;
}

bool covers_all_services(route_plan const& plan, std::size_t service_count) {
  std::vector<int> seen(service_count, 0);
  for (auto const& r : plan.routes) {
    for (auto const s : r) {
      if (s >= service_count || seen[s]++ != 0) {
        return false;
      }
    }
  }
  return std::all_of(begin(seen), end(seen), [](int x) { return x == 1; });
}

std::vector<service_t> giant_tour(route_plan const& plan) {
  std::vector<service_t> perm;
  for (auto const& r : plan.routes) {
    perm.insert(end(perm), begin(r), end(r));
  }
  return perm;
}

namespace {

std::string num(double x) {
  if (!std::isfinite(x)) {
    return "inf";
  }
  char buf[64];
  auto const r = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string{buf, r.ptr};
}

}  // namespace

std::string write_solution(route_plan const& plan,
                           profiles::travel_model const& m,
                           stat_list const& stats) {
  std::string out;
  for (auto r = 0U; r != plan.routes.size(); ++r) {
    out += "ROUTE " + std::to_string(r + 1U) + " DUR " +
           num(plan.decoded[r].duration) + " LOAD " + num(plan.loads[r]) + " :";
    for (auto i = 0U; i != plan.routes[r].size(); ++i) {
      auto const s = plan.routes[r][i];
      auto const mode = plan.decoded[r].modes.empty() ? 1U : plan.decoded[r].modes[i];
      out += ' ' + std::to_string(m.inst().required[s]) + ':' + std::to_string(mode);
    }
    out += '\n';
  }
  out += "OBJECTIVE " + num(plan.total_duration) + '\n';
  out += std::string{"FEASIBLE "} + (plan.feasible ? "1" : "0") + '\n';
  for (auto const& [key, value] : stats) {
    out += "STAT " + key + ' ' + value + '\n';
  }
  return out;
}

route_plan read_solution(std::string_view text, profiles::travel_model const& m) {
  auto const& inst = m.inst();
  std::vector<std::int64_t> service_of(inst.links.size(), -1);
  for (auto s = 0U; s != inst.service_count(); ++s) {
    service_of[inst.required[s]] = s;
  }
  std::vector<std::vector<service_t>> routes;
  std::istringstream in{std::string{text}};
  std::string line;
  auto line_no = std::size_t{0};
  while (std::getline(in, line)) {
    ++line_no;
    if (line.rfind("ROUTE", 0) != 0) {
      continue;
    }
    auto const colon = line.find(':');
    if (colon == std::string::npos) {
      throw parse_error{line_no, "ROUTE line without ':'"};
    }
    std::istringstream tokens{line.substr(colon + 1U)};
    std::vector<service_t> route;
    std::string tok;
    while (tokens >> tok) {
      auto const sep = tok.find(':');
      unsigned long link = 0;
      try {
        link = std::stoul(tok.substr(0, sep));
      } catch (std::exception const&) {
        throw parse_error{line_no, "bad service token '" + tok + "'"};
      }
      if (link >= service_of.size() || service_of[link] < 0) {
        throw parse_error{line_no, "link " + std::to_string(link) + " is not required"};
      }
      route.push_back(static_cast<service_t>(service_of[link]));
    }
    routes.push_back(std::move(route));
  }
  return evaluate_plan(std::move(routes), m);
}

}  // namespace tdarc::hgs

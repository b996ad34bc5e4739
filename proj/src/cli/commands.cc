#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "fmt/format.h"
#include "json.hpp"

#include "tdarc/bcp/solver.h"
#include "tdarc/cli/commands.h"
#include "tdarc/cli/compare.h"

namespace tdarc::cli {

namespace {

using nlohmann::json;

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void write_file(std::string const& path, std::string const& content) {
  std::ofstream out{path, std::ios::binary};
  if (!out) {
    throw error{"cannot write " + path};
  }
  out << content;
  if (!out) {
    throw error{"failed writing " + path};
  }
}

network::instance input_instance(run_config const& c) {
  if (c.instance.empty()) {
    throw error{"an instance path is required"};
  }
  return load_any(c.instance);
}

profiles::matrix_options matrix_of(run_config const& c) {
  return {.horizon_factor = 2.0, .bucket_count = c.buckets};
}

hgs::hgs_params hgs_of(run_config const& c) {
  hgs::hgs_params p;
  p.seed = c.seed;
  p.time_limit = c.time_limit;
  p.audit = c.audit;
  p.max_iterations = c.max_iterations;
  p.max_no_improvement = c.max_no_improvement;
  return p;
}

std::vector<bcp::column> columns_of(hgs::route_plan const& plan) {
  std::vector<bcp::column> out;
  for (auto i = 0U; i != plan.routes.size(); ++i) {
    bcp::column c;
    for (auto j = 0U; j != plan.routes[i].size(); ++j) {
      c.seq.push_back({plan.routes[i][j], plan.decoded[i].modes[j]});
    }
    c.cost = plan.decoded[i].duration;
    out.push_back(std::move(c));
  }
  return out;
}

hgs::route_plan plan_of(std::vector<bcp::column> const& cols,
                        profiles::travel_model const& m) {
  std::vector<std::vector<hgs::service_t>> routes;
  for (auto const& c : cols) {
    auto& r = routes.emplace_back();
    for (auto const& x : c.seq) {
      r.push_back(x.service);
    }
  }
  return hgs::evaluate_plan(std::move(routes), m);
}

void emit(json const& j, output_format f, std::ostream& out) {
  if (f == output_format::json) {
    out << j.dump(2) << '\n';
    return;
  }
  std::vector<std::pair<std::string, std::string>> flat;
  for (auto const& [k, v] : j.items()) {
    if (v.is_object()) {
      for (auto const& [k2, v2] : v.items()) {
        if (!v2.is_structured()) {
          flat.emplace_back(k + "." + k2, v2.dump());
        }
      }
    } else if (!v.is_array()) {
      flat.emplace_back(k, v.is_string() ? v.get<std::string>() : v.dump());
    }
  }
  std::string head, row;
  for (auto const& [k, v] : flat) {
    auto const w = std::max(k.size(), v.size());
    head += fmt::format("{:>{}} ", k, w);
    row += fmt::format("{:>{}} ", v, w);
  }
  out << head << '\n' << row << '\n';
}

}  // namespace

engine parse_engine(std::string const& s) {
  if (s == "hgs") {
    return engine::hgs;
  }
  if (s == "bcp") {
    return engine::bcp;
  }
  if (s == "both") {
    return engine::both;
  }
  throw error{"unknown engine " + s};
}

network::instance load_any(std::string const& path) {
  std::ifstream in{path, std::ios::binary};
  if (!in) {
    throw error{"cannot read " + path};
  }
  std::stringstream ss;
  ss << in.rdbuf();
  auto const text = ss.str();
  return network::parse_instance(text, network::guess_format(path, text));
}

int cmd_generate(run_config const& c, std::ostream& out) {
  network::instance base;
  if (c.instance.empty()) {
    network::synthetic_params p;
    p.vertices = c.vertices;
    p.services = c.services;
    p.seed = c.seed;
    p.name = fmt::format("syn-v{}-s{}-{}", c.vertices, c.services, c.seed);
    base = network::random_network(p);
  } else {
    base = load_any(c.instance);
  }
  auto const inst = network::generate_speed_profiles(std::move(base), c.level, c.seed);
  auto const text = network::serialize_instance(inst);
  if (c.output.empty()) {
    out << text;
  } else {
    write_file(c.output, text);
    emit({{"instance", inst.name},
          {"level", std::string(1, network::level_name(c.level))},
          {"services", inst.service_count()},
          {"vertices", inst.vertex_count},
          {"duration_limit", number(inst.duration_limit)},
          {"output", c.output}},
         c.format, out);
  }
  return kOk;
}

int cmd_preprocess(run_config const& c, std::ostream& out) {
  auto const inst = input_instance(c);
  auto const start = std::chrono::steady_clock::now();
  auto const pm = c.output.empty() ? profiles::cached_profile_matrix(inst, matrix_of(c))
                                   : profiles::build_profile_matrix(inst, matrix_of(c));
  auto const seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!c.output.empty()) {
    profiles::save_profile_cache(pm, inst, c.output);
  }
  auto const& t = pm.telemetry;
  emit({{"instance", inst.name},
        {"vertices", inst.vertex_count},
        {"origins", pm.origins().size()},
        {"functions", t.functions},
        {"mean_pieces", t.mean_pieces},
        {"max_rounds", t.max_rounds},
        {"build_seconds", t.build_seconds},
        {"wall_seconds", seconds},
        {"horizon", pm.horizon()}},
       c.format, out);
  return kOk;
}

int cmd_solve(run_config const& c, std::ostream& out) {
  auto const inst = input_instance(c);
  profiles::travel_model const m{inst, profiles::cached_profile_matrix(inst, matrix_of(c))};
  auto& qs = pl_time::global_query_stats();
  qs.reset();
  qs.enabled = true;

  json record{{"instance", inst.name}, {"services", inst.service_count()}};
  std::optional<hgs::route_plan> best;
  auto feasible = false;
  auto lb = 0.0;
  auto ub = pl_time::kInfinity;

  if (c.engine != engine::bcp) {
    auto const h = hgs::run_hgs(m, hgs_of(c));
    record["hgs"] = {{"cost", number(h.best.total_duration)},
                     {"feasible", h.feasible},
                     {"iterations", h.iterations},
                     {"restarts", h.restarts},
                     {"seconds", h.seconds},
                     {"seconds_to_best", h.seconds_to_best},
                     {"filter_rate", h.ls.filter_rate()},
                     {"moves", h.ls.moves},
                     {"audit_checked", h.ls.audit_checked},
                     {"audit_violations", h.ls.audit_violations}};
    if (h.feasible) {
      best = h.best;
      feasible = true;
      ub = h.best.total_duration;
    }
  }
  if (c.engine != engine::hgs) {
    bcp::bcp_options o;
    o.time_limit = c.time_limit;
    o.mu = c.mu;
    if (best.has_value()) {
      o.initial_upper_bound = best->total_duration;
      o.initial_columns = columns_of(*best);
    }
    auto const r = bcp::run_bcp(m, o);
    record["bcp"] = bcp::to_json(r);
    lb = r.lb;
    if (!r.routes.empty() && r.ub < ub) {
      best = plan_of(r.routes, m);
      ub = best->total_duration;
      feasible = true;
    }
    if (r.optimal && !std::isfinite(r.ub)) {
      feasible = false;
    }
  }
  qs.enabled = false;
  record["ub"] = number(ub);
  record["lb"] = number(lb);
  record["gap_percent"] =
      number(lb > 0.0 && std::isfinite(ub) ? 100.0 * (ub - lb) / lb : pl_time::kInfinity);
  record["direct_hit_rate"] = qs.direct_hit_rate();
  record["feasible"] = feasible;

  if (best.has_value() && !c.output.empty()) {
    write_file(c.output, hgs::write_solution(*best, m));
  }
  emit(record, c.format, out);
  return feasible ? kOk : kInfeasible;
}

int cmd_compare(run_config const& c, std::ostream& out) {
  if (!c.sigma.has_value()) {
    throw error{"compare needs --sigma"};
  }
  auto const inst = input_instance(c);
  compare_options o;
  o.sigma = *c.sigma;
  o.scenarios = c.scenarios;
  o.seed = c.seed;
  o.hgs = hgs_of(c);
  o.bucket_count = c.buckets;
  auto const r = run_compare(inst, o);

  if (c.format == output_format::csv) {
    out << fmt::format("{:>8} {:>12} {:>12} {:>12} {:>10} {:>10}\n", "scenario", "baseline",
                       "tdcarp", "carp", "td_gap", "carp_gap");
    for (auto i = 0U; i != r.scenarios.size(); ++i) {
      auto const& s = r.scenarios[i];
      out << fmt::format("{:>8} {:>12.4f} {:>12.4f} {:>12.4f} {:>10.4f} {:>10.4f}\n", i,
                         s.baseline, s.td, s.carp, s.td_gap, s.carp_gap);
    }
    out << fmt::format("{:>8} {:>12} {:>12} {:>12} {:>10.4f} {:>10.4f}\n", "mean", "", "",
                       "", r.mean_td_gap, r.mean_carp_gap);
    return kOk;
  }
  auto rows = json::array();
  for (auto const& s : r.scenarios) {
    rows.push_back({{"baseline", s.baseline},
                    {"tdcarp", s.td},
                    {"carp", s.carp},
                    {"tdcarp_gap", s.td_gap},
                    {"carp_gap", s.carp_gap}});
  }
  out << json{{"instance", inst.name},
              {"sigma", r.sigma},
              {"nominal_tdcarp", r.nominal_td},
              {"nominal_carp", r.nominal_carp},
              {"mean_tdcarp_gap", r.mean_td_gap},
              {"mean_carp_gap", r.mean_carp_gap},
              {"value_of_time_dependence", r.value_of_time_dependence()},
              {"skipped", r.skipped},
              {"scenarios", std::move(rows)}}
             .dump(2)
      << '\n';
  return kOk;
}

int cmd_stats(run_config const& c, std::ostream& out) {
  auto const inst = input_instance(c);
  profiles::travel_model m{inst, profiles::cached_profile_matrix(inst, matrix_of(c))};
  auto& qs = pl_time::global_query_stats();

  out << fmt::format("{:<24} {:>7} {:>7} {:>11} {:>15} {:>10} {:>9} {:>12}\n", "instance",
                     "filters", "buckets", "filter_rate", "direct_hit_rate", "violations",
                     "seconds", "cost");
  for (auto const filters : {true, false}) {
    for (auto const buckets : {true, false}) {
      auto p = hgs_of(c);
      p.use_filters = filters;
      m.use_buckets = buckets;
      qs.reset();
      qs.enabled = true;
      auto const h = hgs::run_hgs(m, p);
      qs.enabled = false;
      auto const hit = buckets ? qs.direct_hit_rate() : 0.0;
      out << fmt::format("{:<24} {:>7} {:>7} {:>11.4f} {:>15.4f} {:>10} {:>9.3f} {:>12.4f}\n",
                         inst.name, filters ? "on" : "off", buckets ? "on" : "off",
                         filters ? h.ls.filter_rate() : 0.0, hit, h.ls.audit_violations,
                         h.seconds, h.best.total_duration);
    }
  }
  return kOk;
}

}  // namespace tdarc::cli

#include <cmath>
#include <string>

#include "tdarc/network.h"

namespace tdarc::network {

service_ref instance::service(std::uint32_t s, unsigned mode) const {
  auto const& l = service_link(s);
  if (mode < 1U || mode > l.direction_count()) {
    throw invariant_violation{"service " + std::to_string(s) +
                              ": invalid mode " + std::to_string(mode)};
  }
  return {s, l.id, static_cast<std::uint8_t>(mode), l.tail(mode - 1U),
          l.head(mode - 1U)};
}

double instance::total_demand() const {
  auto sum = 0.0;
  for (auto const id : required) {
    sum += links[id].demand;
  }
  return sum;
}

void index_services(instance& inst) {
  inst.required.clear();
  for (auto const& l : inst.links) {
    if (l.required) {
      inst.required.push_back(l.id);
    }
  }
}

void validate(instance const& inst) {
  auto const fail = [](std::string const& what) {
    throw invariant_violation{what};
  };
  if (inst.vertex_count == 0U) {
    fail("instance has no vertices (the depot must exist)");
  }
  if (!(inst.capacity > 0.0)) {
    fail("capacity must be positive");
  }
  if (!(inst.duration_limit > 0.0)) {
    fail("duration limit must be positive");
  }
  auto n_required = 0U;
  for (auto i = 0U; i != inst.links.size(); ++i) {
    auto const& l = inst.links[i];
    auto const name = "link " + std::to_string(l.id);
    if (l.id != i) {
      fail(name + ": ids must be sequential");
    }
    if (l.from >= inst.vertex_count || l.to >= inst.vertex_count) {
      fail(name + ": endpoint out of range");
    }
    if (!(l.distance > 0.0) || !std::isfinite(l.distance)) {
      fail(name + ": distance must be positive");
    }
    if (l.required) {
      ++n_required;
      if (!(l.demand >= 0.0)) {
        fail(name + ": negative demand");
      }
      if (l.demand > inst.capacity) {
        fail(name + ": demand exceeds capacity");
      }
    }
    for (auto d = 0U; d != l.direction_count(); ++d) {
      if (l.travel[d].horizon() != inst.duration_limit ||
          l.service[d].horizon() != inst.duration_limit) {
        fail(name + ": speed horizon differs from the duration limit");
      }
    }
  }
  if (n_required == 0U) {
    fail("instance has no required links");
  }
  if (inst.fleet == 0U) {
    fail("fleet size must be positive");
  }
  if (n_required != inst.required.size()) {
    fail("service index out of date");
  }
  for (auto s = 0U; s != inst.required.size(); ++s) {
    if (inst.required[s] >= inst.links.size() ||
        !inst.links[inst.required[s]].required ||
        (s != 0U && inst.required[s] <= inst.required[s - 1])) {
      fail("service index out of date");
    }
  }
}

void set_duration_limit(instance& inst, double duration_limit) {
  auto const rehorizon = [&](pl_time::speed_function const& v) {
    auto const bps = v.breakpoints();
    auto const speeds = v.speeds();
    return pl_time::speed_function{{begin(bps), end(bps)},
                                   {begin(speeds), end(speeds)},
                                   duration_limit};
  };
  inst.duration_limit = duration_limit;
  for (auto& l : inst.links) {
    for (auto d = 0U; d != 2U; ++d) {
      l.travel[d] = rehorizon(l.travel[d]);
      l.service[d] = rehorizon(l.service[d]);
    }
  }
}

double make_demands_integral(instance& inst) {
  auto const integral = [&](double factor) {
    for (auto const& l : inst.links) {
      auto const q = l.demand * factor;
      if (std::abs(q - std::round(q)) > 1e-9 * std::max(1.0, q)) {
        return false;
      }
    }
    return true;
  };
  auto factor = 1.0;
  while (factor < 1e6 && !integral(factor)) {
    factor *= 10.0;
  }
  for (auto& l : inst.links) {
    l.demand = std::round(l.demand * factor);
  }
  if (factor != 1.0) {
    inst.capacity *= factor;
  }
  return factor;
}

std::vector<std::vector<oriented_link>> outgoing_links(instance const& inst) {
  std::vector<std::vector<oriented_link>> out(inst.vertex_count);
  for (auto const& l : inst.links) {
    for (auto d = 0U; d != l.direction_count(); ++d) {
      out[l.tail(d)].push_back(
          {l.id, static_cast<std::uint8_t>(d), l.head(d)});
    }
  }
  return out;
}

}  // namespace tdarc::network

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "tdarc/profiles.h"

namespace tdarc::hgs {

using service_t = std::uint32_t;

struct decoded_route {
  double duration{pl_time::kInfinity};
  std::vector<std::uint8_t> modes;  // chosen mode per service, 1 or 2
  std::vector<double> completion;  // completion time per service
};

// Optimal modes for a fixed service order, depot departure at time 0.
// Duration is +inf when a propagation leaves the profile domain.
decoded_route decode_route(std::span<service_t const> route,
                           profiles::travel_model const&);

// Earliest completion per (position, mode): entry 0 is the depot start
// {0, inf}, entry i the i-th service. Back to the depot via route_end.
std::vector<std::array<double, 2>> completion_table(
    std::span<service_t const> route, profiles::travel_model const&);
double route_end(service_t last, std::array<double, 2> const& times,
                 profiles::travel_model const&);

// Throws infeasible_route instead of returning +inf.
decoded_route decode_route_checked(std::span<service_t const> route,
                                   profiles::travel_model const&);

// Route duration for given modes; +inf outside the domain.
double evaluate_fixed_modes(std::span<service_t const> route,
                            std::span<std::uint8_t const> modes,
                            profiles::travel_model const&);

// Endpoints of a service in a mode. The id service_count() stands for the
// depot (one mode, both endpoints at vertex 0).
inline network::vertex_t start_vertex(profiles::travel_model const& m,
                                      service_t s, unsigned mode) {
  return s == m.service_count() ? network::instance::depot
                                : m.inst().service(s, mode).from;
}
inline network::vertex_t end_vertex(profiles::travel_model const& m,
                                    service_t s, unsigned mode) {
  return s == m.service_count() ? network::instance::depot
                                : m.inst().service(s, mode).to;
}
inline unsigned mode_count(profiles::travel_model const& m, service_t s) {
  return s == m.service_count() ? 1U : m.inst().mode_count(s);
}

}  // namespace tdarc::hgs

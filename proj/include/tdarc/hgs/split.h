#pragma once

#include <span>

#include "tdarc/hgs/route_plan.h"

namespace tdarc::hgs {

// Optimal partition of the permutation into at most max_routes consecutive
// routes under penalised costs.
route_plan split_giant_tour(std::span<service_t const> perm,
                            profiles::travel_model const&, penalties const&,
                            std::size_t max_routes);

}  // namespace tdarc::hgs

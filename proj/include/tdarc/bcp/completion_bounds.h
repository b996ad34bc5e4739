#pragma once

#include <vector>

#include "tdarc/bcp/pricing.h"

namespace tdarc::bcp {

// B(node, remaining load, remaining time): lower bound on the reduced cost
// of any completion from the end of `node` back to the depot. Travel and
// service times use their minimum over the horizon. Load and time budgets
// live on integer grids of steps load_step and time_step; consumption is
// rounded down, which only relaxes the bound.
class completion_bounds {
public:
  completion_bounds() = default;
  explicit completion_bounds(pricing_problem const&, std::size_t max_time_steps = 128,
                             std::size_t max_load_steps = 200);

  // bound for a forward label; +inf when no completion fits
  double lookup(label const&) const;
  double at(node_t, std::size_t load_budget, std::size_t time_budget) const;

  double load_step() const { return load_step_; }
  double time_step() const { return time_step_; }
  std::size_t load_budgets() const { return load_budgets_; }
  std::size_t time_budgets() const { return time_budgets_; }

private:
  double& cell(node_t p, std::size_t r, std::size_t b) {
    return table_[(p * load_budgets_ + r) * time_budgets_ + b];
  }

  double capacity_{0.0}, limit_{0.0};
  double load_step_{1.0}, time_step_{1.0};
  std::size_t nodes_{0}, load_budgets_{0}, time_budgets_{0};
  std::vector<double> table_;
};

}  // namespace tdarc::bcp

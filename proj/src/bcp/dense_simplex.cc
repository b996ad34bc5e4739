#include <algorithm>
#include <cmath>
#include <limits>

#include "tdarc/bcp/lp.h"
#include "tdarc/errors.h"

namespace tdarc::bcp {

namespace {

constexpr double kPivot = 1e-9;
constexpr double kFeasible = 1e-9;
constexpr double kOptimal = 1e-9;
constexpr std::uint64_t kRefactorEvery = 64U;
constexpr std::uint64_t kDegenerateStreak = 50U;

}  // namespace

// variable layout: structural columns, then one slack and one artificial
// per row
dense_simplex::var_kind dense_simplex::kind(std::size_t v) const {
  if (v < columns_.size()) {
    return var_kind::structural;
  }
  return (v - columns_.size()) % 2U == 0U ? var_kind::slack : var_kind::artificial;
}

std::uint32_t dense_simplex::add_row(row_sense s, double rhs,
                                    row_entries const& entries) {
  auto const row = static_cast<std::uint32_t>(rhs_.size());
  for (auto const& [col, value] : entries) {
    columns_.at(col).coefs.emplace_back(row, value);
  }
  sense_.push_back(s);
  rhs_.push_back(rhs);
  warm_ = false;
  return static_cast<std::uint32_t>(rhs_.size() - 1U);
}

std::uint32_t dense_simplex::add_column(lp_column c) {
  for (auto const& [row, value] : c.coefs) {
    if (row >= rhs_.size()) {
      throw lp_backend_failure{"column refers to a missing row"};
    }
    (void)value;
  }
  if (warm_) {
    // shift slack/artificial indices of the basis by one
    for (auto& b : basis_) {
      if (b >= columns_.size()) {
        ++b;
      }
    }
    is_basic_.insert(is_basic_.begin() + static_cast<std::ptrdiff_t>(columns_.size()),
                     false);
  }
  columns_.push_back(std::move(c));
  fixed_zero_.push_back(false);
  return static_cast<std::uint32_t>(columns_.size() - 1U);
}

void dense_simplex::fix_bounds(std::uint32_t column, double lo, double hi) {
  if (lo != 0.0 || (hi != 0.0 && hi != std::numeric_limits<double>::infinity())) {
    throw lp_backend_failure{"dense_simplex only supports [0, 0] and [0, inf) bounds"};
  }
  fixed_zero_[column] = hi == 0.0;
  if (hi == 0.0 && warm_ && is_basic_[column]) {
    warm_ = false;
  }
}

void dense_simplex::column_of(std::size_t v, std::vector<double>& out) const {
  std::fill(begin(out), end(out), 0.0);
  if (v < columns_.size()) {
    for (auto const& [row, value] : columns_[v].coefs) {
      out[row] += value;
    }
    return;
  }
  auto const row = (v - columns_.size()) / 2U;
  if (kind(v) == var_kind::slack) {
    out[row] = sense_[row] == row_sense::geq ? -1.0 : 1.0;
  } else {
    out[row] = rhs_[row] >= 0.0 ? 1.0 : -1.0;
  }
}

double dense_simplex::cost_of(std::size_t v, bool phase_one) const {
  if (phase_one) {
    return kind(v) == var_kind::artificial ? 1.0 : 0.0;
  }
  return v < columns_.size() ? columns_[v].cost : 0.0;
}

bool dense_simplex::may_enter(std::size_t v, bool) const {
  switch (kind(v)) {
    case var_kind::structural: return !fixed_zero_[v];
    case var_kind::slack:
      return sense_[(v - columns_.size()) / 2U] != row_sense::eq;
    case var_kind::artificial: return false;
  }
  return false;
}

bool dense_simplex::refactor() {
  auto const m = rhs_.size();
  std::vector<double> a(m * m, 0.0);
  std::vector<double> col(m);
  for (auto i = 0U; i != m; ++i) {
    column_of(basis_[i], col);
    for (auto r = 0U; r != m; ++r) {
      a[r * m + i] = col[r];
    }
  }
  binv_.assign(m * m, 0.0);
  for (auto i = 0U; i != m; ++i) {
    binv_[i * m + i] = 1.0;
  }
  // Gauss-Jordan with partial pivoting
  for (auto c = 0U; c != m; ++c) {
    auto piv = c;
    for (auto r = c + 1U; r < m; ++r) {
      if (std::abs(a[r * m + c]) > std::abs(a[piv * m + c])) {
        piv = r;
      }
    }
    if (std::abs(a[piv * m + c]) < 1e-12) {
      return false;
    }
    if (piv != c) {
      for (auto k = 0U; k != m; ++k) {
        std::swap(a[piv * m + k], a[c * m + k]);
        std::swap(binv_[piv * m + k], binv_[c * m + k]);
      }
    }
    auto const inv = 1.0 / a[c * m + c];
    for (auto k = 0U; k != m; ++k) {
      a[c * m + k] *= inv;
      binv_[c * m + k] *= inv;
    }
    for (auto r = 0U; r != m; ++r) {
      auto const f = a[r * m + c];
      if (r == c || f == 0.0) {
        continue;
      }
      for (auto k = 0U; k != m; ++k) {
        a[r * m + k] -= f * a[c * m + k];
        binv_[r * m + k] -= f * binv_[c * m + k];
      }
    }
  }
  xb_.assign(m, 0.0);
  for (auto r = 0U; r != m; ++r) {
    auto s = 0.0;
    for (auto k = 0U; k != m; ++k) {
      s += binv_[r * m + k] * rhs_[k];
    }
    xb_[r] = s;
  }
  return true;
}

void dense_simplex::cold_start() {
  auto const m = rhs_.size();
  basis_.resize(m);
  is_basic_.assign(var_count(), false);
  for (auto i = 0U; i != m; ++i) {
    basis_[i] = columns_.size() + 2U * i + 1U;
    is_basic_[basis_[i]] = true;
  }
  refactor();
}

lp_status dense_simplex::iterate(bool phase_one, std::uint64_t& iterations) {
  auto const m = rhs_.size();
  auto const n = var_count();
  std::vector<double> y(m), col(m), alpha(m);
  auto degenerate = std::uint64_t{0};
  auto since_refactor = std::uint64_t{0};
  while (true) {
    if (iterations >= max_iterations) {
      return lp_status::iteration_limit;
    }
    if (since_refactor >= kRefactorEvery) {
      if (!refactor()) {
        throw lp_backend_failure{"singular basis"};
      }
      since_refactor = 0U;
    }
    for (auto k = 0U; k != m; ++k) {
      auto s = 0.0;
      for (auto r = 0U; r != m; ++r) {
        s += cost_of(basis_[r], phase_one) * binv_[r * m + k];
      }
      y[k] = s;
    }
    auto const bland = degenerate >= kDegenerateStreak;
    auto enter = n;
    auto best = -kOptimal;
    for (auto v = 0U; v != n; ++v) {
      if (is_basic_[v] || !may_enter(v, phase_one)) {
        continue;
      }
      auto d = cost_of(v, phase_one);
      if (v < columns_.size()) {
        for (auto const& [row, value] : columns_[v].coefs) {
          d -= y[row] * value;
        }
      } else {
        column_of(v, col);
        for (auto r = 0U; r != m; ++r) {
          d -= y[r] * col[r];
        }
      }
      if (d < best) {
        best = d;
        enter = v;
        if (bland) {
          break;
        }
      }
    }
    if (enter == n) {
      return lp_status::optimal;
    }
    column_of(enter, col);
    for (auto r = 0U; r != m; ++r) {
      auto s = 0.0;
      for (auto k = 0U; k != m; ++k) {
        s += binv_[r * m + k] * col[k];
      }
      alpha[r] = s;
    }
    auto leave = m;
    auto ratio = std::numeric_limits<double>::infinity();
    for (auto r = 0U; r != m; ++r) {
      if (alpha[r] <= kPivot) {
        continue;
      }
      auto const q = std::max(0.0, xb_[r]) / alpha[r];
      if (leave == m || q < ratio - 1e-12) {
        ratio = q;
        leave = r;
      } else if (q <= ratio + 1e-12 &&
                 (bland ? basis_[r] < basis_[leave] : alpha[r] > alpha[leave])) {
        ratio = std::min(ratio, q);
        leave = r;
      }
    }
    if (leave == m) {
      return lp_status::unbounded;
    }
    degenerate = ratio <= 1e-12 ? degenerate + 1U : 0U;

    auto const piv = alpha[leave];
    for (auto k = 0U; k != m; ++k) {
      binv_[leave * m + k] /= piv;
    }
    xb_[leave] = ratio;
    for (auto r = 0U; r != m; ++r) {
      if (r == leave || alpha[r] == 0.0) {
        continue;
      }
      auto const f = alpha[r];
      for (auto k = 0U; k != m; ++k) {
        binv_[r * m + k] -= f * binv_[leave * m + k];
      }
      xb_[r] -= f * ratio;
    }
    is_basic_[basis_[leave]] = false;
    basis_[leave] = enter;
    is_basic_[enter] = true;
    ++iterations;
    ++since_refactor;
  }
}

lp_solution dense_simplex::solve_relaxation() {
  auto const m = rhs_.size();
  lp_solution out;
  if (m == 0U) {
    out.primal.assign(columns_.size(), 0.0);
    for (auto j = 0U; j != columns_.size(); ++j) {
      if (columns_[j].cost < 0.0 && !fixed_zero_[j]) {
        out.status = lp_status::unbounded;
      }
    }
    return out;
  }

  auto feasible_warm = false;
  if (warm_ && basis_.size() == m && is_basic_.size() == var_count()) {
    feasible_warm = refactor();
    for (auto r = 0U; feasible_warm && r != m; ++r) {
      auto const v = basis_[r];
      if (xb_[r] < -kFeasible ||
          (kind(v) == var_kind::artificial && std::abs(xb_[r]) > kFeasible) ||
          (v < columns_.size() && fixed_zero_[v] && std::abs(xb_[r]) > kFeasible)) {
        feasible_warm = false;
      }
    }
  }
  auto iterations = std::uint64_t{0};
  if (!feasible_warm) {
    cold_start();
    auto const st = iterate(true, iterations);
    if (st == lp_status::iteration_limit) {
      out.status = st;
      return out;
    }
    auto infeasibility = 0.0;
    for (auto r = 0U; r != m; ++r) {
      if (kind(basis_[r]) == var_kind::artificial) {
        infeasibility += xb_[r];
      }
    }
    if (infeasibility > 1e-7 * (1.0 + std::abs(*std::max_element(
                                          begin(rhs_), end(rhs_),
                                          [](double a, double b) {
                                            return std::abs(a) < std::abs(b);
                                          })))) {
      out.status = lp_status::infeasible;
      warm_ = false;
      return out;
    }
    // drive basic artificials out where another variable can replace them
    std::vector<double> col(m);
    for (auto r = 0U; r != m; ++r) {
      if (kind(basis_[r]) != var_kind::artificial) {
        continue;
      }
      for (auto v = 0U; v != var_count(); ++v) {
        if (is_basic_[v] || !may_enter(v, false)) {
          continue;
        }
        column_of(v, col);
        auto a = 0.0;
        for (auto k = 0U; k != m; ++k) {
          a += binv_[r * m + k] * col[k];
        }
        if (std::abs(a) > 1e-7) {
          is_basic_[basis_[r]] = false;
          basis_[r] = v;
          is_basic_[v] = true;
          if (!refactor()) {
            throw lp_backend_failure{"singular basis while removing artificials"};
          }
          break;
        }
      }
    }
  }
  auto const st = iterate(false, iterations);
  out.iterations = iterations;
  out.status = st;
  if (st != lp_status::optimal) {
    warm_ = false;
    return out;
  }
  warm_ = true;
  refactor();
  out.primal.assign(columns_.size(), 0.0);
  out.objective = 0.0;
  for (auto r = 0U; r != m; ++r) {
    if (basis_[r] < columns_.size()) {
      auto const x = std::max(0.0, xb_[r]);
      out.primal[basis_[r]] = x;
      out.objective += columns_[basis_[r]].cost * x;
    }
  }
  out.dual.assign(m, 0.0);
  for (auto k = 0U; k != m; ++k) {
    auto s = 0.0;
    for (auto r = 0U; r != m; ++r) {
      s += cost_of(basis_[r], false) * binv_[r * m + k];
    }
    out.dual[k] = s;
  }
  return out;
}

}  // namespace tdarc::bcp

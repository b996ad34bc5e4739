#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace tdarc::bcp {

enum class row_sense : std::uint8_t { eq, geq, leq };

struct lp_column {
  double cost{0.0};
  std::vector<std::pair<std::uint32_t, double>> coefs;  // (row, value)
};

enum class lp_status : std::uint8_t { optimal, infeasible, unbounded, iteration_limit };

struct lp_solution {
  lp_status status{lp_status::optimal};
  double objective{0.0};
  std::vector<double> primal;  // per column
  std::vector<double> dual;  // per row, c - y A >= 0 at optimality
  std::uint64_t iterations{0};
};

// Minimisation over x >= 0. Duals follow the usual signs: >= rows get
// nonnegative duals, <= rows nonpositive ones.
class lp_backend {
public:
  virtual ~lp_backend() = default;

  // coefficients of already present columns in the new row
  using row_entries = std::vector<std::pair<std::uint32_t, double>>;

  virtual std::uint32_t add_row(row_sense, double rhs, row_entries const& = {}) = 0;
  virtual std::uint32_t add_column(lp_column) = 0;
  // only lo = 0 with hi in {0, +inf} is required of every backend
  virtual void fix_bounds(std::uint32_t column, double lo, double hi) = 0;
  virtual lp_solution solve_relaxation() = 0;

  virtual std::size_t row_count() const = 0;
  virtual std::size_t column_count() const = 0;
  virtual std::unique_ptr<lp_backend> clone() const = 0;

  void add_rows(std::vector<std::pair<row_sense, double>> const& rows) {
    for (auto const& [s, rhs] : rows) {
      add_row(s, rhs);
    }
  }
  void add_columns(std::vector<lp_column> cols) {
    for (auto& c : cols) {
      add_column(std::move(c));
    }
  }
};

// Dense revised simplex with an explicit basis inverse, two phases and a
// Bland fallback on degenerate stalls. Warm-starts from the last basis
// while the row set is unchanged.
class dense_simplex final : public lp_backend {
public:
  std::uint32_t add_row(row_sense, double rhs, row_entries const& = {}) override;
  std::uint32_t add_column(lp_column) override;
  void fix_bounds(std::uint32_t column, double lo, double hi) override;
  lp_solution solve_relaxation() override;

  std::size_t row_count() const override { return rhs_.size(); }
  std::size_t column_count() const override { return columns_.size(); }
  std::unique_ptr<lp_backend> clone() const override {
    return std::make_unique<dense_simplex>(*this);
  }

  std::uint64_t max_iterations{200000};

private:
  enum class var_kind : std::uint8_t { structural, slack, artificial };

  std::size_t var_count() const { return columns_.size() + 2U * rhs_.size(); }
  var_kind kind(std::size_t v) const;
  void column_of(std::size_t v, std::vector<double>& out) const;
  double cost_of(std::size_t v, bool phase_one) const;
  bool may_enter(std::size_t v, bool phase_one) const;
  bool refactor();
  lp_status iterate(bool phase_one, std::uint64_t& iterations);
  void cold_start();

  std::vector<lp_column> columns_;
  std::vector<bool> fixed_zero_;
  std::vector<row_sense> sense_;
  std::vector<double> rhs_;

  std::vector<std::size_t> basis_;  // basic variable per row
  std::vector<bool> is_basic_;
  std::vector<double> binv_;  // row-major m x m
  std::vector<double> xb_;
  bool warm_{false};
};

}  // namespace tdarc::bcp

#pragma once

#include <stdexcept>
#include <string>

namespace tdarc {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// pl_time
struct arrival_beyond_horizon : error {
  using error::error;
};
struct departure_before_zero : error {
  using error::error;
};
struct degenerate_horizon : error {
  using error::error;
};
struct query_out_of_domain : error {
  using error::error;
};

// network
struct parse_error : error {
  parse_error(std::size_t line, std::string const& what)
      : error("line " + std::to_string(line) + ": " + what), line_{line} {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};
struct invariant_violation : error {
  using error::error;
};

// profiles
struct non_termination : error {
  using error::error;
};
struct unreachable : error {
  using error::error;
};

// hgs / bcp
struct infeasible_route : error {
  using error::error;
};
struct lp_backend_failure : error {
  using error::error;
};
struct no_fractional_entity : error {
  using error::error;
};

}  // namespace tdarc

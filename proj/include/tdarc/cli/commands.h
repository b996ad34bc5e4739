#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "tdarc/network.h"

namespace tdarc::cli {

enum class engine { hgs, bcp, both };
enum class output_format { json, csv };

struct run_config {
  std::string instance;  // input path, empty for synthetic generation
  std::string output;  // file written by generate, preprocess and solve
  network::speed_level level{network::speed_level::medium};
  std::uint64_t seed{0};
  double time_limit{60.0};
  enum engine engine { engine::hgs };
  std::size_t buckets{0};  // 0: per-function default
  double mu{0.5};
  bool audit{false};
  std::optional<double> sigma;
  std::uint32_t scenarios{20};
  output_format format{output_format::json};

  // synthetic generation
  std::uint32_t vertices{20};
  std::uint32_t services{15};

  // HGS budget
  std::uint64_t max_iterations{20000};
  std::uint64_t max_no_improvement{5000};
};

// exit codes
inline constexpr int kOk = 0;
inline constexpr int kError = 1;
inline constexpr int kInfeasible = 2;

engine parse_engine(std::string const&);

network::instance load_any(std::string const& path);

int cmd_generate(run_config const&, std::ostream&);
int cmd_preprocess(run_config const&, std::ostream&);
int cmd_solve(run_config const&, std::ostream&);
int cmd_compare(run_config const&, std::ostream&);
int cmd_stats(run_config const&, std::ostream&);

}  // namespace tdarc::cli

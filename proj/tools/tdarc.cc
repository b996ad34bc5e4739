#include <iostream>

#include "CLI11.hpp"

#include "tdarc/cli/commands.h"

using namespace tdarc;

int main(int argc, char** argv) {
  CLI::App app{"time-dependent capacitated arc routing"};
  app.require_subcommand(1);

  cli::run_config c;
  std::string level = "M";
  std::string engine = "hgs";
  std::string format = "json";
  double sigma = 0.0;

  auto const common = [&](CLI::App* sub) {
    sub->add_option("instance", c.instance, "instance file (classic CARP or native)");
    sub->add_option("-o,--output", c.output, "output file");
    sub->add_option("--seed", c.seed, "random seed");
    sub->add_option("--buckets", c.buckets, "bucket count per function, 0 for default");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };
  auto const search = [&](CLI::App* sub) {
    sub->add_option("--time-limit", c.time_limit, "seconds");
    sub->add_option("--max-iterations", c.max_iterations, "HGS iterations");
    sub->add_option("--max-no-improvement", c.max_no_improvement,
                    "HGS iterations without improvement");
    sub->add_flag("--audit", c.audit, "decode every filtered move and count violations");
  };

  auto* gen = app.add_subcommand("generate", "assign speed profiles and write a native file");
  common(gen);
  gen->add_option("--level", level, "speed level L, M or H");
  gen->add_option("--vertices", c.vertices, "synthetic network size without an instance");
  gen->add_option("--services", c.services, "synthetic service count");

  auto* pre = app.add_subcommand("preprocess", "build quickest-path profiles");
  common(pre);

  auto* solve = app.add_subcommand("solve", "solve with HGS, BCP or both");
  common(solve);
  search(solve);
  solve->add_option("--engine", engine, "hgs, bcp or both")
      ->check(CLI::IsMember({"hgs", "bcp", "both"}));
  solve->add_option("--mu", c.mu, "heuristic dominance weight");

  auto* cmp = app.add_subcommand("compare", "TDCARP vs static CARP under perturbed speeds");
  common(cmp);
  search(cmp);
  cmp->add_option("--sigma", sigma, "relative speed noise")->required();
  cmp->add_option("--scenarios", c.scenarios, "scenario count");

  auto* stats = app.add_subcommand("stats", "filter and bucket statistics");
  common(stats);
  search(stats);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    auto const rc = app.exit(e);
    return rc == 0 ? cli::kOk : cli::kError;
  }

  try {
    c.level = network::parse_level(level);
    c.engine = cli::parse_engine(engine);
    c.format = format == "csv" ? cli::output_format::csv : cli::output_format::json;
    if (cmp->parsed()) {
      c.sigma = sigma;
    }
    if (gen->parsed()) {
      return cli::cmd_generate(c, std::cout);
    }
    if (pre->parsed()) {
      return cli::cmd_preprocess(c, std::cout);
    }
    if (solve->parsed()) {
      return cli::cmd_solve(c, std::cout);
    }
    if (cmp->parsed()) {
      return cli::cmd_compare(c, std::cout);
    }
    return cli::cmd_stats(c, std::cout);
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kError;
  }
}

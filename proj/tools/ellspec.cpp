// Command-line front end; all behaviour lives in ellspec::cli::run.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ellspec/cli/run.hpp"

int main(int argc, char** argv) {
  using ellspec::cli::JobConfig;
  JobConfig cfg;
  std::string range;
  std::string output;
  long long bound = 0;
  long long k = 0;

  CLI::App app{"Certify injectivity of specialization maps on elliptic surfaces"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--curve-a", cfg.curve_a, "coefficient A(t)");
  app.add_option("--curve-b", cfg.curve_b, "coefficient B(t)");
  app.add_option("--gen", cfg.gens, "generator x:y (repeatable)");
  app.add_option("--n", cfg.n, "division index")->check(CLI::Range(1, 64));
  app.add_option("--t0", cfg.t0, "parameter value");
  auto* range_opt = app.add_option("--range", range, "integer range a..b");
  auto* bound_opt = app.add_option("--bound", bound, "search bound");
  app.add_option("--poly", cfg.poly, "polynomial in t and x");
  app.add_option("--d", cfg.d, "Pell coefficient D");
  auto* k_opt = app.add_option("--k", k, "Pell right-hand side k");
  app.add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
  app.add_option("--output", output, "write records to this file");
  app.add_flag("--json", cfg.json, "JSON lines output");
  app.add_flag("--assert-saturated", cfg.assert_saturated,
               "assert the saturation hypotheses for the subgroup");

  for (const char* name : {"check", "scan", "excluded", "divpoly", "division-points", "pell",
                           "cp-family", "oracle", "example1", "example2"}) {
    app.add_subcommand(name)->callback([&cfg, name] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
    if (*range_opt) cfg.range = ellspec::cli::parse_range(range);
    if (*bound_opt) cfg.bound = bound;
    if (*k_opt) cfg.k = k;
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : ellspec::cli::kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ellspec::cli::kUsage;
  }

  if (output.empty()) return ellspec::cli::run(cfg, std::cout, std::cerr);
  std::ofstream file(output);
  if (!file) {
    std::cerr << "error: cannot open " << output << "\n";
    return ellspec::cli::kUsage;
  }
  return ellspec::cli::run(cfg, file, std::cerr);
}

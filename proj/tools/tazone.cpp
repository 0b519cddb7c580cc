// Command-line front end: load a network, answer reachability queries.

#include "tazone/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace tazone;

  CLI::App app{"Zone-based reachability checker for networks of timed automata"};
  cli::RunConfig config;

  std::string backend = "dbm", order = "dfs", subsume = "include";
  bool no_extrapolate = false;
  app.add_option("spec", config.spec_path, "Network specification file")->required();
  app.add_option("--backend", backend, "Zone representation")->check(CLI::IsMember({"dbm", "formula"}));
  app.add_option("--order", order, "Exploration order")->check(CLI::IsMember({"dfs", "bfs"}));
  app.add_option("--subsume", subsume, "Visited-set test")->check(CLI::IsMember({"equal", "include"}));
  app.add_flag("--no-extrapolate", no_extrapolate, "Disable max-constant extrapolation");
  app.add_flag("--faithful", config.faithful, "Equality visited set and no extrapolation");
  app.add_flag("--stats", config.stats, "Print zone counts and wall time per query");
  app.add_flag("--witness", config.witness, "Print the label sequence of True verdicts");
  app.add_option("--max-zones", config.options.max_zones, "Give up after storing this many zones (0: no limit)");
  app.add_option("--timeout", config.options.max_seconds, "Give up after this many seconds (0: no limit)");
  app.add_option("--query", config.queries, "Query text, may be repeated");
  app.add_option("--queries", config.query_file, "File with one query per line");
  app.add_flag("--selftest", config.selftest, "Cross-check both backends and both orders");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::exit_code::usage;
  }

  config.options.backend = backend == "formula" ? BackendKind::Formula : BackendKind::Dbm;
  config.options.order = order == "bfs" ? SearchOrder::Bfs : SearchOrder::Dfs;
  config.options.subsumption = subsume == "equal" ? Subsumption::Equal : Subsumption::Include;
  config.options.extrapolate = !no_extrapolate;

  return cli::run(config, std::cin, std::cout, std::cerr);
}

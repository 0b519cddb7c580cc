#pragma once

// Batch evaluation of independent reachability queries. Each job owns its
// search state; the network is shared read-only. run_batch spreads jobs over
// OpenMP threads, run_batch_serial is the reference it is tested against.
// Results are always returned in job order.

#include "tazone/explorer.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tazone {

struct Job {
  Query query;
  SearchOptions options;
};

std::vector<SearchResult> run_batch_serial(const Network& net, std::span<const Job> jobs);
std::vector<SearchResult> run_batch(const Network& net, std::span<const Job> jobs);

// One query per product location vector (lexicographic, first automaton most
// significant), all with constraint `true`, starting from the vector of every
// automaton's first location.
std::vector<Query> product_suite(const Network& net);

// The full cross product of backends x orders x subsumption modes.
std::vector<SearchOptions> configuration_matrix(const SearchOptions& base = {});

struct Divergence {
  std::size_t query = 0;
  std::vector<std::pair<std::string, Verdict>> verdicts;  // configuration name -> verdict
};

struct SelftestReport {
  std::size_t total = 0;
  std::size_t agreeing = 0;
  std::optional<Divergence> first_divergence;
};

// Runs every query with the DBM backend and with `Alt`, each under DFS and
// BFS, and reports whether all four verdicts agree.
template <ZoneBackend Alt = FormulaBackend>
SelftestReport selftest(const Network& net, std::span<const Query> queries, const SearchOptions& base = {}) {
  struct Row {
    std::array<Verdict, 4> verdicts;
  };
  std::vector<Row> rows(queries.size());
  const auto count = static_cast<std::ptrdiff_t>(queries.size());

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const Query& q = queries[static_cast<std::size_t>(i)];
    SearchOptions o = base;
    o.order = SearchOrder::Dfs;
    rows[i].verdicts[0] = explore_with<DbmBackend>(net, q, o).verdict;
    rows[i].verdicts[2] = explore_with<Alt>(net, q, o).verdict;
    o.order = SearchOrder::Bfs;
    rows[i].verdicts[1] = explore_with<DbmBackend>(net, q, o).verdict;
    rows[i].verdicts[3] = explore_with<Alt>(net, q, o).verdict;
  }

  SelftestReport report;
  report.total = queries.size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& v = rows[i].verdicts;
    const bool agree = v[0] != Verdict::Inconclusive && std::all_of(v.begin(), v.end(), [&](Verdict x) { return x == v[0]; });
    if (agree) {
      ++report.agreeing;
    } else if (!report.first_divergence) {
      const std::string alt(Alt::name);
      report.first_divergence = Divergence{
          i, {{"dbm/dfs", v[0]}, {"dbm/bfs", v[1]}, {alt + "/dfs", v[2]}, {alt + "/bfs", v[3]}}};
    }
  }
  return report;
}

}  // namespace tazone

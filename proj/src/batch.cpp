#include "tazone/batch.hpp"

namespace tazone {

std::vector<SearchResult> run_batch_serial(const Network& net, std::span<const Job> jobs) {
  std::vector<SearchResult> out;
  out.reserve(jobs.size());
  for (const auto& job : jobs) out.push_back(explore(net, job.query, job.options));
  return out;
}

std::vector<SearchResult> run_batch(const Network& net, std::span<const Job> jobs) {
  std::vector<SearchResult> out(jobs.size());
  const auto count = static_cast<std::ptrdiff_t>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) out[i] = explore(net, jobs[i].query, jobs[i].options);
  return out;
}

std::vector<Query> product_suite(const Network& net) {
  std::vector<Query> out;
  if (net.automata.empty()) return out;
  for (const auto& a : net.automata)
    if (a.locations.empty()) return out;

  LocatedConstraint source;
  for (const auto& a : net.automata) source.locations.push_back(a.locations.front());

  std::vector<std::size_t> idx(net.automata.size(), 0);
  while (true) {
    LocatedConstraint target;
    for (std::size_t i = 0; i < idx.size(); ++i) target.locations.push_back(net.automata[i].locations[idx[i]]);
    out.push_back(Query{source, std::move(target)});
    std::size_t i = idx.size();
    while (i > 0 && ++idx[i - 1] == net.automata[i - 1].locations.size()) idx[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

std::vector<SearchOptions> configuration_matrix(const SearchOptions& base) {
  std::vector<SearchOptions> out;
  for (auto backend : {BackendKind::Dbm, BackendKind::Formula})
    for (auto order : {SearchOrder::Dfs, SearchOrder::Bfs})
      for (auto sub : {Subsumption::Equal, Subsumption::Include}) {
        SearchOptions o = base;
        o.backend = backend;
        o.order = order;
        o.subsumption = sub;
        out.push_back(o);
      }
  return out;
}

}  // namespace tazone

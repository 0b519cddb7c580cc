#include "tazone/explorer.hpp"

namespace tazone {

std::string_view to_string(BackendKind b) { return b == BackendKind::Dbm ? "dbm" : "formula"; }
std::string_view to_string(SearchOrder o) { return o == SearchOrder::Dfs ? "dfs" : "bfs"; }
std::string_view to_string(Subsumption s) { return s == Subsumption::Equal ? "equal" : "include"; }

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::True: return "True";
    case Verdict::False: return "False";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

SearchResult explore(const Network& net, const Query& q, const SearchOptions& options) {
  if (options.backend == BackendKind::Formula) return explore_with<FormulaBackend>(net, q, options);
  return explore_with<DbmBackend>(net, q, options);
}

bool replay_witness(const Network& net, const Query& q, std::span<const LabelId> witness, BackendKind backend,
                    bool extrapolate) {
  if (backend == BackendKind::Formula) return Explorer<FormulaBackend>::for_query(net, q, extrapolate).replay(q, witness);
  return Explorer<DbmBackend>::for_query(net, q, extrapolate).replay(q, witness);
}

}  // namespace tazone

#pragma once

// On-the-fly reachability over the synchronized product of a network.
//
// A label fires iff every automaton listing it in its alphabet takes one
// transition with that label at the same instant; the others stay put. A
// participant without such a transition blocks the label. Successors are
// computed as
//
//   W  = elapse(Z) ∩ Inv(l)
//   Z' = extrapolate(reset(W ∩ guards, resets) ∩ Inv(l'), k)
//
// and search is a worklist loop that goal-tests every successor before the
// visited test, storing predecessor links for witnesses.

#include "tazone/backend.hpp"
#include "tazone/model.hpp"

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tazone {

enum class BackendKind { Dbm, Formula };
enum class SearchOrder { Dfs, Bfs };
enum class Subsumption { Equal, Include };
enum class Verdict { False, True, Inconclusive };

std::string_view to_string(BackendKind b);
std::string_view to_string(SearchOrder o);
std::string_view to_string(Subsumption s);
std::string_view to_string(Verdict v);

struct SearchOptions {
  BackendKind backend = BackendKind::Dbm;
  SearchOrder order = SearchOrder::Dfs;
  Subsumption subsumption = Subsumption::Include;
  bool extrapolate = true;
  std::size_t max_zones = 0;  // 0: unlimited
  double max_seconds = 0;     // 0: unlimited

  // Equality-based visited set, no extrapolation.
  static SearchOptions faithful(SearchOptions base);
  static SearchOptions faithful();
};

inline SearchOptions SearchOptions::faithful(SearchOptions base) {
  base.subsumption = Subsumption::Equal;
  base.extrapolate = false;
  return base;
}

inline SearchOptions SearchOptions::faithful() { return faithful(SearchOptions{}); }

struct SearchStats {
  std::size_t stored = 0;
  std::size_t popped = 0;
  double seconds = 0;
};

struct SearchResult {
  Verdict verdict = Verdict::False;
  std::vector<LabelId> witness;  // labels from the source to the goal
  SearchStats stats;
};

struct LocationVectorHash {
  std::size_t operator()(const LocationVector& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto l : v) h = (h ^ l.index) * 0x100000001b3ull;
    return h;
  }
};

template <ZoneBackend B>
class Explorer {
 public:
  using Zone = typename B::Zone;

  struct State {
    LocationVector locations;
    Zone zone;
  };

  struct Successor {
    LabelId label;
    State state;
  };

  Explorer(const Network& net, std::vector<std::int64_t> max_constants, bool extrapolate = true)
      : net_(net), k_(std::move(max_constants)), extrapolate_(extrapolate) {
    const std::size_t n = net.clock_count();
    universal_ = B::from_constraint({}, n);
    invariant_.assign(net.locations.size(), universal_);
    participants_.resize(net.labels.size());
    outgoing_.resize(net.automata.size());
    guards_.resize(net.automata.size());
    for (std::size_t i = 0; i < net.automata.size(); ++i) {
      const Automaton& a = net.automata[i];
      for (std::size_t l = 0; l < a.locations.size(); ++l)
        invariant_[a.locations[l].index] = B::from_constraint(a.invariants[l], n);
      for (auto label : a.alphabet) participants_[label.index].push_back(i);
      outgoing_[i].resize(net.locations.size() * net.labels.size());
      for (std::size_t t = 0; t < a.transitions.size(); ++t) {
        const Transition& tr = a.transitions[t];
        outgoing_[i][slot(tr.source, tr.label)].push_back(t);
        guards_[i].push_back(B::from_constraint(tr.guard, n));
      }
    }
  }

  // Max constants taken from the network and the query.
  static Explorer for_query(const Network& net, const Query& q, bool extrapolate = true) {
    return Explorer(net, max_constants(net, &q), extrapolate);
  }

  std::optional<State> init_zone(const LocatedConstraint& source) const {
    Zone z = B::intersect(B::from_constraint(source.constraint, net_.clock_count()), invariants(source.locations));
    if (B::is_empty(z)) return std::nullopt;
    return State{source.locations, std::move(z)};
  }

  std::vector<Successor> successors(const State& s) const {
    std::vector<Successor> out;
    const Zone waiting = B::intersect(B::elapse(s.zone), invariants(s.locations));
    if (B::is_empty(waiting)) return out;

    std::vector<const std::vector<std::size_t>*> options;
    std::vector<std::size_t> pick;
    for (std::uint32_t l = 0; l < net_.labels.size(); ++l) {
      const LabelId label{l};
      const auto& parts = participants_[l];
      if (parts.empty()) continue;
      options.clear();
      for (auto i : parts) {
        const auto& o = outgoing_[i][slot(s.locations[i], label)];
        if (o.empty()) break;
        options.push_back(&o);
      }
      if (options.size() != parts.size()) continue;  // blocked

      // Odometer over one transition per participant, first participant
      // most significant, each in declaration order.
      pick.assign(parts.size(), 0);
      while (true) {
        if (auto next = fire(s, waiting, parts, options, pick)) out.push_back(Successor{label, std::move(*next)});
        std::size_t p = parts.size();
        while (p > 0 && ++pick[p - 1] == options[p - 1]->size()) pick[--p] = 0;
        if (p == 0) break;
      }
    }
    return out;
  }

  // True iff the state sits at the target locations and some valuation in its
  // delay closure (within the current invariants) satisfies the target
  // constraint.
  bool is_goal(const State& s, const LocatedConstraint& target) const {
    return reaches(s, B::from_constraint(target.constraint, net_.clock_count()), target.locations);
  }

  SearchResult explore(const Query& q, const SearchOptions& options) const {
    using Clock = std::chrono::steady_clock;
    const auto start = Clock::now();
    SearchResult result;
    auto finish = [&](Verdict v) {
      result.verdict = v;
      result.stats.seconds = std::chrono::duration<double>(Clock::now() - start).count();
      return result;
    };

    auto init = init_zone(q.source);
    if (!init) return finish(Verdict::False);
    const Zone goal = B::from_constraint(q.target.constraint, net_.clock_count());
    if (reaches(*init, goal, q.target.locations)) return finish(Verdict::True);

    struct Node {
      State state;
      std::size_t parent;
      LabelId label;
    };
    std::vector<Node> nodes;
    std::unordered_map<LocationVector, std::vector<std::size_t>, LocationVectorHash> visited;
    std::deque<std::size_t> frontier;

    auto witness = [&](std::size_t idx, LabelId last) {
      std::vector<LabelId> labels{last};
      for (; nodes[idx].parent != SIZE_MAX; idx = nodes[idx].parent) labels.push_back(nodes[idx].label);
      std::reverse(labels.begin(), labels.end());
      return labels;
    };
    auto over_limit = [&] {
      if (options.max_zones && nodes.size() > options.max_zones) return true;
      return options.max_seconds > 0 &&
             std::chrono::duration<double>(Clock::now() - start).count() > options.max_seconds;
    };

    visited[init->locations].push_back(0);
    nodes.push_back(Node{std::move(*init), SIZE_MAX, LabelId{}});
    frontier.push_back(0);
    result.stats.stored = 1;

    while (!frontier.empty()) {
      if (over_limit()) return finish(Verdict::Inconclusive);
      std::size_t idx;
      if (options.order == SearchOrder::Dfs) {
        idx = frontier.back();
        frontier.pop_back();
      } else {
        idx = frontier.front();
        frontier.pop_front();
      }
      ++result.stats.popped;

      for (auto& [label, next] : successors(nodes[idx].state)) {
        if (reaches(next, goal, q.target.locations)) {
          result.witness = witness(idx, label);
          return finish(Verdict::True);
        }
        auto& bucket = visited[next.locations];
        const bool seen = std::any_of(bucket.begin(), bucket.end(), [&](std::size_t v) {
          const Zone& old = nodes[v].state.zone;
          return options.subsumption == Subsumption::Equal ? B::is_equivalent(old, next.zone)
                                                           : B::includes(old, next.zone);
        });
        if (seen) continue;
        bucket.push_back(nodes.size());
        frontier.push_back(nodes.size());
        nodes.push_back(Node{std::move(next), idx, label});
        result.stats.stored = nodes.size();
        if (over_limit()) return finish(Verdict::Inconclusive);
      }
    }
    return finish(Verdict::False);
  }

  // Follows the witness labels through successors (all matching branches)
  // and checks that the goal is hit at the end.
  bool replay(const Query& q, std::span<const LabelId> labels) const {
    auto init = init_zone(q.source);
    if (!init) return false;
    std::vector<State> current{std::move(*init)};
    for (LabelId label : labels) {
      std::vector<State> next;
      for (const auto& s : current)
        for (auto& succ : successors(s))
          if (succ.label == label) next.push_back(std::move(succ.state));
      if (next.empty()) return false;
      current = std::move(next);
    }
    return std::any_of(current.begin(), current.end(), [&](const State& s) { return is_goal(s, q.target); });
  }

  const Network& network() const { return net_; }

 private:
  std::size_t slot(LocationId loc, LabelId label) const { return loc.index * net_.labels.size() + label.index; }

  Zone invariants(const LocationVector& locs) const {
    Zone z = universal_;
    for (auto l : locs) z = B::intersect(z, invariant_[l.index]);
    return z;
  }

  bool reaches(const State& s, const Zone& goal, const LocationVector& target) const {
    if (s.locations != target) return false;
    const Zone closure = B::intersect(B::elapse(s.zone), invariants(s.locations));
    return !B::is_empty(B::intersect(closure, goal));
  }

  std::optional<State> fire(const State& s, const Zone& waiting, const std::vector<std::size_t>& parts,
                            const std::vector<const std::vector<std::size_t>*>& options,
                            const std::vector<std::size_t>& pick) const {
    Zone z = waiting;
    LocationVector target = s.locations;
    std::vector<ClockId> resets;
    for (std::size_t p = 0; p < parts.size(); ++p) {
      const std::size_t i = parts[p];
      const std::size_t t = (*options[p])[pick[p]];
      z = B::intersect(z, guards_[i][t]);
      if (B::is_empty(z)) return std::nullopt;
      const Transition& tr = net_.automata[i].transitions[t];
      target[i] = tr.target;
      for (auto c : tr.resets)
        if (std::find(resets.begin(), resets.end(), c) == resets.end()) resets.push_back(c);
    }
    z = B::intersect(B::reset(z, resets), invariants(target));
    if (B::is_empty(z)) return std::nullopt;
    if (extrapolate_) z = B::extrapolate(z, k_);
    return State{std::move(target), std::move(z)};
  }

  const Network& net_;
  std::vector<std::int64_t> k_;
  bool extrapolate_;
  Zone universal_;
  std::vector<Zone> invariant_;                                  // by global location
  std::vector<std::vector<std::size_t>> participants_;           // by label
  std::vector<std::vector<std::vector<std::size_t>>> outgoing_;  // [automaton][location x label]
  std::vector<std::vector<Zone>> guards_;                        // [automaton][transition]
};

template <ZoneBackend B>
SearchResult explore_with(const Network& net, const Query& q, const SearchOptions& options) {
  return Explorer<B>::for_query(net, q, options.extrapolate).explore(q, options);
}

// Dispatches on options.backend.
SearchResult explore(const Network& net, const Query& q, const SearchOptions& options);

bool replay_witness(const Network& net, const Query& q, std::span<const LabelId> witness, BackendKind backend,
                    bool extrapolate = true);

}  // namespace tazone

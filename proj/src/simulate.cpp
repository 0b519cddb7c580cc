#include "tazone/simulate.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace tazone {

namespace {

struct StateHash {
  std::size_t operator()(const ConcreteState& s) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::size_t x) { h = (h ^ x) * 0x100000001b3ull; };
    for (auto l : s.locations) mix(l.index);
    for (const auto& r : s.clocks) {
      mix(static_cast<std::size_t>(r.numerator()));
      mix(static_cast<std::size_t>(r.denominator()));
    }
    return h;
  }
};

Rational abs(const Rational& r) { return r < 0 ? -r : r; }

Rational largest_constant(const Network& net, const ClockConstraint& extra) {
  Rational k = 0;
  auto visit = [&](const ClockConstraint& c) {
    for (const auto& a : c.atoms) k = std::max(k, abs(a.constant));
  };
  for (const auto& a : net.automata) {
    for (const auto& inv : a.invariants) visit(inv);
    for (const auto& t : a.transitions) visit(t.guard);
  }
  visit(extra);
  return k;
}

// Grid points in [0, K + g]^n satisfying the source constraint and invariants.
std::vector<ClockValuation> initial_grid(const Network& net, const LocatedConstraint& source,
                                         const Rational& granularity) {
  const Rational bound = largest_constant(net, source.constraint) + granularity;
  const auto steps = static_cast<std::int64_t>(boost::rational_cast<double>(bound / granularity) + 1e-9);
  const std::size_t n = net.clock_count();

  std::vector<ClockValuation> out;
  std::vector<std::int64_t> idx(n, 0);
  while (true) {
    ClockValuation v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = granularity * idx[i];
    if (satisfies(source.constraint, v) && invariants_hold(net, source.locations, v)) out.push_back(std::move(v));
    std::size_t i = 0;
    while (i < n && idx[i] == steps) idx[i++] = 0;
    if (i == n) break;
    ++idx[i];
  }
  return out;
}

// Invokes f(label, successor) for every action step enabled at (locs, v),
// labels in declaration order and combinations in declaration order.
template <class F>
void for_each_action(const Network& net, const LocationVector& locs, const ClockValuation& v, F&& f) {
  for (std::uint32_t l = 0; l < net.labels.size(); ++l) {
    LabelId label{l};
    for (const auto& choice : transition_choices(net, locs, label))
      if (auto next = sim_action(net, locs, v, label, choice)) f(label, std::move(*next));
  }
}

}  // namespace

bool invariants_hold(const Network& net, const LocationVector& locs, const ClockValuation& v) {
  for (std::size_t i = 0; i < net.automata.size(); ++i)
    if (!satisfies(net.automata[i].invariant(locs.at(i)), v)) return false;
  return true;
}

std::optional<ClockValuation> sim_delay(const Network& net, const LocationVector& locs, const ClockValuation& v,
                                        const Rational& d) {
  if (d < 0) throw std::invalid_argument("negative delay");
  if (!invariants_hold(net, locs, v)) return std::nullopt;
  ClockValuation out = v;
  for (auto& x : out) x += d;
  if (!invariants_hold(net, locs, out)) return std::nullopt;
  return out;
}

std::vector<TransitionChoice> transition_choices(const Network& net, const LocationVector& locs, LabelId label) {
  const std::size_t n = net.automata.size();
  std::vector<std::vector<std::size_t>> options(n);
  bool anyone = false;
  for (std::size_t i = 0; i < n; ++i) {
    const Automaton& a = net.automata[i];
    if (!a.listens(label)) continue;
    anyone = true;
    for (std::size_t t = 0; t < a.transitions.size(); ++t)
      if (a.transitions[t].label == label && a.transitions[t].source == locs.at(i)) options[i].push_back(t);
    if (options[i].empty()) return {};
  }
  if (!anyone) return {};

  std::vector<TransitionChoice> out;
  TransitionChoice current(n);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      out.push_back(current);
      return;
    }
    if (!net.automata[i].listens(label)) {
      current[i].reset();
      self(self, i + 1);
      return;
    }
    for (auto t : options[i]) {
      current[i] = t;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

std::optional<ConcreteState> sim_action(const Network& net, const LocationVector& locs, const ClockValuation& v,
                                        LabelId label, const TransitionChoice& choice) {
  ConcreteState next{locs, v};
  std::vector<ClockId> resets;
  bool anyone = false;
  for (std::size_t i = 0; i < net.automata.size(); ++i) {
    const Automaton& a = net.automata[i];
    if (!a.listens(label)) continue;
    anyone = true;
    if (i >= choice.size() || !choice[i] || *choice[i] >= a.transitions.size()) return std::nullopt;
    const Transition& t = a.transitions[*choice[i]];
    if (t.label != label || t.source != locs.at(i)) return std::nullopt;
    if (!satisfies(t.guard, v)) return std::nullopt;
    next.locations[i] = t.target;
    resets.insert(resets.end(), t.resets.begin(), t.resets.end());
  }
  if (!anyone) return std::nullopt;
  for (auto c : resets) next.clocks[c.index] = 0;
  if (!invariants_hold(net, next.locations, next.clocks)) return std::nullopt;
  return next;
}

OracleResult sim_reach_oracle(const Network& net, const LocatedConstraint& source, const Rational& horizon,
                              const Rational& granularity, std::size_t max_states, std::size_t sample_every) {
  if (granularity <= 0) throw std::invalid_argument("granularity must be positive");
  OracleResult result;

  // 0-1 BFS on elapsed time: actions cost nothing, a delay costs one granule.
  std::unordered_map<ConcreteState, Rational, StateHash> elapsed;
  std::deque<ConcreteState> queue;
  auto visit = [&](ConcreteState s, const Rational& t, bool front) {
    auto [it, inserted] = elapsed.try_emplace(s, t);
    if (!inserted) {
      if (it->second <= t) return;
      it->second = t;
    }
    if (front) queue.push_front(std::move(s));
    else queue.push_back(std::move(s));
  };

  for (auto& v : initial_grid(net, source, granularity)) visit(ConcreteState{source.locations, std::move(v)}, 0, false);

  std::size_t processed = 0;
  while (!queue.empty()) {
    ConcreteState s = std::move(queue.front());
    queue.pop_front();
    const Rational t = elapsed.at(s);
    if (elapsed.size() > max_states) {
      result.inconclusive = true;
      break;
    }
    result.reachable.insert(s.locations);
    if (sample_every && processed % sample_every == 0) result.samples.push_back(s);
    ++processed;

    if (t < horizon)
      for_each_action(net, s.locations, s.clocks,
                      [&](LabelId, ConcreteState next) { visit(std::move(next), t, true); });
    if (t + granularity <= horizon)
      if (auto v = sim_delay(net, s.locations, s.clocks, granularity))
        visit(ConcreteState{s.locations, std::move(*v)}, t + granularity, false);
  }
  result.states = elapsed.size();
  return result;
}

std::optional<ConcreteRun> find_concrete_run(const Network& net, const Query& query, std::span<const LabelId> labels,
                                             const Rational& granularity, const Rational& max_delay) {
  if (granularity <= 0) throw std::invalid_argument("granularity must be positive");

  struct Node {
    ConcreteState state;
    std::size_t parent;
    Rational delay;
  };
  std::vector<Node> nodes;
  std::vector<std::size_t> layer;
  for (auto& v : initial_grid(net, query.source, granularity)) {
    layer.push_back(nodes.size());
    nodes.push_back(Node{ConcreteState{query.source.locations, std::move(v)}, SIZE_MAX, 0});
  }

  auto delays = [&](const ConcreteState& s, auto&& f) {
    for (Rational d = 0; d <= max_delay; d += granularity) {
      auto v = sim_delay(net, s.locations, s.clocks, d);
      if (!v) break;  // convex invariants: longer delays fail too
      f(d, *v);
    }
  };

  for (LabelId label : labels) {
    std::unordered_map<ConcreteState, std::size_t, StateHash> seen;
    std::vector<std::size_t> next_layer;
    for (std::size_t idx : layer) {
      const ConcreteState s = nodes[idx].state;
      delays(s, [&](const Rational& d, const ClockValuation& v) {
        for (const auto& choice : transition_choices(net, s.locations, label)) {
          auto next = sim_action(net, s.locations, v, label, choice);
          if (!next || seen.contains(*next)) continue;
          seen.emplace(*next, nodes.size());
          next_layer.push_back(nodes.size());
          nodes.push_back(Node{std::move(*next), idx, d});
        }
      });
    }
    layer = std::move(next_layer);
    if (layer.empty()) return std::nullopt;
  }

  for (std::size_t idx : layer) {
    const ConcreteState& s = nodes[idx].state;
    if (s.locations != query.target.locations) continue;
    std::optional<Rational> final_delay;
    delays(s, [&](const Rational& d, const ClockValuation& v) {
      if (!final_delay && satisfies(query.target.constraint, v)) final_delay = d;
    });
    if (!final_delay) continue;

    ConcreteRun run;
    run.final_delay = *final_delay;
    run.end = s;
    for (auto& x : run.end.clocks) x += *final_delay;
    std::size_t cur = idx;
    for (std::size_t step = labels.size(); step-- > 0;) {
      run.steps.push_back(ConcreteStep{nodes[cur].delay, labels[step]});
      cur = nodes[cur].parent;
    }
    std::reverse(run.steps.begin(), run.steps.end());
    run.start = nodes[cur].state.clocks;
    return run;
  }
  return std::nullopt;
}

}  // namespace tazone

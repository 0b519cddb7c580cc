#pragma once

// Concrete (real-valued) semantics of a network, used as a brute-force oracle
// for the symbolic engine. Everything here works on exact rationals.

#include "tazone/model.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <vector>

namespace tazone {

struct ConcreteState {
  LocationVector locations;
  ClockValuation clocks;
  friend bool operator==(const ConcreteState&, const ConcreteState&) = default;
};

// Every automaton's invariant at its current location.
bool invariants_hold(const Network& net, const LocationVector& locs, const ClockValuation& v);

// Lets `d` time units pass. Invariants are conjunctions of difference
// constraints, hence convex, so checking both endpoints covers all of [0, d].
std::optional<ClockValuation> sim_delay(const Network& net, const LocationVector& locs, const ClockValuation& v,
                                        const Rational& d);

// Index of the chosen transition in automata[i].transitions, for every
// automaton listening to the label; entries of other automata are ignored.
using TransitionChoice = std::vector<std::optional<std::size_t>>;

std::optional<ConcreteState> sim_action(const Network& net, const LocationVector& locs, const ClockValuation& v,
                                        LabelId label, const TransitionChoice& choice);

// All transition combinations that could fire `label` from `locs` (guards not
// checked). Empty when some participant has no such transition or nobody
// listens to the label.
std::vector<TransitionChoice> transition_choices(const Network& net, const LocationVector& locs, LabelId label);

struct OracleResult {
  bool inconclusive = false;  // state cap hit; `reachable` is still sound
  std::set<LocationVector> reachable;
  std::size_t states = 0;
  std::vector<ConcreteState> samples;  // a spread of visited concrete states
};

// Enumerates concrete runs whose delays are multiples of `granularity`, whose
// total duration is at most `horizon`, and whose actions all fire strictly
// before `horizon` (so horizon 0 yields only the source). Sound, not complete:
// every returned location vector is reachable.
OracleResult sim_reach_oracle(const Network& net, const LocatedConstraint& source, const Rational& horizon,
                              const Rational& granularity, std::size_t max_states = 2'000'000,
                              std::size_t sample_every = 0);

struct ConcreteStep {
  Rational delay;
  LabelId label;
};

struct ConcreteRun {
  ClockValuation start;
  std::vector<ConcreteStep> steps;
  Rational final_delay;
  ConcreteState end;
};

// Searches for grid delays (multiples of `granularity`, each at most
// `max_delay`) that make the label sequence executable from some grid point of
// the source and end in the target (after an optional last delay).
std::optional<ConcreteRun> find_concrete_run(const Network& net, const Query& query, std::span<const LabelId> labels,
                                             const Rational& granularity, const Rational& max_delay);

}  // namespace tazone

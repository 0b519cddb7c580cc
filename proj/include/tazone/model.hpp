#pragma once

// Domain types for networks of timed automata.
//
// Two layers: the Syntax* structs hold names exactly as written (with source
// positions), and validate() resolves them into a Network whose entities refer
// to each other by ordinal. All model values are immutable after validation.

#include <boost/rational.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tazone {

using Rational = boost::rational<std::int64_t>;

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;
  friend bool operator==(const Position&, const Position&) = default;
};

struct Diagnostic {
  Position pos;
  std::string message;
};

std::string to_string(const Diagnostic& d);

// Either a value or the diagnostics explaining why there is none.
template <class T>
struct Checked {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;

  explicit operator bool() const { return value.has_value(); }
  const T& operator*() const { return *value; }
  const T* operator->() const { return &*value; }
};

// Ordinal into one of the network's declaration lists.
template <class Tag>
struct Ordinal {
  std::uint32_t index = 0;
  friend auto operator<=>(const Ordinal&, const Ordinal&) = default;
};

using ClockId = Ordinal<struct ClockTag>;
using LocationId = Ordinal<struct LocationTag>;
using LabelId = Ordinal<struct LabelTag>;

enum class RelOp : std::uint8_t { Less, LessEq, Equal, GreaterEq, Greater };

std::string_view to_string(RelOp op);

// lhs # constant, or lhs - rhs # constant.
struct Atom {
  ClockId lhs;
  std::optional<ClockId> rhs;
  RelOp op = RelOp::LessEq;
  Rational constant;
  friend bool operator==(const Atom&, const Atom&) = default;
};

// Conjunction of atoms; an empty list is `true`.
struct ClockConstraint {
  std::vector<Atom> atoms;
  bool is_true() const { return atoms.empty(); }
  friend bool operator==(const ClockConstraint&, const ClockConstraint&) = default;
};

struct Transition {
  LabelId label;
  LocationId source;
  ClockConstraint guard;
  std::vector<ClockId> resets;
  LocationId target;
  friend bool operator==(const Transition&, const Transition&) = default;
};

struct Automaton {
  std::vector<LocationId> locations;
  std::vector<LabelId> alphabet;
  std::vector<ClockConstraint> invariants;  // parallel to `locations`
  std::vector<Transition> transitions;

  bool owns(LocationId loc) const;
  bool listens(LabelId label) const;
  const ClockConstraint& invariant(LocationId loc) const;

  friend bool operator==(const Automaton&, const Automaton&) = default;
};

struct Network {
  std::string name;
  std::vector<std::string> clocks;
  std::vector<std::string> locations;
  std::vector<std::string> labels;
  std::vector<Automaton> automata;
  std::int64_t scale = 1;  // every constant was multiplied by this

  std::optional<ClockId> find_clock(std::string_view n) const;
  std::optional<LocationId> find_location(std::string_view n) const;
  std::optional<LabelId> find_label(std::string_view n) const;

  const std::string& name_of(ClockId c) const { return clocks[c.index]; }
  const std::string& name_of(LocationId l) const { return locations[l.index]; }
  const std::string& name_of(LabelId l) const { return labels[l.index]; }

  std::size_t clock_count() const { return clocks.size(); }

  friend bool operator==(const Network&, const Network&) = default;
};

using LocationVector = std::vector<LocationId>;

// A location vector (one entry per automaton) paired with a constraint: the
// textual `s/c` of a query.
struct LocatedConstraint {
  LocationVector locations;
  ClockConstraint constraint;
  friend bool operator==(const LocatedConstraint&, const LocatedConstraint&) = default;
};

struct Query {
  LocatedConstraint source;
  LocatedConstraint target;
  friend bool operator==(const Query&, const Query&) = default;
};

// Clock values, indexed by clock ordinal.
using ClockValuation = std::vector<Rational>;

bool satisfies(const Atom& a, const ClockValuation& v);
bool satisfies(const ClockConstraint& c, const ClockValuation& v);

// ---------------------------------------------------------------------------
// Unchecked form produced by the parser.

struct Name {
  std::string text;
  Position pos;
};

struct SyntaxAtom {
  Name lhs;
  std::optional<Name> rhs;
  RelOp op = RelOp::LessEq;
  Rational constant;
};

struct SyntaxConstraint {
  std::vector<SyntaxAtom> atoms;
};

struct SyntaxInvariant {
  Name location;
  SyntaxConstraint constraint;
};

struct SyntaxTransition {
  Name source;
  Name label;
  SyntaxConstraint guard;
  std::vector<Name> resets;
  Name target;
};

struct SyntaxAutomaton {
  Position pos;
  std::vector<Name> locations;
  std::vector<Name> labels;
  std::vector<SyntaxInvariant> invariants;
  std::vector<SyntaxTransition> transitions;
};

struct SyntaxNetwork {
  Name name;
  std::vector<Name> clocks;
  std::vector<Name> locations;
  std::vector<Name> labels;
  std::vector<SyntaxAutomaton> automata;
};

// Resolves names and checks every structural invariant; all violations are
// reported, not just the first.
Checked<Network> validate(const SyntaxNetwork& syntax);

// Resolves a constraint against the clocks of `net`.
Checked<ClockConstraint> resolve_constraint(const Network& net, const SyntaxConstraint& syntax);

// Scales all constants by the LCM of their denominators so every constant is
// an integer; `scale` accumulates the factor.
Network normalize_constants(Network net);

// Multiplies every constant by `factor` (also folded into `scale`).
Network rescale(Network net, std::int64_t factor);
ClockConstraint rescale(const ClockConstraint& c, std::int64_t factor);

bool is_integral(const ClockConstraint& c);

// Largest absolute constant compared against each clock, across all guards,
// invariants and both query constraints. Requires integral constants.
std::vector<std::int64_t> max_constants(const Network& net, const Query* query = nullptr);

}  // namespace tazone

template <class Tag>
struct std::hash<tazone::Ordinal<Tag>> {
  std::size_t operator()(const tazone::Ordinal<Tag>& o) const noexcept { return o.index; }
};

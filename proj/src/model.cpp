#include "tazone/model.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace tazone {

std::string to_string(const Diagnostic& d) {
  return std::to_string(d.pos.line) + ":" + std::to_string(d.pos.column) + ": " + d.message;
}

std::string_view to_string(RelOp op) {
  switch (op) {
    case RelOp::Less: return "<";
    case RelOp::LessEq: return "<=";
    case RelOp::Equal: return "=";
    case RelOp::GreaterEq: return ">=";
    case RelOp::Greater: return ">";
  }
  return "?";
}

bool Automaton::owns(LocationId loc) const {
  return std::find(locations.begin(), locations.end(), loc) != locations.end();
}

bool Automaton::listens(LabelId label) const {
  return std::find(alphabet.begin(), alphabet.end(), label) != alphabet.end();
}

const ClockConstraint& Automaton::invariant(LocationId loc) const {
  auto it = std::find(locations.begin(), locations.end(), loc);
  if (it == locations.end()) throw std::out_of_range("location not owned by automaton");
  return invariants[static_cast<std::size_t>(it - locations.begin())];
}

namespace {

template <class Id>
std::optional<Id> find_in(const std::vector<std::string>& names, std::string_view n) {
  auto it = std::find(names.begin(), names.end(), n);
  if (it == names.end()) return std::nullopt;
  return Id{static_cast<std::uint32_t>(it - names.begin())};
}

bool compare(const Rational& lhs, RelOp op, const Rational& rhs) {
  switch (op) {
    case RelOp::Less: return lhs < rhs;
    case RelOp::LessEq: return lhs <= rhs;
    case RelOp::Equal: return lhs == rhs;
    case RelOp::GreaterEq: return lhs >= rhs;
    case RelOp::Greater: return lhs > rhs;
  }
  return false;
}

}  // namespace

std::optional<ClockId> Network::find_clock(std::string_view n) const { return find_in<ClockId>(clocks, n); }
std::optional<LocationId> Network::find_location(std::string_view n) const {
  return find_in<LocationId>(locations, n);
}
std::optional<LabelId> Network::find_label(std::string_view n) const { return find_in<LabelId>(labels, n); }

bool satisfies(const Atom& a, const ClockValuation& v) {
  Rational lhs = v.at(a.lhs.index);
  if (a.rhs) lhs -= v.at(a.rhs->index);
  return compare(lhs, a.op, a.constant);
}

bool satisfies(const ClockConstraint& c, const ClockValuation& v) {
  return std::all_of(c.atoms.begin(), c.atoms.end(), [&](const Atom& a) { return satisfies(a, v); });
}

// ---------------------------------------------------------------------------
// validate

namespace {

class Validator {
 public:
  explicit Validator(const SyntaxNetwork& syntax) : syntax_(syntax) {}

  Checked<Network> run() {
    net_.name = syntax_.name.text;
    declare(syntax_.clocks, net_.clocks, "clock");
    declare(syntax_.locations, net_.locations, "location");
    declare(syntax_.labels, net_.labels, "label");

    std::unordered_map<std::uint32_t, std::size_t> location_owner;
    for (std::size_t i = 0; i < syntax_.automata.size(); ++i)
      net_.automata.push_back(automaton(syntax_.automata[i], i, location_owner));

    Checked<Network> result;
    result.diagnostics = std::move(diags_);
    if (result.diagnostics.empty()) result.value = std::move(net_);
    return result;
  }

  ClockConstraint constraint(const SyntaxConstraint& c) {
    ClockConstraint out;
    for (const auto& sa : c.atoms) {
      auto lhs = net_.find_clock(sa.lhs.text);
      if (!lhs) error(sa.lhs.pos, "undeclared clock '" + sa.lhs.text + "'");
      std::optional<ClockId> rhs;
      if (sa.rhs) {
        rhs = net_.find_clock(sa.rhs->text);
        if (!rhs) error(sa.rhs->pos, "undeclared clock '" + sa.rhs->text + "'");
        else if (lhs && *lhs == *rhs)
          error(sa.lhs.pos, "difference atom compares clock '" + sa.lhs.text + "' with itself");
      }
      if (lhs && (!sa.rhs || rhs)) out.atoms.push_back(Atom{*lhs, rhs, sa.op, sa.constant});
    }
    return out;
  }

  Network& network() { return net_; }
  std::vector<Diagnostic>& diagnostics() { return diags_; }

 private:
  void error(Position pos, std::string msg) { diags_.push_back(Diagnostic{pos, std::move(msg)}); }

  void declare(const std::vector<Name>& names, std::vector<std::string>& out, const char* kind) {
    for (const auto& n : names) {
      if (std::find(out.begin(), out.end(), n.text) != out.end()) {
        error(n.pos, std::string("duplicate ") + kind + " '" + n.text + "'");
        continue;
      }
      out.push_back(n.text);
    }
  }

  Automaton automaton(const SyntaxAutomaton& sa, std::size_t index,
                      std::unordered_map<std::uint32_t, std::size_t>& location_owner) {
    Automaton a;
    for (const auto& n : sa.locations) {
      auto id = net_.find_location(n.text);
      if (!id) {
        error(n.pos, "undeclared location '" + n.text + "'");
        continue;
      }
      if (a.owns(*id)) {
        error(n.pos, "duplicate location '" + n.text + "' in automaton " + std::to_string(index + 1));
        continue;
      }
      auto [it, inserted] = location_owner.emplace(id->index, index);
      if (!inserted)
        error(n.pos, "overlapping locations: '" + n.text + "' declared in automata " +
                         std::to_string(it->second + 1) + " and " + std::to_string(index + 1));
      a.locations.push_back(*id);
    }
    for (const auto& n : sa.labels) {
      auto id = net_.find_label(n.text);
      if (!id) {
        error(n.pos, "undeclared label '" + n.text + "'");
        continue;
      }
      if (a.listens(*id)) {
        error(n.pos, "duplicate label '" + n.text + "' in automaton " + std::to_string(index + 1));
        continue;
      }
      a.alphabet.push_back(*id);
    }

    std::vector<std::optional<ClockConstraint>> invariants(a.locations.size());
    for (const auto& inv : sa.invariants) {
      auto id = net_.find_location(inv.location.text);
      auto it = id ? std::find(a.locations.begin(), a.locations.end(), *id) : a.locations.end();
      ClockConstraint c = constraint(inv.constraint);
      if (it == a.locations.end()) {
        error(inv.location.pos, "invariant for location '" + inv.location.text + "' not in automaton " +
                                    std::to_string(index + 1));
        continue;
      }
      auto& slot = invariants[static_cast<std::size_t>(it - a.locations.begin())];
      if (slot) {
        error(inv.location.pos, "duplicate invariant for location '" + inv.location.text + "'");
        continue;
      }
      slot = std::move(c);
    }
    for (std::size_t i = 0; i < invariants.size(); ++i) {
      if (!invariants[i]) {
        error(sa.pos, "missing invariant for location '" + net_.name_of(a.locations[i]) + "' in automaton " +
                          std::to_string(index + 1));
        a.invariants.emplace_back();
      } else {
        a.invariants.push_back(std::move(*invariants[i]));
      }
    }

    for (const auto& st : sa.transitions) {
      Transition t;
      bool ok = true;
      auto endpoint = [&](const Name& n, LocationId& out) {
        auto id = net_.find_location(n.text);
        if (!id) {
          error(n.pos, "undeclared location '" + n.text + "'");
          ok = false;
        } else if (!a.owns(*id)) {
          error(n.pos, "location '" + n.text + "' does not belong to automaton " + std::to_string(index + 1));
          ok = false;
        } else {
          out = *id;
        }
      };
      endpoint(st.source, t.source);
      endpoint(st.target, t.target);
      auto label = net_.find_label(st.label.text);
      if (!label || !a.listens(*label)) {
        error(st.label.pos, "undeclared label '" + st.label.text + "' in automaton " + std::to_string(index + 1));
        ok = false;
      } else {
        t.label = *label;
      }
      t.guard = constraint(st.guard);
      for (const auto& r : st.resets) {
        auto c = net_.find_clock(r.text);
        if (!c) {
          error(r.pos, "undeclared clock '" + r.text + "'");
          ok = false;
        } else if (std::find(t.resets.begin(), t.resets.end(), *c) != t.resets.end()) {
          error(r.pos, "duplicate reset of clock '" + r.text + "'");
          ok = false;
        } else {
          t.resets.push_back(*c);
        }
      }
      if (ok) a.transitions.push_back(std::move(t));
    }
    return a;
  }

  const SyntaxNetwork& syntax_;
  Network net_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

Checked<Network> validate(const SyntaxNetwork& syntax) { return Validator(syntax).run(); }

Checked<ClockConstraint> resolve_constraint(const Network& net, const SyntaxConstraint& syntax) {
  SyntaxNetwork empty;
  Validator v(empty);
  v.network().clocks = net.clocks;
  Checked<ClockConstraint> out;
  ClockConstraint c = v.constraint(syntax);
  out.diagnostics = std::move(v.diagnostics());
  if (out.diagnostics.empty()) out.value = std::move(c);
  return out;
}

// ---------------------------------------------------------------------------
// constants

namespace {

template <class F>
void for_each_constraint(Network& net, F&& f) {
  for (auto& a : net.automata) {
    for (auto& inv : a.invariants) f(inv);
    for (auto& t : a.transitions) f(t.guard);
  }
}

template <class F>
void for_each_constraint(const Network& net, F&& f) {
  for (const auto& a : net.automata) {
    for (const auto& inv : a.invariants) f(inv);
    for (const auto& t : a.transitions) f(t.guard);
  }
}

}  // namespace

ClockConstraint rescale(const ClockConstraint& c, std::int64_t factor) {
  ClockConstraint out = c;
  for (auto& a : out.atoms) a.constant *= factor;
  return out;
}

Network rescale(Network net, std::int64_t factor) {
  if (factor <= 0) throw std::invalid_argument("scale factor must be positive");
  for_each_constraint(net, [&](ClockConstraint& c) { c = rescale(c, factor); });
  net.scale *= factor;
  return net;
}

Network normalize_constants(Network net) {
  std::int64_t lcm = 1;
  for_each_constraint(std::as_const(net), [&](const ClockConstraint& c) {
    for (const auto& a : c.atoms) lcm = std::lcm(lcm, a.constant.denominator());
  });
  if (lcm == 1) return net;
  return rescale(std::move(net), lcm);
}

bool is_integral(const ClockConstraint& c) {
  return std::all_of(c.atoms.begin(), c.atoms.end(), [](const Atom& a) { return a.constant.denominator() == 1; });
}

std::vector<std::int64_t> max_constants(const Network& net, const Query* query) {
  std::vector<std::int64_t> k(net.clock_count(), 0);
  auto visit = [&](const ClockConstraint& c) {
    for (const auto& a : c.atoms) {
      if (a.constant.denominator() != 1) throw std::invalid_argument("max_constants needs integral constants");
      std::int64_t m = a.constant.numerator() < 0 ? -a.constant.numerator() : a.constant.numerator();
      k[a.lhs.index] = std::max(k[a.lhs.index], m);
      if (a.rhs) k[a.rhs->index] = std::max(k[a.rhs->index], m);
    }
  };
  for_each_constraint(net, visit);
  if (query) {
    visit(query->source.constraint);
    visit(query->target.constraint);
  }
  return k;
}

}  // namespace tazone

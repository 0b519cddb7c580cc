#include "tazone/formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace tazone {

namespace {

std::int64_t integral(const Rational& r) {
  if (r.denominator() != 1) throw std::invalid_argument("formula constants must be integral");
  return r.numerator();
}

Var var_of(ClockId c, std::size_t clock_count) {
  if (c.index >= clock_count) throw std::out_of_range("unknown clock ordinal " + std::to_string(c.index));
  return c.index;
}

LinearAtom make_atom(Var pos, Var neg, Bound b) { return LinearAtom{pos, neg, b.is_strict(), b.value()}; }

}  // namespace

Formula::Formula(std::size_t clock_count) : clock_count_(clock_count) {
  for (Var x = 0; x < clock_count; ++x) atoms_.push_back(LinearAtom{kZeroVar, x, false, 0});
}

Formula Formula::from_constraint(const ClockConstraint& c, std::size_t clock_count) {
  Formula f(clock_count);
  for (const auto& a : c.atoms) {
    const Var x = var_of(a.lhs, clock_count);
    const Var y = a.rhs ? var_of(*a.rhs, clock_count) : kZeroVar;
    const std::int64_t k = integral(a.constant);
    switch (a.op) {
      case RelOp::Less: f.add({x, y, true, k}); break;
      case RelOp::LessEq: f.add({x, y, false, k}); break;
      case RelOp::Equal:
        f.add({x, y, false, k});
        f.add({y, x, false, -k});
        break;
      case RelOp::GreaterEq: f.add({y, x, false, -k}); break;
      case RelOp::Greater: f.add({y, x, true, -k}); break;
    }
  }
  return f;
}

void Formula::add(const LinearAtom& a) {
  if (a.pos == a.neg) {
    const bool holds = a.strict ? 0 < a.constant : 0 <= a.constant;
    if (!holds) ground_false_ = true;
    return;
  }
  for (auto& existing : atoms_) {
    if (existing.pos == a.pos && existing.neg == a.neg) {
      if (a.bound() < existing.bound()) existing = a;
      return;
    }
  }
  atoms_.push_back(a);
}

void Formula::eliminate(Var v) {
  std::vector<LinearAtom> lowers, uppers, rest;
  for (const auto& a : atoms_) {
    if (a.neg == v) lowers.push_back(a);       // a.pos - v # c
    else if (a.pos == v) uppers.push_back(a);  // v - a.neg # c
    else rest.push_back(a);
  }
  atoms_ = std::move(rest);
  for (const auto& lo : lowers)
    for (const auto& up : uppers) add(make_atom(lo.pos, up.neg, lo.bound() + up.bound()));
}

ClockConstraint Formula::to_constraint() const {
  ClockConstraint c;
  if (ground_false_) {
    if (clock_count_ == 0) throw std::logic_error("ground-false formula over no clocks has no constraint form");
    c.atoms.push_back(Atom{ClockId{0}, std::nullopt, RelOp::Less, 0});
    return c;
  }
  for (const auto& a : atoms_) {
    if (a.pos == kZeroVar) {
      if (!a.strict && a.constant == 0) continue;  // non-negativity
      c.atoms.push_back(
          Atom{ClockId{a.neg}, std::nullopt, a.strict ? RelOp::Greater : RelOp::GreaterEq, -a.constant});
      continue;
    }
    Atom out{ClockId{a.pos}, std::nullopt, a.strict ? RelOp::Less : RelOp::LessEq, a.constant};
    if (a.neg != kZeroVar) out.rhs = ClockId{a.neg};
    c.atoms.push_back(out);
  }
  return c;
}

Formula fm_exists(const Formula& f, std::span<const ClockId> vars) {
  Formula g = f;
  for (ClockId c : vars) g.eliminate(var_of(c, f.clock_count()));
  return g;
}

Formula fm_reset(const Formula& f, std::span<const ClockId> resets) {
  Formula g = fm_exists(f, resets);
  for (ClockId c : resets) {
    g.add({c.index, kZeroVar, false, 0});
    g.add({kZeroVar, c.index, false, 0});
  }
  return g;
}

Formula fm_elapse(const Formula& f) {
  const Var delta = static_cast<Var>(f.clock_count());
  Formula shifted(f.clock_count());
  // Substitute x := x - delta. Difference atoms are unaffected.
  for (const auto& a : f.atoms()) {
    LinearAtom b = a;
    if (a.neg == kZeroVar) b.neg = delta;
    else if (a.pos == kZeroVar) b.pos = delta;
    shifted.add(b);
  }
  shifted.add({kZeroVar, delta, false, 0});
  if (f.is_ground_false()) shifted.add({kZeroVar, kZeroVar, true, 0});
  shifted.eliminate(delta);
  return shifted;
}

Formula fm_intersect(const Formula& a, const Formula& b) {
  if (a.clock_count() != b.clock_count()) throw std::invalid_argument("formula scope mismatch");
  Formula g = a;
  for (const auto& atom : b.atoms()) g.add(atom);
  if (b.is_ground_false()) g.add({kZeroVar, kZeroVar, true, 0});
  return g;
}

bool fm_is_empty(const Formula& f) {
  if (f.is_ground_false()) return true;
  Formula g = f;
  for (Var v = 0; v < f.clock_count(); ++v) {
    g.eliminate(v);
    if (g.is_ground_false()) return true;
  }
  return g.is_ground_false();
}

Bound fm_tightest(const Formula& f, Var pos, Var neg) {
  if (pos == neg) return Bound::zero();
  Formula g = f;
  for (Var v = 0; v < f.clock_count(); ++v)
    if (v != pos && v != neg) g.eliminate(v);
  auto direct = [&](Var p, Var q) {
    for (const auto& a : g.atoms())
      if (a.pos == p && a.neg == q) return a.bound();
    return Bound::infinity();
  };
  Bound best = direct(pos, neg);
  if (pos != kZeroVar && neg != kZeroVar) best = std::min(best, direct(pos, kZeroVar) + direct(kZeroVar, neg));
  return best;
}

bool fm_entails(const Formula& f, const LinearAtom& a) {
  if (a.pos == a.neg) return a.strict ? 0 < a.constant : 0 <= a.constant;
  if (fm_is_empty(f)) return true;
  return fm_tightest(f, a.pos, a.neg) <= a.bound();
}

bool fm_includes(const Formula& a, const Formula& b) {
  if (a.clock_count() != b.clock_count()) throw std::invalid_argument("formula scope mismatch");
  if (fm_is_empty(b)) return true;
  if (fm_is_empty(a)) return false;
  return std::all_of(a.atoms().begin(), a.atoms().end(), [&](const LinearAtom& atom) {
    return fm_tightest(b, atom.pos, atom.neg) <= atom.bound();
  });
}

bool fm_equiv(const Formula& a, const Formula& b) { return fm_includes(a, b) && fm_includes(b, a); }

Formula fm_extrapolate(const Formula& f, std::span<const std::int64_t> max_constants) {
  const std::size_t n = f.clock_count();
  if (max_constants.size() != n) throw std::invalid_argument("max constant count mismatch");
  if (fm_is_empty(f)) return f;
  // Index 0 is the zero variable, i > 0 is clock i-1, mirroring the DBM layout.
  auto var = [](std::size_t i) { return i == 0 ? kZeroVar : static_cast<Var>(i - 1); };
  auto k = [&](std::size_t i) { return i == 0 ? std::int64_t{0} : max_constants[i - 1]; };
  Formula g(n);
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= n; ++j) {
      if (i == j) continue;
      Bound b = fm_tightest(f, var(i), var(j));
      if (b.is_infinity()) continue;
      if (b > Bound::le(k(i))) continue;
      if (b < Bound::lt(-k(j))) b = Bound::lt(-k(j));
      g.add(make_atom(var(i), var(j), b));
    }
  }
  return g;
}

}  // namespace tazone

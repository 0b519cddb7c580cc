#pragma once

// Randomized property checks for the DBM and the formula backend, shared by
// the unit tests and the acceptance binary. Each check returns the failures
// it found (empty on success).

#include "support/grid_oracle.hpp"
#include "support/random_zones.hpp"
#include "tazone/dbm.hpp"
#include "tazone/formula.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace tazone::test {

inline std::string describe(const ClockConstraint& c) {
  std::ostringstream os;
  for (const auto& a : c.atoms) {
    os << 'x' << a.lhs.index;
    if (a.rhs) os << "-x" << a.rhs->index;
    os << to_string(a.op) << a.constant << " ^ ";
  }
  os << "true";
  return os.str();
}

struct PropertyReport {
  std::size_t cases = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
  void fail(const std::string& what, std::size_t clocks, const ClockConstraint& c) {
    if (failures.size() < 20)
      failures.push_back(what + " [" + std::to_string(clocks) + " clocks] " + describe(c));
    else if (failures.size() == 20)
      failures.push_back("...");
  }
};

// Compares `zone` with `oracle` on every grid point.
inline bool agrees_on_grid(const Dbm& zone, const std::function<bool(const Ticks&)>& oracle) {
  const ClockConstraint form = zone.is_empty() ? ClockConstraint{} : zone.to_constraint();
  bool ok = true;
  for_each_point(zone.clock_count(), [&](const Ticks& u) {
    if (!ok) return;
    const bool member = !zone.is_empty() && holds(form, u);
    if (member != oracle(u)) ok = false;
  });
  return ok;
}

inline std::vector<Bound> random_cells(ConstraintGen& gen, std::size_t clocks) {
  const std::size_t dim = clocks + 1;
  std::vector<Bound> cells(dim * dim, Bound::infinity());
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      if (i == j) {
        cells[i * dim + j] = Bound::zero();
      } else if (gen.pick(0, 3) != 0) {
        const auto v = static_cast<std::int64_t>(gen.pick(0, 20)) - (i == 0 ? 20 : 5);
        cells[i * dim + j] = gen.pick(0, 1) ? Bound::lt(v) : Bound::le(v);
      }
    }
  return cells;
}

// Closure, canonical form, inclusion order, elapse and extrapolation laws,
// plus grid-exactness of every operation.
inline PropertyReport check_dbm_properties(std::uint64_t seed, std::size_t cases) {
  ConstraintGen gen(seed);
  PropertyReport report;
  for (std::size_t i = 0; i < cases; ++i, ++report.cases) {
    const auto [n, c] = gen.next();
    const Dbm z = Dbm::from_constraint(c, n);

    // closure is idempotent, for constraint-built and raw matrices alike
    if (!(z.canonicalize() == z)) report.fail("closure not idempotent", n, c);
    const Dbm raw = Dbm::from_cells(n, random_cells(gen, n));
    if (!(raw.canonicalize() == raw)) report.fail("closure not idempotent on raw cells", n, c);

    // canonical form ignores atom order and duplicates, and survives a round trip
    if (!(Dbm::from_constraint(gen.scramble(c), n) == z)) report.fail("canonical form depends on atom order", n, c);
    if (!z.is_empty() && !(Dbm::from_constraint(z.to_constraint(), n) == z))
      report.fail("to_constraint round trip changes zone", n, c);

    // inclusion is a partial order
    const auto c2 = gen.constraint(n);
    const auto c3 = gen.constraint(n);
    const Dbm b = z.intersect(Dbm::from_constraint(c2, n));
    const Dbm d = b.intersect(Dbm::from_constraint(c3, n));
    if (!z.includes(z)) report.fail("includes not reflexive", n, c);
    if (!z.includes(b) || !b.includes(d) || !z.includes(d)) report.fail("includes not transitive", n, c);
    const Dbm other = Dbm::from_constraint(c2, n);
    if (z.includes(other) && other.includes(z) && !z.is_equivalent(other))
      report.fail("includes not antisymmetric", n, c);

    // elapse grows and is idempotent
    const Dbm up = z.elapse();
    if (!up.includes(z)) report.fail("elapse shrinks the zone", n, c);
    if (!(up.elapse() == up)) report.fail("elapse not idempotent", n, c);

    // extrapolation grows and is idempotent
    const auto k = gen.max_constants(n);
    const Dbm ex = z.extrapolate(k);
    if (!ex.includes(z)) report.fail("extrapolation shrinks the zone", n, c);
    if (!(ex.extrapolate(k) == ex)) report.fail("extrapolation not idempotent", n, c);

    // reset by several clocks commutes
    const ClockId r1 = gen.clock(n), r2 = gen.clock(n);
    const std::vector<ClockId> both{r1, r2}, swapped{r2, r1};
    if (!(z.reset(both) == z.reset(swapped)) ||
        !(z.reset(both) == z.reset(std::vector{r1}).reset(std::vector{r2})))
      report.fail("multi-clock reset depends on order", n, c);

    // grid exactness
    if (!agrees_on_grid(z, [&](const Ticks& u) { return holds(c, u); }))
      report.fail("from_constraint differs from the constraint on the grid", n, c);
    if (!agrees_on_grid(b, [&](const Ticks& u) { return holds(c, u) && holds(c2, u); }))
      report.fail("intersect differs from the conjunction on the grid", n, c);
    if (!agrees_on_grid(z.reset(std::vector{r1}), [&](const Ticks& u) { return in_reset(c, r1, u); }))
      report.fail("reset differs from its definition on the grid", n, c);
    if (!agrees_on_grid(up, [&](const Ticks& u) { return in_elapse(c, u); }))
      report.fail("elapse differs from its definition on the grid", n, c);
    if (n > 1) {
      const ClockId x = gen.clock(n);
      if (!agrees_on_grid(z.eliminate(x), [&](const Ticks& u) { return in_projection(c, x, u); }))
        report.fail("eliminate differs from projection on the grid", n, c);
    }
  }
  return report;
}

// Constraint over n clocks -> the same constraint over n + 1 clocks, with a
// fresh clock inserted at position x.
inline ClockConstraint lift(const ClockConstraint& c, ClockId x) {
  ClockConstraint out = c;
  auto shift = [&](ClockId& y) {
    if (y.index >= x.index) ++y.index;
  };
  for (auto& a : out.atoms) {
    shift(a.lhs);
    if (a.rhs) shift(*a.rhs);
  }
  return out;
}

// The formula backend gives the same sets as the DBM for every operation.
inline PropertyReport check_formula_against_dbm(std::uint64_t seed, std::size_t cases) {
  ConstraintGen gen(seed);
  PropertyReport report;
  for (std::size_t i = 0; i < cases; ++i, ++report.cases) {
    const auto [n, c] = gen.next();
    const Dbm d = Dbm::from_constraint(c, n);
    const Formula f = Formula::from_constraint(c, n);

    // compares both ways: DBM -> formula via fm_equiv, formula -> DBM via cells
    auto same = [&](const Dbm& dz, const Formula& fz) {
      if (dz.is_empty() || fm_is_empty(fz)) return dz.is_empty() == fm_is_empty(fz);
      return fm_equiv(Formula::from_constraint(dz.to_constraint(), n), fz) &&
             Dbm::from_constraint(fz.to_constraint(), n) == dz;
    };

    if (d.is_empty() != fm_is_empty(f)) report.fail("emptiness differs", n, c);
    if (!same(d, f)) report.fail("from_constraint differs", n, c);

    const auto c2 = gen.constraint(n);
    const Dbm d2 = Dbm::from_constraint(c2, n);
    const Formula f2 = Formula::from_constraint(c2, n);
    if (!same(d.intersect(d2), fm_intersect(f, f2))) report.fail("intersect differs", n, c);
    if (d.includes(d2) != fm_includes(f, f2)) report.fail("includes differs", n, c);

    const ClockId r = gen.clock(n);
    const std::vector<ClockId> resets{r};
    if (!same(d.reset(resets), fm_reset(f, resets))) report.fail("reset differs", n, c);
    if (!same(d.elapse(), fm_elapse(f))) report.fail("elapse differs", n, c);

    const auto k = gen.max_constants(n);
    if (!same(d.extrapolate(k), fm_extrapolate(f, k))) report.fail("extrapolate differs", n, c);

    if (n > 1) {
      const ClockId x = gen.clock(n);
      const Dbm projected = d.eliminate(x);
      const Formula fx = fm_intersect(fm_exists(f, std::vector{x}), Formula(n));  // x >= 0 again
      const bool dbm_empty = projected.is_empty();
      bool agree = dbm_empty == fm_is_empty(fx);
      if (agree && !dbm_empty)
        agree = fm_equiv(Formula::from_constraint(lift(projected.to_constraint(), x), n), fx);
      if (!agree) report.fail("existential elimination differs", n, c);
    }
  }
  return report;
}

}  // namespace tazone::test

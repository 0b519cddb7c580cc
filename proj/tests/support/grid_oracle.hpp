#pragma once

// Independent membership oracle for zone operations. Valuations are integer
// ticks of half a time unit. Operations that hide a real parameter (reset,
// elapse, eliminate) are decided exactly: with every other clock fixed, each
// atom restricts the parameter t to a half-line, so the question reduces to
// the emptiness of one interval.

#include "tazone/model.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace tazone::test {

using Ticks = std::vector<std::int64_t>;

inline constexpr std::int64_t kTicksPerUnit = 2;
inline constexpr std::int64_t kGridMax = 11 * kTicksPerUnit;  // grid covers [0, 11]

inline std::int64_t ticks(const Rational& r) {
  const Rational t = r * Rational(kTicksPerUnit);
  if (t.denominator() != 1) throw std::invalid_argument("constant off the tick grid");
  return t.numerator();
}

inline bool compare(std::int64_t lhs, RelOp op, std::int64_t rhs) {
  switch (op) {
    case RelOp::Less: return lhs < rhs;
    case RelOp::LessEq: return lhs <= rhs;
    case RelOp::Equal: return lhs == rhs;
    case RelOp::GreaterEq: return lhs >= rhs;
    case RelOp::Greater: return lhs > rhs;
  }
  return false;
}

inline bool holds(const ClockConstraint& c, const Ticks& u) {
  for (const auto& a : c.atoms) {
    const std::int64_t lhs = u[a.lhs.index] - (a.rhs ? u[a.rhs->index] : 0);
    if (!compare(lhs, a.op, ticks(a.constant))) return false;
  }
  return true;
}

// Set of reals t with lo (<|<=) t (<|<=) hi.
class Interval {
 public:
  // coef * t op rhs, coef in {-1, 0, 1}
  void add(int coef, RelOp op, std::int64_t rhs) {
    if (coef == 0) {
      if (!compare(0, op, rhs)) empty_ = true;
      return;
    }
    if (coef == -1) {
      rhs = -rhs;
      switch (op) {
        case RelOp::Less: op = RelOp::Greater; break;
        case RelOp::LessEq: op = RelOp::GreaterEq; break;
        case RelOp::GreaterEq: op = RelOp::LessEq; break;
        case RelOp::Greater: op = RelOp::Less; break;
        case RelOp::Equal: break;
      }
    } else if (coef != 1) {
      throw std::logic_error("coefficient out of range");
    }
    switch (op) {
      case RelOp::Less: upper(rhs, true); break;
      case RelOp::LessEq: upper(rhs, false); break;
      case RelOp::Equal: upper(rhs, false); lower(rhs, false); break;
      case RelOp::GreaterEq: lower(rhs, false); break;
      case RelOp::Greater: lower(rhs, true); break;
    }
  }

  bool is_empty() const {
    if (empty_) return true;
    if (!has_lo_ || !has_hi_) return false;
    return lo_ > hi_ || (lo_ == hi_ && (lo_strict_ || hi_strict_));
  }

 private:
  void upper(std::int64_t v, bool strict) {
    if (!has_hi_ || v < hi_ || (v == hi_ && strict)) hi_ = v, hi_strict_ = strict;
    has_hi_ = true;
  }
  void lower(std::int64_t v, bool strict) {
    if (!has_lo_ || v > lo_ || (v == lo_ && strict)) lo_ = v, lo_strict_ = strict;
    has_lo_ = true;
  }

  bool empty_ = false;
  bool has_lo_ = false, has_hi_ = false;
  std::int64_t lo_ = 0, hi_ = 0;
  bool lo_strict_ = false, hi_strict_ = false;
};

// Is there a real t >= 0 with base + t * dir a non-negative valuation
// satisfying c?
inline bool exists_along(const ClockConstraint& c, const Ticks& base, const std::vector<int>& dir) {
  Interval t;
  t.add(-1, RelOp::LessEq, 0);
  for (std::size_t x = 0; x < base.size(); ++x) t.add(-dir[x], RelOp::LessEq, base[x]);
  for (const auto& a : c.atoms) {
    const int coef = dir[a.lhs.index] - (a.rhs ? dir[a.rhs->index] : 0);
    const std::int64_t rest = base[a.lhs.index] - (a.rhs ? base[a.rhs->index] : 0);
    t.add(coef, a.op, ticks(a.constant) - rest);
  }
  return !t.is_empty();
}

// u in reset(Z, {r})
inline bool in_reset(const ClockConstraint& z, ClockId r, const Ticks& u) {
  if (u[r.index] != 0) return false;
  std::vector<int> dir(u.size(), 0);
  dir[r.index] = 1;
  return exists_along(z, u, dir);
}

// u in elapse(Z)
inline bool in_elapse(const ClockConstraint& z, const Ticks& u) {
  return exists_along(z, u, std::vector<int>(u.size(), -1));
}

// u (over the clocks other than x) in the projection of Z
inline bool in_projection(const ClockConstraint& z, ClockId x, const Ticks& u) {
  Ticks full = u;
  full.insert(full.begin() + x.index, 0);
  std::vector<int> dir(full.size(), 0);
  dir[x.index] = 1;
  return exists_along(z, full, dir);
}

// Calls f on every valuation of `clocks` clocks with ticks in [0, kGridMax].
inline void for_each_point(std::size_t clocks, const std::function<void(const Ticks&)>& f) {
  Ticks u(clocks, 0);
  while (true) {
    f(u);
    std::size_t i = 0;
    while (i < clocks && ++u[i] > kGridMax) u[i++] = 0;
    if (i == clocks) return;
  }
}

}  // namespace tazone::test

#pragma once

// Zones as conjunctions of difference atoms, with quantifier elimination by
// Fourier-Motzkin. Every atom has the shape  pos - neg < c  or  pos - neg <= c,
// where either side may be the constant zero. Variables 0..n-1 are clocks;
// variable n is the fresh delay symbol used by fm_elapse.

#include "tazone/bound.hpp"
#include "tazone/model.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace tazone {

using Var = std::uint32_t;
inline constexpr Var kZeroVar = std::numeric_limits<Var>::max();

struct LinearAtom {
  Var pos = kZeroVar;
  Var neg = kZeroVar;
  bool strict = false;
  std::int64_t constant = 0;

  Bound bound() const { return strict ? Bound::lt(constant) : Bound::le(constant); }
  friend bool operator==(const LinearAtom&, const LinearAtom&) = default;
};

class Formula {
 public:
  // `true` over `clock_count` clocks (non-negativity atoms only).
  explicit Formula(std::size_t clock_count = 0);

  // Rewrites >=, >, = into < / <= atoms. Throws std::out_of_range on unknown
  // clocks and std::invalid_argument on non-integral constants.
  static Formula from_constraint(const ClockConstraint& c, std::size_t clock_count);

  std::size_t clock_count() const { return clock_count_; }
  const std::vector<LinearAtom>& atoms() const { return atoms_; }
  bool is_ground_false() const { return ground_false_; }

  // Conjoins an atom. Variable-free atoms are evaluated on the spot; an atom
  // on the same ordered pair as an existing one keeps only the tighter bound.
  void add(const LinearAtom& a);

  // Drops every atom mentioning `v` after adding all lower x upper pairings.
  void eliminate(Var v);

  ClockConstraint to_constraint() const;

 private:
  std::size_t clock_count_ = 0;
  std::vector<LinearAtom> atoms_;
  bool ground_false_ = false;
};

Formula fm_exists(const Formula& f, std::span<const ClockId> vars);
Formula fm_reset(const Formula& f, std::span<const ClockId> resets);
Formula fm_elapse(const Formula& f);
Formula fm_intersect(const Formula& a, const Formula& b);
bool fm_is_empty(const Formula& f);

// Tightest bound on pos - neg implied by f (infinity when unbounded). The
// formula must be satisfiable.
Bound fm_tightest(const Formula& f, Var pos, Var neg);

bool fm_entails(const Formula& f, const LinearAtom& a);
bool fm_equiv(const Formula& a, const Formula& b);
// a ⊇ b
bool fm_includes(const Formula& a, const Formula& b);

// Max-constant widening with the same rule as Dbm::extrapolate, computed on
// the tightest pairwise bounds.
Formula fm_extrapolate(const Formula& f, std::span<const std::int64_t> max_constants);

}  // namespace tazone

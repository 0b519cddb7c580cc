#pragma once

#include "tazone/dbm.hpp"
#include "tazone/formula.hpp"
#include "tazone/model.hpp"

#include <concepts>
#include <cstdint>
#include <span>
#include <string_view>

namespace tazone {

// Static capability contract for a zone representation. All operations are
// pure: equal inputs give equivalent outputs.
template <class B>
concept ZoneBackend = requires(const typename B::Zone& z, const ClockConstraint& c, std::size_t n,
                               std::span<const ClockId> clocks, std::span<const std::int64_t> k) {
  { B::name } -> std::convertible_to<std::string_view>;
  { B::from_constraint(c, n) } -> std::same_as<typename B::Zone>;
  { B::intersect(z, z) } -> std::same_as<typename B::Zone>;
  { B::reset(z, clocks) } -> std::same_as<typename B::Zone>;
  { B::elapse(z) } -> std::same_as<typename B::Zone>;
  { B::extrapolate(z, k) } -> std::same_as<typename B::Zone>;
  { B::is_empty(z) } -> std::same_as<bool>;
  { B::includes(z, z) } -> std::same_as<bool>;
  { B::is_equivalent(z, z) } -> std::same_as<bool>;
  { B::to_constraint(z) } -> std::same_as<ClockConstraint>;
};

struct DbmBackend {
  using Zone = Dbm;
  static constexpr std::string_view name = "dbm";

  static Zone from_constraint(const ClockConstraint& c, std::size_t n) { return Dbm::from_constraint(c, n); }
  static Zone intersect(const Zone& a, const Zone& b) { return a.intersect(b); }
  static Zone reset(const Zone& z, std::span<const ClockId> clocks) { return z.reset(clocks); }
  static Zone elapse(const Zone& z) { return z.elapse(); }
  static Zone extrapolate(const Zone& z, std::span<const std::int64_t> k) { return z.extrapolate(k); }
  static bool is_empty(const Zone& z) { return z.is_empty(); }
  static bool includes(const Zone& a, const Zone& b) { return a.includes(b); }
  static bool is_equivalent(const Zone& a, const Zone& b) { return a.is_equivalent(b); }
  static ClockConstraint to_constraint(const Zone& z) { return z.to_constraint(); }
};

struct FormulaBackend {
  using Zone = Formula;
  static constexpr std::string_view name = "formula";

  static Zone from_constraint(const ClockConstraint& c, std::size_t n) { return Formula::from_constraint(c, n); }
  static Zone intersect(const Zone& a, const Zone& b) { return fm_intersect(a, b); }
  static Zone reset(const Zone& z, std::span<const ClockId> clocks) { return fm_reset(z, clocks); }
  static Zone elapse(const Zone& z) { return fm_elapse(z); }
  static Zone extrapolate(const Zone& z, std::span<const std::int64_t> k) { return fm_extrapolate(z, k); }
  static bool is_empty(const Zone& z) { return fm_is_empty(z); }
  static bool includes(const Zone& a, const Zone& b) { return fm_includes(a, b); }
  static bool is_equivalent(const Zone& a, const Zone& b) { return fm_equiv(a, b); }
  static ClockConstraint to_constraint(const Zone& z) { return z.to_constraint(); }
};

static_assert(ZoneBackend<DbmBackend>);
static_assert(ZoneBackend<FormulaBackend>);

}  // namespace tazone

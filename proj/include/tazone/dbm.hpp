#pragma once

// Difference-bound matrices.
//
// Index 0 is the constant-zero reference clock; clock with ordinal c lives at
// index c + 1. Cell (i, j) bounds x_i - x_j. Every public operation returns a
// canonical value (closed under shortest paths) or the single empty marker.

#include "tazone/bound.hpp"
#include "tazone/model.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tazone {

class Dbm {
 public:
  // Universal non-negative zone over `clock_count` clocks.
  explicit Dbm(std::size_t clock_count = 0);

  static Dbm universal(std::size_t clock_count) { return Dbm(clock_count); }
  static Dbm empty(std::size_t clock_count);

  // Throws std::out_of_range when an atom mentions a clock >= clock_count and
  // std::invalid_argument on non-integral constants.
  static Dbm from_constraint(const ClockConstraint& c, std::size_t clock_count);

  // Builds from raw cells (row-major, (n+1)^2 entries) and closes.
  static Dbm from_cells(std::size_t clock_count, std::vector<Bound> cells);

  std::size_t clock_count() const { return dim_ - 1; }
  std::size_t dimension() const { return dim_; }
  const Bound& at(std::size_t i, std::size_t j) const { return cells_[i * dim_ + j]; }

  bool is_empty() const { return empty_; }

  // Recloses a matrix. Public values are always closed already, so this is
  // the identity on them.
  Dbm canonicalize() const;

  Dbm intersect(const Dbm& other) const;
  Dbm reset(std::span<const ClockId> clocks) const;
  Dbm elapse() const;
  Dbm extrapolate(std::span<const std::int64_t> max_constants) const;
  Dbm eliminate(ClockId clock) const;

  // this ⊇ other
  bool includes(const Dbm& other) const;
  bool is_equivalent(const Dbm& other) const { return *this == other; }

  bool contains(const ClockValuation& v) const;

  ClockConstraint to_constraint() const;
  std::string to_string(const std::vector<std::string>& clock_names) const;

  friend bool operator==(const Dbm& a, const Dbm& b);

 private:
  Bound& cell(std::size_t i, std::size_t j) { return cells_[i * dim_ + j]; }
  void tighten(std::size_t i, std::size_t j, Bound b);
  void close();
  void mark_empty();
  void require_same_shape(const Dbm& other) const;

  std::size_t dim_ = 1;
  std::vector<Bound> cells_;
  bool empty_ = false;
};

}  // namespace tazone

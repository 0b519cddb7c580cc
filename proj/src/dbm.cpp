#include "tazone/dbm.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tazone {

namespace {

std::int64_t integral(const Rational& r) {
  if (r.denominator() != 1) throw std::invalid_argument("DBM constants must be integral; normalize the network first");
  return r.numerator();
}

std::size_t index_of(ClockId c, std::size_t clock_count) {
  if (c.index >= clock_count) throw std::out_of_range("unknown clock ordinal " + std::to_string(c.index));
  return c.index + 1;
}

bool within(const Rational& diff, const Bound& b) {
  if (b.is_infinity()) return true;
  return b.is_strict() ? diff < b.value() : diff <= b.value();
}

}  // namespace

Dbm::Dbm(std::size_t clock_count) : dim_(clock_count + 1), cells_(dim_ * dim_, Bound::infinity()) {
  for (std::size_t i = 0; i < dim_; ++i) {
    cell(i, i) = Bound::zero();
    cell(0, i) = Bound::zero();
  }
}

Dbm Dbm::empty(std::size_t clock_count) {
  Dbm d(clock_count);
  d.mark_empty();
  return d;
}

Dbm Dbm::from_constraint(const ClockConstraint& c, std::size_t clock_count) {
  Dbm d(clock_count);
  for (const auto& a : c.atoms) {
    const std::size_t x = index_of(a.lhs, clock_count);
    const std::size_t y = a.rhs ? index_of(*a.rhs, clock_count) : 0;
    const std::int64_t k = integral(a.constant);
    switch (a.op) {
      case RelOp::Less: d.tighten(x, y, Bound::lt(k)); break;
      case RelOp::LessEq: d.tighten(x, y, Bound::le(k)); break;
      case RelOp::Equal:
        d.tighten(x, y, Bound::le(k));
        d.tighten(y, x, Bound::le(-k));
        break;
      case RelOp::GreaterEq: d.tighten(y, x, Bound::le(-k)); break;
      case RelOp::Greater: d.tighten(y, x, Bound::lt(-k)); break;
    }
  }
  d.close();
  return d;
}

Dbm Dbm::from_cells(std::size_t clock_count, std::vector<Bound> cells) {
  Dbm d(clock_count);
  if (cells.size() != d.cells_.size()) throw std::invalid_argument("cell count does not match clock count");
  d.cells_ = std::move(cells);
  d.close();
  return d;
}

void Dbm::tighten(std::size_t i, std::size_t j, Bound b) {
  Bound& c = cell(i, j);
  if (b < c) c = b;
}

void Dbm::mark_empty() {
  std::fill(cells_.begin(), cells_.end(), Bound::lt(0));
  empty_ = true;
}

void Dbm::close() {
  if (empty_) return;
  for (std::size_t k = 0; k < dim_; ++k) {
    for (std::size_t i = 0; i < dim_; ++i) {
      const Bound ik = at(i, k);
      if (ik.is_infinity()) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        const Bound kj = at(k, j);
        if (kj.is_infinity()) continue;
        tighten(i, j, ik + kj);
      }
      if (at(i, i) < Bound::zero()) {
        mark_empty();
        return;
      }
    }
  }
}

void Dbm::require_same_shape(const Dbm& other) const {
  if (dim_ != other.dim_) throw std::invalid_argument("DBM clock count mismatch");
}

Dbm Dbm::canonicalize() const {
  Dbm d = *this;
  d.close();
  return d;
}

Dbm Dbm::intersect(const Dbm& other) const {
  require_same_shape(other);
  if (empty_) return *this;
  if (other.empty_) return other;
  Dbm d = *this;
  for (std::size_t i = 0; i < cells_.size(); ++i) d.cells_[i] = std::min(d.cells_[i], other.cells_[i]);
  d.close();
  return d;
}

Dbm Dbm::reset(std::span<const ClockId> clocks) const {
  Dbm d = *this;
  for (ClockId c : clocks) {
    const std::size_t r = index_of(c, clock_count());
    if (d.empty_) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      d.cell(r, j) = d.at(0, j);
      d.cell(j, r) = d.at(j, 0);
    }
    d.cell(r, r) = Bound::zero();
  }
  return d;
}

Dbm Dbm::elapse() const {
  Dbm d = *this;
  if (d.empty_) return d;
  for (std::size_t i = 1; i < dim_; ++i) d.cell(i, 0) = Bound::infinity();
  return d;
}

Dbm Dbm::extrapolate(std::span<const std::int64_t> max_constants) const {
  if (max_constants.size() != clock_count()) throw std::invalid_argument("max constant count mismatch");
  Dbm d = *this;
  if (d.empty_) return d;
  auto k = [&](std::size_t i) { return i == 0 ? std::int64_t{0} : max_constants[i - 1]; };
  bool changed = false;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      if (i == j) continue;
      Bound& c = d.cell(i, j);
      if (c.is_infinity()) continue;
      if (c > Bound::le(k(i))) {
        c = Bound::infinity();
        changed = true;
      } else if (c < Bound::lt(-k(j))) {
        c = Bound::lt(-k(j));
        changed = true;
      }
    }
  }
  if (changed) d.close();
  return d;
}

Dbm Dbm::eliminate(ClockId clock) const {
  const std::size_t x = index_of(clock, clock_count());
  Dbm d(clock_count() - 1);
  if (empty_) {
    d.mark_empty();
    return d;
  }
  std::size_t di = 0;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (i == x) continue;
    std::size_t dj = 0;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (j == x) continue;
      d.cell(di, dj++) = at(i, j);
    }
    ++di;
  }
  return d;
}

bool Dbm::includes(const Dbm& other) const {
  require_same_shape(other);
  if (other.empty_) return true;
  if (empty_) return false;
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (other.cells_[i] > cells_[i]) return false;
  return true;
}

bool Dbm::contains(const ClockValuation& v) const {
  if (v.size() != clock_count()) throw std::invalid_argument("valuation size mismatch");
  if (empty_) return false;
  auto value = [&](std::size_t i) { return i == 0 ? Rational(0) : v[i - 1]; };
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      if (i != j && !within(value(i) - value(j), at(i, j))) return false;
  return true;
}

ClockConstraint Dbm::to_constraint() const {
  ClockConstraint c;
  if (empty_) {
    if (clock_count() == 0) throw std::logic_error("empty zone over no clocks has no constraint form");
    c.atoms.push_back(Atom{ClockId{0}, std::nullopt, RelOp::Less, 0});
    return c;
  }
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      const Bound& b = at(i, j);
      if (i == j || b.is_infinity()) continue;
      if (i == 0) {
        if (b == Bound::zero()) continue;  // non-negativity is implicit
        c.atoms.push_back(Atom{ClockId{static_cast<std::uint32_t>(j - 1)}, std::nullopt,
                               b.is_strict() ? RelOp::Greater : RelOp::GreaterEq, -b.value()});
        continue;
      }
      Atom a{ClockId{static_cast<std::uint32_t>(i - 1)}, std::nullopt, b.is_strict() ? RelOp::Less : RelOp::LessEq,
             b.value()};
      if (j != 0) a.rhs = ClockId{static_cast<std::uint32_t>(j - 1)};
      c.atoms.push_back(a);
    }
  }
  return c;
}

std::string Dbm::to_string(const std::vector<std::string>& clock_names) const {
  if (empty_) return "false";
  std::ostringstream os;
  for (const auto& a : to_constraint().atoms) {
    os << clock_names.at(a.lhs.index);
    if (a.rhs) os << " - " << clock_names.at(a.rhs->index);
    os << tazone::to_string(a.op) << a.constant.numerator() << " ^ ";
  }
  os << "true";
  return os.str();
}

bool operator==(const Dbm& a, const Dbm& b) {
  if (a.dim_ != b.dim_) throw std::invalid_argument("DBM clock count mismatch");
  if (a.empty_ || b.empty_) return a.empty_ == b.empty_;
  return a.cells_ == b.cells_;
}

}  // namespace tazone

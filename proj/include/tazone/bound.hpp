#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace tazone {

// A DBM entry: bounds a clock difference by `value` with `<` (strict) or `<=`.
// Infinity is a dedicated sentinel and is always non-strict.
class Bound {
 public:
  static constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max();

  constexpr Bound() = default;

  static constexpr Bound le(std::int64_t v) { return Bound(v, false); }
  static constexpr Bound lt(std::int64_t v) { return Bound(v, true); }
  static constexpr Bound zero() { return Bound(0, false); }
  static constexpr Bound infinity() { return Bound(kInfinity, false); }

  constexpr std::int64_t value() const { return value_; }
  constexpr bool is_strict() const { return strict_; }
  constexpr bool is_infinity() const { return value_ == kInfinity; }

  friend constexpr bool operator==(const Bound&, const Bound&) = default;

  // (a,<) < (a,<=) < (b,.) for a < b.
  friend constexpr std::strong_ordering operator<=>(const Bound& a, const Bound& b) {
    if (a.value_ != b.value_) return a.value_ <=> b.value_;
    if (a.strict_ == b.strict_) return std::strong_ordering::equal;
    return a.strict_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }

  // Throws std::overflow_error instead of wrapping.
  friend Bound operator+(const Bound& a, const Bound& b) {
    if (a.is_infinity() || b.is_infinity()) return infinity();
    std::int64_t sum = 0;
    if (__builtin_add_overflow(a.value_, b.value_, &sum) || sum == kInfinity)
      throw std::overflow_error("bound arithmetic overflow");
    return Bound(sum, a.strict_ || b.strict_);
  }

  std::string to_string() const {
    if (is_infinity()) return "<inf";
    return (strict_ ? "<" : "<=") + std::to_string(value_);
  }

 private:
  constexpr Bound(std::int64_t v, bool strict) : value_(v), strict_(v == kInfinity ? false : strict) {}

  std::int64_t value_ = 0;
  bool strict_ = false;
};

}  // namespace tazone

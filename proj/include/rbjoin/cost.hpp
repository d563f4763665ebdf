#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace rbjoin {

/// Raised when a cost component would exceed the range of a 64-bit natural.
class CostOverflow : public std::overflow_error {
public:
  using std::overflow_error::overflow_error;
};

namespace detail {
inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out))
    throw CostOverflow("cost counter overflow");
  return out;
}
}  // namespace detail

/// Abstract step count, split into sequential work and idealized parallel span.
struct Cost {
  std::uint64_t work = 0;
  std::uint64_t span = 0;

  friend bool operator==(const Cost&, const Cost&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Cost& c) {
    return os << "(" << c.work << "," << c.span << ")";
  }
};

constexpr Cost zero() { return {}; }

/// A step of `c` charges equally to work and span.
constexpr Cost step(std::uint64_t c) { return {c, c}; }

/// Sequential composition: both components add.
inline Cost seq(const Cost& a, const Cost& b) {
  return {detail::checked_add(a.work, b.work), detail::checked_add(a.span, b.span)};
}

/// Parallel composition: work adds, span takes the longer branch.
inline Cost par(const Cost& a, const Cost& b) {
  return {detail::checked_add(a.work, b.work), std::max(a.span, b.span)};
}

/// A value together with the cost charged while producing it.
template <typename V>
struct Charged {
  V value;
  Cost cost;
};

template <typename V>
Charged<std::decay_t<V>> charge(V&& value, Cost cost = {}) {
  return {std::forward<V>(value), cost};
}

}  // namespace rbjoin

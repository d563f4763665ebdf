#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>

#include "rbjoin/tree.hpp"

// Closed-form cost and height bounds for join and sum, expressed both in
// black heights and in tree sizes. All arithmetic is signed so that the
// lower black-height bound of the empty tree (-1) stays exact.
namespace rbjoin::bounds {

/// ceil(log2(1 + n)).
inline std::int64_t ceil_log2_1p(std::uint64_t n) { return std::bit_width(n); }

/// floor((ceil(log2(1 + n)) - 1) / 2), the least black height a tree of
/// n keys can have.
inline std::int64_t min_black_height(std::uint64_t n) {
  const std::int64_t c = ceil_log2_1p(n);
  return c == 0 ? -1 : (c - 1) / 2;
}

/// Greatest black height a tree of n keys can have.
inline std::int64_t max_black_height(std::uint64_t n) { return ceil_log2_1p(n); }

/// join_right cost bound: 1 + 2(n1 - n2) for a red t1, 2(n1 - n2) for black.
inline std::int64_t join_right(Color c1, unsigned n1, unsigned n2) {
  const std::int64_t d = std::int64_t(n1) - std::int64_t(n2);
  return (c1 == Color::Red ? 1 : 0) + 2 * d;
}

/// join cost bound in black heights: 1 + 2(max - min).
inline std::int64_t join_bh(unsigned n1, unsigned n2) {
  return 1 + 2 * (std::int64_t(std::max(n1, n2)) - std::int64_t(std::min(n1, n2)));
}

/// join cost bound in sizes:
/// 1 + 2(ceil(log2(1 + max|t|)) - floor((ceil(log2(1 + min|t|)) - 1) / 2)).
inline std::int64_t join_size(std::uint64_t s1, std::uint64_t s2) {
  return 1 + 2 * (ceil_log2_1p(std::max(s1, s2)) - min_black_height(std::min(s1, s2)));
}

/// sum span bound in black height: 2n for a black root, 1 + 2n otherwise.
inline std::int64_t sum_span_bh(Color c, unsigned n) {
  return (c == Color::Red ? 1 : 0) + 2 * std::int64_t(n);
}

/// sum span bound in size: 1 + 2 ceil(log2(1 + |t|)).
inline std::int64_t sum_span_size(std::uint64_t n) { return 1 + 2 * ceil_log2_1p(n); }

}  // namespace rbjoin::bounds

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rbjoin/tree.hpp"

// Reference models and generators used to check the tree library by brute
// force. The list models below deliberately share no code with the trees.
namespace rbjoin::oracle {

using Key = std::int64_t;
using Tree64 = Tree<Key>;

class LimitExceeded : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

inline constexpr unsigned kDefaultMaxBlackHeight = 2;

/// SplitMix64. Small, fast, and fully specified, so seeded runs reproduce
/// bit-for-bit on any platform.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n), n > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = -n % n;
    for (;;) {
      const std::uint64_t x = next();
      if (x >= threshold) return x % n;
    }
  }

  /// An independent generator derived from this one.
  SplitMix64 split() { return SplitMix64(next()); }

private:
  std::uint64_t state_;
};

/// Keys handed out in in-order position: first, first + stride, ...
struct KeyRule {
  Key first = 0;
  Key stride = 1;
};

/// Number of tree shapes with the given root color and black height.
std::uint64_t shape_count(Color color, unsigned black_height);

/// Visits every tree with the given root color (both colors if unset) and
/// black height, keys assigned by `keys`. Black-rooted trees come first;
/// within a color, trees are ordered as `shape_at` numbers them.
void for_each_tree(std::optional<Color> color, unsigned black_height,
                   const std::function<void(const Tree64&)>& visit, KeyRule keys = {},
                   unsigned max_black_height = kDefaultMaxBlackHeight);

std::vector<Tree64> enumerate(std::optional<Color> color, unsigned black_height,
                              KeyRule keys = {},
                              unsigned max_black_height = kDefaultMaxBlackHeight);

/// The index-th shape (0-based) of the given color and black height.
Tree64 shape_at(Color color, unsigned black_height, std::uint64_t index, KeyRule keys = {});

/// Deterministic valid tree over keys 0..size-1, built by inserting a seeded
/// permutation of the keys one at a time into the empty sequence.
Tree64 random_tree(std::size_t size, std::uint64_t seed);

/// Deterministic valid tree over keys 0..size-1, built by joining randomly
/// split halves bottom-up. Linear time, so it scales to large suites; the
/// shapes differ from those `random_tree` produces.
Tree64 random_joined_tree(std::size_t size, std::uint64_t seed);

/// Size drawn log-uniformly from [1, max_size]: a bit length first, then a
/// value of that bit length.
std::size_t log_uniform_size(SplitMix64& rng, std::size_t max_size);

/// Same shape and colors, keys rewritten by `f`.
Tree64 relabel(const Tree64& t, const std::function<Key(Key)>& f);

/// Every enumerated tree with black height <= max_bh. When a class (color,
/// bh) has more than `class_cap` members, `class_cap` of them are drawn
/// evenly spaced by index instead. Classes are emitted bh-major, black first.
std::vector<Tree64> population(unsigned max_bh, std::uint64_t class_cap);

// --- List models ------------------------------------------------------------

template <typename K>
std::vector<K> list_join(const std::vector<K>& l1, const K& a, const std::vector<K>& l2) {
  std::vector<K> out(l1);
  out.push_back(a);
  out.insert(out.end(), l2.begin(), l2.end());
  return out;
}

template <typename K>
K list_sum(const std::vector<K>& l) {
  K total{0};
  for (const K& x : l) total += x;
  return total;
}

template <typename K, typename F>
auto list_map(const std::vector<K>& l, F f) {
  std::vector<std::decay_t<decltype(f(l.front()))>> out;
  for (const K& x : l) out.push_back(f(x));
  return out;
}

template <typename K>
std::vector<K> list_reverse(std::vector<K> l) {
  std::reverse(l.begin(), l.end());
  return l;
}

template <typename K>
struct ListSplit {
  std::vector<K> left;
  std::optional<K> middle;
  std::vector<K> right;

  friend bool operator==(const ListSplit&, const ListSplit&) = default;
};

/// Sorted input.
template <typename K>
ListSplit<K> list_split(const std::vector<K>& l, const K& a) {
  ListSplit<K> out;
  for (const K& x : l) {
    if (x < a) out.left.push_back(x);
    else if (a < x) out.right.push_back(x);
    else out.middle = x;
  }
  return out;
}

/// Sorted input; result sorted with duplicates removed.
template <typename K>
std::vector<K> list_insert(const std::vector<K>& l, const K& a) {
  std::vector<K> out;
  bool placed = false;
  for (const K& x : l) {
    if (!placed && a < x) {
      out.push_back(a);
      placed = true;
    }
    if (!(x < a) && !(a < x)) placed = true;
    out.push_back(x);
  }
  if (!placed) out.push_back(a);
  return out;
}

/// Sorted inputs; merge with duplicates removed.
template <typename K>
std::vector<K> list_union(const std::vector<K>& l1, const std::vector<K>& l2) {
  std::vector<K> out;
  std::size_t i = 0, j = 0;
  while (i < l1.size() || j < l2.size()) {
    if (j == l2.size() || (i < l1.size() && l1[i] < l2[j])) out.push_back(l1[i++]);
    else if (i == l1.size() || l2[j] < l1[i]) out.push_back(l2[j++]);
    else {
      out.push_back(l1[i++]);
      ++j;
    }
  }
  return out;
}

}  // namespace rbjoin::oracle

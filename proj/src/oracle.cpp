#include "rbjoin/oracle.hpp"

#include <bit>
#include <numeric>
#include <string>

#include "rbjoin/sequence.hpp"

namespace rbjoin::oracle {

namespace {

Key key_at(const KeyRule& keys, std::size_t position) {
  return keys.first + keys.stride * static_cast<Key>(position);
}

void each(Color color, unsigned bh, Key first, Key stride,
          const std::function<void(const Tree64&)>& visit);

void each_any(unsigned bh, Key first, Key stride, const std::function<void(const Tree64&)>& visit) {
  each(Color::Black, bh, first, stride, visit);
  each(Color::Red, bh, first, stride, visit);
}

void each(Color color, unsigned bh, Key first, Key stride,
          const std::function<void(const Tree64&)>& visit) {
  if (color == Color::Red) {
    each(Color::Black, bh, first, stride, [&](const Tree64& l) {
      const Key k = first + stride * static_cast<Key>(l.size());
      each(Color::Black, bh, k + stride, stride,
           [&](const Tree64& r) { visit(Tree64::red(l, k, r)); });
    });
    return;
  }
  if (bh == 0) {
    visit(Tree64{});
    return;
  }
  each_any(bh - 1, first, stride, [&](const Tree64& l) {
    const Key k = first + stride * static_cast<Key>(l.size());
    each_any(bh - 1, k + stride, stride, [&](const Tree64& r) { visit(Tree64::black(l, k, r)); });
  });
}

void check_limit(unsigned bh, unsigned max_bh) {
  if (bh > max_bh)
    throw LimitExceeded("enumeration black height " + std::to_string(bh) +
                        " exceeds configured limit " + std::to_string(max_bh));
}

}  // namespace

std::uint64_t shape_count(Color color, unsigned black_height) {
  std::uint64_t black = 1;
  for (unsigned h = 0;; ++h) {
    const std::uint64_t red = black * black;
    if (h == black_height) return color == Color::Black ? black : red;
    black = (black + red) * (black + red);
  }
}

void for_each_tree(std::optional<Color> color, unsigned black_height,
                   const std::function<void(const Tree64&)>& visit, KeyRule keys,
                   unsigned max_black_height) {
  check_limit(black_height, max_black_height);
  if (color) each(*color, black_height, keys.first, keys.stride, visit);
  else each_any(black_height, keys.first, keys.stride, visit);
}

std::vector<Tree64> enumerate(std::optional<Color> color, unsigned black_height, KeyRule keys,
                              unsigned max_black_height) {
  std::vector<Tree64> out;
  for_each_tree(color, black_height, [&](const Tree64& t) { out.push_back(t); }, keys,
                max_black_height);
  return out;
}

Tree64 shape_at(Color color, unsigned black_height, std::uint64_t index, KeyRule keys) {
  if (index >= shape_count(color, black_height))
    throw std::out_of_range("shape index " + std::to_string(index) + " out of range");
  if (color == Color::Red) {
    const std::uint64_t blacks = shape_count(Color::Black, black_height);
    Tree64 l = shape_at(Color::Black, black_height, index / blacks, keys);
    const Key k = key_at(keys, l.size());
    Tree64 r = shape_at(Color::Black, black_height, index % blacks, {k + keys.stride, keys.stride});
    return Tree64::red(std::move(l), k, std::move(r));
  }
  if (black_height == 0) return {};
  const unsigned h = black_height - 1;
  const std::uint64_t blacks = shape_count(Color::Black, h);
  const std::uint64_t all = blacks + shape_count(Color::Red, h);
  auto child = [&](std::uint64_t i, KeyRule rule) {
    return i < blacks ? shape_at(Color::Black, h, i, rule)
                      : shape_at(Color::Red, h, i - blacks, rule);
  };
  Tree64 l = child(index / all, keys);
  const Key k = key_at(keys, l.size());
  Tree64 r = child(index % all, {k + keys.stride, keys.stride});
  return Tree64::black(std::move(l), k, std::move(r));
}

Tree64 random_tree(std::size_t size, std::uint64_t seed) {
  std::vector<Key> keys(size);
  std::iota(keys.begin(), keys.end(), Key{0});
  SplitMix64 rng(seed);
  for (std::size_t i = size; i > 1; --i) std::swap(keys[i - 1], keys[rng.below(i)]);
  Seq<Key> s;
  for (Key k : keys) s = insert(s, k, SortCheck::Trust).value;
  return s.tree();
}

namespace {
Tree64 joined(Key first, std::size_t n, SplitMix64& rng) {
  if (n == 0) return {};
  const std::size_t left = rng.below(n);
  Tree64 l = joined(first, left, rng);
  Tree64 r = joined(first + static_cast<Key>(left) + 1, n - left - 1, rng);
  return join(l, first + static_cast<Key>(left), r).value;
}
}  // namespace

Tree64 random_joined_tree(std::size_t size, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return joined(0, size, rng);
}

std::size_t log_uniform_size(SplitMix64& rng, std::size_t max_size) {
  if (max_size <= 1) return max_size;
  const unsigned bits = std::bit_width(max_size);
  const unsigned k = 1 + static_cast<unsigned>(rng.below(bits));
  const std::size_t low = std::size_t{1} << (k - 1);
  return std::min(max_size, low + rng.below(low));
}

Tree64 relabel(const Tree64& t, const std::function<Key(Key)>& f) {
  if (t.is_leaf()) return t;
  return Tree64::unchecked(t.color(), relabel(t.left(), f), f(t.key()), relabel(t.right(), f));
}

std::vector<Tree64> population(unsigned max_bh, std::uint64_t class_cap) {
  std::vector<Tree64> out;
  for (unsigned bh = 0; bh <= max_bh; ++bh) {
    for (Color c : {Color::Black, Color::Red}) {
      const std::uint64_t n = shape_count(c, bh);
      if (n <= class_cap) {
        for_each_tree(c, bh, [&](const Tree64& t) { out.push_back(t); }, {}, max_bh);
        continue;
      }
      for (std::uint64_t i = 0; i < class_cap; ++i)
        out.push_back(shape_at(c, bh, i * n / class_cap));
    }
  }
  return out;
}

}  // namespace rbjoin::oracle

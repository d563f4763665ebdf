#include <gtest/gtest.h>

#include <set>

#include "rbjoin/oracle.hpp"
#include "support.hpp"

namespace rbjoin::testing {
namespace {

// Counts by brute force: every (color, bh) class is built from the classes
// one level down, counting subtrees rather than trees.
std::pair<std::uint64_t, std::uint64_t> counts_by_recurrence(unsigned bh) {
  std::uint64_t b = 1, r = 1;  // bh 0: the leaf, and red over two leaves
  for (unsigned h = 0; h < bh; ++h) {
    const std::uint64_t any = b + r;
    b = any * any;
    r = b * b;
  }
  return {b, r};
}

TEST(Enumerate, Counts) {
  EXPECT_EQ(oracle::shape_count(Color::Black, 0), 1u);
  EXPECT_EQ(oracle::shape_count(Color::Black, 1), 4u);
  EXPECT_EQ(oracle::shape_count(Color::Red, 1), 16u);
  EXPECT_EQ(oracle::shape_count(Color::Black, 2), 400u);
  for (unsigned bh = 0; bh <= 2; ++bh) {
    const auto [b, r] = counts_by_recurrence(bh);
    EXPECT_EQ(oracle::enumerate(Color::Black, bh).size(), b);
    EXPECT_EQ(oracle::enumerate(Color::Red, bh).size(), r);
    EXPECT_EQ(oracle::enumerate(std::nullopt, bh).size(), b + r);
  }
}

TEST(Enumerate, TreesAreValidDistinctAndKeyed) {
  for (unsigned bh = 0; bh <= 2; ++bh) {
    for (Color c : {Color::Black, Color::Red}) {
      std::set<std::string> seen;
      oracle::for_each_tree(c, bh, [&](const T& t) {
        ASSERT_FALSE(validate(t));
        ASSERT_EQ(t.color(), bh == 0 && c == Color::Black ? Color::Black : c);
        ASSERT_EQ(t.black_height(), bh);
        const auto keys = in_order(t);
        for (std::size_t i = 0; i < keys.size(); ++i) ASSERT_EQ(keys[i], static_cast<Key>(i));
        seen.insert(text(t));
      });
      EXPECT_EQ(seen.size(), oracle::shape_count(c, bh));
    }
  }
}

TEST(Enumerate, KeyRule) {
  oracle::for_each_tree(std::nullopt, 1, [](const T& t) {
    const auto keys = in_order(t);
    for (std::size_t i = 0; i < keys.size(); ++i) ASSERT_EQ(keys[i], 10 + 3 * static_cast<Key>(i));
  }, {10, 3});
}

TEST(Enumerate, LimitExceeded) {
  EXPECT_THROW(oracle::enumerate(std::nullopt, 3), oracle::LimitExceeded);
  EXPECT_EQ(oracle::enumerate(Color::Black, 0, {}, 0).size(), 1u);
  EXPECT_THROW(oracle::enumerate(Color::Black, 1, {}, 0), oracle::LimitExceeded);
}

TEST(ShapeAt, MatchesEnumerationOrder) {
  for (unsigned bh = 0; bh <= 2; ++bh)
    for (Color c : {Color::Black, Color::Red}) {
      std::uint64_t i = 0;
      oracle::for_each_tree(c, bh, [&](const T& t) {
        if (c == Color::Black || bh < 2 || i % 97 == 0) {
          ASSERT_EQ(oracle::shape_at(c, bh, i), t);
        }
        ++i;
      });
    }
  EXPECT_THROW(oracle::shape_at(Color::Black, 1, 4), std::out_of_range);
}

TEST(Population, ClassesAndCap) {
  EXPECT_EQ(oracle::population(1, 1000).size(), 22u);
  const auto p = oracle::population(2, 1000);
  EXPECT_EQ(p.size(), 2u + 20u + 400u + 1000u);
  EXPECT_EQ(oracle::population(2, 10).size(), 2u + 14u + 20u);
}

TEST(RandomTree, SizesAndValidity) {
  EXPECT_TRUE(oracle::random_tree(0, 5).is_leaf());
  for (std::size_t n : {1, 10, 100, 100000}) {
    const T t = oracle::random_tree(n, 42);
    EXPECT_EQ(t.size(), n);
    EXPECT_FALSE(validate(t));
    const auto keys = in_order(t);
    for (std::size_t i = 0; i < n; ++i) ASSERT_EQ(keys[i], static_cast<Key>(i));
  }
}

TEST(RandomTree, Deterministic) {
  for (std::size_t n : {0, 1, 10, 100, 5000}) {
    EXPECT_EQ(text(oracle::random_tree(n, 9)), text(oracle::random_tree(n, 9)));
    EXPECT_EQ(text(oracle::random_joined_tree(n, 9)), text(oracle::random_joined_tree(n, 9)));
  }
  EXPECT_NE(text(oracle::random_tree(100, 1)), text(oracle::random_tree(100, 2)));
}

TEST(RandomJoinedTree, SizesAndValidity) {
  for (std::size_t n : {0, 1, 2, 10, 1000, 100000}) {
    const T t = oracle::random_joined_tree(n, 3);
    EXPECT_EQ(t.size(), n);
    EXPECT_FALSE(validate(t));
  }
}

// Reference values computed with a separate big-integer implementation.
TEST(SplitMix64, KnownSequence) {
  oracle::SplitMix64 rng(1234567);
  EXPECT_EQ(rng.next(), 6457827717110365317ULL);
  EXPECT_EQ(rng.next(), 3203168211198807973ULL);
}

TEST(SplitMix64, BelowStaysInRange) {
  oracle::SplitMix64 rng(1);
  std::vector<int> hits(7);
  for (int i = 0; i < 7000; ++i) ++hits[rng.below(7)];
  for (int h : hits) EXPECT_GT(h, 800);
}

TEST(LogUniformSize, Range) {
  oracle::SplitMix64 rng(5);
  for (int i = 0; i < 10000; ++i) {
    const auto n = oracle::log_uniform_size(rng, 100000);
    ASSERT_GE(n, 1u);
    ASSERT_LE(n, 100000u);
  }
}

TEST(ListModels, Examples) {
  EXPECT_EQ(oracle::list_join<Key>({}, 4, {}), std::vector<Key>{4});
  EXPECT_EQ(oracle::list_join<Key>({1}, 2, {3}), (std::vector<Key>{1, 2, 3}));
  EXPECT_EQ(oracle::list_union<Key>({1, 2}, {2, 3}), (std::vector<Key>{1, 2, 3}));
  EXPECT_EQ(oracle::list_union<Key>({}, {2, 3}), (std::vector<Key>{2, 3}));
  EXPECT_EQ(oracle::list_sum<Key>({1, 2, 3}), 6);
  EXPECT_EQ(oracle::list_reverse<Key>({1, 2, 3}), (std::vector<Key>{3, 2, 1}));
  EXPECT_EQ(oracle::list_insert<Key>({1, 3}, 2), (std::vector<Key>{1, 2, 3}));
  EXPECT_EQ(oracle::list_insert<Key>({1, 3}, 3), (std::vector<Key>{1, 3}));
  EXPECT_EQ(oracle::list_insert<Key>({1, 3}, 9), (std::vector<Key>{1, 3, 9}));

  const auto s = oracle::list_split<Key>({1, 3, 5}, 3);
  EXPECT_EQ(s.left, std::vector<Key>{1});
  EXPECT_EQ(s.middle, std::optional<Key>{3});
  EXPECT_EQ(s.right, std::vector<Key>{5});
}

}  // namespace
}  // namespace rbjoin::testing

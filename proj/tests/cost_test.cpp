#include <gtest/gtest.h>

#include <limits>
#include <memory>
#include <random>

#include "rbjoin/cost.hpp"

namespace rbjoin {
namespace {

TEST(Cost, Identities) {
  EXPECT_EQ(zero(), (Cost{0, 0}));
  const Cost c{3, 2};
  EXPECT_EQ(seq(zero(), c), c);
  EXPECT_EQ(seq(c, zero()), c);
  EXPECT_EQ(par(zero(), c), c);
  EXPECT_EQ(par(c, zero()), c);
}

TEST(Cost, Steps) {
  EXPECT_EQ(step(1), (Cost{1, 1}));
  EXPECT_EQ(step(0), zero());
  EXPECT_EQ(seq(step(1), step(1)), (Cost{2, 2}));
}

TEST(Cost, Composition) {
  EXPECT_EQ(seq({1, 1}, {2, 2}), (Cost{3, 3}));
  EXPECT_EQ(seq({5, 2}, {0, 0}), (Cost{5, 2}));
  EXPECT_EQ(seq({3, 1}, {4, 2}), (Cost{7, 3}));
  EXPECT_EQ(par({1, 1}, {1, 1}), (Cost{2, 1}));
  EXPECT_EQ(par({0, 0}, {5, 3}), (Cost{5, 3}));
  EXPECT_EQ(par({4, 2}, {6, 5}), (Cost{10, 5}));
}

TEST(Cost, AlgebraOverSmallGrid) {
  std::vector<Cost> grid;
  for (std::uint64_t w = 0; w <= 5; ++w)
    for (std::uint64_t s = 0; s <= 5; ++s) grid.push_back({w, s});
  for (const Cost& a : grid)
    for (const Cost& b : grid) {
      EXPECT_EQ(par(a, b), par(b, a));
      for (const Cost& c : grid) {
        ASSERT_EQ(seq(seq(a, b), c), seq(a, seq(b, c)));
        ASSERT_EQ(par(par(a, b), c), par(a, par(b, c)));
      }
    }
}

// Random composition trees over unit steps: span never exceeds work, and the
// work is the number of leaves however the tree is composed.
struct Expr {
  bool leaf = true;
  bool parallel = false;
  std::unique_ptr<Expr> l, r;
};

std::unique_ptr<Expr> random_expr(std::mt19937_64& rng, int depth, std::uint64_t& leaves) {
  auto e = std::make_unique<Expr>();
  if (depth == 0 || rng() % 3 == 0) {
    ++leaves;
    return e;
  }
  e->leaf = false;
  e->parallel = rng() % 2;
  e->l = random_expr(rng, depth - 1, leaves);
  e->r = random_expr(rng, depth - 1, leaves);
  return e;
}

Cost eval(const Expr& e, bool all_seq) {
  if (e.leaf) return step(1);
  const Cost a = eval(*e.l, all_seq), b = eval(*e.r, all_seq);
  return e.parallel && !all_seq ? par(a, b) : seq(a, b);
}

TEST(Cost, RandomCompositions) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10000; ++i) {
    std::uint64_t leaves = 0;
    auto e = random_expr(rng, 8, leaves);
    const Cost c = eval(*e, false);
    ASSERT_LE(c.span, c.work);
    ASSERT_EQ(c.work, leaves);
    ASSERT_EQ(eval(*e, true), step(leaves));
  }
}

TEST(Cost, Overflow) {
  const auto max = std::numeric_limits<std::uint64_t>::max();
  EXPECT_THROW(seq({max, 0}, {1, 0}), CostOverflow);
  EXPECT_THROW(seq({0, max}, {0, 1}), CostOverflow);
  EXPECT_THROW(par({max, 0}, {1, 0}), CostOverflow);
  EXPECT_EQ(par({0, max}, {0, max}), (Cost{0, max}));
}

TEST(Cost, Charge) {
  auto c = charge(5, step(2));
  EXPECT_EQ(c.value, 5);
  EXPECT_EQ(c.cost, step(2));
}

}  // namespace
}  // namespace rbjoin

#pragma once

#include <stdexcept>
#include <string>

#include "rbjoin/almost.hpp"
#include "rbjoin/cost.hpp"
#include "rbjoin/tree.hpp"

namespace rbjoin {

class PreconditionViolation : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A case analysis reached an arm that the red-black invariants rule out.
class UnreachableCase : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Places t2 on the right spine of t1. Requires bh(t1) > bh(t2).
///
/// Charges one step on entry to the red-root case (I) and one on entry to
/// the deep black case (V/VI); the base cases II-IV are free. The result
/// has the black height of t1 and is a valid tree whenever t1 is black.
template <typename K>
Charged<AlmostRight<K>> join_right(const Tree<K>& t1, const K& a, const Tree<K>& t2) {
  using T = Tree<K>;
  using A = AlmostRight<K>;
  const unsigned n1 = t1.black_height();
  const unsigned n2 = t2.black_height();
  if (n1 <= n2)
    throw PreconditionViolation("join_right needs bh(t1) > bh(t2), got " + std::to_string(n1) +
                                " and " + std::to_string(n2));

  if (t1.color() == Color::Red) {
    // Case I.
    auto r = join_right(t1.right(), a, t2);
    const Cost cost = seq(step(1), r.cost);
    const auto* v = r.value.as_valid();
    if (!v) throw UnreachableCase("join_right: black right child produced a violation");
    const T& t = v->tree;
    if (t.color() == Color::Red) return {A::violation(t1.left(), t1.key(), t), cost};
    return {A::valid(Color::Red, T::red(t1.left(), t1.key(), t)), cost};
  }

  const T& t11 = t1.left();
  const T& t12 = t1.right();
  const K& a1 = t1.key();

  if (n1 == n2 + 1) {
    if (t2.color() == Color::Red) {
      // Case II.
      return {A::valid(Color::Black, T::red(t1, a, T::black(t2.left(), t2.key(), t2.right()))),
              zero()};
    }
    if (t12.color() == Color::Red) {
      // Case III.
#ifdef RBJOIN_MUTATE_CASE_III
      // Deliberately broken rotation for the mutation smoke test.
      T x1 = T::black(t11, a1, t12.left());
      T x2 = T::black(t12.right(), t12.key(), t2);
      return {A::valid(Color::Black, T::red(x1, a, x2)), zero()};
#else
      T x1 = T::black(t11, a1, t12.left());
      T x2 = T::black(t12.right(), a, t2);
      return {A::valid(Color::Black, T::red(x1, t12.key(), x2)), zero()};
#endif
    }
    // Case IV.
    T x2 = T::red(t12, a, t2);
    return {A::valid(Color::Black, T::black(t11, a1, x2)), zero()};
  }

  auto r = join_right(t12, a, t2);
  const Cost cost = seq(step(1), r.cost);
  if (const auto* v = r.value.as_valid()) {
    // Case V.
    return {A::valid(Color::Black, T::black(t11, a1, v->tree)), cost};
  }
  // Case VI: rotate the right-edge violation up into a red root.
  const auto& x = *r.value.as_violation();
  T x1 = T::black(t11, a1, x.left);
  T x2 = T::black(x.right.left(), x.right.key(), x.right.right());
  return {A::valid(Color::Black, T::red(x1, x.key, x2)), cost};
}

/// Mirror of join_right: places t1 on the left spine of t2.
/// Requires bh(t1) < bh(t2).
template <typename K>
Charged<AlmostLeft<K>> join_left(const Tree<K>& t1, const K& a, const Tree<K>& t2) {
  using T = Tree<K>;
  using A = AlmostLeft<K>;
  const unsigned n1 = t1.black_height();
  const unsigned n2 = t2.black_height();
  if (n1 >= n2)
    throw PreconditionViolation("join_left needs bh(t1) < bh(t2), got " + std::to_string(n1) +
                                " and " + std::to_string(n2));

  if (t2.color() == Color::Red) {
    auto r = join_left(t1, a, t2.left());
    const Cost cost = seq(step(1), r.cost);
    const auto* v = r.value.as_valid();
    if (!v) throw UnreachableCase("join_left: black left child produced a violation");
    const T& t = v->tree;
    if (t.color() == Color::Red) return {A::violation(t, t2.key(), t2.right()), cost};
    return {A::valid(Color::Red, T::red(t, t2.key(), t2.right())), cost};
  }

  const T& t21 = t2.left();
  const T& t22 = t2.right();
  const K& a2 = t2.key();

  if (n2 == n1 + 1) {
    if (t1.color() == Color::Red) {
      return {A::valid(Color::Black, T::red(T::black(t1.left(), t1.key(), t1.right()), a, t2)),
              zero()};
    }
    if (t21.color() == Color::Red) {
      T x1 = T::black(t1, a, t21.left());
      T x2 = T::black(t21.right(), a2, t22);
      return {A::valid(Color::Black, T::red(x1, t21.key(), x2)), zero()};
    }
    T x1 = T::red(t1, a, t21);
    return {A::valid(Color::Black, T::black(x1, a2, t22)), zero()};
  }

  auto r = join_left(t1, a, t21);
  const Cost cost = seq(step(1), r.cost);
  if (const auto* v = r.value.as_valid()) {
    return {A::valid(Color::Black, T::black(v->tree, a2, t22)), cost};
  }
  const auto& x = *r.value.as_violation();
  T x1 = T::black(x.left.left(), x.left.key(), x.left.right());
  T x2 = T::black(x.right, a2, t22);
  return {A::valid(Color::Black, T::red(x1, x.key, x2)), cost};
}

/// Concatenates t1, a, t2 into one valid tree. Any heights, any colors.
/// Equal black heights are joined for free under a new root, red iff both
/// inputs are black. Otherwise the taller tree absorbs the shorter one and a
/// right-edge (or left-edge) violation is repaired by blackening the root.
template <typename K>
Charged<Tree<K>> join(const Tree<K>& t1, const K& a, const Tree<K>& t2) {
  using T = Tree<K>;
  const unsigned n1 = t1.black_height();
  const unsigned n2 = t2.black_height();

  if (n1 > n2) {
    auto r = join_right(t1, a, t2);
    if (const auto* v = r.value.as_valid()) return {v->tree, r.cost};
    const auto& x = *r.value.as_violation();
    return {T::black(x.left, x.key, x.right), r.cost};
  }
  if (n1 < n2) {
    auto r = join_left(t1, a, t2);
    if (const auto* v = r.value.as_valid()) return {v->tree, r.cost};
    const auto& x = *r.value.as_violation();
    return {T::black(x.left, x.key, x.right), r.cost};
  }
  if (t1.color() == Color::Black && t2.color() == Color::Black) return {T::red(t1, a, t2), zero()};
  return {T::black(t1, a, t2), zero()};
}

}  // namespace rbjoin

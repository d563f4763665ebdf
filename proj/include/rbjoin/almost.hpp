#pragma once

#include <variant>

#include "rbjoin/tree.hpp"

namespace rbjoin {

/// Result of JoinRight: a valid tree, or a single red-red violation between
/// the root and its right child. Violations only exist in the family whose
/// originating left tree was red, so `left_color()` is Red for them.
template <typename K>
class AlmostRight {
public:
  struct Valid {
    Color left_color;
    Tree<K> tree;
  };
  struct Violation {
    Tree<K> left;  // black
    K key;
    Tree<K> right;  // red, same black height as left
  };

  static AlmostRight valid(Color left_color, Tree<K> tree) {
    return AlmostRight(Valid{left_color, std::move(tree)});
  }

  static AlmostRight violation(Tree<K> left, K key, Tree<K> right) {
    if (left.color() != Color::Black)
      throw InvariantViolation(Rule::RedChildOfRed, "almost-right violation needs a black left");
    if (right.color() != Color::Red)
      throw InvariantViolation(Rule::RedChildOfRed, "almost-right violation needs a red right");
    if (left.black_height() != right.black_height())
      throw InvariantViolation(Rule::UnequalBlackHeight, "almost-right violation heights differ");
    return AlmostRight(Violation{std::move(left), std::move(key), std::move(right)});
  }

  bool is_violation() const { return std::holds_alternative<Violation>(v_); }
  const Valid* as_valid() const { return std::get_if<Valid>(&v_); }
  const Violation* as_violation() const { return std::get_if<Violation>(&v_); }

  Color left_color() const { return as_valid() ? as_valid()->left_color : Color::Red; }

  unsigned black_height() const {
    return as_valid() ? as_valid()->tree.black_height() : as_violation()->left.black_height();
  }

  std::vector<K> in_order() const {
    if (auto* v = as_valid()) return rbjoin::in_order(v->tree);
    const auto& x = *as_violation();
    std::vector<K> out;
    append_in_order(x.left, out);
    out.push_back(x.key);
    append_in_order(x.right, out);
    return out;
  }

private:
  explicit AlmostRight(std::variant<Valid, Violation> v) : v_(std::move(v)) {}
  std::variant<Valid, Violation> v_;
};

/// Mirror image of AlmostRight: the violation sits between the root and its
/// left child, and is only allowed when the originating right tree was red.
template <typename K>
class AlmostLeft {
public:
  struct Valid {
    Color right_color;
    Tree<K> tree;
  };
  struct Violation {
    Tree<K> left;  // red
    K key;
    Tree<K> right;  // black, same black height as left
  };

  static AlmostLeft valid(Color right_color, Tree<K> tree) {
    return AlmostLeft(Valid{right_color, std::move(tree)});
  }

  static AlmostLeft violation(Tree<K> left, K key, Tree<K> right) {
    if (left.color() != Color::Red)
      throw InvariantViolation(Rule::RedChildOfRed, "almost-left violation needs a red left");
    if (right.color() != Color::Black)
      throw InvariantViolation(Rule::RedChildOfRed, "almost-left violation needs a black right");
    if (left.black_height() != right.black_height())
      throw InvariantViolation(Rule::UnequalBlackHeight, "almost-left violation heights differ");
    return AlmostLeft(Violation{std::move(left), std::move(key), std::move(right)});
  }

  bool is_violation() const { return std::holds_alternative<Violation>(v_); }
  const Valid* as_valid() const { return std::get_if<Valid>(&v_); }
  const Violation* as_violation() const { return std::get_if<Violation>(&v_); }

  Color right_color() const { return as_valid() ? as_valid()->right_color : Color::Red; }

  unsigned black_height() const {
    return as_valid() ? as_valid()->tree.black_height() : as_violation()->right.black_height();
  }

  std::vector<K> in_order() const {
    if (auto* v = as_valid()) return rbjoin::in_order(v->tree);
    const auto& x = *as_violation();
    std::vector<K> out;
    append_in_order(x.left, out);
    out.push_back(x.key);
    append_in_order(x.right, out);
    return out;
  }

private:
  explicit AlmostLeft(std::variant<Valid, Violation> v) : v_(std::move(v)) {}
  std::variant<Valid, Violation> v_;
};

template <typename K>
AlmostLeft<K> mirror(const AlmostRight<K>& t) {
  if (auto* v = t.as_valid()) return AlmostLeft<K>::valid(v->left_color, mirror(v->tree));
  const auto& x = *t.as_violation();
  return AlmostLeft<K>::violation(mirror(x.right), x.key, mirror(x.left));
}

template <typename K>
AlmostRight<K> mirror(const AlmostLeft<K>& t) {
  if (auto* v = t.as_valid()) return AlmostRight<K>::valid(v->right_color, mirror(v->tree));
  const auto& x = *t.as_violation();
  return AlmostRight<K>::violation(mirror(x.right), x.key, mirror(x.left));
}

template <typename K>
bool operator==(const AlmostLeft<K>& a, const AlmostLeft<K>& b) {
  if (a.is_violation() != b.is_violation()) return false;
  if (auto* va = a.as_valid()) {
    auto* vb = b.as_valid();
    return va->right_color == vb->right_color && same_tree(va->tree, vb->tree);
  }
  auto* xa = a.as_violation();
  auto* xb = b.as_violation();
  return xa->key == xb->key && same_tree(xa->left, xb->left) && same_tree(xa->right, xb->right);
}

template <typename K>
bool operator==(const AlmostRight<K>& a, const AlmostRight<K>& b) {
  return mirror(a) == mirror(b);
}

}  // namespace rbjoin

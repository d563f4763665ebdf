#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rbjoin {

enum class Color : std::uint8_t { Red, Black };

inline char color_char(Color c) { return c == Color::Red ? 'R' : 'B'; }

/// Which structural rule a tree breaks. Numbered rules follow the classic
/// red-black invariant list; the cache rules cover materialized metadata.
enum class Rule : std::uint8_t {
  RedChildOfRed = 3,
  UnequalBlackHeight = 4,
  CachedSize,
  CachedBlackHeight,
};

inline std::string rule_name(Rule r) {
  switch (r) {
    case Rule::RedChildOfRed: return "invariant 3 (red node has a red child)";
    case Rule::UnequalBlackHeight: return "invariant 4 (unequal black heights)";
    case Rule::CachedSize: return "cached size mismatch";
    case Rule::CachedBlackHeight: return "cached black height mismatch";
  }
  return "unknown";
}

/// Thrown by the smart constructors. Always a bug in the calling code.
class InvariantViolation : public std::logic_error {
public:
  InvariantViolation(Rule rule, const std::string& what)
      : std::logic_error(what), rule_(rule) {}
  Rule rule() const { return rule_; }

private:
  Rule rule_;
};

template <typename K>
struct Node;

/// Persistent red-black tree. A default-constructed tree is the leaf.
/// Nodes are immutable and shared between trees; copying a Tree is O(1).
template <typename K>
class Tree {
public:
  using key_type = K;

  Tree() = default;

  bool is_leaf() const { return node_ == nullptr; }
  Color color() const;
  unsigned black_height() const;
  std::size_t size() const;

  // Node accessors; the tree must not be a leaf.
  const Tree& left() const;
  const Tree& right() const;
  const K& key() const;

  /// Node identity, for structural sharing checks. Null for the leaf.
  const Node<K>* identity() const { return node_.get(); }

  static Tree red(Tree left, K key, Tree right);
  static Tree black(Tree left, K key, Tree right);

  /// Builds a node without checking any invariant. Caches are computed
  /// from the left child, so an invalid shape gets a consistent-looking
  /// cache that only `validate` will see through. Test and parser use only.
  static Tree unchecked(Color color, Tree left, K key, Tree right);

private:
  explicit Tree(std::shared_ptr<const Node<K>> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node<K>> node_;
};

template <typename K>
struct Node {
  Color color;
  unsigned black_height;
  std::size_t size;
  Tree<K> left;
  K key;
  Tree<K> right;
};

template <typename K>
Color Tree<K>::color() const {
  return node_ ? node_->color : Color::Black;
}

template <typename K>
unsigned Tree<K>::black_height() const {
  return node_ ? node_->black_height : 0;
}

template <typename K>
std::size_t Tree<K>::size() const {
  return node_ ? node_->size : 0;
}

template <typename K>
const Tree<K>& Tree<K>::left() const {
  return node_->left;
}

template <typename K>
const Tree<K>& Tree<K>::right() const {
  return node_->right;
}

template <typename K>
const K& Tree<K>::key() const {
  return node_->key;
}

template <typename K>
Tree<K> Tree<K>::red(Tree left, K key, Tree right) {
  if (left.color() != Color::Black || right.color() != Color::Black)
    throw InvariantViolation(Rule::RedChildOfRed, "red node requires black children");
  if (left.black_height() != right.black_height())
    throw InvariantViolation(Rule::UnequalBlackHeight,
                             "red node children have black heights " +
                                 std::to_string(left.black_height()) + " and " +
                                 std::to_string(right.black_height()));
  return unchecked(Color::Red, std::move(left), std::move(key), std::move(right));
}

template <typename K>
Tree<K> Tree<K>::black(Tree left, K key, Tree right) {
  if (left.black_height() != right.black_height())
    throw InvariantViolation(Rule::UnequalBlackHeight,
                             "black node children have black heights " +
                                 std::to_string(left.black_height()) + " and " +
                                 std::to_string(right.black_height()));
  return unchecked(Color::Black, std::move(left), std::move(key), std::move(right));
}

template <typename K>
Tree<K> Tree<K>::unchecked(Color color, Tree left, K key, Tree right) {
  const unsigned bh = left.black_height() + (color == Color::Black ? 1u : 0u);
  const std::size_t n = left.size() + 1 + right.size();
  return Tree(std::make_shared<const Node<K>>(
      Node<K>{color, bh, n, std::move(left), std::move(key), std::move(right)}));
}

template <typename K>
Tree<K> leaf() {
  return {};
}

template <typename K>
Tree<K> red(Tree<K> left, K key, Tree<K> right) {
  return Tree<K>::red(std::move(left), std::move(key), std::move(right));
}

template <typename K>
Tree<K> black(Tree<K> left, K key, Tree<K> right) {
  return Tree<K>::black(std::move(left), std::move(key), std::move(right));
}

template <typename K>
void append_in_order(const Tree<K>& t, std::vector<K>& out) {
  // Explicit stack: the spine of an unchecked tree can be arbitrarily long.
  std::vector<const Tree<K>*> stack;
  const Tree<K>* cur = &t;
  while (!cur->is_leaf() || !stack.empty()) {
    while (!cur->is_leaf()) {
      stack.push_back(cur);
      cur = &cur->left();
    }
    cur = stack.back();
    stack.pop_back();
    out.push_back(cur->key());
    cur = &cur->right();
  }
}

template <typename K>
std::vector<K> in_order(const Tree<K>& t) {
  std::vector<K> out;
  out.reserve(t.size());
  append_in_order(t, out);
  return out;
}

/// Deep structural equality: same shape, colors and keys.
template <typename K>
bool same_tree(const Tree<K>& a, const Tree<K>& b) {
  if (a.identity() == b.identity()) return true;
  if (a.is_leaf() || b.is_leaf()) return false;
  return a.color() == b.color() && a.size() == b.size() && a.key() == b.key() &&
         same_tree(a.left(), b.left()) && same_tree(a.right(), b.right());
}

template <typename K>
bool operator==(const Tree<K>& a, const Tree<K>& b) {
  return same_tree(a, b);
}

/// Left/right swap at every node. Colors and black heights are preserved.
template <typename K>
Tree<K> mirror(const Tree<K>& t) {
  if (t.is_leaf()) return t;
  return Tree<K>::unchecked(t.color(), mirror(t.right()), t.key(), mirror(t.left()));
}

/// Longest root-to-leaf path, counted in nodes.
template <typename K>
std::size_t true_height(const Tree<K>& t) {
  if (t.is_leaf()) return 0;
  return 1 + std::max(true_height(t.left()), true_height(t.right()));
}

struct ValidationFailure {
  std::string path;  // "" is the root, then one L/R per descent
  Rule rule;
  std::string reason;
};

namespace detail {

struct Measured {
  unsigned black_height;
  std::size_t size;
};

template <typename K>
std::optional<Measured> validate_at(const Tree<K>& t, std::string& path,
                                    std::optional<ValidationFailure>& failure) {
  if (t.is_leaf()) return Measured{0, 0};

  if (t.color() == Color::Red) {
    const char* side = nullptr;
    if (t.left().color() == Color::Red) side = "left";
    else if (t.right().color() == Color::Red) side = "right";
    if (side) {
      failure = ValidationFailure{path, Rule::RedChildOfRed,
                                  std::string("red node with red ") + side + " child"};
      return std::nullopt;
    }
  }

  path.push_back('L');
  auto l = validate_at(t.left(), path, failure);
  path.pop_back();
  if (!l) return std::nullopt;
  path.push_back('R');
  auto r = validate_at(t.right(), path, failure);
  path.pop_back();
  if (!r) return std::nullopt;

  if (l->black_height != r->black_height) {
    failure = ValidationFailure{path, Rule::UnequalBlackHeight,
                                "children have black heights " +
                                    std::to_string(l->black_height) + " and " +
                                    std::to_string(r->black_height)};
    return std::nullopt;
  }
  Measured m{l->black_height + (t.color() == Color::Black ? 1u : 0u),
             l->size + 1 + r->size};
  if (m.size != t.size()) {
    failure = ValidationFailure{path, Rule::CachedSize,
                                "cached size " + std::to_string(t.size()) + ", actual " +
                                    std::to_string(m.size)};
    return std::nullopt;
  }
  if (m.black_height != t.black_height()) {
    failure = ValidationFailure{path, Rule::CachedBlackHeight,
                                "cached black height " + std::to_string(t.black_height()) +
                                    ", actual " + std::to_string(m.black_height)};
    return std::nullopt;
  }
  return m;
}

}  // namespace detail

/// Full re-check of every invariant and cache, ignoring the constructors.
/// Returns the first failure in pre-order (parent rules before children).
template <typename K>
std::optional<ValidationFailure> validate(const Tree<K>& t) {
  std::string path;
  std::optional<ValidationFailure> failure;
  detail::validate_at(t, path, failure);
  return failure;
}

}  // namespace rbjoin

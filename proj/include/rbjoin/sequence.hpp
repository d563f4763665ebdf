#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rbjoin/cost.hpp"
#include "rbjoin/join.hpp"
#include "rbjoin/tree.hpp"

namespace rbjoin {

/// Ordered sequence over a red-black tree; the sequence is the in-order
/// traversal of the tree.
template <typename K>
class Seq {
public:
  Seq() = default;
  explicit Seq(Tree<K> t) : tree_(std::move(t)) {}

  /// Wraps a tree after a full validation pass.
  static Seq checked(Tree<K> t) {
    if (auto f = validate(t))
      throw InvariantViolation(f->rule, "invalid tree at '" + f->path + "': " + f->reason);
    return Seq(std::move(t));
  }

  const Tree<K>& tree() const { return tree_; }
  std::size_t size() const { return tree_.size(); }
  bool empty() const { return tree_.is_leaf(); }
  std::vector<K> in_order() const { return rbjoin::in_order(tree_); }

private:
  Tree<K> tree_;
};

template <typename K>
Seq<K> empty() {
  return {};
}

template <typename K>
Charged<Seq<K>> join(const Seq<K>& s1, const K& a, const Seq<K>& s2) {
  auto r = join(s1.tree(), a, s2.tree());
  return {Seq<K>(std::move(r.value)), r.cost};
}

/// A recursive result handed to the recursor's node case unevaluated.
/// Forcing runs the thunk once; the first force reports its cost, later
/// forces return the memoized value at zero cost. Copies share state.
template <typename R>
class Deferred {
public:
  template <typename F>
  explicit Deferred(F thunk) : state_(std::make_shared<Thunk<F>>(std::move(thunk))) {}

  Charged<R> force() const {
    if (state_->value) return {*state_->value, zero()};
    auto r = state_->run();
    state_->value = r.value;
    return r;
  }

  bool forced() const { return state_->value.has_value(); }

private:
  struct State {
    virtual ~State() = default;
    virtual Charged<R> run() = 0;
    std::optional<R> value;
  };

  template <typename F>
  struct Thunk final : State {
    explicit Thunk(F f) : fn(std::move(f)) {}
    Charged<R> run() override { return fn(); }
    F fn;
  };

  std::shared_ptr<State> state_;
};

namespace detail {

template <typename K, typename R, typename Z, typename G>
class Recursor : public std::enable_shared_from_this<Recursor<K, R, Z, G>> {
public:
  Recursor(Z z, G g) : z_(std::move(z)), g_(std::move(g)) {}

  Charged<R> at(const Tree<K>& t) const {
    if (t.is_leaf()) return z_();
    auto self = this->shared_from_this();
    Deferred<R> left([self, l = t.left()] { return self->at(l); });
    Deferred<R> right([self, r = t.right()] { return self->at(r); });
    return g_(Seq<K>(t.left()), left, t.key(), Seq<K>(t.right()), right);
  }

private:
  Z z_;
  G g_;
};

}  // namespace detail

/// Structural recursion over a sequence.
///
/// `z()` handles the empty sequence. `g(s1, r1, a, s2, r2)` handles a node
/// with subsequences s1, s2, key a, and deferred recursive results r1, r2.
/// The total cost is whatever z and g charge, including the cost of the
/// deferred results they choose to force, combined as g sees fit.
template <typename K, typename Z, typename G>
auto rec(const Seq<K>& s, Z z, G g) {
  using R = decltype(z().value);
  auto r = std::make_shared<detail::Recursor<K, R, Z, G>>(std::move(z), std::move(g));
  return r->at(s.tree());
}

namespace detail {
template <typename K>
K checked_sum(K a, K b) {
  K out{};
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("sequence sum overflow");
  return out;
}
}  // namespace detail

/// Parallel sum: one step per node, then both halves in parallel.
template <typename K>
Charged<K> sum(const Seq<K>& s) {
  return rec(
      s, [] { return Charged<K>{K{0}, zero()}; },
      [](const Seq<K>&, const Deferred<K>& r1, const K& a, const Seq<K>&, const Deferred<K>& r2) {
        const Cost unit = step(1);
        auto x1 = r1.force();
        auto x2 = r2.force();
        return Charged<K>{detail::checked_sum(detail::checked_sum(x1.value, a), x2.value),
                          seq(unit, par(x1.cost, x2.cost))};
      });
}

template <typename K, typename F>
auto map(const Seq<K>& s, F f) {
  using L = std::decay_t<decltype(f(std::declval<const K&>()))>;
  return rec(
      s, [] { return Charged<Seq<L>>{empty<L>(), zero()}; },
      [f](const Seq<K>&, const Deferred<Seq<L>>& r1, const K& a, const Seq<K>&,
          const Deferred<Seq<L>>& r2) {
        auto x1 = r1.force();
        auto x2 = r2.force();
        auto j = join(x1.value, f(a), x2.value);
        return Charged<Seq<L>>{std::move(j.value), seq(par(x1.cost, x2.cost), j.cost)};
      });
}

template <typename K>
Charged<Seq<K>> reverse(const Seq<K>& s) {
  return rec(
      s, [] { return Charged<Seq<K>>{empty<K>(), zero()}; },
      [](const Seq<K>&, const Deferred<Seq<K>>& r1, const K& a, const Seq<K>&,
         const Deferred<Seq<K>>& r2) {
        auto x1 = r1.force();
        auto x2 = r2.force();
        auto j = join(x2.value, a, x1.value);
        return Charged<Seq<K>>{std::move(j.value), seq(par(x1.cost, x2.cost), j.cost)};
      });
}

// --- Sorted-sequence (finite set) operations -------------------------------

enum class SortCheck { Trust, Verify };

#ifdef NDEBUG
inline constexpr SortCheck kDefaultSortCheck = SortCheck::Trust;
#else
inline constexpr SortCheck kDefaultSortCheck = SortCheck::Verify;
#endif

template <typename K>
void require_sorted(const Seq<K>& s, SortCheck check) {
  if (check == SortCheck::Trust) return;
  const auto keys = s.in_order();
  for (std::size_t i = 1; i < keys.size(); ++i)
    if (!(keys[i - 1] < keys[i]))
      throw PreconditionViolation("sequence is not strictly sorted at position " +
                                  std::to_string(i));
}

template <typename K>
struct SplitResult {
  Seq<K> left;
  std::optional<K> middle;
  Seq<K> right;
};

namespace detail {

template <typename K>
Charged<SplitResult<K>> split_trusted(const Seq<K>& s, const K& a) {
  using Out = Charged<SplitResult<K>>;
  return rec(
      s, [] { return Out{SplitResult<K>{}, zero()}; },
      [&a](const Seq<K>& s1, const Deferred<SplitResult<K>>& r1, const K& key, const Seq<K>& s2,
           const Deferred<SplitResult<K>>& r2) -> Out {
        if (a < key) {
          auto sub = r1.force();
          auto j = join(sub.value.right, key, s2);
          return {SplitResult<K>{sub.value.left, sub.value.middle, std::move(j.value)},
                  seq(sub.cost, j.cost)};
        }
        if (key < a) {
          auto sub = r2.force();
          auto j = join(s1, key, sub.value.left);
          return {SplitResult<K>{std::move(j.value), sub.value.middle, sub.value.right},
                  seq(sub.cost, j.cost)};
        }
        return {SplitResult<K>{s1, a, s2}, zero()};
      });
}

}  // namespace detail

/// Partitions a sorted sequence into keys below a, a itself if present, and
/// keys above a.
template <typename K>
Charged<SplitResult<K>> split(const Seq<K>& s, const K& a, SortCheck check = kDefaultSortCheck) {
  require_sorted(s, check);
  return detail::split_trusted(s, a);
}

template <typename K>
Charged<Seq<K>> insert(const Seq<K>& s, const K& a, SortCheck check = kDefaultSortCheck) {
  auto parts = split(s, a, check);
  auto j = join(parts.value.left, a, parts.value.right);
  return {std::move(j.value), seq(parts.cost, j.cost)};
}

/// Sorted union. Recurses over s1, splitting s2 at each key of s1; the two
/// recursive unions run in parallel. On a shared key, s1's element is kept.
template <typename K>
Charged<Seq<K>> set_union(const Seq<K>& s1, const Seq<K>& s2, SortCheck check = kDefaultSortCheck) {
  require_sorted(s1, check);
  require_sorted(s2, check);
  using Fn = std::function<Charged<Seq<K>>(const Seq<K>&)>;
  const Fn identity = [](const Seq<K>& other) { return Charged<Seq<K>>{other, zero()}; };
  auto f = rec(
      s1, [identity] { return Charged<Fn>{identity, zero()}; },
      [](const Seq<K>&, const Deferred<Fn>& f1, const K& a, const Seq<K>&, const Deferred<Fn>& f2) {
        Fn fn = [f1, f2, a](const Seq<K>& other) {
          auto parts = detail::split_trusted(other, a);
          auto g1 = f1.force();
          auto u1 = g1.value(parts.value.left);
          auto g2 = f2.force();
          auto u2 = g2.value(parts.value.right);
          auto j = join(u1.value, a, u2.value);
          const Cost halves = par(seq(g1.cost, u1.cost), seq(g2.cost, u2.cost));
          return Charged<Seq<K>>{std::move(j.value), seq(seq(parts.cost, halves), j.cost)};
        };
        return Charged<Fn>{std::move(fn), zero()};
      });
  auto u = f.value(s2);
  return {std::move(u.value), seq(f.cost, u.cost)};
}

}  // namespace rbjoin

#include "rbjoin/props.hpp"

#include <algorithm>
#include <exception>

#include "rbjoin/bounds.hpp"
#include "rbjoin/join.hpp"
#include "rbjoin/sequence.hpp"
#include "rbjoin/sexpr.hpp"

namespace rbjoin::props {

void Outcome::fail(std::string detail) {
  ++checked;
  if (failures++ == 0) counterexample = std::move(detail);
}

void Outcome::merge(const Outcome& other) {
  if (failures == 0 && other.failures != 0) counterexample = other.counterexample;
  checked += other.checked;
  failures += other.failures;
}

namespace {

void collect_nodes(const Tree64& t, std::vector<const void*>& out) {
  if (t.is_leaf()) return;
  out.push_back(t.identity());
  collect_nodes(t.left(), out);
  collect_nodes(t.right(), out);
}

std::vector<const void*> node_set(const Tree64& t) {
  std::vector<const void*> nodes;
  nodes.reserve(t.size());
  collect_nodes(t, nodes);
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

bool contains(const std::vector<const void*>& sorted, const void* p) {
  return std::binary_search(sorted.begin(), sorted.end(), p);
}

// Nodes of `result` that are not nodes of either input. Old nodes only have
// old descendants, so the walk stops at the first old node on each path.
std::size_t fresh_nodes(const Tree64& result, const std::vector<const void*>& a,
                        const std::vector<const void*>& b) {
  if (result.is_leaf()) return 0;
  const void* id = result.identity();
  if (contains(a, id) || contains(b, id)) return 0;
  return 1 + fresh_nodes(result.left(), a, b) + fresh_nodes(result.right(), a, b);
}

bool reachable(const Tree64& t, const void* id) {
  if (t.is_leaf()) return false;
  return t.identity() == id || reachable(t.left(), id) || reachable(t.right(), id);
}

std::string pair_text(const Tree64& t1, Key a, const Tree64& t2) {
  return "t1=" + sexpr::serialize(t1) + " a=" + std::to_string(a) + " t2=" + sexpr::serialize(t2);
}

std::string validation_text(const ValidationFailure& f) {
  return rule_name(f.rule) + " at path '" + f.path + "': " + f.reason;
}

std::string cost_text(const Cost& c) {
  return "work=" + std::to_string(c.work) + ",span=" + std::to_string(c.span);
}

// Node-count bound on one join: the spine walk touches at most one level
// per unit of black-height difference, two nodes per level, plus the base.
std::size_t fresh_bound(unsigned n1, unsigned n2) {
  const unsigned d = n1 > n2 ? n1 - n2 : n2 - n1;
  return 2 * std::size_t{d} + 3;
}

void check_join_right(const Prepared& p1, const Prepared& p2, Key a,
                      const std::vector<Key>& expected, JoinOutcomes& out) {
  const Tree64& t1 = p1.tree;
  const Tree64& t2 = p2.tree;
  const unsigned n1 = t1.black_height();
  const unsigned n2 = t2.black_height();
  const auto ctx = [&] { return pair_text(t1, a, t2); };

  Charged<AlmostRight<Key>> jr{AlmostRight<Key>::valid(Color::Black, {}), {}};
  try {
    jr = join_right(t1, a, t2);
  } catch (const std::exception& e) {
    out.join_right.fail(ctx() + ": join_right threw: " + e.what());
    return;
  }

  std::string why;
  const auto& r = jr.value;
  if (jr.cost.work != jr.cost.span) why = "work != span (" + cost_text(jr.cost) + ")";
  else if (std::int64_t(jr.cost.work) > bounds::join_right(t1.color(), n1, n2))
    why = "cost " + cost_text(jr.cost) + " exceeds " +
          std::to_string(bounds::join_right(t1.color(), n1, n2));
  else if (r.is_violation() && t1.color() != Color::Red) why = "violation from a black t1";
  else if (r.black_height() != n1) why = "black height " + std::to_string(r.black_height());
  else if (r.left_color() != t1.color()) why = "left color does not match t1";
  else if (r.in_order() != expected) why = "in-order mismatch";
  else if (auto* v = r.as_valid(); v && validate(v->tree))
    why = "valid result fails validate: " + validation_text(*validate(v->tree));
  out.join_right.expect(why.empty(), [&] { return ctx() + ": " + why; });

  try {
    auto jl = join_left(p2.mirrored, a, p1.mirrored);
    const bool same = jl.value == mirror(r) && jl.cost == jr.cost;
    out.mirror.expect(same, [&] {
      return ctx() + ": join_left on mirrored inputs differs (" + cost_text(jl.cost) + " vs " +
             cost_text(jr.cost) + ")";
    });
  } catch (const std::exception& e) {
    out.mirror.fail(ctx() + ": join_left threw: " + e.what());
  }
}

void check_join_left(const Prepared& p1, const Prepared& p2, Key a,
                     const std::vector<Key>& expected, JoinOutcomes& out) {
  const Tree64& t1 = p1.tree;
  const Tree64& t2 = p2.tree;
  const unsigned n1 = t1.black_height();
  const unsigned n2 = t2.black_height();
  const auto ctx = [&] { return pair_text(t1, a, t2); };

  Charged<AlmostLeft<Key>> jl{AlmostLeft<Key>::valid(Color::Black, {}), {}};
  try {
    jl = join_left(t1, a, t2);
  } catch (const std::exception& e) {
    out.join_right.fail(ctx() + ": join_left threw: " + e.what());
    return;
  }

  std::string why;
  const auto& r = jl.value;
  if (jl.cost.work != jl.cost.span) why = "work != span (" + cost_text(jl.cost) + ")";
  else if (std::int64_t(jl.cost.work) > bounds::join_right(t2.color(), n2, n1))
    why = "cost " + cost_text(jl.cost) + " exceeds " +
          std::to_string(bounds::join_right(t2.color(), n2, n1));
  else if (r.is_violation() && t2.color() != Color::Red) why = "violation from a black t2";
  else if (r.black_height() != n2) why = "black height " + std::to_string(r.black_height());
  else if (r.right_color() != t2.color()) why = "right color does not match t2";
  else if (r.in_order() != expected) why = "in-order mismatch";
  else if (auto* v = r.as_valid(); v && validate(v->tree))
    why = "valid result fails validate: " + validation_text(*validate(v->tree));
  out.join_right.expect(why.empty(), [&] { return ctx() + ": " + why; });

  try {
    auto jr = join_right(p2.mirrored, a, p1.mirrored);
    const bool same = mirror(jr.value) == r && jr.cost == jl.cost;
    out.mirror.expect(same, [&] {
      return ctx() + ": join_right on mirrored inputs differs (" + cost_text(jr.cost) + " vs " +
             cost_text(jl.cost) + ")";
    });
  } catch (const std::exception& e) {
    out.mirror.fail(ctx() + ": join_right threw: " + e.what());
  }
}

}  // namespace

Prepared Prepared::of(Tree64 t) {
  Prepared p;
  p.mirrored = mirror(t);
  p.keys = in_order(t);
  p.node_ids = node_set(t);
  p.tree = std::move(t);
  return p;
}

void check_join_pair(const Prepared& p1, const Prepared& p2, Key a, JoinOutcomes& out) {
  const Tree64& t1 = p1.tree;
  const Tree64& t2 = p2.tree;
  const unsigned n1 = t1.black_height();
  const unsigned n2 = t2.black_height();
  const auto ctx = [&] { return pair_text(t1, a, t2); };

  Charged<Tree64> r;
  try {
    r = join(t1, a, t2);
  } catch (const std::exception& e) {
    out.correctness.fail(ctx() + ": join threw: " + e.what());
    return;
  }
  const auto expected = oracle::list_join(p1.keys, a, p2.keys);

  std::string why;
  const unsigned top = std::max(n1, n2);
  if (auto f = validate(r.value)) why = "invalid output: " + validation_text(*f);
  else if (in_order(r.value) != expected) why = "in-order mismatch";
  else if (r.value.black_height() != top && r.value.black_height() != top + 1)
    why = "black height " + std::to_string(r.value.black_height()) + " outside {" +
          std::to_string(top) + "," + std::to_string(top + 1) + "}";
  out.correctness.expect(why.empty(), [&] { return ctx() + ": " + why; });

  why.clear();
  const std::int64_t work = std::int64_t(r.cost.work);
  if (r.cost.work != r.cost.span) why = "work != span (" + cost_text(r.cost) + ")";
  else if (work > bounds::join_bh(n1, n2))
    why = cost_text(r.cost) + " exceeds black-height bound " +
          std::to_string(bounds::join_bh(n1, n2));
  else if (work > bounds::join_size(t1.size(), t2.size()))
    why = cost_text(r.cost) + " exceeds size bound " +
          std::to_string(bounds::join_size(t1.size(), t2.size()));
  out.cost.expect(why.empty(), [&] { return ctx() + ": " + why; });

  why.clear();
  if (n1 > n2 && !reachable(r.value, t1.left().identity()) && !t1.left().is_leaf())
    why = "left subtree of t1 was copied";
  else if (n1 < n2 && !reachable(r.value, t2.right().identity()) && !t2.right().is_leaf())
    why = "right subtree of t2 was copied";
  else {
    const std::size_t fresh = fresh_nodes(r.value, p1.node_ids, p2.node_ids);
    if (fresh > fresh_bound(n1, n2))
      why = std::to_string(fresh) + " fresh nodes, bound " + std::to_string(fresh_bound(n1, n2));
  }
  out.sharing.expect(why.empty(), [&] { return ctx() + ": " + why; });

  if (n1 > n2) check_join_right(p1, p2, a, expected, out);
  else if (n1 < n2) check_join_left(p1, p2, a, expected, out);
}

void check_join_all_pairs(const std::vector<Tree64>& population, JoinOutcomes& out) {
  std::vector<Prepared> prepared;
  prepared.reserve(population.size());
  for (const auto& t : population) prepared.push_back(Prepared::of(t));
  for (const auto& p1 : prepared)
    for (const auto& p2 : prepared) check_join_pair(p1, p2, -1, out);
}

void check_tree(const Tree64& t, TreeOutcomes& out, TreeCheckOptions options) {
  const auto text = [&] { return "t=" + sexpr::serialize(t) + ": "; };
  const auto keys = in_order(t);
  const unsigned bh = t.black_height();
  const std::size_t n = t.size();

  if (auto f = validate(t)) out.valid.fail(text() + validation_text(*f));
  else out.valid.pass();

  const std::int64_t ibh = bh;
  out.height_lemmas.expect(
      bounds::min_black_height(n) <= ibh && ibh <= bounds::max_black_height(n),
      [&] { return text() + "bh " + std::to_string(bh) + " for size " + std::to_string(n); });

  {
    std::string why;
    const Tree64 m = mirror(t);
    if (true_height(t) > 2 * std::size_t{bh} + 1)
      why = "true height " + std::to_string(true_height(t));
    else if (keys.size() != n) why = "in-order length differs from size";
    else if (m.size() != n || m.black_height() != bh || m.color() != t.color())
      why = "mirror changed size, black height or color";
    else if (in_order(m) != oracle::list_reverse(keys)) why = "mirror does not reverse in-order";
    else if (validate(m)) why = "mirror is invalid";
    else if (!same_tree(mirror(m), t)) why = "mirror is not an involution";
    out.shape.expect(why.empty(), [&] { return text() + why; });
  }

  {
    std::string why;
    try {
      const auto s = sum(Seq<Key>(t));
      const auto span_size = bounds::sum_span_size(n);
      const auto span_bh = bounds::sum_span_bh(t.color(), bh);
      if (s.value != oracle::list_sum(keys)) why = "value " + std::to_string(s.value);
      else if (s.cost.work != n) why = cost_text(s.cost) + ", work differs from size";
      else if (std::int64_t(s.cost.span) > span_size)
        why = cost_text(s.cost) + " exceeds span bound " + std::to_string(span_size);
      else if (std::int64_t(s.cost.span) > span_bh)
        why = cost_text(s.cost) + " exceeds black-height span bound " + std::to_string(span_bh);
    } catch (const std::exception& e) {
      why = std::string("threw: ") + e.what();
    }
    out.sum.expect(why.empty(), [&] { return text() + why; });
  }

  if (options.recursor) {
    std::string why;
    const Seq<Key> s(t);
    const auto size = rec(
        s, [] { return Charged<std::size_t>{0, zero()}; },
        [](const Seq<Key>&, const Deferred<std::size_t>& l, const Key&, const Seq<Key>&,
           const Deferred<std::size_t>& r) {
          return Charged<std::size_t>{l.force().value + 1 + r.force().value, zero()};
        });
    const auto f = [](Key k) { return 2 * k + 1; };
    const auto mapped = map(s, f).value;
    const auto reversed = reverse(s).value;
    if (size.value != n) why = "recursor size " + std::to_string(size.value);
    else if (mapped.in_order() != oracle::list_map(keys, f)) why = "map mismatch";
    else if (validate(mapped.tree())) why = "map output invalid";
    else if (reversed.in_order() != oracle::list_reverse(keys)) why = "reverse mismatch";
    else if (validate(reversed.tree())) why = "reverse output invalid";
    out.recursor.expect(why.empty(), [&] { return text() + why; });
  }

  if (options.round_trip) {
    std::string why;
    const auto once = sexpr::serialize(t);
    try {
      const auto back = sexpr::parse(once);
      if (!same_tree(back, t)) why = "parsed tree differs";
      else if (sexpr::serialize(back) != once) why = "re-serialization differs";
    } catch (const std::exception& e) {
      why = std::string("parse threw: ") + e.what();
    }
    out.round_trip.expect(why.empty(), [&] { return text() + why; });
  }
}

void check_sorted_tree(const Tree64& t, SetOutcomes& out) {
  const Seq<Key> s(t);
  const auto keys = in_order(t);
  std::vector<Key> probes;
  for (Key k : keys) {
    probes.push_back(k - 1);
    probes.push_back(k);
  }
  probes.push_back(keys.empty() ? 0 : keys.back() + 1);

  for (Key p : probes) {
    const auto text = [&] { return "t=" + sexpr::serialize(t) + " a=" + std::to_string(p) + ": "; };
    std::string why;
    try {
      const auto parts = split(s, p, SortCheck::Verify).value;
      const auto want = oracle::list_split(keys, p);
      if (parts.left.in_order() != want.left) why = "left part differs";
      else if (parts.middle != want.middle) why = "middle differs";
      else if (parts.right.in_order() != want.right) why = "right part differs";
      else if (validate(parts.left.tree()) || validate(parts.right.tree())) why = "invalid part";
    } catch (const std::exception& e) {
      why = std::string("threw: ") + e.what();
    }
    out.split.expect(why.empty(), [&] { return text() + why; });

    why.clear();
    try {
      const auto ins = insert(s, p, SortCheck::Verify).value;
      if (ins.in_order() != oracle::list_insert(keys, p)) why = "in-order differs";
      else if (validate(ins.tree())) why = "invalid result";
    } catch (const std::exception& e) {
      why = std::string("threw: ") + e.what();
    }
    out.insert.expect(why.empty(), [&] { return text() + why; });
  }
}

void check_union_pair(const Tree64& a, const Tree64& b, SetOutcomes& out) {
  const auto text = [&] {
    return "s1=" + sexpr::serialize(a) + " s2=" + sexpr::serialize(b) + ": ";
  };
  const Seq<Key> sa(a), sb(b);
  std::string why;
  try {
    const auto ka = in_order(a);
    const auto u = set_union(sa, sb, SortCheck::Verify).value;
    const auto v = set_union(sb, sa, SortCheck::Verify).value;
    const auto self = set_union(sa, sa, SortCheck::Verify).value;
    if (u.in_order() != oracle::list_union(ka, in_order(b))) why = "union differs from list union";
    else if (validate(u.tree())) why = "union output invalid";
    else if (v.in_order() != u.in_order()) why = "union not commutative in value";
    else if (validate(v.tree())) why = "swapped union output invalid";
    else if (self.in_order() != ka) why = "union with itself changed the key set";
  } catch (const std::exception& e) {
    why = std::string("threw: ") + e.what();
  }
  out.set_union.expect(why.empty(), [&] { return text() + why; });

  const auto base = set_union(empty<Key>(), sa, SortCheck::Verify).value;
  out.union_base.expect(base.tree().identity() == a.identity(),
                        [&] { return text() + "union(empty, s1) is not s1"; });
}

void check_sets_random(std::size_t trials, std::size_t max_size, std::uint64_t seed,
                       SetOutcomes& out) {
  oracle::SplitMix64 rng(seed);
  for (std::size_t i = 0; i < trials; ++i) {
    const std::size_t n1 = rng.below(max_size + 1);
    const std::size_t n2 = rng.below(max_size + 1);
    const Tree64 t1 =
        oracle::relabel(oracle::random_tree(n1, rng.next()), [](Key k) { return 2 * k; });
    const Tree64 t2 = oracle::relabel(oracle::random_joined_tree(n2, rng.next()),
                                      [](Key k) { return 3 * k + 1; });
    const Key probe = static_cast<Key>(rng.below(2 * n1 + 5)) - 2;
    const Seq<Key> s1(t1);
    const auto keys = in_order(t1);
    const auto text = [&] {
      return "t=" + sexpr::serialize(t1) + " a=" + std::to_string(probe) + ": ";
    };

    std::string why;
    try {
      const auto parts = split(s1, probe, SortCheck::Verify).value;
      const auto want = oracle::list_split(keys, probe);
      if (parts.left.in_order() != want.left || parts.middle != want.middle ||
          parts.right.in_order() != want.right)
        why = "split differs from list partition";
      else if (validate(parts.left.tree()) || validate(parts.right.tree())) why = "invalid part";
    } catch (const std::exception& e) {
      why = std::string("threw: ") + e.what();
    }
    out.split.expect(why.empty(), [&] { return text() + why; });

    why.clear();
    try {
      const auto ins = insert(s1, probe, SortCheck::Verify).value;
      if (ins.in_order() != oracle::list_insert(keys, probe)) why = "insert differs";
      else if (validate(ins.tree())) why = "invalid result";
    } catch (const std::exception& e) {
      why = std::string("threw: ") + e.what();
    }
    out.insert.expect(why.empty(), [&] { return text() + why; });

    check_union_pair(t1, t2, out);
  }
}

void check_random_pool(const RandomPoolConfig& config, TreeOutcomes& trees, JoinOutcomes& joins) {
  oracle::SplitMix64 rng(config.seed);
  Prepared first, prev;
  for (std::size_t i = 0; i < config.trials; ++i) {
    const std::size_t size =
        i == 0 ? config.max_size : oracle::log_uniform_size(rng, config.max_size);
    const std::uint64_t seed = rng.next();
    const bool by_insert = config.insert_built_every != 0 && i % config.insert_built_every == 0;
    Tree64 t = by_insert ? oracle::random_tree(size, seed) : oracle::random_joined_tree(size, seed);
    check_tree(t, trees, config.tree_checks);

    Prepared cur = Prepared::of(std::move(t));
    if (i == 0) {
      first = cur;
    } else if (rng.below(2) == 0) {
      check_join_pair(prev, cur, -1, joins);
    } else {
      check_join_pair(cur, prev, -1, joins);
    }
    prev = std::move(cur);
  }
  if (config.trials > 1) check_join_pair(prev, first, -1, joins);
}

std::vector<Outcome> run(const Config& config) {
  TreeOutcomes trees;
  JoinOutcomes joins;
  SetOutcomes sets;

  if (config.level == Level::Exhaustive) {
    for (unsigned bh = 0; bh <= config.max_bh; ++bh)
      oracle::for_each_tree(std::nullopt, bh, [&](const Tree64& t) { check_tree(t, trees); }, {},
                            config.max_bh);
    check_join_all_pairs(oracle::population(config.max_bh, config.class_cap), joins);

    const auto sorted = oracle::population(config.max_bh, config.class_cap);
    for (const auto& t : sorted)
      check_sorted_tree(oracle::relabel(t, [](Key k) { return 2 * k; }), sets);
    const auto small = oracle::population(config.max_bh, 32);
    for (const auto& a : small)
      for (const auto& b : small)
        check_union_pair(oracle::relabel(a, [](Key k) { return 2 * k; }),
                         oracle::relabel(b, [](Key k) { return 3 * k; }), sets);
  } else {
    check_random_pool({config.trials, config.max_size, config.seed, 20}, trees, joins);
    check_sets_random(config.trials, std::min<std::size_t>(config.max_size, 1000), config.seed,
                      sets);
  }

  return {trees.valid,      trees.height_lemmas, trees.shape,      trees.sum,
          trees.recursor,   trees.round_trip,    joins.correctness, joins.cost,
          joins.join_right, joins.mirror,        joins.sharing,     sets.split,
          sets.insert,      sets.set_union,      sets.union_base};
}

}  // namespace rbjoin::props

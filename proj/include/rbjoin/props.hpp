#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rbjoin/oracle.hpp"

// Property suites over int64-keyed trees. Each check feeds one or more
// Outcomes; an Outcome keeps a count and the first counterexample, rendered
// with the s-expression format so it can be replayed through the CLI.
namespace rbjoin::props {

using oracle::Key;
using oracle::Tree64;

struct Outcome {
  Outcome() = default;
  explicit Outcome(std::string n) : name(std::move(n)) {}

  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  std::string counterexample;

  void pass() { ++checked; }
  void fail(std::string detail);
  /// `detail` builds the counterexample text; it runs only on failure.
  template <typename F>
  void expect(bool ok, F&& detail) {
    if (ok) pass();
    else fail(std::string(detail()));
  }
  bool ok() const { return failures == 0; }
  void merge(const Outcome& other);
};

/// A tree with the data the pair checks reuse.
struct Prepared {
  Tree64 tree;
  Tree64 mirrored;
  std::vector<Key> keys;
  std::vector<const void*> node_ids;  // sorted

  static Prepared of(Tree64 t);
};

struct JoinOutcomes {
  Outcome correctness{"join: valid output, in-order concatenation, black-height dichotomy"};
  Outcome cost{"join: work = span, black-height bound and size bound"};
  Outcome join_right{"join_right/join_left: strengthened bound, violations only from red roots"};
  Outcome mirror{"join_left is the mirror image of join_right (value and cost)"};
  Outcome sharing{"join: untouched subtrees shared by identity, fresh nodes bounded"};
};

/// Joins t1 and t2 around `middle` and checks every join property.
void check_join_pair(const Prepared& t1, const Prepared& t2, Key middle, JoinOutcomes& out);

/// All ordered pairs of `population`. The middle key is -1, which none of
/// the generated trees use.
void check_join_all_pairs(const std::vector<Tree64>& population, JoinOutcomes& out);

struct TreeOutcomes {
  Outcome valid{"tree: passes validate"};
  Outcome height_lemmas{"tree: ceil(log2(1+|t|)) >= bh >= floor((ceil(log2(1+|t|))-1)/2)"};
  Outcome shape{"tree: true height <= 2bh+1, |inOrder| = size, mirror laws"};
  Outcome sum{"sum: list-oracle value, work = |t|, span bounds (size form and bh form)"};
  Outcome recursor{"recursor: size, map and reverse agree with list models"};
  Outcome round_trip{"format: parse(serialize(t)) = t"};
};

struct TreeCheckOptions {
  bool recursor = true;
  bool round_trip = true;
};

void check_tree(const Tree64& t, TreeOutcomes& out, TreeCheckOptions options = {});

struct SetOutcomes {
  Outcome split{"split agrees with the sorted-list partition"};
  Outcome insert{"insert agrees with sorted insertion"};
  Outcome set_union{"union agrees with sorted-list union, commutative in value"};
  Outcome union_base{"union(empty, s) is s itself"};
};

/// Splits and inserts at every key of `t` and at every gap around them.
/// Keys of `t` must be sorted and at least 2 apart.
void check_sorted_tree(const Tree64& t, SetOutcomes& out);

void check_union_pair(const Tree64& a, const Tree64& b, SetOutcomes& out);

/// `trials` random instances: two trees of up to `max_size` keys with
/// distinct key spacing, a random split probe and a random insertion.
void check_sets_random(std::size_t trials, std::size_t max_size, std::uint64_t seed,
                       SetOutcomes& out);

struct RandomPoolConfig {
  std::size_t trials = 1000;
  std::size_t max_size = 100000;
  std::uint64_t seed = 1;
  /// Every n-th tree (and the first) is built by `oracle::random_tree`;
  /// the rest by `oracle::random_joined_tree`.
  std::size_t insert_built_every = 20;
  TreeCheckOptions tree_checks{};
};

/// Generates `trials` random trees (the first has exactly `max_size` keys),
/// runs the tree checks on each, and joins consecutive trees in random
/// orientation, closing the cycle so there are `trials` join pairs.
void check_random_pool(const RandomPoolConfig& config, TreeOutcomes& trees, JoinOutcomes& joins);

enum class Level { Exhaustive, Random };

struct Config {
  Level level = Level::Exhaustive;
  unsigned max_bh = oracle::kDefaultMaxBlackHeight;
  std::size_t trials = 1000;
  std::size_t max_size = 10000;
  std::uint64_t seed = 1;
  /// Shapes kept from the largest class in pairwise suites.
  std::uint64_t class_cap = 1000;
};

/// Runs every suite at the requested level; the CLI `props` command.
std::vector<Outcome> run(const Config& config);

}  // namespace rbjoin::props

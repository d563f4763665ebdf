// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
//
// usage: acceptance <path to rbjoin CLI>
//
// The populations and tolerances below are fixed. Every criterion demands
// zero failures.

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "rbjoin/oracle.hpp"
#include "rbjoin/props.hpp"
#include "rbjoin/sequence.hpp"
#include "rbjoin/sexpr.hpp"

namespace {

using namespace rbjoin;
using props::Outcome;
using oracle::Key;
using oracle::Tree64;

constexpr unsigned kMaxBh = 2;
constexpr std::uint64_t kRedBh2Sample = 1000;  // shapes kept from the 160000 red bh-2 trees
constexpr std::size_t kPoolTrees = 10000;
constexpr std::size_t kPoolMaxSize = 100000;
constexpr std::size_t kRandomSetInstances = 1000;
constexpr std::size_t kRandomSetMaxSize = 1000;
constexpr std::uint64_t kUnionClassCap = 32;
constexpr std::uint64_t kSeed = 1;

class Phase {
public:
  explicit Phase(std::string name)
      : name_(std::move(name)), start_(std::chrono::steady_clock::now()) {
    std::cout << "# " << name_ << " ..." << std::flush;
  }
  ~Phase() {
    const std::chrono::duration<double> d = std::chrono::steady_clock::now() - start_;
    std::printf(" %.1fs\n", d.count());
    std::fflush(stdout);
  }

private:
  std::string name_;
  std::chrono::steady_clock::time_point start_;
};

struct Criterion {
  int number;
  std::string title;
  std::vector<Outcome> parts;
  std::vector<std::string> notes;
};

bool report(const Criterion& c) {
  bool ok = true;
  std::uint64_t checked = 0, failed = 0;
  for (const auto& o : c.parts) {
    ok = ok && o.ok() && o.checked > 0;
    checked += o.checked;
    failed += o.failures;
  }
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.title << " ("
            << checked << " checks, " << failed << " failures)\n";
  for (const auto& o : c.parts) {
    std::cout << "       " << (o.ok() ? "ok   " : "FAIL ") << o.name << ": " << o.checked
              << " checked, " << o.failures << " failed\n";
    if (!o.ok()) std::cout << "         counterexample: " << o.counterexample << '\n';
  }
  for (const auto& n : c.notes) std::cout << "       " << n << '\n';
  return ok;
}

std::string run_capture(const std::string& command, int& status) {
  std::string out;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  status = pclose(pipe.release());
  return out;
}

/// `gen --size n --seed s` twice: identical bytes, equal to the in-process
/// generator, and a valid tree of n keys.
Outcome gen_determinism(const std::string& cli) {
  Outcome o("gen --size n --seed s reproducible bit-for-bit");
  const std::vector<std::pair<std::size_t, std::uint64_t>> cases = {
      {0, 1}, {1, 1}, {3, 7}, {10, 2}, {100, 3}, {1000, 4}, {100000, 5}};
  for (const auto& [n, s] : cases) {
    const std::string cmd =
        "'" + cli + "' gen --size " + std::to_string(n) + " --seed " + std::to_string(s);
    int st1 = 0, st2 = 0;
    const std::string a = run_capture(cmd, st1);
    const std::string b = run_capture(cmd, st2);
    const std::string want = sexpr::serialize(oracle::random_tree(n, s)) + "\n";
    std::string why;
    if (st1 != 0 || st2 != 0)
      why = "exit status " + std::to_string(st1) + "/" + std::to_string(st2);
    else if (a != b) why = "two runs differ";
    else if (a != want) why = "differs from the library generator";
    else {
      try {
        const Tree64 t = sexpr::parse(a.substr(0, a.size() - 1));
        if (t.size() != n) why = "wrong size";
      } catch (const std::exception& e) {
        why = std::string("output rejected: ") + e.what();
      }
    }
    o.expect(why.empty(), [&] { return cmd + ": " + why; });
  }
  return o;
}

/// Split, insert and union costs over random sorted sets. Reported only.
std::vector<std::string> set_cost_notes() {
  oracle::SplitMix64 rng(kSeed);
  struct Acc {
    std::string op;
    Cost max{};
    std::uint64_t work = 0, count = 0;
    void add(const Cost& c) {
      max = {std::max(max.work, c.work), std::max(max.span, c.span)};
      work += c.work;
      ++count;
    }
  } split_acc{"split"}, insert_acc{"insert"}, union_acc{"union"};
  for (std::size_t i = 0; i < kRandomSetInstances; ++i) {
    const std::size_t n1 = rng.below(kRandomSetMaxSize + 1);
    const std::size_t n2 = rng.below(kRandomSetMaxSize + 1);
    const Seq<Key> s1(oracle::relabel(oracle::random_joined_tree(n1, rng.next()),
                                      [](Key k) { return 2 * k; }));
    const Seq<Key> s2(oracle::relabel(oracle::random_joined_tree(n2, rng.next()),
                                      [](Key k) { return 3 * k + 1; }));
    const Key probe = static_cast<Key>(rng.below(2 * n1 + 5)) - 2;
    split_acc.add(split(s1, probe, SortCheck::Trust).cost);
    insert_acc.add(insert(s1, probe, SortCheck::Trust).cost);
    union_acc.add(set_union(s1, s2, SortCheck::Trust).cost);
  }
  std::vector<std::string> notes{"cost measured, not asserted (" +
                                 std::to_string(kRandomSetInstances) +
                                 " random instances, sizes up to " +
                                 std::to_string(kRandomSetMaxSize) + "):"};
  for (const Acc* a : {&split_acc, &insert_acc, &union_acc})
    notes.push_back("  " + a->op + ": mean work " + std::to_string(a->work / a->count) +
                    ", max work " + std::to_string(a->max.work) + ", max span " +
                    std::to_string(a->max.span));
  return notes;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: acceptance <rbjoin CLI>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const auto started = std::chrono::steady_clock::now();

  props::TreeOutcomes enum_trees;
  {
    Phase p("tree checks over every enumerated tree, bh <= 2");
    for (unsigned bh = 0; bh <= kMaxBh; ++bh)
      oracle::for_each_tree(std::nullopt, bh,
                            [&](const Tree64& t) { props::check_tree(t, enum_trees); });
  }

  props::JoinOutcomes enum_joins;
  std::size_t population_size = 0;
  {
    Phase p("join checks over all ordered pairs of the enumerated population");
    const auto population = oracle::population(kMaxBh, kRedBh2Sample);
    population_size = population.size();
    props::check_join_all_pairs(population, enum_joins);
  }

  props::TreeOutcomes pool_trees;
  props::JoinOutcomes pool_joins;
  {
    Phase p("random pool: 10000 trees up to 100000 keys, 10000 joins");
    props::RandomPoolConfig config;
    config.trials = kPoolTrees;
    config.max_size = kPoolMaxSize;
    config.seed = kSeed;
    config.tree_checks = {.recursor = false, .round_trip = false};
    props::check_random_pool(config, pool_trees, pool_joins);
  }

  props::SetOutcomes enum_sets;
  {
    Phase p("split, insert and union over every enumerated sorted tree");
    const auto partners = oracle::population(kMaxBh, kUnionClassCap);
    std::vector<Tree64> odd;
    for (const auto& t : partners)
      odd.push_back(oracle::relabel(t, [](Key k) { return 3 * k + 1; }));
    std::size_t i = 0;
    for (unsigned bh = 0; bh <= kMaxBh; ++bh)
      oracle::for_each_tree(std::nullopt, bh, [&](const Tree64& t) {
        props::check_sorted_tree(t, enum_sets);
        props::check_union_pair(t, odd[i++ % odd.size()], enum_sets);
      }, {0, 2});
    for (const auto& a : partners)
      for (const auto& b : odd)
        props::check_union_pair(oracle::relabel(a, [](Key k) { return 2 * k; }), b, enum_sets);
  }

  props::SetOutcomes random_sets;
  std::vector<std::string> cost_notes;
  {
    Phase p("split, insert and union over 1000 random instances");
    props::check_sets_random(kRandomSetInstances, kRandomSetMaxSize, kSeed, random_sets);
    cost_notes = set_cost_notes();
  }

  Outcome gen;
  {
    Phase p("CLI generator determinism");
    gen = gen_determinism(cli);
  }

  auto tagged = [](Outcome o, const std::string& where) {
    o.name = where + ": " + o.name;
    return o;
  };
  const std::string enumerated = "enumerated";
  const std::string pairs = std::to_string(population_size) + "^2 enumerated pairs";
  const std::string pool = "random pool";

  const std::vector<Criterion> criteria = {
      {1,
       "join correctness over all enumerated pairs, bh <= 2",
       {tagged(enum_joins.correctness, pairs), tagged(enum_joins.sharing, pairs)},
       {"population: every shape with bh <= 2 except red bh 2, sampled at " +
        std::to_string(kRedBh2Sample) + " evenly spaced shapes"}},
      {2,
       "join cost: work = span <= 1 + 2(max bh - min bh) and <= size-form bound",
       {tagged(enum_joins.cost, pairs), tagged(pool_joins.cost, pool),
        tagged(pool_joins.correctness, pool), tagged(pool_joins.sharing, pool)},
       {}},
      {3,
       "join_right/join_left strengthened bound by root color; violations only from red roots",
       {tagged(enum_joins.join_right, pairs)},
       {}},
      {4,
       "black-height/size lemmas",
       {tagged(enum_trees.valid, enumerated), tagged(enum_trees.height_lemmas, enumerated),
        tagged(pool_trees.valid, pool), tagged(pool_trees.height_lemmas, pool),
        tagged(pool_trees.shape, pool)},
       {}},
      {5,
       "sum value, work = |t|, span <= 1 + 2 ceil(log2(1+|t|)), span <= 2bh for black roots",
       {tagged(enum_trees.sum, enumerated), tagged(pool_trees.sum, pool)},
       {}},
      {6,
       "join_left equals the mirror image of join_right, value and cost",
       {tagged(enum_joins.mirror, pairs)},
       {}},
      {7,
       "split/insert/union agree with sorted-list models; union(empty, s) = s",
       {tagged(enum_sets.split, enumerated), tagged(enum_sets.insert, enumerated),
        tagged(enum_sets.set_union, enumerated), tagged(enum_sets.union_base, enumerated),
        tagged(random_sets.split, "random"), tagged(random_sets.insert, "random"),
        tagged(random_sets.set_union, "random"), tagged(random_sets.union_base, "random")},
       cost_notes},
      {8,
       "format round-trip on the full enumeration; CLI generator deterministic",
       {tagged(enum_trees.round_trip, enumerated), gen},
       {}},
  };

  bool all = true;
  for (const auto& c : criteria) all = report(c) && all;
  const std::chrono::duration<double> total = std::chrono::steady_clock::now() - started;
  std::printf("%s: %zu criteria, total %.1fs\n", all ? "ALL PASS" : "SOME FAILED", criteria.size(),
              total.count());
  return all ? 0 : 1;
}

// rbjoin: generate, validate and operate on red-black trees in the
// s-expression format, run the property suites, and write cost reports.
//
// Exit codes: 0 success, 1 property or validation failure, 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rbjoin/bounds.hpp"
#include "rbjoin/join.hpp"
#include "rbjoin/oracle.hpp"
#include "rbjoin/props.hpp"
#include "rbjoin/sequence.hpp"
#include "rbjoin/sexpr.hpp"

namespace {

using rbjoin::oracle::Key;
using rbjoin::oracle::Tree64;

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input rejected by the tree format or the tree invariants.
struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_all(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

std::string path_text(const std::string& path) { return path.empty() ? "root" : path; }

Tree64 load_tree(const std::string& path) {
  const std::string text = trim(read_all(path));
  try {
    return rbjoin::sexpr::parse(text);
  } catch (const rbjoin::sexpr::ParseError& e) {
    throw BadInput(path + ": parse error at " + e.what());
  } catch (const rbjoin::InvariantViolation& e) {
    throw BadInput(path + ": " + e.what());
  }
}

std::string cost_line(const rbjoin::Cost& c) {
  return "work=" + std::to_string(c.work) + ",span=" + std::to_string(c.span);
}

const char* kCsvHeader = "op,n1,n2,size1,size2,work,span,bound_bh,bound_size,within_bound";

struct Row {
  std::string op;
  std::string n1, n2, size1, size2;
  rbjoin::Cost cost;
  std::int64_t bound_bh = 0;
  std::int64_t bound_size = 0;
  bool within = false;

  std::string csv() const {
    std::ostringstream out;
    out << op << ',' << n1 << ',' << n2 << ',' << size1 << ',' << size2 << ',' << cost.work << ','
        << cost.span << ',' << bound_bh << ',' << bound_size << ',' << (within ? "true" : "false");
    return out.str();
  }
};

/// Joins t1 and t2 around a and checks the cost against both bounds.
Row join_row(const Tree64& t1, Key a, const Tree64& t2, Tree64* result = nullptr) {
  auto r = rbjoin::join(t1, a, t2);
  Row row;
  row.op = "join";
  row.n1 = std::to_string(t1.black_height());
  row.n2 = std::to_string(t2.black_height());
  row.size1 = std::to_string(t1.size());
  row.size2 = std::to_string(t2.size());
  row.cost = r.cost;
  row.bound_bh = rbjoin::bounds::join_bh(t1.black_height(), t2.black_height());
  row.bound_size = rbjoin::bounds::join_size(t1.size(), t2.size());
  const auto w = static_cast<std::int64_t>(r.cost.work);
  row.within = r.cost.work == r.cost.span && w <= row.bound_bh && w <= row.bound_size;
  if (result) *result = std::move(r.value);
  return row;
}

Row sum_row(const Tree64& t) {
  auto r = rbjoin::sum(rbjoin::Seq<Key>(t));
  Row row;
  row.op = "sum";
  row.n1 = std::to_string(t.black_height());
  row.size1 = std::to_string(t.size());
  row.cost = r.cost;
  row.bound_bh = rbjoin::bounds::sum_span_bh(t.color(), t.black_height());
  row.bound_size = rbjoin::bounds::sum_span_size(t.size());
  const auto s = static_cast<std::int64_t>(r.cost.span);
  row.within = r.cost.work == t.size() && s <= row.bound_bh && s <= row.bound_size;
  return row;
}

std::optional<rbjoin::Color> parse_color(const std::string& c) {
  if (c.empty()) return std::nullopt;
  return c == "R" ? rbjoin::Color::Red : rbjoin::Color::Black;
}

// --- commands ---------------------------------------------------------------

struct GenArgs {
  std::optional<std::uint64_t> size;
  std::uint64_t seed = 1;
  bool enumerate = false;
  std::optional<unsigned> bh;
  std::string color;
};

int cmd_gen(const GenArgs& g) {
  if (g.enumerate) {
    if (!g.bh) throw UsageError("--enumerate needs --bh");
    if (g.size) throw UsageError("--size and --enumerate are exclusive");
    rbjoin::oracle::for_each_tree(parse_color(g.color), *g.bh, [](const Tree64& t) {
      std::cout << rbjoin::sexpr::serialize(t) << '\n';
    });
    return kOk;
  }
  if (!g.size) throw UsageError("gen needs --size or --enumerate");
  if (g.bh || !g.color.empty()) throw UsageError("--bh and --color apply to --enumerate only");
  std::cout << rbjoin::sexpr::serialize(rbjoin::oracle::random_tree(*g.size, g.seed)) << '\n';
  return kOk;
}

/// Each non-empty line of the input is one tree.
int cmd_validate(const std::string& path) {
  std::istringstream in(read_all(path));
  std::string line;
  int status = kOk;
  std::size_t lineno = 0, trees = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    ++trees;
    const std::string where = path + ":" + std::to_string(lineno) + ": ";
    try {
      const Tree64 t = rbjoin::sexpr::parse(line, rbjoin::sexpr::Mode::Unchecked);
      if (auto f = rbjoin::validate(t)) {
        std::cout << where << rbjoin::rule_name(f->rule) << " at " << path_text(f->path) << ": "
                  << f->reason << '\n';
        status = kFailure;
      }
    } catch (const rbjoin::sexpr::ParseError& e) {
      std::cout << where << "parse error at " << e.what() << '\n';
      status = kFailure;
    }
  }
  if (trees == 0) {
    std::cout << path << ": no tree\n";
    return kFailure;
  }
  if (status == kOk) std::cout << "ok " << trees << (trees == 1 ? " tree\n" : " trees\n");
  return status;
}

int cmd_join(const std::string& f1, Key a, const std::string& f2, const std::string& report) {
  const Tree64 t1 = load_tree(f1), t2 = load_tree(f2);
  Tree64 result;
  const Row row = join_row(t1, a, t2, &result);
  if (report == "csv") {
    std::cout << "# result=" << rbjoin::sexpr::serialize(result) << '\n'
              << kCsvHeader << '\n'
              << row.csv() << '\n';
  } else {
    std::cout << rbjoin::sexpr::serialize(result) << '\n' << cost_line(row.cost) << '\n';
  }
  return kOk;
}

int cmd_sum(const std::string& f) {
  const auto r = rbjoin::sum(rbjoin::Seq<Key>(load_tree(f)));
  std::cout << r.value << '\n' << cost_line(r.cost) << '\n';
  return kOk;
}

int cmd_split(const std::string& f, Key a) {
  const auto r = rbjoin::split(rbjoin::Seq<Key>(load_tree(f)), a, rbjoin::SortCheck::Verify);
  std::cout << rbjoin::sexpr::serialize(r.value.left.tree()) << '\n'
            << (r.value.middle ? std::to_string(*r.value.middle) : std::string("none")) << '\n'
            << rbjoin::sexpr::serialize(r.value.right.tree()) << '\n'
            << cost_line(r.cost) << '\n';
  return kOk;
}

int cmd_insert(const std::string& f, Key a) {
  const auto r = rbjoin::insert(rbjoin::Seq<Key>(load_tree(f)), a, rbjoin::SortCheck::Verify);
  std::cout << rbjoin::sexpr::serialize(r.value.tree()) << '\n' << cost_line(r.cost) << '\n';
  return kOk;
}

int cmd_union(const std::string& f1, const std::string& f2) {
  const auto r = rbjoin::set_union(rbjoin::Seq<Key>(load_tree(f1)), rbjoin::Seq<Key>(load_tree(f2)),
                                   rbjoin::SortCheck::Verify);
  std::cout << rbjoin::sexpr::serialize(r.value.tree()) << '\n' << cost_line(r.cost) << '\n';
  return kOk;
}

struct BenchArgs {
  std::size_t trials = 100;
  unsigned max_bh = 2;
  std::uint64_t seed = 1;
  std::string out = "-";
  std::uint64_t class_cap = 64;
  std::size_t max_size = 100000;
};

/// Join rows for every ordered pair of the enumerated population, then
/// `trials` random pairs; sum rows for the population, then the random trees.
int cmd_bench(const BenchArgs& b) {
  std::ofstream file;
  if (b.out != "-") {
    file.open(b.out, std::ios::binary);
    if (!file) throw UsageError("cannot write '" + b.out + "'");
  }
  std::ostream& out = b.out == "-" ? std::cout : file;

  const auto population = rbjoin::oracle::population(b.max_bh, b.class_cap);
  std::vector<Tree64> random;
  rbjoin::oracle::SplitMix64 rng(b.seed);
  for (std::size_t i = 0; i < 2 * b.trials; ++i) {
    const std::size_t n = rbjoin::oracle::log_uniform_size(rng, b.max_size);
    random.push_back(rbjoin::oracle::random_joined_tree(n, rng.next()));
  }

  std::size_t rows = 0, outside = 0;
  auto emit = [&](const Row& r) {
    out << r.csv() << '\n';
    ++rows;
    if (!r.within) ++outside;
  };
  out << "# seed=" << b.seed << '\n'
      << "# trials=" << b.trials << " max_bh=" << b.max_bh << " class_cap=" << b.class_cap
      << " max_size=" << b.max_size << '\n'
      << kCsvHeader << '\n';
  for (const auto& t1 : population)
    for (const auto& t2 : population) emit(join_row(t1, -1, t2));
  for (std::size_t i = 0; i < b.trials; ++i) emit(join_row(random[2 * i], -1, random[2 * i + 1]));
  for (const auto& t : population) emit(sum_row(t));
  for (const auto& t : random) emit(sum_row(t));
  out.flush();

  std::cerr << rows << " rows, " << outside << " outside bound\n";
  return outside == 0 ? kOk : kFailure;
}

struct PropsArgs {
  std::string level = "exhaustive";
  unsigned max_bh = 2;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::size_t max_size = 10000;
  std::uint64_t class_cap = 1000;
};

int cmd_props(const PropsArgs& p) {
  rbjoin::props::Config config;
  config.level =
      p.level == "random" ? rbjoin::props::Level::Random : rbjoin::props::Level::Exhaustive;
  config.max_bh = p.max_bh;
  config.trials = p.trials;
  config.seed = p.seed;
  config.max_size = p.max_size;
  config.class_cap = p.class_cap;

  std::cout << "# seed=" << p.seed << " level=" << p.level << '\n';
  int status = kOk;
  for (const auto& o : rbjoin::props::run(config)) {
    std::cout << (o.ok() ? "ok   " : "FAIL ") << o.name << " (" << o.checked << " checked";
    if (!o.ok()) std::cout << ", " << o.failures << " failed";
    std::cout << ")\n";
    if (!o.ok()) {
      std::cout << "  counterexample: " << o.counterexample << '\n';
      status = kFailure;
    }
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joinable red-black trees with work/span cost accounting"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Print a seeded random tree or every tree of a black height");
  g->add_option("--size", gen.size, "Number of keys (keys are 0..N-1)");
  g->add_option("--seed", gen.seed, "PRNG seed")->capture_default_str();
  g->add_flag("--enumerate", gen.enumerate, "Print every tree of black height --bh, one per line");
  g->add_option("--bh", gen.bh, "Black height to enumerate")
      ->check(CLI::Range(0u, rbjoin::oracle::kDefaultMaxBlackHeight));
  g->add_option("--color", gen.color, "Root color filter")->check(CLI::IsMember({"R", "B"}));

  std::string validate_in = "-";
  auto* v = app.add_subcommand("validate", "Check every tree in a file (one per line)");
  v->add_option("file", validate_in, "Input file, '-' for stdin")->capture_default_str();

  std::string f1, f2, report = "text";
  Key a = 0;
  auto* j = app.add_subcommand("join", "Join two trees around a middle key");
  j->add_option("t1", f1, "Left tree file")->required();
  j->add_option("a", a, "Middle key")->required();
  j->add_option("t2", f2, "Right tree file")->required();
  j->add_option("--report", report, "Output form")
      ->check(CLI::IsMember({"text", "csv"}))
      ->capture_default_str();

  auto* s = app.add_subcommand("sum", "Sum the keys of a tree");
  s->add_option("t", f1, "Tree file")->required();

  auto* sp = app.add_subcommand("split", "Split a sorted tree at a key");
  sp->add_option("t", f1, "Tree file")->required();
  sp->add_option("a", a, "Split key")->required();

  auto* in = app.add_subcommand("insert", "Insert a key into a sorted tree");
  in->add_option("t", f1, "Tree file")->required();
  in->add_option("a", a, "Key")->required();

  auto* u = app.add_subcommand("union", "Union of two sorted trees");
  u->add_option("t1", f1, "First tree file")->required();
  u->add_option("t2", f2, "Second tree file")->required();

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Write a CSV cost report for join and sum");
  b->add_option("--trials", bench.trials, "Random large join pairs")->capture_default_str();
  b->add_option("--max-bh", bench.max_bh, "Enumerated black heights")
      ->check(CLI::Range(0u, rbjoin::oracle::kDefaultMaxBlackHeight))
      ->capture_default_str();
  b->add_option("--seed", bench.seed, "PRNG seed")->capture_default_str();
  b->add_option("--out", bench.out, "Report file, '-' for stdout")->capture_default_str();
  b->add_option("--class-cap", bench.class_cap, "Shapes kept per (color, bh) class")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  b->add_option("--max-size", bench.max_size, "Largest random tree")->capture_default_str();

  PropsArgs props;
  auto* p = app.add_subcommand("props", "Run the property suites");
  p->add_option("--level", props.level)
      ->check(CLI::IsMember({"exhaustive", "random"}))
      ->capture_default_str();
  p->add_option("--max-bh", props.max_bh, "Enumerated black heights (exhaustive level)")
      ->check(CLI::Range(0u, rbjoin::oracle::kDefaultMaxBlackHeight))
      ->capture_default_str();
  p->add_option("--trials", props.trials, "Random instances (random level)")->capture_default_str();
  p->add_option("--seed", props.seed, "PRNG seed")->capture_default_str();
  p->add_option("--max-size", props.max_size, "Largest random tree")->capture_default_str();
  p->add_option("--class-cap", props.class_cap, "Shapes kept per class in pairwise suites")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*g) return cmd_gen(gen);
    if (*v) return cmd_validate(validate_in);
    if (*j) return cmd_join(f1, a, f2, report);
    if (*s) return cmd_sum(f1);
    if (*sp) return cmd_split(f1, a);
    if (*in) return cmd_insert(f1, a);
    if (*u) return cmd_union(f1, f2);
    if (*b) return cmd_bench(bench);
    if (*p) return cmd_props(props);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const BadInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kFailure;
  } catch (const rbjoin::PreconditionViolation& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return kFailure;
  } catch (const std::overflow_error& e) {
    std::cerr << "overflow: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

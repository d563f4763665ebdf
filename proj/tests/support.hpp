#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rbjoin/oracle.hpp"
#include "rbjoin/sexpr.hpp"

namespace rbjoin::testing {

using Key = std::int64_t;
using T = Tree<Key>;

inline T tree(const std::string& text) { return sexpr::parse(text); }
inline std::string text(const T& t) { return sexpr::serialize(t); }

inline std::vector<T> all_trees(unsigned max_bh) {
  std::vector<T> out;
  for (unsigned bh = 0; bh <= max_bh; ++bh)
    oracle::for_each_tree(std::nullopt, bh, [&](const T& t) { out.push_back(t); });
  return out;
}

// Red root, black height 1, keys 0..5.
inline const char* kExampleTree = "(R (B (R . 0 .) 1 .) 2 (B (R . 3 .) 4 (R . 5 .)))";

}  // namespace rbjoin::testing

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rbjoin/tree.hpp"

// Text form of a tree:
//   tree  ::= "." | "(" color " " tree " " key " " tree ")"
//   color ::= "R" | "B"
//   key   ::= ["-"] digit+
namespace rbjoin::sexpr {

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t offset, const std::string& what)
      : std::runtime_error("offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

enum class Mode {
  Checked,    // validate after parsing, throw InvariantViolation on failure
  Unchecked,  // accept any well-formed text; for exercising `validate`
};

/// Nesting limit. A valid tree of 2^64 keys is at most 129 nodes deep.
inline constexpr std::size_t kMaxDepth = 256;

std::string serialize(const Tree<std::int64_t>& t);

/// Parses exactly one tree; the whole input must be consumed.
Tree<std::int64_t> parse(std::string_view text, Mode mode = Mode::Checked);

}  // namespace rbjoin::sexpr

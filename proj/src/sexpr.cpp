#include "rbjoin/sexpr.hpp"

#include <charconv>

namespace rbjoin::sexpr {

namespace {

void write(const Tree<std::int64_t>& t, std::string& out) {
  if (t.is_leaf()) {
    out.push_back('.');
    return;
  }
  out.push_back('(');
  out.push_back(color_char(t.color()));
  out.push_back(' ');
  write(t.left(), out);
  out.push_back(' ');
  char buf[24];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, t.key());
  out.append(buf, end);
  out.push_back(' ');
  write(t.right(), out);
  out.push_back(')');
}

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  Tree<std::int64_t> tree(std::size_t depth) {
    if (depth > kMaxDepth) fail("nesting deeper than " + std::to_string(kMaxDepth));
    if (peek() == '.') {
      ++pos_;
      return {};
    }
    expect('(');
    Color c;
    switch (peek()) {
      case 'R': c = Color::Red; break;
      case 'B': c = Color::Black; break;
      default: fail("expected color 'R' or 'B'");
    }
    ++pos_;
    expect(' ');
    auto l = tree(depth + 1);
    expect(' ');
    const std::int64_t k = key();
    expect(' ');
    auto r = tree(depth + 1);
    expect(')');
    return Tree<std::int64_t>::unchecked(c, std::move(l), k, std::move(r));
  }

  bool at_end() const { return pos_ == text_.size(); }
  std::size_t pos() const { return pos_; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::int64_t key() {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    // Leading '+' and a bare '-' are not keys.
    const char* digits = (begin < end && *begin == '-') ? begin + 1 : begin;
    if (digits >= end || *digits < '0' || *digits > '9') fail("expected key");
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec == std::errc::result_out_of_range) fail("key out of 64-bit range");
    if (ec != std::errc()) fail("expected key");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string serialize(const Tree<std::int64_t>& t) {
  std::string out;
  out.reserve(t.size() * 12 + 1);
  write(t, out);
  return out;
}

Tree<std::int64_t> parse(std::string_view text, Mode mode) {
  Parser p(text);
  auto t = p.tree(0);
  if (!p.at_end()) p.fail("trailing input");
  if (mode == Mode::Checked) {
    if (auto f = validate(t))
      throw InvariantViolation(f->rule, rule_name(f->rule) + " at path '" + f->path + "': " +
                                            f->reason);
  }
  return t;
}

}  // namespace rbjoin::sexpr

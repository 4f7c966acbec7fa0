#pragma once

#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "semicover/core.hpp"

namespace semicover {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, unsigned line, unsigned column)
      : std::runtime_error(what + " (line " + std::to_string(line) +
                           ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  unsigned line() const { return line_; }
  unsigned column() const { return column_; }

 private:
  unsigned line_;
  unsigned column_;
};

namespace detail {

struct Token {
  std::string text;
  unsigned line = 1;
  unsigned column = 1;
};

/// Whitespace-separated tokens with 1-based positions; '#' comments run to
/// end of line.
inline std::vector<Token> tokenize(std::istream& in) {
  std::vector<Token> out;
  unsigned line = 1;
  unsigned column = 0;
  bool in_comment = false;
  Token current;
  bool in_token = false;
  auto flush = [&] {
    if (in_token) out.push_back(current);
    in_token = false;
  };
  int ch;
  while ((ch = in.get()) != std::char_traits<char>::eof()) {
    char c = static_cast<char>(ch);
    if (c == '\n') {
      flush();
      in_comment = false;
      ++line;
      column = 0;
      continue;
    }
    ++column;
    if (in_comment) continue;
    if (c == '#') {
      flush();
      in_comment = true;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
      continue;
    }
    if (!in_token) {
      current = {std::string(1, c), line, column};
      in_token = true;
    } else {
      current.text += c;
    }
  }
  flush();
  return out;
}

inline unsigned long parse_uint(const Token& tk, const std::string& what,
                                unsigned long max_value) {
  if (tk.text.empty())
    throw ParseError(what + ": empty token", tk.line, tk.column);
  unsigned long v = 0;
  for (char c : tk.text) {
    if (c < '0' || c > '9')
      throw ParseError(what + ": expected a nonnegative integer, got '" +
                           tk.text + "'",
                       tk.line, tk.column);
    v = v * 10 + static_cast<unsigned long>(c - '0');
    if (v > max_value)
      throw ParseError(what + ": value " + tk.text + " exceeds maximum " +
                           std::to_string(max_value),
                       tk.line, tk.column);
  }
  return v;
}

} // namespace detail

/// Table file format: UTF-8 text, '#' comments, first token the order n,
/// then n*n whitespace-separated products in [0, n), row-major (row i lists
/// i*0 ... i*(n-1)). Trailing tokens are rejected.
inline CayleyTable parse_table(std::istream& in) {
  auto toks = detail::tokenize(in);
  if (toks.empty()) throw ParseError("expected table order, found end of input", 1, 1);
  unsigned long n = detail::parse_uint(toks[0], "order", kMaxOrder);
  if (n == 0) throw ParseError("order must be positive", toks[0].line, toks[0].column);
  std::size_t need = 1 + static_cast<std::size_t>(n) * n;
  if (toks.size() < need) {
    const auto& last = toks.back();
    throw ParseError("expected " + std::to_string(need - 1) +
                         " table entries, found only " +
                         std::to_string(toks.size() - 1),
                     last.line, last.column);
  }
  if (toks.size() > need)
    throw ParseError("unexpected trailing token '" + toks[need].text + "'",
                     toks[need].line, toks[need].column);
  std::vector<element_id> products;
  products.reserve(need - 1);
  for (std::size_t i = 1; i < need; ++i)
    products.push_back(static_cast<element_id>(
        detail::parse_uint(toks[i], "table entry", n - 1)));
  return CayleyTable(static_cast<unsigned>(n), std::move(products));
}

inline CayleyTable parse_table_string(const std::string& text) {
  std::istringstream ss(text);
  return parse_table(ss);
}

inline CayleyTable parse_table_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open table file: " + path);
  return parse_table(f);
}

inline std::string format_table(const CayleyTable& t) {
  std::string s = std::to_string(t.order());
  s += '\n';
  for (unsigned i = 0; i < t.order(); ++i) {
    for (unsigned j = 0; j < t.order(); ++j) {
      if (j) s += ' ';
      s += std::to_string(t.product(i, j));
    }
    s += '\n';
  }
  return s;
}

/// Result of reading a partition code. Codes are per-element block labels;
/// input need not be in restricted-growth normal form, but is normalized
/// (was_normal reports whether anything changed).
struct ParsedPartition {
  Partition partition;
  bool was_normal = true;
  std::vector<unsigned> code; // normalized
};

inline ParsedPartition parse_partition_code(const std::string& text, unsigned order) {
  std::istringstream ss(text);
  auto toks = detail::tokenize(ss);
  if (toks.size() != order) {
    unsigned line = toks.empty() ? 1 : toks.back().line;
    unsigned col = toks.empty() ? 1 : toks.back().column;
    throw ParseError("partition code has " + std::to_string(toks.size()) +
                         " labels, expected " + std::to_string(order),
                     line, col);
  }
  std::vector<unsigned> labels;
  labels.reserve(order);
  for (const auto& tk : toks)
    labels.push_back(static_cast<unsigned>(
        detail::parse_uint(tk, "partition label", kMaxOrder)));
  Partition p = Partition::from_code(labels);
  std::vector<unsigned> normal = p.code();
  bool was_normal = normal == labels;
  return {std::move(p), was_normal, std::move(normal)};
}

inline std::string format_partition_code(const std::vector<unsigned>& code) {
  std::string s;
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(code[i]);
  }
  return s;
}

} // namespace semicover

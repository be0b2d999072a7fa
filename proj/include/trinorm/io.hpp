#pragma once

// Tensor text format: first non-comment line is "d1 d2 d3", followed by
// d1*d2*d3 whitespace-separated entries in lexicographic (i, j, k) order with
// k fastest. Lines starting with '#' are comments. Parsing and printing go
// through std::from_chars / std::to_chars, so they are locale-independent and
// entries round-trip bit-exactly.

#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "trinorm/tensor.hpp"

namespace trinorm {

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error("line " + std::to_string(line_) + ", col " + std::to_string(col_) +
                           ": " + msg),
        line(line_),
        col(col_) {}
};

namespace detail {

struct Token {
  std::string text;
  int line;
  int col;
};

inline std::vector<Token> tokenize(const std::string& input) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  const std::size_t n = input.size();
  while (i < n) {
    const char c = input[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
    } else if (c == '#') {
      while (i < n && input[i] != '\n') ++i;
    } else if (c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f') {
      ++col;
      ++i;
    } else {
      const int start_col = col;
      std::string tok;
      while (i < n && input[i] != '\n' && input[i] != '#' && input[i] != ' ' &&
             input[i] != '\t' && input[i] != '\r' && input[i] != '\v' && input[i] != '\f') {
        tok.push_back(input[i]);
        ++i;
        ++col;
      }
      out.push_back({std::move(tok), line, start_col});
    }
  }
  return out;
}

inline int parse_dim(const Token& t) {
  int v = 0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw ParseError("expected a positive integer dimension, got '" + t.text + "'", t.line, t.col);
  if (v < 1) throw ParseError("dimensions must be positive, got '" + t.text + "'", t.line, t.col);
  return v;
}

inline double parse_real(const Token& t) {
  double v = 0.0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw ParseError("expected a real number, got '" + t.text + "'", t.line, t.col);
  return v;
}

}  // namespace detail

// Shortest decimal string that parses back to exactly the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline Tensor3 parse_tensor(const std::string& input) {
  const std::vector<detail::Token> toks = detail::tokenize(input);
  if (toks.size() < 3) throw ParseError("expected header 'd1 d2 d3'", 1, 1);
  const int d1 = detail::parse_dim(toks[0]);
  const int d2 = detail::parse_dim(toks[1]);
  const int d3 = detail::parse_dim(toks[2]);
  const std::size_t want = static_cast<std::size_t>(d1) * d2 * d3;
  if (toks.size() - 3 != want) {
    const detail::Token& at = toks.size() > 3 ? toks[3] : toks[2];
    throw ParseError("expected " + std::to_string(want) + " entries for a " +
                         std::to_string(d1) + "x" + std::to_string(d2) + "x" + std::to_string(d3) +
                         " tensor, got " + std::to_string(toks.size() - 3),
                     at.line, at.col);
  }
  std::vector<double> entries;
  entries.reserve(want);
  for (std::size_t i = 3; i < toks.size(); ++i) {
    const double v = detail::parse_real(toks[i]);
    if (!std::isfinite(v))
      throw ParseError("entries must be finite, got '" + toks[i].text + "'", toks[i].line,
                       toks[i].col);
    entries.push_back(v);
  }
  return Tensor3(d1, d2, d3, std::move(entries));
}

inline Tensor3 load_tensor(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_tensor(ss.str());
}

// One header line, then one line per (i, j) row of d3 entries.
inline std::string write_tensor(const Tensor3& A) {
  std::string out = std::to_string(A.d1()) + " " + std::to_string(A.d2()) + " " +
                    std::to_string(A.d3()) + "\n";
  for (int i = 0; i < A.d1(); ++i)
    for (int j = 0; j < A.d2(); ++j) {
      for (int k = 0; k < A.d3(); ++k) {
        out += format_double(A(i, j, k));
        out += (k + 1 == A.d3()) ? '\n' : ' ';
      }
    }
  return out;
}

}  // namespace trinorm

#pragma once

#include <stdexcept>
#include <string>

namespace bps {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input text rejected by a parser. Positions are 1-based; 0 means unknown.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t line = 0, std::size_t col = 0)
      : Error(format(msg, line, col)), line(line), col(col) {}

  std::size_t line;
  std::size_t col;

 private:
  static std::string format(const std::string& msg, std::size_t line, std::size_t col) {
    if (line == 0 && col == 0) return "parse error: " + msg;
    if (line == 0) return "parse error at column " + std::to_string(col) + ": " + msg;
    if (col == 0) return "parse error at line " + std::to_string(line) + ": " + msg;
    return "parse error at " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg;
  }
};

// A structurally well-formed model violates a semantic requirement.
struct ModelError : Error {
  using Error::Error;
};

}  // namespace bps

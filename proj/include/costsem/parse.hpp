#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "costsem/ma.hpp"
#include "costsem/stlc.hpp"

// Surface-syntax parsers. Binders are named in the source and resolved to
// de Bruijn indices; assignables may be referenced by their dcl-bound name or
// by a literal index (counted from outside the enclosing declarations).
namespace costsem::parse {

struct ParseError : std::runtime_error {
  ParseError(int line, int col, const std::string& message,
             const std::string& expected_tokens)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) +
                           ": " + message +
                           (expected_tokens.empty() ? ""
                                                    : " (expected " +
                                                          expected_tokens + ")")),
        line(line),
        col(col),
        expected(expected_tokens) {}
  int line;
  int col;
  std::string expected;
};

struct ScopeError : ParseError {
  using ParseError::ParseError;
};

stlc::TmPtr parse_stlc(std::string_view src);

using MaProgram = std::variant<ma::ExpPtr, ma::CmdPtr>;
MaProgram parse_ma(std::string_view src);

}  // namespace costsem::parse

//===-- parser.hpp - GIL text format --------------------------------------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//

#ifndef GIL_PARSER_HPP
#define GIL_PARSER_HPP

#include "gil/program.hpp"

#include <stdexcept>
#include <string>

namespace gil {

/// Syntax error with position and what was expected there.
class ParseError : public std::runtime_error {
public:
  ParseError(int line, int col, const std::string &msg)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) +
                           ": " + msg),
        line(line), col(col) {}
  int line, col;
};

/// Parses `.gil` source. Grammar errors throw ParseError; structural issues
/// (bad goto targets etc.) are left to checkProgram.
Prog parseProgram(const std::string &text);

/// Canonical text form; parseProgram(printProgram(p)) is structurally p.
std::string printProgram(const Prog &p);

/// Conveniences for tests and the spec surface syntax.
Expr parseExprText(const std::string &text);
SymExpr parseSymExprText(const std::string &text);
StateAssertion parseStateAssertionText(const std::string &text);

} // namespace gil

#endif // GIL_PARSER_HPP

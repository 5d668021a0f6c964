//===-- program.cpp -------------------------------------------------------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "gil/program.hpp"

#include <sstream>

namespace gil {

bool Cmd::operator==(const Cmd &c) const {
  if (kind != c.kind)
    return false;
  switch (kind) {
  case Kind::Assign: return var == c.var && expr == c.expr;
  case Kind::IfGoto: return expr == c.expr && target == c.target;
  case Kind::Call:
    return var == c.var && expr == c.expr && arg == c.arg &&
           withSubst == c.withSubst;
  case Kind::MemAction:
    return var == c.var && action == c.action && expr == c.expr;
  case Kind::USym:
  case Kind::ISym: return var == c.var && expr == c.expr;
  case Kind::Return:
  case Kind::Fail: return expr == c.expr;
  case Kind::Vanish: return true;
  }
  return false;
}

std::string Cmd::toString() const {
  std::ostringstream os;
  switch (kind) {
  case Kind::Assign:
    os << var << " := " << expr.toString();
    break;
  case Kind::IfGoto:
    os << "goto [" << expr.toString() << "] " << target;
    break;
  case Kind::Call:
    os << var << " := " << expr.toString() << "(" << arg.toString() << ")";
    if (withSubst) {
      os << " with [";
      bool first = true;
      for (const auto &[sv, e] : *withSubst) {
        if (!first)
          os << ", ";
        first = false;
        os << "#" << sv << ": " << e.toString();
      }
      os << "]";
    }
    break;
  case Kind::MemAction:
    os << var << " := <" << action << ">(" << expr.toString() << ")";
    break;
  case Kind::USym:
    os << var << " := usym(" << expr.toString() << ")";
    break;
  case Kind::ISym:
    os << var << " := isym(" << expr.toString() << ")";
    break;
  case Kind::Return:
    os << "return " << expr.toString();
    break;
  case Kind::Fail:
    os << "fail " << expr.toString();
    break;
  case Kind::Vanish:
    os << "vanish";
    break;
  }
  return os.str();
}

std::string PredAtom::toString() const {
  std::ostringstream os;
  os << "<" << pred << ">(";
  bool first = true;
  for (const SymExpr &e : ins) {
    if (!first)
      os << ", ";
    first = false;
    os << e.toString();
  }
  os << ";";
  first = true;
  for (const SymExpr &e : outs) {
    os << (first ? " " : ", ");
    first = false;
    os << e.toString();
  }
  os << ")";
  return os.str();
}

std::string MemAssertion::toString() const {
  if (atoms_.empty())
    return "emp";
  std::ostringstream os;
  bool first = true;
  for (const PredAtom &a : atoms_) {
    if (!first)
      os << " * ";
    first = false;
    os << a.toString();
  }
  return os.str();
}

std::string StateAssertion::toString() const {
  return mem.toString() + " /\\ " + pure.toString();
}

std::string ProcSpec::toString() const {
  std::ostringstream os;
  os << "spec " << procName << "(x) [[ #" << param << " : " << pre.toString()
     << " ]] [[ " << post.toString() << " ]] returns " << ret.toString();
  return os.str();
}

std::vector<CheckIssue> checkProgram(const Prog &p) {
  std::vector<CheckIssue> issues;
  for (const auto &[name, proc] : p.procs) {
    const auto n = proc.body.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Cmd &c = proc.body[i];
      if (c.kind == Cmd::Kind::IfGoto && c.target >= n)
        issues.push_back({true, name, i,
                          "goto target " + std::to_string(c.target) +
                              " out of range (body has " + std::to_string(n) +
                              " commands)"});
    }
    // Terminator check: from every reachable index, some path must reach a
    // return/fail/vanish before running off the end. Reported as a warning.
    bool fallsOff = false;
    if (n == 0) {
      fallsOff = true;
    } else {
      std::vector<bool> seen(n, false);
      std::vector<std::size_t> work{0};
      while (!work.empty()) {
        std::size_t i = work.back();
        work.pop_back();
        if (i >= n) {
          fallsOff = true;
          continue;
        }
        if (seen[i])
          continue;
        seen[i] = true;
        const Cmd &c = proc.body[i];
        switch (c.kind) {
        case Cmd::Kind::Return:
        case Cmd::Kind::Fail:
        case Cmd::Kind::Vanish:
          break;
        case Cmd::Kind::IfGoto:
          if (c.target < n)
            work.push_back(c.target);
          work.push_back(i + 1);
          break;
        default:
          work.push_back(i + 1);
        }
      }
    }
    if (fallsOff)
      issues.push_back(
          {false, name, 0, "a syntactic path can run past the end of the body"});
  }
  for (const auto &[f, spec] : p.specs) {
    if (!p.procs.count(f))
      issues.push_back({true, f, 0, "spec refers to unknown procedure"});
    (void)spec;
  }
  return issues;
}

} // namespace gil

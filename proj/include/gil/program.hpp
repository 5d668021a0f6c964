//===-- program.hpp - GIL programs: commands, procedures, specs -----------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//

#ifndef GIL_PROGRAM_HPP
#define GIL_PROGRAM_HPP

#include "gil/assertions.hpp"
#include "gil/term.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gil {

/// GIL commands. `goto [e] j` jumps to index j when e holds; calls may carry
/// a substitution annotation enabling specification re-use.
struct Cmd {
  enum class Kind : std::uint8_t {
    Assign,     // x := e
    IfGoto,     // goto [e] j
    Call,       // x := e(e')  [with theta]
    MemAction,  // x := <act>(e)
    USym,       // x := usym(e)
    ISym,       // x := isym(e)
    Return,     // return e
    Fail,       // fail e
    Vanish,     // vanish
  };

  Kind kind = Kind::Vanish;
  std::string var;                        // assignment target
  Expr expr;                              // main expression / guard / callee
  Expr arg;                               // call argument
  std::size_t target = 0;                 // goto target
  std::string action;                     // memory action name
  std::optional<std::map<std::string, Expr>> withSubst; // call annotation

  static Cmd assign(std::string x, Expr e) {
    Cmd c;
    c.kind = Kind::Assign;
    c.var = std::move(x);
    c.expr = std::move(e);
    return c;
  }
  static Cmd ifGoto(Expr e, std::size_t j) {
    Cmd c;
    c.kind = Kind::IfGoto;
    c.expr = std::move(e);
    c.target = j;
    return c;
  }
  static Cmd call(std::string x, Expr callee, Expr arg,
                  std::optional<std::map<std::string, Expr>> with = {}) {
    Cmd c;
    c.kind = Kind::Call;
    c.var = std::move(x);
    c.expr = std::move(callee);
    c.arg = std::move(arg);
    c.withSubst = std::move(with);
    return c;
  }
  static Cmd memAction(std::string x, std::string act, Expr e) {
    Cmd c;
    c.kind = Kind::MemAction;
    c.var = std::move(x);
    c.action = std::move(act);
    c.expr = std::move(e);
    return c;
  }
  static Cmd uSym(std::string x, Expr e) {
    Cmd c;
    c.kind = Kind::USym;
    c.var = std::move(x);
    c.expr = std::move(e);
    return c;
  }
  static Cmd iSym(std::string x, Expr e) {
    Cmd c;
    c.kind = Kind::ISym;
    c.var = std::move(x);
    c.expr = std::move(e);
    return c;
  }
  static Cmd ret(Expr e) {
    Cmd c;
    c.kind = Kind::Return;
    c.expr = std::move(e);
    return c;
  }
  static Cmd fail(Expr e) {
    Cmd c;
    c.kind = Kind::Fail;
    c.expr = std::move(e);
    return c;
  }
  static Cmd vanish() { return Cmd{}; }

  bool operator==(const Cmd &c) const;
  std::string toString() const;
};

/// A procedure: identifier, one formal parameter, command list.
struct Proc {
  std::string name;
  std::string param;
  std::vector<Cmd> body;

  bool operator==(const Proc &o) const {
    return name == o.name && param == o.param && body == o.body;
  }
};

/// A procedure specification { #x, P } f(x) { Q }^e.
struct ProcSpec {
  std::string param;        // the symbolic variable holding the parameter
  StateAssertion pre;
  std::string procName;
  StateAssertion post;
  SymExpr ret = seTrue();

  bool operator==(const ProcSpec &o) const {
    return param == o.param && pre == o.pre && procName == o.procName &&
           post == o.post && ret == o.ret;
  }
  std::string toString() const;
};

/// One specification per procedure.
using SpecTable = std::map<std::string, ProcSpec>;

/// A GIL program: procedures by name, plus the spec table.
struct Prog {
  std::map<std::string, Proc> procs;
  SpecTable specs;

  bool operator==(const Prog &o) const {
    return procs == o.procs && specs == o.specs;
  }

  const Proc &procOf(const std::string &f) const {
    auto it = procs.find(f);
    if (it == procs.end())
      throw EngineFault("unknown procedure '" + f + "'");
    return it->second;
  }
};

/// Structural well-formedness diagnostics, beyond what the grammar enforces.
struct CheckIssue {
  bool isError = true;
  std::string proc;
  std::size_t cmdIndex = 0;
  std::string message;
};

/// Checks goto targets, call annotations, spec references, and (as warnings)
/// that every syntactic path ends in return or fail.
std::vector<CheckIssue> checkProgram(const Prog &p);

} // namespace gil

#endif // GIL_PROGRAM_HPP

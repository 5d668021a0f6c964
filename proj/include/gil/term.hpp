//===-- term.hpp - GIL expressions and symbolic expressions -------------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//

#ifndef GIL_TERM_HPP
#define GIL_TERM_HPP

#include "gil/value.hpp"

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>

namespace gil {

/// Expr and SymExpr share their tree shape: a value literal, a variable, or
/// an operator applied to subterms. The tag only decides what "variable"
/// means (program variable `x` vs symbolic variable `#x`), which keeps the
/// two sorts apart at the type level.
template <char VarSigil> class TermT {
public:
  enum class Kind : std::uint8_t { Lit, Var, Unary, Binary };

  TermT() : TermT(lit(Value::boolean(false))) {}

  static TermT lit(Value v) {
    return TermT(std::make_shared<Node>(Node{Kind::Lit, std::move(v), {}, UnOp::Not,
                                             BinOp::Eq, nullptr, nullptr}));
  }
  static TermT var(std::string name) {
    return TermT(std::make_shared<Node>(Node{Kind::Var, Value(), std::move(name),
                                             UnOp::Not, BinOp::Eq, nullptr,
                                             nullptr}));
  }
  static TermT unary(UnOp op, TermT a) {
    return TermT(std::make_shared<Node>(
        Node{Kind::Unary, Value(), {}, op, BinOp::Eq, a.node_, nullptr}));
  }
  static TermT binary(BinOp op, TermT a, TermT b) {
    return TermT(std::make_shared<Node>(
        Node{Kind::Binary, Value(), {}, UnOp::Not, op, a.node_, b.node_}));
  }

  Kind kind() const { return node_->kind; }
  bool isLit() const { return kind() == Kind::Lit; }
  bool isVar() const { return kind() == Kind::Var; }
  bool isUnary() const { return kind() == Kind::Unary; }
  bool isBinary() const { return kind() == Kind::Binary; }

  const Value &value() const { return node_->lit; }
  const std::string &varName() const { return node_->var; }
  UnOp unOp() const { return node_->uop; }
  BinOp binOp() const { return node_->bop; }
  TermT left() const { return TermT(node_->a); }
  TermT right() const { return TermT(node_->b); }

  /// True for the literal `true`.
  bool isTrue() const { return isLit() && value().isBool() && value().asBool(); }
  bool isFalse() const {
    return isLit() && value().isBool() && !value().asBool();
  }

  int compare(const TermT &o) const {
    if (node_ == o.node_)
      return 0;
    if (kind() != o.kind())
      return kind() < o.kind() ? -1 : 1;
    switch (kind()) {
    case Kind::Lit: return value().compare(o.value());
    case Kind::Var: return varName().compare(o.varName());
    case Kind::Unary: {
      if (unOp() != o.unOp())
        return unOp() < o.unOp() ? -1 : 1;
      return left().compare(o.left());
    }
    default: {
      if (binOp() != o.binOp())
        return binOp() < o.binOp() ? -1 : 1;
      if (int c = left().compare(o.left()))
        return c;
      return right().compare(o.right());
    }
    }
  }

  bool operator==(const TermT &o) const { return compare(o) == 0; }
  bool operator!=(const TermT &o) const { return compare(o) != 0; }
  bool operator<(const TermT &o) const { return compare(o) < 0; }

  /// All variables occurring syntactically.
  void collectVars(std::set<std::string> &out) const {
    switch (kind()) {
    case Kind::Lit: return;
    case Kind::Var: out.insert(varName()); return;
    case Kind::Unary: left().collectVars(out); return;
    case Kind::Binary:
      left().collectVars(out);
      right().collectVars(out);
      return;
    }
  }
  std::set<std::string> vars() const {
    std::set<std::string> out;
    collectVars(out);
    return out;
  }

  /// All symbol values occurring in literals (used by renamings).
  void collectSymbols(std::set<std::string> &out) const {
    switch (kind()) {
    case Kind::Lit: collectSymbolsOf(value(), out); return;
    case Kind::Var: return;
    case Kind::Unary: left().collectSymbols(out); return;
    case Kind::Binary:
      left().collectSymbols(out);
      right().collectSymbols(out);
      return;
    }
  }

  static void collectSymbolsOf(const Value &v, std::set<std::string> &out) {
    if (v.isSymbol())
      out.insert(v.sym().name);
    else if (v.isList())
      for (const Value &e : v.asList())
        collectSymbolsOf(e, out);
  }

  /// Variable-by-variable substitution. Variables outside the map are kept.
  TermT substitute(const std::map<std::string, TermT> &sub) const {
    switch (kind()) {
    case Kind::Lit: return *this;
    case Kind::Var: {
      auto it = sub.find(varName());
      return it == sub.end() ? *this : it->second;
    }
    case Kind::Unary: {
      TermT a = left().substitute(sub);
      return a.node_ == node_->a ? *this : unary(unOp(), a);
    }
    default: {
      TermT a = left().substitute(sub), b = right().substitute(sub);
      return (a.node_ == node_->a && b.node_ == node_->b)
                 ? *this
                 : binary(binOp(), a, b);
    }
    }
  }

  /// Renames symbol values inside literals (locations under a renaming).
  TermT mapSymbols(const std::function<Value(const Value &)> &f) const {
    switch (kind()) {
    case Kind::Lit: return lit(mapSymbolsOf(value(), f));
    case Kind::Var: return *this;
    case Kind::Unary: return unary(unOp(), left().mapSymbols(f));
    default: return binary(binOp(), left().mapSymbols(f), right().mapSymbols(f));
    }
  }

  static Value mapSymbolsOf(const Value &v,
                            const std::function<Value(const Value &)> &f) {
    if (v.isSymbol())
      return f(v);
    if (v.isList()) {
      Value::List out;
      out.reserve(v.asList().size());
      for (const Value &e : v.asList())
        out.push_back(mapSymbolsOf(e, f));
      return Value::list(std::move(out));
    }
    return v;
  }

  /// Evaluates a variable-free term concretely.
  Value evalClosed() const {
    switch (kind()) {
    case Kind::Lit: return value();
    case Kind::Var:
      throw EngineFault("unbound variable '" + varName() + "' in evaluation");
    case Kind::Unary: return evalUnOp(unOp(), left().evalClosed());
    default: return evalBinOp(binOp(), left().evalClosed(), right().evalClosed());
    }
  }

  std::string toString() const {
    std::ostringstream os;
    print(os, 0);
    return os.str();
  }

private:
  struct Node {
    Kind kind;
    Value lit;
    std::string var;
    UnOp uop;
    BinOp bop;
    std::shared_ptr<const Node> a, b;
  };

  explicit TermT(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static int precOf(BinOp op) {
    switch (op) {
    case BinOp::Implies: return 1;
    case BinOp::Or: return 2;
    case BinOp::And: return 3;
    case BinOp::Eq:
    case BinOp::Lt:
    case BinOp::Leq:
    case BinOp::Gt:
    case BinOp::Geq: return 4;
    case BinOp::Cons: return 5;
    case BinOp::LCat: return 6;
    case BinOp::Add:
    case BinOp::Sub: return 7;
    case BinOp::Mul:
    case BinOp::Div:
    case BinOp::Mod: return 8;
    default: return 10; // scat/lnth print as calls
    }
  }

  void print(std::ostream &os, int parentPrec) const {
    switch (kind()) {
    case Kind::Lit:
      os << value().toString();
      return;
    case Kind::Var:
      if (VarSigil != '\0')
        os << VarSigil;
      os << varName();
      return;
    case Kind::Unary:
      if (unOp() == UnOp::Neg) {
        os << "-";
        left().print(os, 9);
      } else {
        os << unOpName(unOp()) << "(";
        left().print(os, 0);
        os << ")";
      }
      return;
    case Kind::Binary: {
      BinOp op = binOp();
      if (op == BinOp::SCat || op == BinOp::LNth) {
        os << binOpName(op) << "(";
        left().print(os, 0);
        os << ", ";
        right().print(os, 0);
        os << ")";
        return;
      }
      int prec = precOf(op);
      bool paren = prec < parentPrec;
      if (paren)
        os << "(";
      // Right-associative: =>, ::. Everything else left-associative.
      bool rightAssoc = (op == BinOp::Implies || op == BinOp::Cons);
      left().print(os, rightAssoc ? prec + 1 : prec);
      os << " " << binOpName(op) << " ";
      right().print(os, rightAssoc ? prec : prec + 1);
      if (paren)
        os << ")";
      return;
    }
    }
  }

  std::shared_ptr<const Node> node_;
};

/// Program expressions: values, program variables, operators.
using Expr = TermT<'\0'>;
/// Symbolic expressions: values, symbolic variables, operators.
using SymExpr = TermT<'#'>;

/// Simplification: constant-folds ground subterms, applies boolean and
/// equality identities. Logically equivalent to the input, idempotent.
/// Throws EngineFault on ill-sorted ground applications.
SymExpr simplify(const SymExpr &e);

/// svars(e): the symbolic variables occurring in e.
inline std::set<std::string> svars(const SymExpr &e) { return e.vars(); }

/// Builds a list term; stays a literal when every element is one.
SymExpr makeListTerm(const std::vector<SymExpr> &elems);

/// Splits a cons/literal list term back into elements, if it has list shape.
bool splitListTerm(const SymExpr &e, std::vector<SymExpr> &out);

/// Shorthand constructors used all over the engine and tests.
inline SymExpr seLit(Value v) { return SymExpr::lit(std::move(v)); }
inline SymExpr seVar(const std::string &n) { return SymExpr::var(n); }
inline SymExpr seTrue() { return seLit(Value::boolean(true)); }
inline SymExpr seFalse() { return seLit(Value::boolean(false)); }
inline SymExpr seInt(long long i) { return seLit(Value::integer(i)); }
inline SymExpr seAnd(SymExpr a, SymExpr b) {
  return SymExpr::binary(BinOp::And, std::move(a), std::move(b));
}
inline SymExpr seOr(SymExpr a, SymExpr b) {
  return SymExpr::binary(BinOp::Or, std::move(a), std::move(b));
}
inline SymExpr seNot(SymExpr a) { return SymExpr::unary(UnOp::Not, std::move(a)); }
inline SymExpr seEq(SymExpr a, SymExpr b) {
  return SymExpr::binary(BinOp::Eq, std::move(a), std::move(b));
}
inline SymExpr seNeq(SymExpr a, SymExpr b) {
  return seNot(seEq(std::move(a), std::move(b)));
}

} // namespace gil

#endif // GIL_TERM_HPP

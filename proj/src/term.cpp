//===-- term.cpp ----------------------------------------------------------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "gil/term.hpp"

namespace gil {

static bool isGroundFoldable(const SymExpr &e) { return e.isLit(); }

SymExpr simplify(const SymExpr &e) {
  switch (e.kind()) {
  case SymExpr::Kind::Lit:
  case SymExpr::Kind::Var:
    return e;
  case SymExpr::Kind::Unary: {
    SymExpr a = simplify(e.left());
    if (isGroundFoldable(a)) {
      try {
        return seLit(evalUnOp(e.unOp(), a.value()));
      } catch (const EvalFault &) {
        // well-sorted but partial (hd of nil): leave the term as-is
      }
    }
    if (e.unOp() == UnOp::Not) {
      // not(not(x)) = x
      if (a.isUnary() && a.unOp() == UnOp::Not)
        return a.left();
    }
    return SymExpr::unary(e.unOp(), a);
  }
  case SymExpr::Kind::Binary: {
    SymExpr a = simplify(e.left());
    SymExpr b = simplify(e.right());
    BinOp op = e.binOp();
    if (isGroundFoldable(a) && isGroundFoldable(b)) {
      try {
        return seLit(evalBinOp(op, a.value(), b.value()));
      } catch (const EvalFault &) {
      }
    }
    switch (op) {
    case BinOp::And:
      if (a.isTrue())
        return b;
      if (b.isTrue())
        return a;
      if (a.isFalse() || b.isFalse())
        return seFalse();
      if (a == b)
        return a;
      break;
    case BinOp::Or:
      if (a.isFalse())
        return b;
      if (b.isFalse())
        return a;
      if (a.isTrue() || b.isTrue())
        return seTrue();
      if (a == b)
        return a;
      break;
    case BinOp::Implies:
      if (a.isTrue())
        return b;
      if (a.isFalse() || b.isTrue())
        return seTrue();
      if (b.isFalse())
        return simplify(seNot(a));
      break;
    case BinOp::Eq:
      // Identical terms are equal. (Float-sorted symbolic terms are outside
      // the solver fragment, so NaN does not undermine this here.)
      if (a == b)
        return seTrue();
      // Distinct literals fold via evalBinOp above.
      break;
    case BinOp::Add:
      if (a.isLit() && a.value().isInt() && a.value().asInt() == 0)
        return b;
      if (b.isLit() && b.value().isInt() && b.value().asInt() == 0)
        return a;
      break;
    case BinOp::Sub:
      if (b.isLit() && b.value().isInt() && b.value().asInt() == 0)
        return a;
      break;
    case BinOp::Mul:
      if (a.isLit() && a.value().isInt() && a.value().asInt() == 1)
        return b;
      if (b.isLit() && b.value().isInt() && b.value().asInt() == 1)
        return a;
      break;
    default:
      break;
    }
    return SymExpr::binary(op, a, b);
  }
  }
  return e;
}

SymExpr makeListTerm(const std::vector<SymExpr> &elems) {
  bool allLit = true;
  for (const SymExpr &e : elems)
    if (!e.isLit()) {
      allLit = false;
      break;
    }
  if (allLit) {
    Value::List vs;
    vs.reserve(elems.size());
    for (const SymExpr &e : elems)
      vs.push_back(e.value());
    return seLit(Value::list(std::move(vs)));
  }
  SymExpr acc = seLit(Value::nil());
  for (auto it = elems.rbegin(); it != elems.rend(); ++it)
    acc = SymExpr::binary(BinOp::Cons, *it, acc);
  return acc;
}

bool splitListTerm(const SymExpr &e, std::vector<SymExpr> &out) {
  if (e.isLit()) {
    if (!e.value().isList())
      return false;
    for (const Value &v : e.value().asList())
      out.push_back(seLit(v));
    return true;
  }
  if (e.isBinary() && e.binOp() == BinOp::Cons) {
    out.push_back(e.left());
    return splitListTerm(e.right(), out);
  }
  return false;
}

} // namespace gil

//===-- value.cpp ---------------------------------------------------------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "gil/value.hpp"

#include <cctype>
#include <sstream>

namespace gil {

const char *typeConstName(TypeConst t) {
  switch (t) {
  case TypeConst::Int: return "int";
  case TypeConst::Float: return "float";
  case TypeConst::Str: return "str";
  case TypeConst::Bool: return "bool";
  case TypeConst::Sym: return "sym";
  case TypeConst::Proc: return "proc";
  case TypeConst::List: return "list";
  case TypeConst::Type: return "type";
  }
  return "?";
}

bool Value::isLocationName(const std::string &name) {
  if (name.size() < 2 || name[0] != 'l')
    return false;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i])))
      return false;
  return true;
}

TypeConst Value::typeOf() const {
  if (isBool())
    return TypeConst::Bool;
  if (isInt())
    return TypeConst::Int;
  if (isFloat())
    return TypeConst::Float;
  if (isString())
    return TypeConst::Str;
  if (isSymbol())
    return TypeConst::Sym;
  if (isProcId())
    return TypeConst::Proc;
  if (isTypeConst())
    return TypeConst::Type;
  return TypeConst::List;
}

int Value::compare(const Value &o) const {
  if (rep_.index() != o.rep_.index())
    return rep_.index() < o.rep_.index() ? -1 : 1;
  auto cmp3 = [](auto a, auto b) { return a < b ? -1 : (b < a ? 1 : 0); };
  switch (rep_.index()) {
  case 0: return cmp3(asBool(), o.asBool());
  case 1: return cmp3(asInt(), o.asInt());
  case 2: return cmp3(asFloat(), o.asFloat());
  case 3: return asString().compare(o.asString());
  case 4: return sym().name.compare(o.sym().name);
  case 5: return proc().name.compare(o.proc().name);
  case 6: return cmp3(asTypeConst(), o.asTypeConst());
  default: {
    const List &a = asList(), &b = o.asList();
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
      if (int c = a[i].compare(b[i]))
        return c;
    return cmp3(a.size(), b.size());
  }
  }
}

static void escapeInto(std::ostream &os, const std::string &s) {
  os << '"';
  for (char c : s) {
    switch (c) {
    case '"': os << "\\\""; break;
    case '\\': os << "\\\\"; break;
    case '\n': os << "\\n"; break;
    case '\t': os << "\\t"; break;
    default: os << c;
    }
  }
  os << '"';
}

std::string Value::toString() const {
  std::ostringstream os;
  if (isBool()) {
    os << (asBool() ? "true" : "false");
  } else if (isInt()) {
    os << asInt();
  } else if (isFloat()) {
    // Shortest round-trippable form; keep a decimal point so the parser
    // sees a float again.
    std::ostringstream f;
    f.precision(17);
    f << asFloat();
    std::string s = f.str();
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
      s += ".0";
    os << s;
  } else if (isString()) {
    escapeInto(os, asString());
  } else if (isSymbol()) {
    os << '$' << sym().name;
  } else if (isProcId()) {
    os << '@' << proc().name;
  } else if (isTypeConst()) {
    os << '%' << typeConstName(asTypeConst());
  } else {
    os << '[';
    bool first = true;
    for (const Value &v : asList()) {
      if (!first)
        os << ", ";
      first = false;
      os << v.toString();
    }
    os << ']';
  }
  return os.str();
}

const char *unOpName(UnOp op) {
  switch (op) {
  case UnOp::Neg: return "-";
  case UnOp::Not: return "not";
  case UnOp::Head: return "hd";
  case UnOp::Tail: return "tl";
  case UnOp::ListLen: return "llen";
  case UnOp::StrLen: return "slen";
  case UnOp::TypeOf: return "typeof";
  }
  return "?";
}

const char *binOpName(BinOp op) {
  switch (op) {
  case BinOp::Add: return "+";
  case BinOp::Sub: return "-";
  case BinOp::Mul: return "*";
  case BinOp::Div: return "div";
  case BinOp::Mod: return "mod";
  case BinOp::Lt: return "<";
  case BinOp::Leq: return "<=";
  case BinOp::Gt: return ">";
  case BinOp::Geq: return ">=";
  case BinOp::Eq: return "=";
  case BinOp::And: return "and";
  case BinOp::Or: return "or";
  case BinOp::Implies: return "=>";
  case BinOp::Cons: return "::";
  case BinOp::LCat: return "++";
  case BinOp::SCat: return "scat";
  case BinOp::LNth: return "lnth";
  }
  return "?";
}

[[noreturn]] static void sortError(const std::string &op, const Value &v) {
  throw EngineFault("sort error: operator '" + op + "' applied to " +
                    v.toString());
}

Value evalUnOp(UnOp op, const Value &v) {
  switch (op) {
  case UnOp::Neg:
    if (v.isInt())
      return Value::integer(-v.asInt());
    if (v.isFloat())
      return Value::real(-v.asFloat());
    sortError("-", v);
  case UnOp::Not:
    if (v.isBool())
      return Value::boolean(!v.asBool());
    sortError("not", v);
  case UnOp::Head:
    if (v.isList()) {
      if (v.asList().empty())
        throw EvalFault("hd of empty list");
      return v.asList().front();
    }
    sortError("hd", v);
  case UnOp::Tail:
    if (v.isList()) {
      if (v.asList().empty())
        throw EvalFault("tl of empty list");
      return Value::list(
          Value::List(v.asList().begin() + 1, v.asList().end()));
    }
    sortError("tl", v);
  case UnOp::ListLen:
    if (v.isList())
      return Value::integer(static_cast<long long>(v.asList().size()));
    sortError("llen", v);
  case UnOp::StrLen:
    if (v.isString())
      return Value::integer(static_cast<long long>(v.asString().size()));
    sortError("slen", v);
  case UnOp::TypeOf:
    return Value::typeConst(v.typeOf());
  }
  throw EngineFault("unknown unary operator");
}

Value evalBinOp(BinOp op, const Value &a, const Value &b) {
  auto bothInt = [&] { return a.isInt() && b.isInt(); };
  auto bothFloat = [&] { return a.isFloat() && b.isFloat(); };
  switch (op) {
  case BinOp::Add:
    if (bothInt())
      return Value::integer(a.asInt() + b.asInt());
    if (bothFloat())
      return Value::real(a.asFloat() + b.asFloat());
    break;
  case BinOp::Sub:
    if (bothInt())
      return Value::integer(a.asInt() - b.asInt());
    if (bothFloat())
      return Value::real(a.asFloat() - b.asFloat());
    break;
  case BinOp::Mul:
    if (bothInt())
      return Value::integer(a.asInt() * b.asInt());
    if (bothFloat())
      return Value::real(a.asFloat() * b.asFloat());
    break;
  case BinOp::Div:
    if (bothInt()) {
      if (b.asInt() == 0)
        throw EvalFault("division by zero");
      return Value::integer(a.asInt() / b.asInt());
    }
    break;
  case BinOp::Mod:
    if (bothInt()) {
      if (b.asInt() == 0)
        throw EvalFault("mod by zero");
      return Value::integer(a.asInt() % b.asInt());
    }
    break;
  case BinOp::Lt:
  case BinOp::Leq:
  case BinOp::Gt:
  case BinOp::Geq: {
    int c;
    if (bothInt())
      c = a.asInt() < b.asInt() ? -1 : (a.asInt() == b.asInt() ? 0 : 1);
    else if (bothFloat())
      c = a.asFloat() < b.asFloat() ? -1 : (a.asFloat() == b.asFloat() ? 0 : 1);
    else
      break;
    switch (op) {
    case BinOp::Lt: return Value::boolean(c < 0);
    case BinOp::Leq: return Value::boolean(c <= 0);
    case BinOp::Gt: return Value::boolean(c > 0);
    default: return Value::boolean(c >= 0);
    }
  }
  case BinOp::Eq:
    // Equality is defined on all sorts; values of different sorts are
    // simply unequal.
    return Value::boolean(a == b);
  case BinOp::And:
    if (a.isBool() && b.isBool())
      return Value::boolean(a.asBool() && b.asBool());
    break;
  case BinOp::Or:
    if (a.isBool() && b.isBool())
      return Value::boolean(a.asBool() || b.asBool());
    break;
  case BinOp::Implies:
    if (a.isBool() && b.isBool())
      return Value::boolean(!a.asBool() || b.asBool());
    break;
  case BinOp::Cons:
    if (b.isList()) {
      Value::List out;
      out.reserve(b.asList().size() + 1);
      out.push_back(a);
      out.insert(out.end(), b.asList().begin(), b.asList().end());
      return Value::list(std::move(out));
    }
    break;
  case BinOp::LCat:
    if (a.isList() && b.isList()) {
      Value::List out = a.asList();
      out.insert(out.end(), b.asList().begin(), b.asList().end());
      return Value::list(std::move(out));
    }
    break;
  case BinOp::SCat:
    if (a.isString() && b.isString())
      return Value::string(a.asString() + b.asString());
    break;
  case BinOp::LNth:
    if (a.isList() && b.isInt()) {
      const Value::Int &i = b.asInt();
      if (i < 0 || i >= static_cast<long long>(a.asList().size()))
        throw EvalFault("lnth out of range");
      return a.asList()[static_cast<std::size_t>(i)];
    }
    break;
  }
  throw EngineFault(std::string("sort error: operator '") + binOpName(op) +
                    "' applied to " + a.toString() + " and " + b.toString());
}

} // namespace gil

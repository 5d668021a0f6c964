//===-- value.hpp - GIL values and primitive operators ------------------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//

#ifndef GIL_VALUE_HPP
#define GIL_VALUE_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace gil {

/// Thrown when the engine itself is misused: unbound variables, ill-sorted
/// operator applications, malformed programs. These are not program outcomes.
class EngineFault : public std::runtime_error {
public:
  explicit EngineFault(const std::string &what) : std::runtime_error(what) {}
};

/// Thrown by concrete evaluation when a well-sorted but partial operation is
/// applied outside its domain (hd of nil, division by zero).
class EvalFault : public std::runtime_error {
public:
  explicit EvalFault(const std::string &what) : std::runtime_error(what) {}
};

/// GIL type constants, themselves first-class values.
enum class TypeConst : std::uint8_t {
  Int,
  Float,
  Str,
  Bool,
  Sym,
  Proc,
  List,
  Type,
};

const char *typeConstName(TypeConst t);

/// A GIL value: number (exact integer or 64-bit float), string, boolean,
/// uninterpreted symbol, type constant, procedure identifier, or list.
/// Values are immutable and totally ordered (so they can live in sets and
/// canonical printouts are deterministic).
class Value {
public:
  using Int = boost::multiprecision::cpp_int;

  /// Uninterpreted symbol. Locations form a subsort, recognised by name
  /// shape (see isLocationName).
  struct Sym {
    std::string name;
    bool operator==(const Sym &o) const { return name == o.name; }
    bool operator<(const Sym &o) const { return name < o.name; }
  };

  /// Procedure identifier.
  struct Proc {
    std::string name;
    bool operator==(const Proc &o) const { return name == o.name; }
    bool operator<(const Proc &o) const { return name < o.name; }
  };

  using List = std::vector<Value>;

  Value() : rep_(false) {}
  static Value boolean(bool b) { return Value(Rep(b)); }
  static Value integer(Int i) { return Value(Rep(std::move(i))); }
  static Value integer(long long i) { return Value(Rep(Int(i))); }
  static Value real(double d) { return Value(Rep(d)); }
  static Value string(std::string s) { return Value(Rep(std::move(s))); }
  static Value symbol(std::string name) { return Value(Rep(Sym{std::move(name)})); }
  static Value procId(std::string name) { return Value(Rep(Proc{std::move(name)})); }
  static Value typeConst(TypeConst t) { return Value(Rep(t)); }
  static Value list(List elems) { return Value(Rep(std::move(elems))); }
  static Value nil() { return list({}); }

  /// The distinguished `null` symbol used to initialise fresh cells.
  static Value null() { return symbol("null"); }
  /// Reserved symbol denoting "undefined"; unprintable in user programs.
  static Value undefined() { return symbol("undefined"); }

  bool isBool() const { return std::holds_alternative<bool>(rep_); }
  bool isInt() const { return std::holds_alternative<Int>(rep_); }
  bool isFloat() const { return std::holds_alternative<double>(rep_); }
  bool isString() const { return std::holds_alternative<std::string>(rep_); }
  bool isSymbol() const { return std::holds_alternative<Sym>(rep_); }
  bool isProcId() const { return std::holds_alternative<Proc>(rep_); }
  bool isTypeConst() const { return std::holds_alternative<TypeConst>(rep_); }
  bool isList() const { return std::holds_alternative<List>(rep_); }

  /// Location symbols are the subsort of symbols whose name is `l<digits>`.
  bool isLocation() const { return isSymbol() && isLocationName(sym().name); }
  static bool isLocationName(const std::string &name);

  bool asBool() const { return std::get<bool>(rep_); }
  const Int &asInt() const { return std::get<Int>(rep_); }
  double asFloat() const { return std::get<double>(rep_); }
  const std::string &asString() const { return std::get<std::string>(rep_); }
  const Sym &sym() const { return std::get<Sym>(rep_); }
  const Proc &proc() const { return std::get<Proc>(rep_); }
  TypeConst asTypeConst() const { return std::get<TypeConst>(rep_); }
  const List &asList() const { return std::get<List>(rep_); }

  TypeConst typeOf() const;

  bool operator==(const Value &o) const { return rep_ == o.rep_; }
  bool operator!=(const Value &o) const { return !(rep_ == o.rep_); }
  bool operator<(const Value &o) const { return compare(o) < 0; }

  /// Total order: by alternative, then by content.
  int compare(const Value &o) const;

  /// Canonical text form, re-parseable as a literal.
  std::string toString() const;

private:
  using Rep =
      std::variant<bool, Int, double, std::string, Sym, Proc, TypeConst, List>;
  explicit Value(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

/// Unary operators of the expression language.
enum class UnOp : std::uint8_t { Neg, Not, Head, Tail, ListLen, StrLen, TypeOf };

/// Binary operators of the expression language.
enum class BinOp : std::uint8_t {
  Add,
  Sub,
  Mul,
  Div,
  Mod,
  Lt,
  Leq,
  Gt,
  Geq,
  Eq,
  And,
  Or,
  Implies,
  Cons,
  LCat,
  SCat,
  LNth,
};

const char *unOpName(UnOp op);
const char *binOpName(BinOp op);

/// Concrete big-step evaluation of operators. Throws EngineFault on sort
/// errors and EvalFault on partial-operation misuse.
Value evalUnOp(UnOp op, const Value &v);
Value evalBinOp(BinOp op, const Value &lhs, const Value &rhs);

} // namespace gil

#endif // GIL_VALUE_HPP

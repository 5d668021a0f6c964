//===-- parser.cpp --------------------------------------------------------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "gil/parser.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <vector>

namespace gil {

namespace {

enum class Tok : std::uint8_t {
  End,
  Ident,    // bare identifier or keyword
  SymVar,   // #name
  Symbol,   // $name
  ProcLit,  // @name
  TypeLit,  // %name
  Int,
  Float,
  String,
  Punct,    // one of the punctuation spellings in `text`
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1, col = 1;
};

class Lexer {
public:
  explicit Lexer(const std::string &src) : src_(src) { next(); }

  const Token &peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    next();
    return t;
  }

  [[noreturn]] void error(const std::string &msg) const {
    throw ParseError(tok_.line, tok_.col, msg);
  }

private:
  void next() {
    skipWs();
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_ = {Tok::End, "", line_, col_};
      return;
    }
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      tok_ = {Tok::Ident, lexName(), tok_.line, tok_.col};
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      lexNumber();
      return;
    }
    switch (c) {
    case '#': advance(); tok_ = {Tok::SymVar, lexName(), tok_.line, tok_.col}; return;
    case '$': advance(); tok_ = {Tok::Symbol, lexName(), tok_.line, tok_.col}; return;
    case '@': advance(); tok_ = {Tok::ProcLit, lexName(), tok_.line, tok_.col}; return;
    case '%': advance(); tok_ = {Tok::TypeLit, lexName(), tok_.line, tok_.col}; return;
    case '"': lexString(); return;
    default: lexPunct(); return;
    }
  }

  void skipWs() {
    for (;;) {
      while (pos_ < src_.size() &&
             std::isspace(static_cast<unsigned char>(src_[pos_])))
        advance();
      if (pos_ + 1 < src_.size() && src_[pos_] == '/' && src_[pos_ + 1] == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n')
          advance();
        continue;
      }
      break;
    }
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  std::string lexName() {
    if (pos_ >= src_.size() ||
        (!std::isalpha(static_cast<unsigned char>(src_[pos_])) &&
         src_[pos_] != '_'))
      throw ParseError(line_, col_, "expected identifier");
    std::string out;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '_')) {
      out += src_[pos_];
      advance();
    }
    return out;
  }

  void lexNumber() {
    std::string out;
    bool isFloat = false;
    while (pos_ < src_.size() &&
           std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      out += src_[pos_];
      advance();
    }
    if (pos_ + 1 < src_.size() && src_[pos_] == '.' &&
        std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
      isFloat = true;
      out += '.';
      advance();
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        out += src_[pos_];
        advance();
      }
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      isFloat = true;
      out += 'e';
      advance();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
        out += src_[pos_];
        advance();
      }
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        out += src_[pos_];
        advance();
      }
    }
    tok_ = {isFloat ? Tok::Float : Tok::Int, out, tok_.line, tok_.col};
  }

  void lexString() {
    advance(); // opening quote
    std::string out;
    while (pos_ < src_.size() && src_[pos_] != '"') {
      char c = src_[pos_];
      if (c == '\\') {
        advance();
        if (pos_ >= src_.size())
          break;
        char e = src_[pos_];
        switch (e) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        default: out += e;
        }
        advance();
      } else {
        out += c;
        advance();
      }
    }
    if (pos_ >= src_.size())
      throw ParseError(tok_.line, tok_.col, "unterminated string literal");
    advance(); // closing quote
    tok_ = {Tok::String, out, tok_.line, tok_.col};
  }

  void lexPunct() {
    static const char *twoChar[] = {":=", "::", "++", "<=", ">=", "!=",
                                    "=>", "[[", "]]", "/\\"};
    if (pos_ + 1 < src_.size()) {
      std::string two = src_.substr(pos_, 2);
      for (const char *p : twoChar)
        if (two == p) {
          advance();
          advance();
          tok_ = {Tok::Punct, two, tok_.line, tok_.col};
          return;
        }
    }
    static const std::string oneChar = "(){}[]<>,;:=+-*";
    char c = src_[pos_];
    if (oneChar.find(c) == std::string::npos)
      throw ParseError(line_, col_, std::string("unexpected character '") + c +
                                        "'");
    advance();
    tok_ = {Tok::Punct, std::string(1, c), tok_.line, tok_.col};
  }

  const std::string &src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

bool isKeyword(const std::string &s) {
  static const char *kws[] = {"proc", "spec",  "goto",   "return", "fail",
                              "vanish", "usym", "isym",  "with",   "returns",
                              "emp",  "true",  "false",  "not",    "hd",
                              "tl",   "llen",  "slen",   "typeof", "scat",
                              "lnth", "div",   "mod",    "and",    "or"};
  for (const char *k : kws)
    if (s == k)
      return true;
  return false;
}

std::optional<TypeConst> typeConstByName(const std::string &s) {
  static const std::pair<const char *, TypeConst> table[] = {
      {"int", TypeConst::Int},   {"float", TypeConst::Float},
      {"str", TypeConst::Str},   {"bool", TypeConst::Bool},
      {"sym", TypeConst::Sym},   {"proc", TypeConst::Proc},
      {"list", TypeConst::List}, {"type", TypeConst::Type}};
  for (auto &[n, t] : table)
    if (s == n)
      return t;
  return std::nullopt;
}

/// Recursive-descent parser over the token stream. The Mode controls which
/// variable sort bare/#-prefixed identifiers denote.
class Parser {
public:
  explicit Parser(const std::string &src) : lx_(src) {}

  Prog parseProgram() {
    Prog p;
    while (lx_.peek().kind != Tok::End) {
      const Token &t = lx_.peek();
      if (t.kind == Tok::Ident && t.text == "proc") {
        Proc proc = parseProc();
        if (p.procs.count(proc.name))
          lx_.error("duplicate procedure '" + proc.name + "'");
        p.procs.emplace(proc.name, std::move(proc));
      } else if (t.kind == Tok::Ident && t.text == "spec") {
        ProcSpec s = parseSpec();
        if (p.specs.count(s.procName))
          lx_.error("duplicate spec for '" + s.procName + "'");
        p.specs.emplace(s.procName, std::move(s));
      } else {
        lx_.error("expected 'proc' or 'spec'");
      }
    }
    return p;
  }

  Expr parseProgExprOnly() {
    Expr e = parseExpr<Expr>();
    expectEnd();
    return e;
  }
  SymExpr parseSymExprOnly() {
    SymExpr e = parseExpr<SymExpr>();
    expectEnd();
    return e;
  }
  StateAssertion parseStateAssertionOnly() {
    StateAssertion a = parseStateAssertion();
    expectEnd();
    return a;
  }

private:
  void expectEnd() {
    if (lx_.peek().kind != Tok::End)
      lx_.error("trailing input after expression");
  }

  Token expectPunct(const std::string &p) {
    const Token &t = lx_.peek();
    if (t.kind != Tok::Punct || t.text != p)
      lx_.error("expected '" + p + "'");
    return lx_.take();
  }

  Token expectIdent() {
    const Token &t = lx_.peek();
    if (t.kind != Tok::Ident)
      lx_.error("expected identifier");
    if (isKeyword(t.text))
      lx_.error("keyword '" + t.text + "' cannot be used as an identifier");
    return lx_.take();
  }

  Token expectKeyword(const std::string &kw) {
    const Token &t = lx_.peek();
    if (t.kind != Tok::Ident || t.text != kw)
      lx_.error("expected '" + kw + "'");
    return lx_.take();
  }

  bool atPunct(const std::string &p) {
    return lx_.peek().kind == Tok::Punct && lx_.peek().text == p;
  }
  bool atKeyword(const std::string &kw) {
    return lx_.peek().kind == Tok::Ident && lx_.peek().text == kw;
  }

  std::size_t parseIndex() {
    const Token &t = lx_.peek();
    if (t.kind != Tok::Int)
      lx_.error("expected command index");
    return static_cast<std::size_t>(std::stoull(lx_.take().text));
  }

  Proc parseProc() {
    expectKeyword("proc");
    Proc proc;
    proc.name = expectIdent().text;
    expectPunct("(");
    proc.param = expectIdent().text;
    expectPunct(")");
    expectPunct("{");
    while (!atPunct("}")) {
      // optional explicit index
      if (lx_.peek().kind == Tok::Int) {
        std::size_t idx = parseIndex();
        expectPunct(":");
        if (idx != proc.body.size())
          lx_.error("command index " + std::to_string(idx) +
                    " does not match position " +
                    std::to_string(proc.body.size()));
      }
      proc.body.push_back(parseCmd());
      if (atPunct(";"))
        lx_.take();
    }
    expectPunct("}");
    return proc;
  }

  Cmd parseCmd() {
    if (atKeyword("goto")) {
      lx_.take();
      expectPunct("[");
      Expr guard = parseExpr<Expr>();
      expectPunct("]");
      std::size_t target = parseIndex();
      return Cmd::ifGoto(std::move(guard), target);
    }
    if (atKeyword("return")) {
      lx_.take();
      return Cmd::ret(parseExpr<Expr>());
    }
    if (atKeyword("fail")) {
      lx_.take();
      return Cmd::fail(parseExpr<Expr>());
    }
    if (atKeyword("vanish")) {
      lx_.take();
      return Cmd::vanish();
    }
    std::string x = expectIdent().text;
    expectPunct(":=");
    if (atKeyword("usym")) {
      lx_.take();
      expectPunct("(");
      Expr e = parseExpr<Expr>();
      expectPunct(")");
      return Cmd::uSym(std::move(x), std::move(e));
    }
    if (atKeyword("isym")) {
      lx_.take();
      expectPunct("(");
      Expr e = parseExpr<Expr>();
      expectPunct(")");
      return Cmd::iSym(std::move(x), std::move(e));
    }
    if (atPunct("<")) {
      lx_.take();
      std::string act = expectIdent().text;
      expectPunct(">");
      expectPunct("(");
      Expr e = parseExpr<Expr>();
      expectPunct(")");
      return Cmd::memAction(std::move(x), std::move(act), std::move(e));
    }
    Expr e = parseExpr<Expr>();
    if (atPunct("(")) {
      lx_.take();
      Expr arg = parseExpr<Expr>();
      expectPunct(")");
      std::optional<std::map<std::string, Expr>> with;
      if (atKeyword("with")) {
        lx_.take();
        with = parseWithSubst();
      }
      return Cmd::call(std::move(x), std::move(e), std::move(arg),
                       std::move(with));
    }
    return Cmd::assign(std::move(x), std::move(e));
  }

  std::map<std::string, Expr> parseWithSubst() {
    std::map<std::string, Expr> sub;
    expectPunct("[");
    if (!atPunct("]")) {
      for (;;) {
        const Token &t = lx_.peek();
        if (t.kind != Tok::SymVar)
          lx_.error("expected symbolic variable in substitution");
        std::string sv = lx_.take().text;
        expectPunct(":");
        Expr e = parseExpr<Expr>();
        if (sub.count(sv))
          lx_.error("duplicate substitution entry for #" + sv);
        sub.emplace(std::move(sv), std::move(e));
        if (atPunct(","))
          lx_.take();
        else
          break;
      }
    }
    expectPunct("]");
    return sub;
  }

  ProcSpec parseSpec() {
    expectKeyword("spec");
    ProcSpec s;
    s.procName = expectIdent().text;
    expectPunct("(");
    expectIdent(); // parameter name is fixed by the procedure itself
    expectPunct(")");
    expectPunct("[[");
    const Token &t = lx_.peek();
    if (t.kind != Tok::SymVar)
      lx_.error("expected parameter symbolic variable");
    s.param = lx_.take().text;
    expectPunct(":");
    s.pre = parseStateAssertion();
    expectPunct("]]");
    expectPunct("[[");
    s.post = parseStateAssertion();
    expectPunct("]]");
    expectKeyword("returns");
    s.ret = parseExpr<SymExpr>();
    return s;
  }

  StateAssertion parseStateAssertion() {
    StateAssertion a;
    a.mem = parseMemAssertion();
    if (atPunct("/\\")) {
      lx_.take();
      a.pure = parseExpr<SymExpr>();
    } else {
      a.pure = seTrue();
    }
    return a;
  }

  MemAssertion parseMemAssertion() {
    MemAssertion p = parseMemAtom();
    while (atPunct("*")) {
      lx_.take();
      p = MemAssertion::star(p, parseMemAtom());
    }
    return p;
  }

  MemAssertion parseMemAtom() {
    if (atKeyword("emp")) {
      lx_.take();
      return MemAssertion::emp();
    }
    expectPunct("<");
    PredAtom atom;
    atom.pred = expectIdent().text;
    expectPunct(">");
    expectPunct("(");
    if (!atPunct(";"))
      for (;;) {
        atom.ins.push_back(parseExpr<SymExpr>());
        if (atPunct(","))
          lx_.take();
        else
          break;
      }
    expectPunct(";");
    if (!atPunct(")"))
      for (;;) {
        atom.outs.push_back(parseExpr<SymExpr>());
        if (atPunct(","))
          lx_.take();
        else
          break;
      }
    expectPunct(")");
    return MemAssertion::pred(std::move(atom));
  }

  // Expression parsing, precedence climbing. T is Expr or SymExpr.
  template <class T> T parseExpr() { return parseImplies<T>(); }

  template <class T> T parseImplies() {
    T lhs = parseOr<T>();
    if (atPunct("=>")) {
      lx_.take();
      return T::binary(BinOp::Implies, lhs, parseImplies<T>());
    }
    return lhs;
  }

  template <class T> T parseOr() {
    T lhs = parseAnd<T>();
    while (atKeyword("or")) {
      lx_.take();
      lhs = T::binary(BinOp::Or, lhs, parseAnd<T>());
    }
    return lhs;
  }

  template <class T> T parseAnd() {
    T lhs = parseCompare<T>();
    while (atKeyword("and")) {
      lx_.take();
      lhs = T::binary(BinOp::And, lhs, parseCompare<T>());
    }
    return lhs;
  }

  template <class T> T parseCompare() {
    T lhs = parseCons<T>();
    for (;;) {
      BinOp op;
      bool negated = false;
      if (atPunct("="))
        op = BinOp::Eq;
      else if (atPunct("!=")) {
        op = BinOp::Eq;
        negated = true;
      } else if (atPunct("<"))
        op = BinOp::Lt;
      else if (atPunct("<="))
        op = BinOp::Leq;
      else if (atPunct(">"))
        op = BinOp::Gt;
      else if (atPunct(">="))
        op = BinOp::Geq;
      else
        return lhs;
      lx_.take();
      T rhs = parseCons<T>();
      lhs = T::binary(op, lhs, rhs);
      if (negated)
        lhs = T::unary(UnOp::Not, lhs);
    }
  }

  template <class T> T parseCons() {
    T lhs = parseConcat<T>();
    if (atPunct("::")) {
      lx_.take();
      return T::binary(BinOp::Cons, lhs, parseCons<T>());
    }
    return lhs;
  }

  template <class T> T parseConcat() {
    T lhs = parseAdd<T>();
    while (atPunct("++")) {
      lx_.take();
      lhs = T::binary(BinOp::LCat, lhs, parseAdd<T>());
    }
    return lhs;
  }

  template <class T> T parseAdd() {
    T lhs = parseMul<T>();
    for (;;) {
      if (atPunct("+")) {
        lx_.take();
        lhs = T::binary(BinOp::Add, lhs, parseMul<T>());
      } else if (atPunct("-")) {
        lx_.take();
        lhs = T::binary(BinOp::Sub, lhs, parseMul<T>());
      } else {
        return lhs;
      }
    }
  }

  template <class T> T parseMul() {
    T lhs = parseUnary<T>();
    for (;;) {
      if (atPunct("*")) {
        lx_.take();
        lhs = T::binary(BinOp::Mul, lhs, parseUnary<T>());
      } else if (atKeyword("div")) {
        lx_.take();
        lhs = T::binary(BinOp::Div, lhs, parseUnary<T>());
      } else if (atKeyword("mod")) {
        lx_.take();
        lhs = T::binary(BinOp::Mod, lhs, parseUnary<T>());
      } else {
        return lhs;
      }
    }
  }

  template <class T> T parseUnary() {
    if (atPunct("-")) {
      lx_.take();
      return T::unary(UnOp::Neg, parseUnary<T>());
    }
    if (atKeyword("not")) {
      lx_.take();
      expectPunct("(");
      T e = parseExpr<T>();
      expectPunct(")");
      return T::unary(UnOp::Not, e);
    }
    static const std::pair<const char *, UnOp> namedUn[] = {
        {"hd", UnOp::Head},     {"tl", UnOp::Tail},  {"llen", UnOp::ListLen},
        {"slen", UnOp::StrLen}, {"typeof", UnOp::TypeOf}};
    for (auto &[kw, op] : namedUn)
      if (atKeyword(kw)) {
        lx_.take();
        expectPunct("(");
        T e = parseExpr<T>();
        expectPunct(")");
        return T::unary(op, e);
      }
    static const std::pair<const char *, BinOp> namedBin[] = {
        {"scat", BinOp::SCat}, {"lnth", BinOp::LNth}};
    for (auto &[kw, op] : namedBin)
      if (atKeyword(kw)) {
        lx_.take();
        expectPunct("(");
        T a = parseExpr<T>();
        expectPunct(",");
        T b = parseExpr<T>();
        expectPunct(")");
        return T::binary(op, a, b);
      }
    return parseAtom<T>();
  }

  template <class T> T parseAtom() {
    const Token &t = lx_.peek();
    switch (t.kind) {
    case Tok::Int: {
      Token tok = lx_.take();
      return T::lit(Value::integer(Value::Int(tok.text)));
    }
    case Tok::Float: {
      Token tok = lx_.take();
      return T::lit(Value::real(std::stod(tok.text)));
    }
    case Tok::String:
      return T::lit(Value::string(lx_.take().text));
    case Tok::Symbol: {
      Token tok = lx_.take();
      if (tok.text == "undefined")
        throw ParseError(tok.line, tok.col,
                         "the symbol $undefined is reserved");
      return T::lit(Value::symbol(tok.text));
    }
    case Tok::ProcLit:
      return T::lit(Value::procId(lx_.take().text));
    case Tok::TypeLit: {
      Token tok = lx_.take();
      auto tc = typeConstByName(tok.text);
      if (!tc)
        throw ParseError(tok.line, tok.col, "unknown type constant %" + tok.text);
      return T::lit(Value::typeConst(*tc));
    }
    case Tok::SymVar: {
      if constexpr (std::is_same_v<T, SymExpr>) {
        return T::var(lx_.take().text);
      } else {
        lx_.error("symbolic variables cannot appear in program expressions");
      }
    }
    case Tok::Ident: {
      if (t.text == "true") {
        lx_.take();
        return T::lit(Value::boolean(true));
      }
      if (t.text == "false") {
        lx_.take();
        return T::lit(Value::boolean(false));
      }
      if (isKeyword(t.text))
        lx_.error("unexpected keyword '" + t.text + "' in expression");
      if constexpr (std::is_same_v<T, Expr>) {
        return T::var(lx_.take().text);
      } else {
        lx_.error("program variables cannot appear here; use #" + t.text +
                  " for a symbolic variable");
      }
    }
    case Tok::Punct:
      if (t.text == "(") {
        lx_.take();
        T e = parseExpr<T>();
        expectPunct(")");
        return e;
      }
      if (t.text == "[") {
        lx_.take();
        std::vector<T> elems;
        if (!atPunct("]"))
          for (;;) {
            elems.push_back(parseExpr<T>());
            if (atPunct(","))
              lx_.take();
            else
              break;
          }
        expectPunct("]");
        // list display: a literal when ground, a cons chain otherwise
        bool allLit = true;
        for (const T &e : elems)
          if (!e.isLit())
            allLit = false;
        if (allLit) {
          Value::List vs;
          for (const T &e : elems)
            vs.push_back(e.value());
          return T::lit(Value::list(std::move(vs)));
        }
        T acc = T::lit(Value::nil());
        for (auto it = elems.rbegin(); it != elems.rend(); ++it)
          acc = T::binary(BinOp::Cons, *it, acc);
        return acc;
      }
      lx_.error("unexpected '" + t.text + "' in expression");
    default:
      lx_.error("unexpected end of input in expression");
    }
  }

  Lexer lx_;
};

} // namespace

Prog parseProgram(const std::string &text) { return Parser(text).parseProgram(); }

Expr parseExprText(const std::string &text) {
  return Parser(text).parseProgExprOnly();
}

SymExpr parseSymExprText(const std::string &text) {
  return Parser(text).parseSymExprOnly();
}

StateAssertion parseStateAssertionText(const std::string &text) {
  return Parser(text).parseStateAssertionOnly();
}

std::string printProgram(const Prog &p) {
  std::ostringstream os;
  os << "// gil program\n";
  bool first = true;
  for (const auto &[name, proc] : p.procs) {
    if (!first)
      os << "\n";
    first = false;
    os << "proc " << name << "(" << proc.param << ") {\n";
    for (std::size_t i = 0; i < proc.body.size(); ++i)
      os << "  " << i << ": " << proc.body[i].toString() << ";\n";
    os << "}\n";
  }
  for (const auto &[name, spec] : p.specs) {
    const Proc &proc = p.procs.count(name) ? p.procs.at(name) : Proc{name, "x", {}};
    os << "\nspec " << name << "(" << proc.param << ") [[ #" << spec.param
       << " : " << spec.pre.toString() << " ]] [[ " << spec.post.toString()
       << " ]] returns " << spec.ret.toString() << "\n";
  }
  return os.str();
}

} // namespace gil

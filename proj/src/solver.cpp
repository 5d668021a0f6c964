//===-- solver.cpp --------------------------------------------------------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "gil/solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace gil {

SolverConfig SolverConfig::fromEnv() {
  SolverConfig cfg;
  if (const char *env = std::getenv("GIL_SOLVER_DOMAIN")) {
    int d = std::atoi(env);
    if (d >= 2)
      cfg.domainSize = d;
  }
  return cfg;
}

Value evalUnder(const SymExpr &e, const Assignment &asn) {
  switch (e.kind()) {
  case SymExpr::Kind::Lit:
    return e.value();
  case SymExpr::Kind::Var: {
    auto it = asn.find(e.varName());
    if (it == asn.end())
      throw EngineFault("assignment misses variable #" + e.varName());
    return it->second;
  }
  case SymExpr::Kind::Unary:
    return evalUnOp(e.unOp(), evalUnder(e.left(), asn));
  case SymExpr::Kind::Binary:
    return evalBinOp(e.binOp(), evalUnder(e.left(), asn),
                     evalUnder(e.right(), asn));
  }
  throw EngineFault("bad term");
}

namespace {

Sort sortOfValue(const Value &v) {
  if (v.isBool())
    return Sort::Bool;
  if (v.isInt())
    return Sort::Int;
  if (v.isFloat())
    return Sort::Float;
  if (v.isString())
    return Sort::Str;
  if (v.isSymbol())
    return v.isLocation() ? Sort::Loc : Sort::Sym;
  if (v.isProcId())
    return Sort::Proc;
  if (v.isTypeConst())
    return Sort::Type;
  return Sort::List;
}

/// Meet of sorts; Loc refines Sym. Hard conflicts come back as nullopt.
std::optional<Sort> meetSort(Sort a, Sort b) {
  if (a == b)
    return a;
  if (a == Sort::Any)
    return b;
  if (b == Sort::Any)
    return a;
  if ((a == Sort::Sym && b == Sort::Loc) || (a == Sort::Loc && b == Sort::Sym))
    return Sort::Loc;
  return std::nullopt;
}

struct TermFacts {
  std::map<std::string, Sort> varSorts; // hard sorts from operator positions
  std::set<Value> intLits;
  std::set<Value> strLits;
  std::set<Value> symLits;  // non-location symbols
  std::set<Value> locLits;  // location symbols
  std::set<Value> listLits;
  std::set<Value> procLits;
  bool usesFloatVarOps = false; // a variable in a float-only position
  bool sortConflict = false;
  std::string conflictVar;

  void addVarSort(const std::string &v, Sort s) {
    auto it = varSorts.find(v);
    if (it == varSorts.end()) {
      varSorts.emplace(v, s);
      return;
    }
    auto m = meetSort(it->second, s);
    if (!m) {
      sortConflict = true;
      conflictVar = v;
    } else {
      it->second = *m;
    }
  }

  void addLit(const Value &v) {
    switch (sortOfValue(v)) {
    case Sort::Int: intLits.insert(v); break;
    case Sort::Str: strLits.insert(v); break;
    case Sort::Sym: symLits.insert(v); break;
    case Sort::Loc: locLits.insert(v); break;
    case Sort::Proc: procLits.insert(v); break;
    case Sort::List:
      listLits.insert(v);
      for (const Value &e : v.asList())
        addLit(e);
      break;
    default: break;
    }
  }
};

/// Walks the term, recording hard sorts for variables in operator argument
/// positions and collecting the literal pool. `want` is the sort imposed by
/// the surrounding context (Any when unconstrained, e.g. under equality).
void scan(const SymExpr &e, Sort want, TermFacts &facts) {
  switch (e.kind()) {
  case SymExpr::Kind::Lit:
    facts.addLit(e.value());
    return;
  case SymExpr::Kind::Var:
    if (want != Sort::Any)
      facts.addVarSort(e.varName(), want);
    else
      facts.addVarSort(e.varName(), Sort::Any);
    return;
  case SymExpr::Kind::Unary:
    switch (e.unOp()) {
    case UnOp::Neg: scan(e.left(), Sort::Int, facts); return;
    case UnOp::Not: scan(e.left(), Sort::Bool, facts); return;
    case UnOp::Head:
    case UnOp::Tail:
    case UnOp::ListLen: scan(e.left(), Sort::List, facts); return;
    case UnOp::StrLen: scan(e.left(), Sort::Str, facts); return;
    case UnOp::TypeOf: scan(e.left(), Sort::Any, facts); return;
    }
    return;
  case SymExpr::Kind::Binary:
    switch (e.binOp()) {
    case BinOp::Add:
    case BinOp::Sub:
    case BinOp::Mul:
    case BinOp::Div:
    case BinOp::Mod:
    case BinOp::Lt:
    case BinOp::Leq:
    case BinOp::Gt:
    case BinOp::Geq:
      // Arithmetic/comparison over variables is interpreted over the bounded
      // integer domain. Floats only occur fully ground (folded away by
      // simplify); a variable here is committed to Int.
      scan(e.left(), Sort::Int, facts);
      scan(e.right(), Sort::Int, facts);
      return;
    case BinOp::Eq:
      // Equality is polymorphic and cross-sort equality is simply false, so
      // it imposes no hard sort on either side.
      scan(e.left(), Sort::Any, facts);
      scan(e.right(), Sort::Any, facts);
      return;
    case BinOp::And:
    case BinOp::Or:
    case BinOp::Implies:
      scan(e.left(), Sort::Bool, facts);
      scan(e.right(), Sort::Bool, facts);
      return;
    case BinOp::Cons:
      scan(e.left(), Sort::Any, facts);
      scan(e.right(), Sort::List, facts);
      return;
    case BinOp::LCat:
      scan(e.left(), Sort::List, facts);
      scan(e.right(), Sort::List, facts);
      return;
    case BinOp::SCat:
      scan(e.left(), Sort::Str, facts);
      scan(e.right(), Sort::Str, facts);
      return;
    case BinOp::LNth:
      scan(e.left(), Sort::List, facts);
      scan(e.right(), Sort::Int, facts);
      return;
    }
    return;
  }
}

bool containsFloat(const SymExpr &e) {
  switch (e.kind()) {
  case SymExpr::Kind::Lit: {
    // float literals inside lists are fine; only float *operations* with
    // variables are out of fragment, and those can only type as Float via
    // literals at operator positions, handled in the evaluator.
    return false;
  }
  case SymExpr::Kind::Var:
    return false;
  case SymExpr::Kind::Unary:
    return containsFloat(e.left());
  case SymExpr::Kind::Binary:
    return containsFloat(e.left()) || containsFloat(e.right());
  }
  return false;
}

/// Result sort of a term, when derivable without knowing variable sorts.
std::optional<Sort> resultSort(const SymExpr &e) {
  switch (e.kind()) {
  case SymExpr::Kind::Lit:
    return sortOfValue(e.value());
  case SymExpr::Kind::Var:
    return std::nullopt;
  case SymExpr::Kind::Unary:
    switch (e.unOp()) {
    case UnOp::Neg: return Sort::Int;
    case UnOp::Not: return Sort::Bool;
    case UnOp::Head: return std::nullopt;
    case UnOp::Tail: return Sort::List;
    case UnOp::ListLen:
    case UnOp::StrLen: return Sort::Int;
    case UnOp::TypeOf: return Sort::Type;
    }
    return std::nullopt;
  case SymExpr::Kind::Binary:
    switch (e.binOp()) {
    case BinOp::Add:
    case BinOp::Sub:
    case BinOp::Mul:
    case BinOp::Div:
    case BinOp::Mod: return Sort::Int;
    case BinOp::Lt:
    case BinOp::Leq:
    case BinOp::Gt:
    case BinOp::Geq:
    case BinOp::Eq:
    case BinOp::And:
    case BinOp::Or:
    case BinOp::Implies: return Sort::Bool;
    case BinOp::Cons:
    case BinOp::LCat: return Sort::List;
    case BinOp::SCat: return Sort::Str;
    case BinOp::LNth: return std::nullopt;
    }
    return std::nullopt;
  }
  return std::nullopt;
}

class ModelSearch {
public:
  ModelSearch(const PathCondition &pc, const SortHints &hints,
              const SolverConfig &cfg)
      : cfg_(cfg) {
    for (const SymExpr &l : pc.literals())
      lits_.push_back(l);
    for (const SymExpr &l : lits_)
      scan(l, Sort::Bool, facts_);
    for (const auto &[v, s] : hints)
      facts_.addVarSort(v, s);
    for (const SymExpr &l : lits_)
      l.collectVars(varSet_);
    vars_.assign(varSet_.begin(), varSet_.end());
    for (const std::string &v : vars_)
      parent_[v] = v;
    for (const SymExpr &l : lits_)
      collectEqualityEvidence(l);
  }

  /// Two conjuncts that are syntactic negations of each other.
  bool hasSyntacticContradiction() const {
    for (const SymExpr &l : lits_) {
      if (!l.isUnary() || l.unOp() != UnOp::Not)
        continue;
      for (const SymExpr &m : lits_)
        if (m == l.left())
          return true;
    }
    return false;
  }

  SolverResult run() {
    if (facts_.sortConflict)
      throw EngineFault("path condition does not sort-check: variable #" +
                        facts_.conflictVar + " is used at conflicting sorts");
    for (const auto &[v, s] : facts_.varSorts)
      if (s == Sort::Float)
        return {Verdict::Unknown, {}, "float-sorted variable #" + v};
    if (hasSyntacticContradiction())
      return {Verdict::Unsat, {}, ""};
    for (const std::string &v : vars_)
      domains_.push_back(domainFor(v));
    Assignment asn;
    steps_ = 0;
    int rc = search(0, asn);
    if (rc == 1) {
      // Soundness of Sat: the witness must evaluate the condition to true.
      for (const SymExpr &l : lits_) {
        Value got;
        try {
          got = evalUnder(l, asn);
        } catch (const EvalFault &) {
          throw EngineFault("solver returned a non-model (evaluation fault)");
        }
        if (!(got.isBool() && got.asBool()))
          throw EngineFault("solver returned a non-model");
      }
      return {Verdict::Sat, asn, ""};
    }
    if (rc == -1)
      return {Verdict::Unknown, {}, "step budget exhausted"};
    return {Verdict::Unsat, {}, ""};
  }

private:
  /// Returns 1 = model found (asn filled), 0 = exhausted, -1 = out of budget.
  int search(std::size_t i, Assignment &asn) {
    if (i == vars_.size())
      return checkAll(asn) ? 1 : 0;
    for (const Value &cand : domains_[i]) {
      if (++steps_ > cfg_.stepBudget)
        return -1;
      asn[vars_[i]] = cand;
      if (!prune(asn)) {
        int rc = search(i + 1, asn);
        if (rc != 0)
          return rc;
      }
    }
    asn.erase(vars_[i]);
    return 0;
  }

  /// True when some conjunct is already falsified by the partial assignment.
  bool prune(const Assignment &partial) {
    std::map<std::string, SymExpr> sub;
    for (const auto &[v, val] : partial)
      sub.emplace(v, seLit(val));
    for (const SymExpr &l : lits_) {
      SymExpr r;
      try {
        r = simplify(l.substitute(sub));
      } catch (const EngineFault &) {
        // Ill-sorted under this candidate (e.g. true + 1): not a model.
        return true;
      }
      if (r.isFalse())
        return true;
      if (r.isLit() && !r.value().isBool())
        return true;
    }
    return false;
  }

  bool checkAll(const Assignment &asn) {
    for (const SymExpr &l : lits_) {
      try {
        Value v = evalUnder(l, asn);
        if (!v.isBool() || !v.asBool())
          return false;
      } catch (const EvalFault &) {
        return false;
      } catch (const EngineFault &) {
        return false;
      }
    }
    return true;
  }

  // --- equality-evidence soft sorting -----------------------------------
  // Variables related only by (dis)equalities get their candidate domains
  // from the sorts of the terms they are compared against; this keeps the
  // search exhaustive (small-model property of equality) and small.

  std::string findRoot(const std::string &v) {
    std::string r = v;
    while (parent_[r] != r)
      r = parent_[r];
    parent_[v] = r;
    return r;
  }
  void unite(const std::string &a, const std::string &b) {
    parent_[findRoot(a)] = findRoot(b);
  }

  void addSoft(const std::string &v, Sort s) { softSorts_[findRoot(v)].insert(s); }

  void collectEqualityEvidence(const SymExpr &e) {
    if (e.isUnary()) {
      collectEqualityEvidence(e.left());
      return;
    }
    if (!e.isBinary())
      return;
    if (e.binOp() != BinOp::Eq) {
      collectEqualityEvidence(e.left());
      collectEqualityEvidence(e.right());
      return;
    }
    const SymExpr &a = e.left(), &b = e.right();
    // typeof(x) = %T gives x the soft sort T
    auto typeofCase = [&](const SymExpr &t, const SymExpr &lit) {
      if (t.isUnary() && t.unOp() == UnOp::TypeOf && t.left().isVar() &&
          lit.isLit() && lit.value().isTypeConst()) {
        switch (lit.value().asTypeConst()) {
        case TypeConst::Int: addSoft(t.left().varName(), Sort::Int); break;
        case TypeConst::Bool: addSoft(t.left().varName(), Sort::Bool); break;
        case TypeConst::Str: addSoft(t.left().varName(), Sort::Str); break;
        case TypeConst::Sym: addSoft(t.left().varName(), Sort::Sym); break;
        case TypeConst::List: addSoft(t.left().varName(), Sort::List); break;
        default: break;
        }
        return true;
      }
      return false;
    };
    if (typeofCase(a, b) || typeofCase(b, a))
      return;
    if (a.isVar() && b.isVar()) {
      unite(a.varName(), b.varName());
      return;
    }
    auto oneSide = [&](const SymExpr &var, const SymExpr &other) {
      if (!var.isVar())
        return;
      if (auto s = resultSort(other))
        addSoft(var.varName(), *s);
    };
    oneSide(a, b);
    oneSide(b, a);
    if (!a.isVar())
      collectEqualityEvidence(a);
    if (!b.isVar())
      collectEqualityEvidence(b);
  }

  /// Soft sorts of a variable: the union over its equality class.
  std::set<Sort> softSortsOf(const std::string &v) {
    std::set<Sort> out;
    std::string root = findRoot(v);
    auto it = softSorts_.find(root);
    if (it != softSorts_.end())
      out = it->second;
    // hard sorts of class members count as evidence too
    for (const std::string &w : vars_)
      if (findRoot(w) == root) {
        auto jt = facts_.varSorts.find(w);
        if (jt != facts_.varSorts.end() && jt->second != Sort::Any)
          out.insert(jt->second);
      }
    return out;
  }

  std::vector<Value> domainFor(const std::string &v) {
    Sort s = Sort::Any;
    auto it = facts_.varSorts.find(v);
    if (it != facts_.varSorts.end())
      s = it->second;
    std::vector<Value> out;
    auto addInts = [&] {
      int half = cfg_.domainSize / 2;
      std::set<Value> ints;
      for (int k = -(half - 1); k <= half; ++k)
        ints.insert(Value::integer(k));
      // Constants of the query, with a +-1 margin for strict inequalities.
      for (const Value &c : facts_.intLits) {
        ints.insert(c);
        ints.insert(Value::integer(c.asInt() + 1));
        ints.insert(Value::integer(c.asInt() - 1));
      }
      out.insert(out.end(), ints.begin(), ints.end());
    };
    auto addBools = [&] {
      out.push_back(Value::boolean(false));
      out.push_back(Value::boolean(true));
    };
    auto addStrs = [&] {
      std::set<Value> strs = facts_.strLits;
      strs.insert(Value::string(""));
      for (std::size_t i = 0; i < vars_.size(); ++i)
        strs.insert(Value::string("s" + std::to_string(i)));
      out.insert(out.end(), strs.begin(), strs.end());
    };
    auto addSyms = [&] {
      std::set<Value> syms = facts_.symLits;
      syms.insert(Value::null());
      // inequality-on-demand: enough fresh symbols for all-distinct models
      for (std::size_t i = 0; i <= vars_.size(); ++i)
        syms.insert(Value::symbol("u" + std::to_string(i)));
      out.insert(out.end(), syms.begin(), syms.end());
    };
    auto addLocs = [&] {
      std::set<Value> locs = facts_.locLits;
      long long maxIdx = -1;
      for (const Value &l : locs)
        maxIdx = std::max(maxIdx, std::stoll(l.sym().name.substr(1)));
      for (std::size_t i = 0; i <= vars_.size(); ++i)
        locs.insert(Value::symbol("l" + std::to_string(maxIdx + 1 + (long long)i)));
      out.insert(out.end(), locs.begin(), locs.end());
    };
    auto addLists = [&] {
      std::set<Value> lists = facts_.listLits;
      // generated candidates over a tiny scalar pool
      std::vector<Value> pool{Value::integer(0), Value::integer(1),
                              Value::boolean(true)};
      std::vector<Value::List> frontier{{}};
      lists.insert(Value::nil());
      for (int len = 1; len <= cfg_.maxListLen; ++len) {
        std::vector<Value::List> next;
        for (const Value::List &base : frontier)
          for (const Value &p : pool) {
            Value::List l = base;
            l.push_back(p);
            lists.insert(Value::list(l));
            next.push_back(std::move(l));
          }
        frontier = std::move(next);
      }
      out.insert(out.end(), lists.begin(), lists.end());
    };
    auto addProcs = [&] {
      out.insert(out.end(), facts_.procLits.begin(), facts_.procLits.end());
      if (facts_.procLits.empty())
        out.push_back(Value::procId("f"));
    };
    auto addTypes = [&] {
      for (int t = 0; t <= static_cast<int>(TypeConst::Type); ++t)
        out.push_back(Value::typeConst(static_cast<TypeConst>(t)));
    };

    auto addForSort = [&](Sort sort) {
      switch (sort) {
      case Sort::Bool: addBools(); break;
      case Sort::Int: addInts(); break;
      case Sort::Str: addStrs(); break;
      case Sort::Sym: addSyms(); addLocs(); break;
      case Sort::Loc: addLocs(); break;
      case Sort::Proc: addProcs(); break;
      case Sort::Type: addTypes(); break;
      case Sort::List: addLists(); break;
      default: break;
      }
    };
    if (s != Sort::Any) {
      addForSort(s);
    } else {
      std::set<Sort> soft = softSortsOf(v);
      if (!soft.empty()) {
        for (Sort sort : soft)
          addForSort(sort);
      } else {
        // no evidence at all: equality-only variable; lists are only needed
        // with explicit list evidence
        addBools();
        addInts();
        addSyms();
        addLocs();
        addStrs();
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  const SolverConfig &cfg_;
  std::vector<SymExpr> lits_;
  TermFacts facts_;
  std::set<std::string> varSet_;
  std::vector<std::string> vars_;
  std::vector<std::vector<Value>> domains_;
  std::map<std::string, std::string> parent_;
  std::map<std::string, std::set<Sort>> softSorts_;
  long long steps_ = 0;
};

} // namespace

SolverResult Solver::sat(const PathCondition &pc, const SortHints &hints) const {
  if (pc.isTriviallyFalse())
    return {Verdict::Unsat, {}, ""};
  if (pc.isTriviallyTrue())
    return {Verdict::Sat, {}, ""};
  ModelSearch search(pc, hints, cfg_);
  return search.run();
}

Tri Solver::entails(const PathCondition &pc, const PathCondition &pc2,
                    const SortHints &hints) const {
  SymExpr neg = simplify(seNot(pc2.toExpr()));
  SolverResult r = sat(pc.conjoin(neg), hints);
  switch (r.verdict) {
  case Verdict::Unsat: return Tri::True;
  case Verdict::Sat: return Tri::False;
  default: return Tri::Unknown;
  }
}

std::vector<Assignment> Solver::allModels(const PathCondition &pc,
                                          std::size_t n,
                                          const SortHints &hints) const {
  std::vector<Assignment> out;
  PathCondition cur = pc;
  while (out.size() < n) {
    SolverResult r = sat(cur, hints);
    if (r.verdict != Verdict::Sat)
      break;
    out.push_back(r.model);
    if (r.model.empty())
      break; // no variables: a single model family
    SymExpr block = seFalse();
    for (const auto &[v, val] : r.model)
      block = seOr(block, seNeq(seVar(v), seLit(val)));
    cur = cur.conjoin(block);
  }
  return out;
}

namespace {

const char *smtSortName(Sort s) {
  switch (s) {
  case Sort::Bool: return "Bool";
  case Sort::Int: return "Int";
  case Sort::Str: return "String";
  case Sort::Sym:
  case Sort::Loc: return "USym";
  default: return nullptr;
  }
}

void smtValue(std::ostream &os, const Value &v) {
  if (v.isBool()) {
    os << (v.asBool() ? "true" : "false");
  } else if (v.isInt()) {
    if (v.asInt() < 0)
      os << "(- " << -v.asInt() << ")";
    else
      os << v.asInt();
  } else if (v.isString()) {
    os << '"';
    for (char c : v.asString()) {
      if (c == '"')
        os << "\"\"";
      else
        os << c;
    }
    os << '"';
  } else if (v.isSymbol()) {
    os << "sym_" << v.sym().name;
  } else {
    throw EngineFault("value " + v.toString() +
                      " is outside the SMT-LIB exportable fragment");
  }
}

void smtTerm(std::ostream &os, const SymExpr &e) {
  switch (e.kind()) {
  case SymExpr::Kind::Lit:
    smtValue(os, e.value());
    return;
  case SymExpr::Kind::Var:
    os << "sv_" << e.varName();
    return;
  case SymExpr::Kind::Unary:
    switch (e.unOp()) {
    case UnOp::Not:
      os << "(not ";
      smtTerm(os, e.left());
      os << ")";
      return;
    case UnOp::Neg:
      os << "(- ";
      smtTerm(os, e.left());
      os << ")";
      return;
    case UnOp::StrLen:
      os << "(str.len ";
      smtTerm(os, e.left());
      os << ")";
      return;
    default:
      throw EngineFault(std::string("operator '") + unOpName(e.unOp()) +
                        "' is outside the SMT-LIB exportable fragment");
    }
  case SymExpr::Kind::Binary: {
    const char *op = nullptr;
    switch (e.binOp()) {
    case BinOp::Add: op = "+"; break;
    case BinOp::Sub: op = "-"; break;
    case BinOp::Mul: op = "*"; break;
    case BinOp::Div: op = "div"; break;
    case BinOp::Mod: op = "mod"; break;
    case BinOp::Lt: op = "<"; break;
    case BinOp::Leq: op = "<="; break;
    case BinOp::Gt: op = ">"; break;
    case BinOp::Geq: op = ">="; break;
    case BinOp::Eq: op = "="; break;
    case BinOp::And: op = "and"; break;
    case BinOp::Or: op = "or"; break;
    case BinOp::Implies: op = "=>"; break;
    case BinOp::SCat: op = "str.++"; break;
    default:
      throw EngineFault(std::string("operator '") + binOpName(e.binOp()) +
                        "' is outside the SMT-LIB exportable fragment");
    }
    os << "(" << op << " ";
    smtTerm(os, e.left());
    os << " ";
    smtTerm(os, e.right());
    os << ")";
    return;
  }
  }
}

} // namespace

std::string exportSmtLib2(const PathCondition &pc) {
  TermFacts facts;
  for (const SymExpr &l : pc.literals())
    scan(l, Sort::Bool, facts);
  if (facts.sortConflict)
    throw EngineFault("path condition does not sort-check");

  std::ostringstream os;
  bool usesSym = !facts.symLits.empty() || !facts.locLits.empty();
  for (const auto &[v, s] : facts.varSorts)
    if (s == Sort::Sym || s == Sort::Loc)
      usesSym = true;
  if (usesSym)
    os << "(declare-sort USym 0)\n";
  std::set<Value> allSyms = facts.symLits;
  allSyms.insert(facts.locLits.begin(), facts.locLits.end());
  for (const Value &s : allSyms)
    os << "(declare-const sym_" << s.sym().name << " USym)\n";
  if (allSyms.size() > 1) {
    os << "(assert (distinct";
    for (const Value &s : allSyms)
      os << " sym_" << s.sym().name;
    os << "))\n";
  }
  for (const auto &[v, s] : facts.varSorts) {
    Sort sort = s == Sort::Any ? Sort::Int : s;
    const char *name = smtSortName(sort);
    if (!name)
      throw EngineFault("variable #" + v +
                        " has a sort outside the SMT-LIB exportable fragment");
    os << "(declare-const sv_" << v << " " << name << ")\n";
  }
  for (const SymExpr &l : pc.literals()) {
    os << "(assert ";
    smtTerm(os, l);
    os << ")\n";
  }
  os << "(check-sat)\n";
  return os.str();
}

} // namespace gil

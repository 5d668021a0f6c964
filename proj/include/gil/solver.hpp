//===-- solver.hpp - path conditions and the bounded model finder --------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//

#ifndef GIL_SOLVER_HPP
#define GIL_SOLVER_HPP

#include "gil/term.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace gil {

/// A path condition: a boolean symbolic expression, kept internally as a
/// conjunction of simplified literals.
class PathCondition {
public:
  PathCondition() = default; // true
  explicit PathCondition(const SymExpr &e) { conjoinInPlace(e); }

  static PathCondition top() { return PathCondition(); }

  PathCondition conjoin(const SymExpr &e) const {
    PathCondition out = *this;
    out.conjoinInPlace(e);
    return out;
  }
  PathCondition conjoin(const PathCondition &o) const {
    PathCondition out = *this;
    for (const SymExpr &l : o.lits_)
      out.conjoinInPlace(l);
    return out;
  }

  /// Literally the constant true / false (syntactic, not semantic).
  bool isTriviallyTrue() const { return lits_.empty(); }
  bool isTriviallyFalse() const {
    return lits_.size() == 1 && lits_[0].isFalse();
  }

  const std::vector<SymExpr> &literals() const { return lits_; }

  /// The condition as one boolean term.
  SymExpr toExpr() const {
    if (lits_.empty())
      return seTrue();
    SymExpr acc = lits_[0];
    for (std::size_t i = 1; i < lits_.size(); ++i)
      acc = seAnd(acc, lits_[i]);
    return acc;
  }

  std::set<std::string> svars() const {
    std::set<std::string> out;
    for (const SymExpr &l : lits_)
      l.collectVars(out);
    return out;
  }

  PathCondition substitute(const std::map<std::string, SymExpr> &sub) const {
    PathCondition out;
    for (const SymExpr &l : lits_)
      out.conjoinInPlace(l.substitute(sub));
    return out;
  }

  bool operator==(const PathCondition &o) const { return lits_ == o.lits_; }
  std::string toString() const { return toExpr().toString(); }

private:
  void conjoinInPlace(const SymExpr &raw) {
    if (isTriviallyFalse())
      return;
    SymExpr e = simplify(raw);
    if (e.isTrue())
      return;
    if (e.isFalse()) {
      lits_.clear();
      lits_.push_back(seFalse());
      return;
    }
    if (e.isBinary() && e.binOp() == BinOp::And) {
      conjoinInPlace(e.left());
      conjoinInPlace(e.right());
      return;
    }
    for (const SymExpr &l : lits_)
      if (l == e)
        return;
    lits_.push_back(e);
  }

  std::vector<SymExpr> lits_;
};

/// Solver verdicts. A Sat verdict carries a witness assignment that makes
/// the condition evaluate to true concretely.
enum class Verdict : std::uint8_t { Sat, Unsat, Unknown };

/// Three-valued answer for entailment queries.
enum class Tri : std::uint8_t { True, False, Unknown };

using Assignment = std::map<std::string, Value>;

struct SolverResult {
  Verdict verdict = Verdict::Unknown;
  Assignment model;   // meaningful for Sat
  std::string reason; // meaningful for Unknown
};

/// Sorts tracked by the solver's inference. Loc is the location subsort of
/// Sym. Float-sorted variables fall outside the decidable fragment.
enum class Sort : std::uint8_t {
  Any,
  Bool,
  Int,
  Float,
  Str,
  Sym,
  Loc,
  Proc,
  Type,
  List,
};

using SortHints = std::map<std::string, Sort>;

struct SolverConfig {
  int domainSize = 8;          // size of the base integer range
  long long stepBudget = 500000; // candidate-assignment budget per query
  int maxListLen = 4;          // generated list candidates up to this length
  /// Reads GIL_SOLVER_DOMAIN if set.
  static SolverConfig fromEnv();
};

/// Decides satisfiability of path conditions over the bounded fragment:
/// booleans, integers over a finite domain (the base range extended with the
/// constants of the query), strings and uninterpreted symbols by equality
/// with fresh candidates on demand, and lists up to a bounded length.
/// Within that finite semantics, Sat and Unsat are exact; everything else
/// (floats, exhausted budgets) is reported Unknown.
class Solver {
public:
  explicit Solver(SolverConfig cfg = SolverConfig::fromEnv()) : cfg_(cfg) {}

  const SolverConfig &config() const { return cfg_; }

  SolverResult sat(const PathCondition &pc, const SortHints &hints = {}) const;

  /// entails(pc, pc2) = True iff sat(pc /\ not pc2) is Unsat.
  Tri entails(const PathCondition &pc, const PathCondition &pc2,
              const SortHints &hints = {}) const;

  /// Enumerates up to n distinct models via blocking constraints.
  std::vector<Assignment> allModels(const PathCondition &pc, std::size_t n,
                                    const SortHints &hints = {}) const;

private:
  SolverConfig cfg_;
};

/// Renders the condition as an SMT-LIB v2 script. Throws EngineFault when
/// the condition uses operators outside the exportable fragment (lists,
/// floats, type constants).
std::string exportSmtLib2(const PathCondition &pc);

/// Evaluates a symbolic expression under a full assignment; throws
/// EngineFault if a variable is missing.
Value evalUnder(const SymExpr &e, const Assignment &asn);

} // namespace gil

#endif // GIL_SOLVER_HPP

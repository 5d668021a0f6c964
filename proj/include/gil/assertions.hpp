//===-- assertions.hpp - memory and state assertions ---------------------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//

#ifndef GIL_ASSERTIONS_HPP
#define GIL_ASSERTIONS_HPP

#include "gil/term.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace gil {

/// One core-predicate atom <delta>(ins; outs).
struct PredAtom {
  std::string pred;
  std::vector<SymExpr> ins;
  std::vector<SymExpr> outs;

  bool operator==(const PredAtom &o) const {
    return pred == o.pred && ins == o.ins && outs == o.outs;
  }
  bool operator<(const PredAtom &o) const {
    if (pred != o.pred)
      return pred < o.pred;
    if (ins != o.ins)
      return std::lexicographical_compare(ins.begin(), ins.end(), o.ins.begin(),
                                          o.ins.end());
    return std::lexicographical_compare(outs.begin(), outs.end(),
                                        o.outs.begin(), o.outs.end());
  }
  std::string toString() const;
};

/// Memory assertion: Emp | core predicate | star conjunction. The separating
/// conjunction is treated modulo commutativity and associativity, so the
/// representation is the canonical flattened form: a sorted multiset of
/// atoms, Emp being the empty one.
class MemAssertion {
public:
  MemAssertion() = default;
  static MemAssertion emp() { return MemAssertion(); }
  static MemAssertion pred(PredAtom a) {
    MemAssertion p;
    p.atoms_.push_back(std::move(a));
    return p;
  }
  static MemAssertion star(const MemAssertion &a, const MemAssertion &b) {
    MemAssertion p;
    p.atoms_ = a.atoms_;
    p.atoms_.insert(p.atoms_.end(), b.atoms_.begin(), b.atoms_.end());
    std::sort(p.atoms_.begin(), p.atoms_.end());
    return p;
  }

  bool isEmp() const { return atoms_.empty(); }
  const std::vector<PredAtom> &atoms() const { return atoms_; }

  bool operator==(const MemAssertion &o) const { return atoms_ == o.atoms_; }

  std::set<std::string> svars() const {
    std::set<std::string> out;
    for (const PredAtom &a : atoms_) {
      for (const SymExpr &e : a.ins)
        e.collectVars(out);
      for (const SymExpr &e : a.outs)
        e.collectVars(out);
    }
    return out;
  }

  MemAssertion substitute(const std::map<std::string, SymExpr> &sub) const {
    MemAssertion p;
    for (const PredAtom &a : atoms_) {
      PredAtom b{a.pred, {}, {}};
      for (const SymExpr &e : a.ins)
        b.ins.push_back(e.substitute(sub));
      for (const SymExpr &e : a.outs)
        b.outs.push_back(e.substitute(sub));
      p.atoms_.push_back(std::move(b));
    }
    std::sort(p.atoms_.begin(), p.atoms_.end());
    return p;
  }

  std::string toString() const;

private:
  std::vector<PredAtom> atoms_; // kept sorted
};

/// State assertion P /\ pi: a memory part and a pure boolean part.
struct StateAssertion {
  MemAssertion mem;
  SymExpr pure = seTrue();

  std::set<std::string> svars() const {
    std::set<std::string> out = mem.svars();
    pure.collectVars(out);
    return out;
  }
  bool operator==(const StateAssertion &o) const {
    return mem == o.mem && pure == o.pure;
  }
  std::string toString() const;
};

/// Substitution theta: symbolic variables to symbolic expressions, lifted
/// homomorphically to terms and assertions via substitute().
using Substitution = std::map<std::string, SymExpr>;

/// svars of an assertion (overloads the SymExpr version).
inline std::set<std::string> svars(const MemAssertion &p) { return p.svars(); }
inline std::set<std::string> svars(const StateAssertion &p) { return p.svars(); }

} // namespace gil

#endif // GIL_ASSERTIONS_HPP

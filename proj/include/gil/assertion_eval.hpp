//===-- assertion_eval.hpp - assertion consumers and producers -----------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//
//
// Lifts the model's core-predicate consumers/producers to memory assertions
// (atoms in canonical order, left to right; failures under a star restore
// the input memory) and to state assertions (branching on the pure part).
// Also: the resource functions and the satisfiability relation.
//
//===---------------------------------------------------------------------===//

#ifndef GIL_ASSERTION_EVAL_HPP
#define GIL_ASSERTION_EVAL_HPP

#include "gil/assertions.hpp"
#include "gil/memory_model.hpp"
#include "gil/state.hpp"

#include <optional>
#include <vector>

namespace gil {

/// Substitutions map symbolic variables to the model's value sort.
template <class M> using SubstOf = std::map<std::string, typename M::Val>;

/// theta(e): applies a substitution to a symbolic expression. In the
/// concrete flavour the result must be ground and is evaluated to a value.
inline SymExpr applySubst(const Substitution &theta, const SymExpr &e) {
  return simplify(e.substitute(theta));
}

inline Value applySubst(const std::map<std::string, Value> &theta,
                        const SymExpr &e) {
  std::map<std::string, SymExpr> sub;
  for (const auto &[v, val] : theta)
    sub.emplace(v, seLit(val));
  SymExpr s = simplify(e.substitute(sub));
  if (!s.isLit())
    throw EngineFault("substitution does not cover svars of " + e.toString());
  return s.value();
}

/// Interprets a symbolic substitution pointwise under an assignment.
inline std::map<std::string, Value> interpretSubst(const Assignment &env,
                                                   const Substitution &theta) {
  std::map<std::string, Value> out;
  for (const auto &[v, e] : theta)
    out.emplace(v, evalUnder(e, env));
  return out;
}

namespace detail {

template <class M>
PathCondition outsMatch(const std::vector<typename M::Val> &got,
                        const std::vector<typename M::Val> &want, bool equal) {
  // equal: /\ got_i = want_i ; unequal: \/ got_i != want_i
  SymExpr acc = equal ? seTrue() : seFalse();
  for (std::size_t i = 0; i < got.size(); ++i) {
    SymExpr g, w;
    if constexpr (std::is_same_v<typename M::Val, Value>) {
      g = seLit(got[i]);
      w = seLit(want[i]);
    } else {
      g = got[i];
      w = want[i];
    }
    SymExpr eq = seEq(g, w);
    acc = equal ? seAnd(acc, eq) : seOr(acc, seNot(eq));
  }
  return PathCondition(acc);
}

template <class M>
std::optional<bool> branchSat(const M &model, const PathCondition &pc) {
  if constexpr (FlavorOps<typename M::Val>::symbolic) {
    SolverResult r = model.solver().sat(pc);
    if (r.verdict == Verdict::Unsat)
      return std::nullopt;
    return r.verdict == Verdict::Unknown;
  } else {
    if (pc.isTriviallyFalse())
      return std::nullopt;
    return false;
  }
}

} // namespace detail

/// Consumes a memory assertion. Outcome values are true on success, false
/// otherwise; E covers out-parameter mismatches, M a missing core predicate.
template <class M>
std::vector<PredOutcome<M>>
consumeAsrt(const M &model, const typename M::Memory &mem,
            const SubstOf<M> &theta, const MemAssertion &p,
            const PathCondition &pc) {
  using Out = PredOutcome<M>;
  std::vector<Out> done;
  // work items: (memory so far, ctx so far, next atom index, unverified)
  struct Item {
    typename M::Memory mem;
    PathCondition ctx;
    std::size_t next;
    bool unverified;
  };
  std::vector<Item> work{{mem, pc, 0, false}};
  const auto &atoms = p.atoms();
  bool underStar = atoms.size() > 1;
  while (!work.empty()) {
    Item it = std::move(work.back());
    work.pop_back();
    if (it.next == atoms.size()) {
      done.push_back({std::move(it.mem), {}, ActionResult::Success,
                      std::move(it.ctx), it.unverified});
      continue;
    }
    const PredAtom &atom = atoms[it.next];
    std::vector<typename M::Val> ins, outs;
    for (const SymExpr &e : atom.ins)
      ins.push_back(applySubst(theta, e));
    for (const SymExpr &e : atom.outs)
      outs.push_back(applySubst(theta, e));
    for (Out &c : model.consume(atom.pred, it.mem, ins, it.ctx)) {
      bool unv = it.unverified || c.unverified;
      if (c.result != ActionResult::Success) {
        // Failure at an atom: under a star the input memory is restored.
        done.push_back({underStar ? mem : std::move(c.mem), {}, c.result,
                        std::move(c.ctx), unv});
        continue;
      }
      PathCondition eqCtx =
          c.ctx.conjoin(detail::outsMatch<M>(c.outs, outs, true));
      if (auto keep = detail::branchSat(model, eqCtx))
        work.push_back({c.mem, eqCtx, it.next + 1, unv || *keep});
      PathCondition neqCtx =
          c.ctx.conjoin(detail::outsMatch<M>(c.outs, outs, false));
      if (auto keep = detail::branchSat(model, neqCtx))
        done.push_back({underStar ? mem : c.mem, {}, ActionResult::Error,
                        std::move(neqCtx), unv || *keep});
    }
  }
  return done;
}

/// Produces a memory assertion; never Missing. Failures restore the input
/// memory and report Error (duplication).
template <class M>
std::vector<PredOutcome<M>>
produceAsrt(const M &model, const typename M::Memory &mem,
            const SubstOf<M> &theta, const MemAssertion &p,
            const PathCondition &pc) {
  using Out = PredOutcome<M>;
  std::vector<Out> done;
  struct Item {
    typename M::Memory mem;
    PathCondition ctx;
    std::size_t next;
    bool unverified;
  };
  std::vector<Item> work{{mem, pc, 0, false}};
  const auto &atoms = p.atoms();
  while (!work.empty()) {
    Item it = std::move(work.back());
    work.pop_back();
    if (it.next == atoms.size()) {
      done.push_back({std::move(it.mem), {}, ActionResult::Success,
                      std::move(it.ctx), it.unverified});
      continue;
    }
    const PredAtom &atom = atoms[it.next];
    std::vector<typename M::Val> ins, outs;
    for (const SymExpr &e : atom.ins)
      ins.push_back(applySubst(theta, e));
    for (const SymExpr &e : atom.outs)
      outs.push_back(applySubst(theta, e));
    for (Out &pr : model.produce(atom.pred, it.mem, ins, outs, it.ctx)) {
      bool unv = it.unverified || pr.unverified;
      if (pr.result != ActionResult::Success) {
        done.push_back(
            {mem, {}, ActionResult::Error, std::move(pr.ctx), unv});
        continue;
      }
      work.push_back({std::move(pr.mem), std::move(pr.ctx), it.next + 1, unv});
    }
  }
  return done;
}

/// Resource function: the unique memory produced from the empty one, or
/// nullopt when the assertion duplicates resource under theta.
template <class M>
std::optional<typename M::Memory> resourceOf(const M &model,
                                             const SubstOf<M> &theta,
                                             const MemAssertion &p) {
  std::optional<typename M::Memory> res;
  for (PredOutcome<M> &o :
       produceAsrt(model, model.zero(), theta, p, PathCondition())) {
    if (o.result != ActionResult::Success)
      continue;
    if (res && !model.memEqual(*res, o.mem))
      throw EngineFault("memory production from 0 is not unique");
    res = std::move(o.mem);
  }
  return res;
}

/// The in-resource function: core predicates with their instantiated
/// in-parameters (a multiset, returned sorted).
template <class M>
std::vector<std::pair<std::string, std::vector<typename M::Val>>>
resourceIns(const SubstOf<M> &theta, const MemAssertion &p) {
  std::vector<std::pair<std::string, std::vector<typename M::Val>>> out;
  for (const PredAtom &a : p.atoms()) {
    std::vector<typename M::Val> ins;
    for (const SymExpr &e : a.ins)
      ins.push_back(applySubst(theta, e));
    out.emplace_back(a.pred, std::move(ins));
  }
  std::sort(out.begin(), out.end(),
            [](const auto &a, const auto &b) {
              if (a.first != b.first)
                return a.first < b.first;
              return std::lexicographical_compare(
                  a.second.begin(), a.second.end(), b.second.begin(),
                  b.second.end());
            });
  return out;
}

//===----------------------------------------------------------------------===//
// State assertions
//===----------------------------------------------------------------------===//

/// Consumes P /\ pi on a state: memory part first, then a branch on the pure
/// part (satisfied: success; unsatisfied-but-possible: error).
template <class M>
std::vector<StateOutcome<M>>
consumeStateAsrt(const M &model, const State<M> &st, const SubstOf<M> &theta,
                 const StateAssertion &p) {
  using Ops = FlavorOps<typename M::Val>;
  std::vector<StateOutcome<M>> out;
  SymExpr pure;
  if constexpr (Ops::symbolic)
    pure = applySubst(theta, p.pure);
  else
    pure = seLit(applySubst(theta, p.pure));
  for (PredOutcome<M> &c : consumeAsrt(model, st.mem, theta, p.mem, st.ctx)) {
    if (c.result != ActionResult::Success) {
      State<M> st2{std::move(c.mem), st.store, st.alloc, std::move(c.ctx)};
      out.push_back({std::move(st2), Ops::boolVal(false), c.result,
                     c.unverified});
      continue;
    }
    PathCondition satCtx = c.ctx.conjoin(pure);
    if (auto keep = detail::branchSat(model, satCtx)) {
      State<M> st2{c.mem, st.store, st.alloc, std::move(satCtx)};
      out.push_back({std::move(st2), Ops::boolVal(true), ActionResult::Success,
                     c.unverified || *keep});
    }
    PathCondition unsatCtx = c.ctx.conjoin(seNot(pure));
    if (auto keep = detail::branchSat(model, unsatCtx)) {
      State<M> st2{st.mem, st.store, st.alloc, std::move(unsatCtx)};
      out.push_back({std::move(st2), Ops::boolVal(false), ActionResult::Error,
                     c.unverified || *keep});
    }
  }
  return out;
}

/// Produces P /\ pi on a state. The unsatisfied-pure branch is dropped, so
/// producers do not maintain full coverage.
template <class M>
std::vector<StateOutcome<M>>
produceStateAsrt(const M &model, const State<M> &st, const SubstOf<M> &theta,
                 const StateAssertion &p) {
  using Ops = FlavorOps<typename M::Val>;
  std::vector<StateOutcome<M>> out;
  SymExpr pure;
  if constexpr (Ops::symbolic)
    pure = applySubst(theta, p.pure);
  else
    pure = seLit(applySubst(theta, p.pure));
  for (PredOutcome<M> &pr : produceAsrt(model, st.mem, theta, p.mem, st.ctx)) {
    if (pr.result != ActionResult::Success) {
      State<M> st2{st.mem, st.store, st.alloc, std::move(pr.ctx)};
      out.push_back({std::move(st2), Ops::boolVal(false), pr.result,
                     pr.unverified});
      continue;
    }
    PathCondition satCtx = pr.ctx.conjoin(pure);
    if (auto keep = detail::branchSat(model, satCtx)) {
      State<M> st2{std::move(pr.mem), st.store, st.alloc, std::move(satCtx)};
      out.push_back({std::move(st2), Ops::boolVal(true), ActionResult::Success,
                     pr.unverified || *keep});
    }
  }
  return out;
}

/// Satisfiability: (mem, ctx), theta |= P /\ pi iff the memory is exactly
/// the assertion's resource under ctx and ctx entails theta(pi). Implemented
/// by consuming P and looking for a ctx-entailed branch with empty residual.
template <class M>
Tri satisfies(const M &model, const typename M::Memory &mem,
              const PathCondition &ctx, const SubstOf<M> &theta,
              const StateAssertion &p, const Solver &solver) {
  if (!model.wf(mem, ctx))
    return Tri::False;
  SymExpr pure;
  if constexpr (FlavorOps<typename M::Val>::symbolic)
    pure = applySubst(theta, p.pure);
  else
    pure = seLit(applySubst(theta, p.pure));
  Tri pureHolds = solver.entails(ctx, PathCondition(pure));
  if (pureHolds == Tri::False)
    return Tri::False;
  bool sawUnknown = pureHolds == Tri::Unknown;
  for (const PredOutcome<M> &c : consumeAsrt(model, mem, theta, p.mem, ctx)) {
    if (c.result != ActionResult::Success)
      continue;
    if (!model.memEqual(c.mem, model.zero()))
      continue;
    Tri entailed = solver.entails(ctx, c.ctx);
    if (entailed == Tri::True)
      return sawUnknown ? Tri::Unknown : Tri::True;
    if (entailed == Tri::Unknown)
      sawUnknown = true;
  }
  return sawUnknown ? Tri::Unknown : Tri::False;
}

template <class M>
Tri satisfies(const M &model, const State<M> &st, const SubstOf<M> &theta,
              const StateAssertion &p, const Solver &solver) {
  return satisfies(model, st.mem, st.ctx, theta, p, solver);
}

} // namespace gil

#endif // GIL_ASSERTION_EVAL_HPP

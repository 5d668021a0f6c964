//===-- verification.hpp - specification verification ---------------------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//
//
// The verification procedure: produce the pre-condition into a fresh state
// whose allocator is pre-charged with the pre-condition's symbolic
// variables, run the collecting semantics from the procedure entry, and
// check every final configuration: Normal outcome, post-condition satisfied
// (existential witnesses discovered through the consumer and the solver),
// and the return value entailed.
//
//===---------------------------------------------------------------------===//

#ifndef GIL_VERIFICATION_HPP
#define GIL_VERIFICATION_HPP

#include "gil/assertion_eval.hpp"
#include "gil/interpreter.hpp"

#include <sstream>
#include <string>

namespace gil {

enum class SpecVerdict : std::uint8_t { Verified, Vacuous, Refuted, Inconclusive };

inline const char *specVerdictName(SpecVerdict v) {
  switch (v) {
  case SpecVerdict::Verified: return "Verified";
  case SpecVerdict::Vacuous: return "Vacuous";
  case SpecVerdict::Refuted: return "Refuted";
  case SpecVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct VerifyReport {
  SpecVerdict verdict = SpecVerdict::Inconclusive;
  std::string detail;
  std::size_t finalsChecked = 0;
  /// Failing final configurations (branch ids), for reporting.
  std::vector<std::string> failingBranches;
};

/// Registration checks: specs must reference existing procedures, use no
/// program variables (grammatically enforced), keep the return expression
/// within the spec's variables, and must not cut paths through the pure
/// post (pi_pre => pi_post).
std::vector<CheckIssue> checkSpecTable(const Prog &p, const Solver &solver);

namespace verif_detail {

/// Extracts a witness term for `fresh` from an equality literal in ctx, if
/// one exists that does not mention any of the fresh variables.
inline std::optional<SymExpr>
witnessFromCtx(const PathCondition &ctx, const std::string &fresh,
               const std::set<std::string> &allFresh) {
  for (const SymExpr &l : ctx.literals()) {
    if (!l.isBinary() || l.binOp() != BinOp::Eq)
      continue;
    auto trySides = [&](const SymExpr &a, const SymExpr &b)
        -> std::optional<SymExpr> {
      if (a.isVar() && a.varName() == fresh) {
        for (const std::string &v : b.vars())
          if (allFresh.count(v))
            return std::nullopt;
        return b;
      }
      return std::nullopt;
    };
    if (auto w = trySides(l.left(), l.right()))
      return w;
    if (auto w = trySides(l.right(), l.left()))
      return w;
  }
  return std::nullopt;
}

} // namespace verif_detail

/// Post-condition check for one Normal final: discovers existential
/// witnesses (consumer bindings first, solver models for purely-pure
/// existentials), then requires residual-empty consumption entailed by the
/// final context, the pure post entailed, and return-value equality.
template <class M>
Tri checkPost(const M &model, const Solver &solver, const State<M> &finalSt,
              const Substitution &thetaHat, const StateAssertion &post,
              const std::vector<std::string> &existentials,
              const SymExpr &specRet, const SymExpr &actualRet) {
  static_assert(FlavorOps<typename M::Val>::symbolic,
                "verification runs on the symbolic flavour");
  // Discovery pass: consume with fresh symbolic variables standing in for
  // the existentials.
  AllocRecord rec = finalSt.alloc;
  Substitution theta = thetaHat;
  std::set<std::string> freshSet;
  std::vector<std::string> freshNames;
  {
    auto [rec2, names] = allocSymVars(rec, existentials.size());
    rec = std::move(rec2);
    for (std::size_t i = 0; i < existentials.size(); ++i) {
      theta[existentials[i]] = seVar(names[i]);
      freshSet.insert(names[i]);
      freshNames.push_back(names[i]);
    }
  }
  bool sawUnknown = false;
  for (const PredOutcome<M> &c :
       consumeAsrt(model, finalSt.mem, theta, post.mem, finalSt.ctx)) {
    if (c.result != ActionResult::Success)
      continue;
    if (!model.memEqual(c.mem, model.zero()))
      continue; // leaked resource on this branch
    // Recover witnesses for each existential: consumer bindings first, then
    // solver models for purely-pure ones, defaults for unconstrained ones.
    Substitution witness = thetaHat;
    std::vector<std::size_t> remaining;
    for (std::size_t i = 0; i < existentials.size(); ++i) {
      auto w = verif_detail::witnessFromCtx(c.ctx, freshNames[i], freshSet);
      if (w)
        witness[existentials[i]] = *w;
      else
        remaining.push_back(i);
    }
    if (!remaining.empty()) {
      PathCondition solveCtx = c.ctx.conjoin(applySubst(theta, post.pure));
      SolverResult r = solver.sat(solveCtx);
      if (r.verdict == Verdict::Unknown) {
        sawUnknown = true;
        continue;
      }
      if (r.verdict == Verdict::Unsat)
        continue;
      for (std::size_t i : remaining) {
        auto it = r.model.find(freshNames[i]);
        witness[existentials[i]] =
            it != r.model.end() ? seLit(it->second) : seInt(0);
      }
    }
    // Verification pass under the instantiated substitution.
    Tri sat = satisfies(model, finalSt.mem, finalSt.ctx, witness, post, solver);
    if (sat == Tri::False)
      continue;
    Tri retOk = solver.entails(
        finalSt.ctx,
        PathCondition(seEq(actualRet, applySubst(witness, specRet))));
    if (retOk == Tri::False)
      continue;
    if (sat == Tri::Unknown || retOk == Tri::Unknown) {
      sawUnknown = true;
      continue;
    }
    return Tri::True;
  }
  return sawUnknown ? Tri::Unknown : Tri::False;
}

/// The verification procedure for one specification.
template <class M>
VerifyReport verifySpec(const M &model, const Solver &solver, const Prog &prog,
                        const ProcSpec &spec, std::size_t fuel,
                        const StepOptions<M> &optsIn = {}) {
  static_assert(FlavorOps<typename M::Val>::symbolic,
                "verification runs on the symbolic flavour");
  VerifyReport rep;
  const Proc &proc = prog.procOf(spec.procName);

  // theta-hat: the identity on the pre-condition's symbolic variables.
  std::set<std::string> preVars = spec.pre.svars();
  preVars.insert(spec.param);
  Substitution thetaHat;
  for (const std::string &v : preVars)
    thetaHat.emplace(v, seVar(v));

  // sigma-hat: store {x -> #param}, allocator pre-charged with the
  // pre-condition's symbolic variables and literal locations.
  State<M> st;
  st.store[proc.param] = seVar(spec.param);
  st.alloc.chargeSymVars(preVars);
  std::set<std::string> preSyms;
  for (const PredAtom &a : spec.pre.mem.atoms()) {
    for (const SymExpr &e : a.ins)
      e.collectSymbols(preSyms);
    for (const SymExpr &e : a.outs)
      e.collectSymbols(preSyms);
  }
  std::set<Value> preLocs;
  for (const std::string &s : preSyms)
    if (Value::isLocationName(s))
      preLocs.insert(Value::symbol(s));
  if (!preLocs.empty())
    st.alloc.charge(AllocRange::Locations, preLocs);

  // Produce the pre-condition; no successful production means the spec is
  // vacuous.
  auto produced = produceStateAsrt(model, st, thetaHat, spec.pre);
  std::vector<State<M>> entryStates;
  for (StateOutcome<M> &o : produced)
    if (o.result == ActionResult::Success)
      entryStates.push_back(std::move(o.st));
  if (entryStates.empty()) {
    rep.verdict = SpecVerdict::Vacuous;
    rep.detail = "pre-condition has no successful production";
    return rep;
  }

  std::set<std::string> postOnlySet = spec.post.svars();
  for (const std::string &v : preVars)
    postOnlySet.erase(v);
  std::vector<std::string> existentials(postOnlySet.begin(), postOnlySet.end());

  StepOptions<M> opts = optsIn;
  bool sawUnknown = false;
  for (State<M> &entry : entryStates) {
    std::vector<Configuration<M>> init{
        initialConfig<M>(std::move(entry), spec.procName)};
    RunResult<M> run = runToTermination(model, solver, prog, std::move(init),
                                        fuel, opts);
    if (!run.done) {
      rep.verdict = SpecVerdict::Inconclusive;
      rep.detail = "fuel exhausted after " + std::to_string(run.stepsUsed) +
                   " collecting steps";
      return rep;
    }
    for (const Configuration<M> &cf : run.configs) {
      ++rep.finalsChecked;
      if (cf.unverified)
        sawUnknown = true;
      if (cf.outcome != OutcomeKind::Normal) {
        rep.verdict = SpecVerdict::Refuted;
        std::ostringstream os;
        os << "branch " << cf.branchId << " terminated with "
           << outcomeKindName(cf.outcome) << "("
           << cf.outcomeValue.toString() << ") under "
           << cf.st.ctx.toString();
        rep.detail = os.str();
        rep.failingBranches.push_back(cf.branchId);
        return rep;
      }
      Tri ok = checkPost(model, solver, cf.st, thetaHat, spec.post,
                         existentials, spec.ret, cf.outcomeValue);
      if (ok == Tri::False) {
        rep.verdict = SpecVerdict::Refuted;
        std::ostringstream os;
        os << "branch " << cf.branchId
           << " does not satisfy the post-condition; final memory "
           << cf.st.mem.toString() << ", return "
           << cf.outcomeValue.toString() << ", under " << cf.st.ctx.toString();
        rep.detail = os.str();
        rep.failingBranches.push_back(cf.branchId);
        return rep;
      }
      if (ok == Tri::Unknown)
        sawUnknown = true;
    }
  }
  if (sawUnknown) {
    rep.verdict = SpecVerdict::Inconclusive;
    rep.detail = "solver returned Unknown on some branch";
    return rep;
  }
  rep.verdict = SpecVerdict::Verified;
  return rep;
}

/// The compositionality corollary as a check: a verified {P} f {Q} must
/// verify as {P * R} f {Q * R} whenever P * R produces successfully.
template <class M>
VerifyReport checkCompositionality(const M &model, const Solver &solver,
                                   const Prog &prog, const ProcSpec &spec,
                                   const MemAssertion &frame,
                                   const SymExpr &framePure,
                                   std::size_t fuel) {
  ProcSpec framed = spec;
  framed.pre.mem = MemAssertion::star(spec.pre.mem, frame);
  framed.pre.pure = simplify(seAnd(spec.pre.pure, framePure));
  framed.post.mem = MemAssertion::star(spec.post.mem, frame);
  framed.post.pure = simplify(seAnd(spec.post.pure, framePure));
  return verifySpec(model, solver, prog, framed, fuel);
}

} // namespace gil

#endif // GIL_VERIFICATION_HPP

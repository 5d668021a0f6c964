//===-- interpreter.hpp - the GIL execution semantics ----------------------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//
//
// Single-trace semantics over an arbitrary state model, its collecting
// closure, and the specification re-use call rules. Rules are expressed via
// the state-action compositions, matching their definitional form.
//
// Two deliberate completions of the rule set: `vanish` yields no successor
// configurations, and memory actions with a Missing result produce a Miss
// outcome (the error rule shape, with the M result carried through).
//
//===---------------------------------------------------------------------===//

#ifndef GIL_INTERPRETER_HPP
#define GIL_INTERPRETER_HPP

#include "gil/assertion_eval.hpp"
#include "gil/program.hpp"
#include "gil/state.hpp"

#include <functional>
#include <string>
#include <vector>

namespace gil {

template <class M> struct Frame {
  std::string proc;
  bool bottom = true; // the bottom frame has no return slot
  std::string retVar;
  StoreOf<typename M::Val> store;
  std::size_t retIndex = 0;

  bool operator==(const Frame &o) const {
    return proc == o.proc && bottom == o.bottom && retVar == o.retVar &&
           store == o.store && retIndex == o.retIndex;
  }
};

/// Non-empty; back() is the active frame, front() the bottom frame.
template <class M> using CallStack = std::vector<Frame<M>>;

enum class OutcomeKind : std::uint8_t { Cont, Normal, Fail, Miss };

inline const char *outcomeKindName(OutcomeKind k) {
  switch (k) {
  case OutcomeKind::Cont: return "Cont";
  case OutcomeKind::Normal: return "Normal";
  case OutcomeKind::Fail: return "Fail";
  case OutcomeKind::Miss: return "Miss";
  }
  return "?";
}

template <class M> struct Configuration {
  State<M> st;
  CallStack<M> cs;
  std::size_t idx = 0;
  OutcomeKind outcome = OutcomeKind::Cont;
  typename M::Val outcomeValue;
  std::string branchId = "0";
  std::vector<std::string> trace; // executed command labels "proc:index"
  bool unverified = false;

  bool final() const { return outcome != OutcomeKind::Cont; }
};

template <class M> bool allFinal(const std::vector<Configuration<M>> &cfs) {
  for (const Configuration<M> &cf : cfs)
    if (!cf.final())
      return false;
  return true;
}

/// cmd(p, cs, i): the i-th command of the active frame's procedure.
inline const Cmd &cmdAt(const Prog &p, const std::string &activeProc,
                        std::size_t i) {
  const Proc &proc = p.procOf(activeProc);
  if (i >= proc.body.size())
    throw EngineFault("command index " + std::to_string(i) +
                      " out of range in '" + activeProc + "'");
  return proc.body[i];
}

template <class M>
const Cmd &cmdAt(const Prog &p, const CallStack<M> &cs, std::size_t i) {
  if (cs.empty())
    throw EngineFault("empty call stack");
  return cmdAt(p, cs.back().proc, i);
}

/// Engine-level planted mutations for the mutation gate; all off in normal
/// operation.
struct EngineMutations {
  bool weakAssume = false;    // assume keeps the context unchanged
  bool dropGotoFalse = false; // IfGoto loses its fall-through branch
  bool nonFreshAlloc = false; // uSym always returns l0
};

template <class M> struct StepOptions {
  bool specsEnabled = false;
  AllocCtx allocCtx;
  EngineMutations mutations;
  /// Instrumentation hook: called with the stepped configuration and its
  /// successors (used for the coverage-theorem check).
  std::function<void(const Configuration<M> &, const Cmd &,
                     const std::vector<Configuration<M>> &)>
      onStep;
};

namespace detail {

template <class M>
Configuration<M> successor(const Configuration<M> &cf, State<M> st,
                           CallStack<M> cs, std::size_t idx, OutcomeKind o,
                           typename M::Val ov, std::size_t branchIdx,
                           const std::string &label, bool unverified) {
  Configuration<M> out;
  out.st = std::move(st);
  out.cs = std::move(cs);
  out.idx = idx;
  out.outcome = o;
  out.outcomeValue = std::move(ov);
  out.branchId = cf.branchId + "." + std::to_string(branchIdx);
  out.trace = cf.trace;
  out.trace.push_back(label);
  out.unverified = cf.unverified || unverified;
  return out;
}

} // namespace detail

template <class M>
std::vector<Configuration<M>>
specCallStep(const M &model, const Solver &solver, const Prog &prog,
             const Configuration<M> &cf, const StepOptions<M> &opts,
             const std::string &label);

/// One step of the Fig-1 semantics (plus the spec-use rules when enabled).
template <class M>
std::vector<Configuration<M>> step(const M &model, const Solver &solver,
                                   const Prog &prog,
                                   const Configuration<M> &cf,
                                   const StepOptions<M> &opts = {}) {
  using Val = typename M::Val;
  using Ops = FlavorOps<Val>;
  if (cf.final())
    throw EngineFault("cannot step a final configuration");
  const Cmd &cmd = cmdAt(prog, cf.cs, cf.idx);
  const std::string label = cf.cs.back().proc + ":" + std::to_string(cf.idx);
  const State<M> &st = cf.st;
  std::vector<Configuration<M>> out;
  std::size_t branchIdx = 0;
  auto push = [&](State<M> s, CallStack<M> cs, std::size_t idx, OutcomeKind o,
                  Val ov, bool unv) {
    out.push_back(detail::successor(cf, std::move(s), std::move(cs), idx, o,
                                    std::move(ov), branchIdx++, label, unv));
  };
  Val unit = Ops::boolVal(true);

  switch (cmd.kind) {
  case Cmd::Kind::Assign: {
    auto act = composeSeq<M>(saEval<M>(cmd.expr), saSetVar<M>(cmd.var));
    for (StateOutcome<M> &o : act(st, unit))
      push(std::move(o.st), cf.cs, cf.idx + 1, OutcomeKind::Cont, unit,
           o.unverified);
    break;
  }
  case Cmd::Kind::IfGoto: {
    StateAction<M> assume = saAssume<M>(solver);
    if (opts.mutations.weakAssume) {
      assume = [&solver, assume](const State<M> &s, const typename M::Val &v) {
        auto outs = assume(s, v);
        for (StateOutcome<M> &o : outs)
          o.st.ctx = s.ctx; // planted bug: the context is not strengthened
        return outs;
      };
    }
    // True branch: evaluate the guard, assume it, jump.
    auto actT = composeSeq<M>(saEval<M>(cmd.expr), assume);
    for (StateOutcome<M> &o : actT(st, unit))
      push(std::move(o.st), cf.cs, cmd.target, OutcomeKind::Cont, unit,
           o.unverified);
    // False branch: assume the negated guard, fall through.
    if (!opts.mutations.dropGotoFalse) {
      Expr neg = Expr::unary(UnOp::Not, cmd.expr);
      auto actF = composeSeq<M>(saEval<M>(neg), assume);
      for (StateOutcome<M> &o : actF(st, unit))
        push(std::move(o.st), cf.cs, cf.idx + 1, OutcomeKind::Cont, unit,
             o.unverified);
    }
    break;
  }
  case Cmd::Kind::MemAction: {
    auto act = composeSeq<M>(saEval<M>(cmd.expr),
                             saMemAction<M>(model, cmd.action));
    for (StateOutcome<M> &o : act(st, unit)) {
      switch (o.result) {
      case ActionResult::Success: {
        StoreOf<Val> store = o.st.store;
        store[cmd.var] = o.value;
        State<M> st2 = o.st;
        st2.store = std::move(store);
        push(std::move(st2), cf.cs, cf.idx + 1, OutcomeKind::Cont, unit,
             o.unverified);
        break;
      }
      case ActionResult::Error:
        push(std::move(o.st), cf.cs, cf.idx, OutcomeKind::Fail, o.value,
             o.unverified);
        break;
      case ActionResult::Missing:
        push(std::move(o.st), cf.cs, cf.idx, OutcomeKind::Miss, o.value,
             o.unverified);
        break;
      }
    }
    break;
  }
  case Cmd::Kind::USym:
  case Cmd::Kind::ISym: {
    StateAction<M> sym = cmd.kind == Cmd::Kind::USym
                             ? saUSym<M>()
                             : saISym<M>(opts.allocCtx);
    if (cmd.kind == Cmd::Kind::USym && opts.mutations.nonFreshAlloc) {
      sym = [](const State<M> &s, const typename M::Val &v) {
        // planted bug: always hand out l0, ignoring the record
        auto n = FlavorOps<typename M::Val>::groundCount(v);
        if (!n)
          throw EngineFault("usym needs a ground non-negative count");
        typename M::Val list;
        if constexpr (std::is_same_v<typename M::Val, Value>) {
          list = Value::list(Value::List(*n, Value::symbol("l0")));
        } else {
          std::vector<SymExpr> locs(*n, seLit(Value::symbol("l0")));
          list = makeListTerm(locs);
        }
        return std::vector<StateOutcome<M>>{
            {s, std::move(list), ActionResult::Success, false}};
      };
    }
    auto act = composeSeq<M>(
        composeSeq<M>(saEval<M>(cmd.expr), sym), saSetVar<M>(cmd.var));
    for (StateOutcome<M> &o : act(st, unit))
      push(std::move(o.st), cf.cs, cf.idx + 1, OutcomeKind::Cont, unit,
           o.unverified);
    break;
  }
  case Cmd::Kind::Call: {
    if (opts.specsEnabled && cmd.withSubst) {
      if (!prog.specs.count(valueProcName<M>(st, cmd.expr)))
        throw EngineFault("call carries a substitution but procedure '" +
                          valueProcName<M>(st, cmd.expr) + "' has no spec");
      for (Configuration<M> &cf2 :
           specCallStep(model, solver, prog, cf, opts, label))
        out.push_back(std::move(cf2));
      break;
    }
    auto act = composePair<M>(
        saEval<M>(cmd.expr),
        composePair<M>(saEval<M>(cmd.arg), saGetStore<M>()));
    Val undef = Ops::undefinedVal();
    Val arg = outsToValue(std::vector<Val>{
        undef, outsToValue(std::vector<Val>{undef, undef})});
    for (StateOutcome<M> &o : act(st, arg)) {
      auto outer = detail::splitArgs<M>(o.value, 2);
      auto inner = detail::splitArgs<M>(outer[1], 2);
      std::string fname = procNameOfVal<M>(outer[0]);
      const Proc &callee = prog.procOf(fname);
      StoreOf<Val> callerStore = deserializeStore(inner[1]);
      CallStack<M> cs2 = cf.cs;
      cs2.push_back({fname, false, cmd.var, std::move(callerStore),
                     cf.idx + 1});
      StoreOf<Val> calleeStore;
      calleeStore[callee.param] = inner[0];
      auto setS = saSetStore<M>();
      for (StateOutcome<M> &o2 : setS(o.st, serializeStore(calleeStore)))
        push(std::move(o2.st), cs2, 0, OutcomeKind::Cont, unit,
             o.unverified || o2.unverified);
    }
    break;
  }
  case Cmd::Kind::Return: {
    auto eval = saEval<M>(cmd.expr);
    for (StateOutcome<M> &o : eval(st, unit)) {
      const Frame<M> &top = cf.cs.back();
      if (top.bottom) {
        // Top Return: terminate with a Normal outcome.
        push(std::move(o.st), cf.cs, cf.idx, OutcomeKind::Normal, o.value,
             o.unverified);
        continue;
      }
      CallStack<M> cs2(cf.cs.begin(), cf.cs.end() - 1);
      auto act = composePair<M>(saSetStore<M>(), saSetVar<M>(top.retVar));
      Val arg = outsToValue(
          std::vector<Val>{serializeStore(top.store), o.value});
      for (StateOutcome<M> &o2 : act(o.st, arg))
        push(std::move(o2.st), cs2, top.retIndex, OutcomeKind::Cont, unit,
             o.unverified || o2.unverified);
    }
    break;
  }
  case Cmd::Kind::Fail: {
    auto eval = saEval<M>(cmd.expr);
    for (StateOutcome<M> &o : eval(st, unit))
      push(std::move(o.st), cf.cs, cf.idx, OutcomeKind::Fail, o.value,
           o.unverified);
    break;
  }
  case Cmd::Kind::Vanish:
    // path cutting: no successor configurations
    break;
  }
  if (opts.onStep)
    opts.onStep(cf, cmd, out);
  return out;
}

/// Reads a procedure identifier out of an evaluated callee value.
template <class M>
std::string procNameOfVal(const typename M::Val &v) {
  if constexpr (std::is_same_v<typename M::Val, Value>) {
    if (!v.isProcId())
      throw EngineFault("call target is not a procedure identifier: " +
                        v.toString());
    return v.proc().name;
  } else {
    SymExpr s = simplify(v);
    if (!s.isLit() || !s.value().isProcId())
      throw EngineFault("call target is not a procedure identifier: " +
                        s.toString());
    return s.value().proc().name;
  }
}

template <class M>
std::string valueProcName(const State<M> &st, const Expr &callee) {
  return procNameOfVal<M>(FlavorOps<typename M::Val>::evalExpr(callee, st.store));
}

/// The Fig-3 rules: spec re-use at an annotated call site.
template <class M>
std::vector<Configuration<M>>
specCallStep(const M &model, const Solver &solver, const Prog &prog,
             const Configuration<M> &cf, const StepOptions<M> &opts,
             const std::string &label) {
  using Val = typename M::Val;
  using Ops = FlavorOps<Val>;
  const Cmd &cmd = cmdAt(prog, cf.cs, cf.idx);
  const State<M> &st = cf.st;
  std::string fname = valueProcName<M>(st, cmd.expr);
  Val argVal = Ops::evalExpr(cmd.arg, st.store);
  const ProcSpec &spec = prog.specs.at(fname);

  // theta extended with the parameter value
  SubstOf<M> theta;
  for (const auto &[sv, e] : *cmd.withSubst)
    theta.emplace(sv, Ops::evalExpr(e, st.store));
  theta[spec.param] = argVal;

  std::vector<Configuration<M>> out;
  std::size_t branchIdx = 0;
  auto branches = consumeStateAsrt(model, st, theta, spec.pre);
  bool allSuccess = true;
  for (const StateOutcome<M> &b : branches)
    if (b.result != ActionResult::Success)
      allSuccess = false;

  if (allSuccess) {
    std::set<std::string> exSet = spec.post.svars();
    for (const std::string &v : spec.pre.svars())
      exSet.erase(v);
    std::vector<std::string> existentials(exSet.begin(), exSet.end());
    for (StateOutcome<M> &b : branches) {
      // generate post-condition existentials
      State<M> stJ = b.st;
      SubstOf<M> thetaJ = theta;
      if constexpr (Ops::symbolic) {
        auto [rec, names] = allocSymVars(stJ.alloc, existentials.size());
        stJ.alloc = std::move(rec);
        for (std::size_t i = 0; i < existentials.size(); ++i)
          thetaJ[existentials[i]] = seVar(names[i]);
      } else {
        auto [rec, vals] =
            allocValues(stJ.alloc, existentials.size(), opts.allocCtx);
        stJ.alloc = std::move(rec);
        for (std::size_t i = 0; i < existentials.size(); ++i)
          thetaJ[existentials[i]] = vals[i];
      }
      // produce post-condition, then assign the return value
      for (StateOutcome<M> &pb : produceStateAsrt(model, stJ, thetaJ, spec.post)) {
        if (pb.result != ActionResult::Success)
          continue;
        Val retVal;
        if constexpr (Ops::symbolic)
          retVal = applySubst(thetaJ, spec.ret);
        else
          retVal = applySubst(thetaJ, spec.ret);
        State<M> st2 = pb.st;
        st2.store[cmd.var] = retVal;
        out.push_back(detail::successor(cf, std::move(st2), cf.cs, cf.idx + 1,
                                        OutcomeKind::Cont, Ops::boolVal(true),
                                        branchIdx++, label,
                                        b.unverified || pb.unverified));
      }
    }
    return out;
  }

  // Error rule: consumption not fully successful; every branch becomes a
  // final configuration.
  for (StateOutcome<M> &b : branches) {
    State<M> pure = unitState(model);
    pure.ctx = b.st.ctx;
    std::optional<State<M>> stJ = composeStates(model, st, pure);
    if (!stJ) {
      stJ = st;
      stJ->ctx = b.st.ctx;
    }
    OutcomeKind o = b.result == ActionResult::Missing ? OutcomeKind::Miss
                                                      : OutcomeKind::Fail;
    out.push_back(detail::successor(cf, std::move(*stJ), cf.cs, cf.idx, o,
                                    Ops::boolVal(false), branchIdx++, label,
                                    b.unverified));
  }
  return out;
}

//===----------------------------------------------------------------------===//
// Collecting semantics
//===----------------------------------------------------------------------===//

/// One collecting step: finals pass through, non-finals are stepped, results
/// are unioned and ordered by branch id.
template <class M>
std::vector<Configuration<M>>
collectStep(const M &model, const Solver &solver, const Prog &prog,
            const std::vector<Configuration<M>> &cfs,
            const StepOptions<M> &opts = {}) {
  std::vector<Configuration<M>> out;
  for (const Configuration<M> &cf : cfs) {
    if (cf.final()) {
      out.push_back(cf);
      continue;
    }
    for (Configuration<M> &cf2 : step(model, solver, prog, cf, opts))
      out.push_back(std::move(cf2));
  }
  std::sort(out.begin(), out.end(),
            [](const Configuration<M> &a, const Configuration<M> &b) {
              return a.branchId < b.branchId;
            });
  return out;
}

template <class M> struct RunResult {
  bool done = false; // all configurations final within fuel
  std::vector<Configuration<M>> configs;
  std::size_t stepsUsed = 0;
};

/// Fuel-bounded to-termination closure of the collecting semantics.
template <class M>
RunResult<M> runToTermination(const M &model, const Solver &solver,
                              const Prog &prog,
                              std::vector<Configuration<M>> cfs,
                              std::size_t fuel,
                              const StepOptions<M> &opts = {}) {
  RunResult<M> res;
  res.configs = std::move(cfs);
  while (!allFinal(res.configs)) {
    if (res.stepsUsed >= fuel) {
      res.done = false;
      return res;
    }
    res.configs = collectStep(model, solver, prog, res.configs, opts);
    ++res.stepsUsed;
  }
  res.done = true;
  return res;
}

/// Initial configuration for a run of `main` with the given state.
template <class M>
Configuration<M> initialConfig(State<M> st, const std::string &mainProc) {
  Configuration<M> cf;
  cf.st = std::move(st);
  cf.cs.push_back(Frame<M>{mainProc, true, "", {}, 0});
  return cf;
}

} // namespace gil

#endif // GIL_INTERPRETER_HPP

//===-- interpretation.hpp - interpretations and models -------------------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//
//
// Interpretations map symbolic variables to values and lift homomorphically
// to expressions, stores, allocation records, heaps, states, and
// configurations; all liftings are partial (nullopt = undefined). Mod(x) is
// sampled through the solver with blocking constraints.
//
//===---------------------------------------------------------------------===//

#ifndef GIL_HARNESS_INTERPRETATION_HPP
#define GIL_HARNESS_INTERPRETATION_HPP

#include "gil/heap.hpp"
#include "gil/interpreter.hpp"
#include "gil/solver.hpp"
#include "gil/state.hpp"

#include <optional>

namespace gil {

inline std::optional<Value> interpret(const Assignment &env, const SymExpr &e) {
  for (const std::string &v : e.vars())
    if (!env.count(v))
      return std::nullopt;
  try {
    return evalUnder(e, env);
  } catch (const std::runtime_error &) {
    return std::nullopt;
  }
}

inline std::optional<StoreOf<Value>>
interpretStore(const Assignment &env, const StoreOf<SymExpr> &store) {
  StoreOf<Value> out;
  for (const auto &[name, e] : store) {
    auto v = interpret(env, e);
    if (!v)
      return std::nullopt;
    out.emplace(name, std::move(*v));
  }
  return out;
}

/// Interprets an allocation record: locations are unaffected; allocated
/// symbolic variables become allocated values.
inline std::optional<AllocRecord> interpretRecord(const Assignment &env,
                                                  const AllocRecord &rec) {
  AllocRecord out;
  if (rec.hasRange(AllocRange::Locations))
    out.charge(AllocRange::Locations, rec.locations());
  bool hasVals =
      rec.hasRange(AllocRange::SymVars) || rec.hasRange(AllocRange::Values);
  if (hasVals) {
    std::set<Value> vals;
    for (const std::string &sv : rec.symVars()) {
      auto it = env.find(sv);
      if (it == env.end())
        return std::nullopt;
      vals.insert(it->second);
    }
    vals.insert(rec.values().begin(), rec.values().end());
    out.charge(AllocRange::Values, vals);
  }
  return out;
}

/// State interpretation: defined iff all components interpret and the
/// context interprets to true.
inline std::optional<State<ConcreteHeapModel>>
interpretState(const Assignment &env, const State<SymbolicHeapModel> &st) {
  auto ctxVal = interpret(env, st.ctx.toExpr());
  if (!ctxVal || !ctxVal->isBool() || !ctxVal->asBool())
    return std::nullopt;
  auto mem = interpretHeap(env, st.mem);
  if (!mem)
    return std::nullopt;
  auto store = interpretStore(env, st.store);
  if (!store)
    return std::nullopt;
  auto rec = interpretRecord(env, st.alloc);
  if (!rec)
    return std::nullopt;
  return State<ConcreteHeapModel>{std::move(*mem), std::move(*store),
                                  std::move(*rec), PathCondition()};
}

inline std::optional<CallStack<ConcreteHeapModel>>
interpretCallStack(const Assignment &env,
                   const CallStack<SymbolicHeapModel> &cs) {
  CallStack<ConcreteHeapModel> out;
  for (const Frame<SymbolicHeapModel> &f : cs) {
    auto store = interpretStore(env, f.store);
    if (!store)
      return std::nullopt;
    out.push_back({f.proc, f.bottom, f.retVar, std::move(*store), f.retIndex});
  }
  return out;
}

inline std::optional<Configuration<ConcreteHeapModel>>
interpretConfig(const Assignment &env,
                const Configuration<SymbolicHeapModel> &cf) {
  auto st = interpretState(env, cf.st);
  if (!st)
    return std::nullopt;
  auto cs = interpretCallStack(env, cf.cs);
  if (!cs)
    return std::nullopt;
  Configuration<ConcreteHeapModel> out;
  out.st = std::move(*st);
  out.cs = std::move(*cs);
  out.idx = cf.idx;
  out.outcome = cf.outcome;
  if (cf.outcome != OutcomeKind::Cont) {
    auto ov = interpret(env, cf.outcomeValue);
    if (!ov)
      return std::nullopt;
    out.outcomeValue = std::move(*ov);
  } else {
    out.outcomeValue = Value::boolean(true);
  }
  out.branchId = cf.branchId;
  out.trace = cf.trace;
  out.unverified = cf.unverified;
  return out;
}

/// The satisfiability query whose models are exactly the interpretations
/// under which the state is defined and well-formed: the context plus the
/// heap's key-distinctness constraints, with location sort hints for key
/// variables.
inline std::pair<PathCondition, SortHints>
stateModelQuery(const State<SymbolicHeapModel> &st) {
  PathCondition pc = st.ctx;
  const auto &bs = st.mem.bindings();
  SortHints hints;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    for (std::size_t j = i + 1; j < bs.size(); ++j)
      pc = pc.conjoin(seNeq(bs[i].key, bs[j].key));
    for (const std::string &v : bs[i].key.vars())
      hints[v] = Sort::Loc;
  }
  return {std::move(pc), std::move(hints)};
}

/// Collects every symbolic variable occurring in a configuration.
inline std::set<std::string> svarsOf(const Configuration<SymbolicHeapModel> &cf) {
  std::set<std::string> out = cf.st.ctx.svars();
  for (const std::string &v : cf.st.mem.svars())
    out.insert(v);
  for (const auto &[name, e] : cf.st.store)
    e.collectVars(out);
  for (const std::string &v : cf.st.alloc.symVars())
    out.insert(v);
  for (const Frame<SymbolicHeapModel> &f : cf.cs)
    for (const auto &[name, e] : f.store)
      e.collectVars(out);
  if (cf.outcome != OutcomeKind::Cont)
    cf.outcomeValue.collectVars(out);
  return out;
}

/// Deterministically extends an assignment to cover the given variables
/// (unconstrained variables take sort-appropriate defaults; location-hinted
/// variables take fresh distinct locations).
inline Assignment extendAssignment(Assignment env,
                                   const std::set<std::string> &want,
                                   const SortHints &hints) {
  long long freshLoc = 9000; // far from engine-allocated l0, l1, ...
  for (const std::string &v : want) {
    if (env.count(v))
      continue;
    auto it = hints.find(v);
    if (it != hints.end() && it->second == Sort::Loc)
      env.emplace(v, Value::symbol("l" + std::to_string(freshLoc++)));
    else
      env.emplace(v, Value::integer(0));
  }
  return env;
}

/// Samples up to n models of a symbolic state (elements of Mod).
inline std::vector<Assignment>
sampleStateModels(const Solver &solver, const State<SymbolicHeapModel> &st,
                  const std::set<std::string> &coverVars, std::size_t n) {
  auto [pc, hints] = stateModelQuery(st);
  std::vector<Assignment> models = solver.allModels(pc, n, hints);
  std::vector<Assignment> out;
  for (Assignment &m : models)
    out.push_back(extendAssignment(std::move(m), coverVars, hints));
  return out;
}

} // namespace gil

#endif // GIL_HARNESS_INTERPRETATION_HPP

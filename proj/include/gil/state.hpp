//===-- state.hpp - execution and compositional state models --------------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//
//
// States are <memory, store, allocation record, context>, parametric on the
// memory model M. M::Val decides the flavor: Value gives the concrete state
// model (only trivially-true contexts), SymExpr the symbolic one.
//
//===---------------------------------------------------------------------===//

#ifndef GIL_STATE_HPP
#define GIL_STATE_HPP

#include "gil/allocator.hpp"
#include "gil/memory_model.hpp"
#include "gil/program.hpp"
#include "gil/solver.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gil {

template <class V> using StoreOf = std::map<std::string, V>;

template <class M> struct State {
  using Val = typename M::Val;
  typename M::Memory mem;
  StoreOf<Val> store;
  AllocRecord alloc;
  PathCondition ctx;

  bool operator==(const State &o) const {
    return mem == o.mem && store == o.store && alloc == o.alloc && ctx == o.ctx;
  }
};

/// Result of one state-action branch.
template <class M> struct StateOutcome {
  State<M> st;
  typename M::Val value;
  ActionResult result = ActionResult::Success;
  bool unverified = false;
};

//===----------------------------------------------------------------------===//
// Flavor helpers
//===----------------------------------------------------------------------===//

template <class V> struct FlavorOps;

template <> struct FlavorOps<Value> {
  static constexpr bool symbolic = false;

  static Value evalExpr(const Expr &e, const StoreOf<Value> &store) {
    switch (e.kind()) {
    case Expr::Kind::Lit:
      return e.value();
    case Expr::Kind::Var: {
      auto it = store.find(e.varName());
      if (it == store.end())
        throw EngineFault("unbound variable '" + e.varName() + "'");
      return it->second;
    }
    case Expr::Kind::Unary:
      return evalUnOp(e.unOp(), evalExpr(e.left(), store));
    case Expr::Kind::Binary:
      return evalBinOp(e.binOp(), evalExpr(e.left(), store),
                       evalExpr(e.right(), store));
    }
    throw EngineFault("bad expression");
  }

  static SymExpr toCtxExpr(const Value &v) {
    if (!v.isBool())
      throw EngineFault("assume argument is not boolean: " + v.toString());
    return seLit(v);
  }
  static Value boolVal(bool b) { return Value::boolean(b); }
  static std::optional<std::size_t> groundCount(const Value &v) {
    if (!v.isInt() || v.asInt() < 0)
      return std::nullopt;
    return static_cast<std::size_t>(v.asInt());
  }
  static Value fromValue(const Value &v) { return v; }
  static Value undefinedVal() { return Value::undefined(); }
};

template <> struct FlavorOps<SymExpr> {
  static constexpr bool symbolic = true;

  static SymExpr evalExpr(const Expr &e, const StoreOf<SymExpr> &store) {
    switch (e.kind()) {
    case Expr::Kind::Lit:
      return seLit(e.value());
    case Expr::Kind::Var: {
      auto it = store.find(e.varName());
      if (it == store.end())
        throw EngineFault("unbound variable '" + e.varName() + "'");
      return it->second;
    }
    case Expr::Kind::Unary:
      return simplify(SymExpr::unary(e.unOp(), evalExpr(e.left(), store)));
    case Expr::Kind::Binary:
      return simplify(SymExpr::binary(e.binOp(), evalExpr(e.left(), store),
                                      evalExpr(e.right(), store)));
    }
    throw EngineFault("bad expression");
  }

  static SymExpr toCtxExpr(const SymExpr &v) { return v; }
  static SymExpr boolVal(bool b) { return b ? seTrue() : seFalse(); }
  static std::optional<std::size_t> groundCount(const SymExpr &v) {
    SymExpr s = simplify(v);
    if (!s.isLit())
      return std::nullopt;
    return FlavorOps<Value>::groundCount(s.value());
  }
  static SymExpr fromValue(const Value &v) { return seLit(v); }
  static SymExpr undefinedVal() { return seLit(Value::undefined()); }
};

//===----------------------------------------------------------------------===//
// Store serialisation (a store passes through value-land as a list of
// [name, value] pairs sorted by name)
//===----------------------------------------------------------------------===//

inline Value serializeStore(const StoreOf<Value> &store) {
  Value::List pairs;
  for (const auto &[name, v] : store)
    pairs.push_back(Value::list({Value::string(name), v}));
  return Value::list(std::move(pairs));
}

inline SymExpr serializeStore(const StoreOf<SymExpr> &store) {
  std::vector<SymExpr> pairs;
  for (const auto &[name, v] : store)
    pairs.push_back(makeListTerm({seLit(Value::string(name)), v}));
  return makeListTerm(pairs);
}

inline StoreOf<Value> deserializeStore(const Value &v) {
  if (!v.isList())
    throw EngineFault("malformed serialised store");
  StoreOf<Value> store;
  for (const Value &pair : v.asList()) {
    if (!pair.isList() || pair.asList().size() != 2 ||
        !pair.asList()[0].isString())
      throw EngineFault("malformed serialised store entry");
    store[pair.asList()[0].asString()] = pair.asList()[1];
  }
  return store;
}

inline StoreOf<SymExpr> deserializeStore(const SymExpr &v) {
  std::vector<SymExpr> pairs;
  if (!splitListTerm(v, pairs))
    throw EngineFault("malformed serialised store");
  StoreOf<SymExpr> store;
  for (const SymExpr &pair : pairs) {
    std::vector<SymExpr> kv;
    if (!splitListTerm(pair, kv) || kv.size() != 2 || !kv[0].isLit() ||
        !kv[0].value().isString())
      throw EngineFault("malformed serialised store entry");
    store[kv[0].value().asString()] = kv[1];
  }
  return store;
}

//===----------------------------------------------------------------------===//
// Expression evaluation on states (Def of the state model)
//===----------------------------------------------------------------------===//

template <class M>
typename M::Val evalExpr(const Expr &e, const StoreOf<typename M::Val> &store) {
  return FlavorOps<typename M::Val>::evalExpr(e, store);
}

//===----------------------------------------------------------------------===//
// State actions
//===----------------------------------------------------------------------===//

/// A state action as a value, so the two composition operators can be
/// first-class. Applying one yields the set of outcome branches.
template <class M>
using StateAction = std::function<std::vector<StateOutcome<M>>(
    const State<M> &, const typename M::Val &)>;

/// Memory action lifted to states: threads (mem, ctx) through the model.
template <class M>
StateAction<M> saMemAction(const M &model, std::string act) {
  return [&model, act](const State<M> &st,
                       const typename M::Val &v) -> std::vector<StateOutcome<M>> {
    std::vector<StateOutcome<M>> out;
    for (ActionOutcome<M> &ao : execAction(model, st.mem, act, v, st.ctx)) {
      State<M> st2{std::move(ao.mem), st.store, st.alloc, std::move(ao.ctx)};
      out.push_back({std::move(st2), std::move(ao.value), ao.result,
                     ao.unverified});
    }
    return out;
  };
}

template <class M> StateAction<M> saSetVar(std::string x) {
  return [x](const State<M> &st, const typename M::Val &v) {
    State<M> st2 = st;
    st2.store[x] = v;
    return std::vector<StateOutcome<M>>{
        {std::move(st2), FlavorOps<typename M::Val>::boolVal(true),
         ActionResult::Success, false}};
  };
}

template <class M> StateAction<M> saSetStore() {
  return [](const State<M> &st, const typename M::Val &v) {
    State<M> st2 = st;
    st2.store = deserializeStore(v);
    return std::vector<StateOutcome<M>>{
        {std::move(st2), FlavorOps<typename M::Val>::boolVal(true),
         ActionResult::Success, false}};
  };
}

template <class M> StateAction<M> saGetStore() {
  return [](const State<M> &st, const typename M::Val &) {
    return std::vector<StateOutcome<M>>{
        {st, serializeStore(st.store), ActionResult::Success, false}};
  };
}

template <class M> StateAction<M> saEval(Expr e) {
  return [e](const State<M> &st, const typename M::Val &) {
    return std::vector<StateOutcome<M>>{
        {st, FlavorOps<typename M::Val>::evalExpr(e, st.store),
         ActionResult::Success, false}};
  };
}

/// assume(pi'): conjoins the context, dropping the branch when unsat. Under
/// a solver Unknown the branch is kept and flagged unverified.
template <class M> StateAction<M> saAssume(const Solver &solver) {
  return [&solver](const State<M> &st,
                   const typename M::Val &v) -> std::vector<StateOutcome<M>> {
    PathCondition pc =
        st.ctx.conjoin(FlavorOps<typename M::Val>::toCtxExpr(v));
    bool unverified = false;
    if constexpr (FlavorOps<typename M::Val>::symbolic) {
      SolverResult r = solver.sat(pc);
      if (r.verdict == Verdict::Unsat)
        return {};
      unverified = r.verdict == Verdict::Unknown;
    } else {
      if (pc.isTriviallyFalse())
        return {};
      if (!pc.isTriviallyTrue())
        throw EngineFault("concrete context must be ground");
    }
    State<M> st2 = st;
    st2.ctx = std::move(pc);
    return {{std::move(st2), FlavorOps<typename M::Val>::boolVal(true),
             ActionResult::Success, unverified}};
  };
}

/// uSym(n): n fresh locations from the allocator.
template <class M> StateAction<M> saUSym() {
  return [](const State<M> &st,
            const typename M::Val &v) -> std::vector<StateOutcome<M>> {
    auto n = FlavorOps<typename M::Val>::groundCount(v);
    if (!n)
      throw EngineFault("usym needs a ground non-negative count");
    auto [rec, locs] = allocLocations(st.alloc, *n);
    State<M> st2 = st;
    st2.alloc = std::move(rec);
    if constexpr (FlavorOps<typename M::Val>::symbolic) {
      std::vector<SymExpr> es;
      for (const Value &l : locs)
        es.push_back(seLit(l));
      return {{std::move(st2), makeListTerm(es), ActionResult::Success, false}};
    } else {
      return {{std::move(st2), Value::list(locs), ActionResult::Success, false}};
    }
  };
}

/// iSym(n): n fresh interpreted symbols — symbolic variables in the symbolic
/// flavour, arbitrary values in the concrete one.
template <class M> StateAction<M> saISym(const AllocCtx &actx) {
  return [actx](const State<M> &st,
                const typename M::Val &v) -> std::vector<StateOutcome<M>> {
    auto n = FlavorOps<typename M::Val>::groundCount(v);
    if (!n)
      throw EngineFault("isym needs a ground non-negative count");
    State<M> st2 = st;
    if constexpr (FlavorOps<typename M::Val>::symbolic) {
      auto [rec, names] = allocSymVars(st.alloc, *n);
      st2.alloc = std::move(rec);
      std::vector<SymExpr> es;
      for (const std::string &name : names)
        es.push_back(seVar(name));
      return {{std::move(st2), makeListTerm(es), ActionResult::Success, false}};
    } else {
      auto [rec, vals] = allocValues(st.alloc, *n, actx);
      st2.alloc = std::move(rec);
      return {{std::move(st2), Value::list(vals), ActionResult::Success, false}};
    }
  };
}

//===----------------------------------------------------------------------===//
// The two composition operators
//===----------------------------------------------------------------------===//

/// Sequential composition: pipe a1's value into a2 on success, short-circuit
/// anything else.
template <class M>
StateAction<M> composeSeq(StateAction<M> a1, StateAction<M> a2) {
  return [a1, a2](const State<M> &st, const typename M::Val &v) {
    std::vector<StateOutcome<M>> out;
    for (StateOutcome<M> &o1 : a1(st, v)) {
      if (o1.result != ActionResult::Success) {
        out.push_back(std::move(o1));
        continue;
      }
      for (StateOutcome<M> &o2 : a2(o1.st, o1.value)) {
        o2.unverified = o2.unverified || o1.unverified;
        out.push_back(std::move(o2));
      }
    }
    return out;
  };
}

/// Pair composition: apply a1 to the first component and a2 to the second on
/// the intermediate state, returning the value pair; the second component is
/// the undefined symbol when a1 does not succeed.
template <class M>
StateAction<M> composePair(StateAction<M> a1, StateAction<M> a2) {
  return [a1, a2](const State<M> &st,
                  const typename M::Val &v) -> std::vector<StateOutcome<M>> {
    using Ops = FlavorOps<typename M::Val>;
    auto parts = detail::splitArgs<M>(v, 2);
    std::vector<StateOutcome<M>> out;
    for (StateOutcome<M> &o1 : a1(st, parts[0])) {
      if (o1.result != ActionResult::Success) {
        typename M::Val pairVal = outsToValue(
            std::vector<typename M::Val>{o1.value, Ops::undefinedVal()});
        out.push_back({std::move(o1.st), std::move(pairVal), o1.result,
                       o1.unverified});
        continue;
      }
      for (StateOutcome<M> &o2 : a2(o1.st, parts[1])) {
        typename M::Val pairVal = outsToValue(
            std::vector<typename M::Val>{o1.value, o2.value});
        out.push_back({std::move(o2.st), std::move(pairVal), o2.result,
                       o2.unverified || o1.unverified});
      }
    }
    return out;
  };
}

//===----------------------------------------------------------------------===//
// State composition (compositional state models)
//===----------------------------------------------------------------------===//

/// Defined iff at most one store is non-empty, the memories compose, and the
/// composite is well-formed under the conjoined contexts.
template <class M>
std::optional<State<M>> composeStates(const M &model, const State<M> &a,
                                      const State<M> &b) {
  if (!a.store.empty() && !b.store.empty())
    return std::nullopt;
  auto mem = model.compose(a.mem, b.mem);
  if (!mem)
    return std::nullopt;
  PathCondition ctx = a.ctx.conjoin(b.ctx);
  if (!model.wf(*mem, ctx))
    return std::nullopt;
  State<M> out;
  out.mem = std::move(*mem);
  out.store = a.store.empty() ? b.store : a.store;
  out.alloc = composeRecords(a.alloc, b.alloc);
  out.ctx = std::move(ctx);
  return out;
}

template <class M> State<M> unitState(const M &model) {
  return State<M>{model.zero(), {}, {}, {}};
}

} // namespace gil

#endif // GIL_STATE_HPP

//===-- memory_model.hpp - parametric memory-model contracts -------------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//
//
// The engine is parametric on a memory model. A model type M provides:
//
//   using Val    = Value | SymExpr;          // the value sort
//   using Memory = ...;                      // immutable memory values
//
//   bool wf(const Memory&, const PathCondition&) const;
//   std::vector<ActionOutcome<M>> ea(const Memory&, const std::string& act,
//                                    const Val&, const PathCondition&) const;
//   bool memEqual(const Memory&, const Memory&) const;  // normalized
//   Memory emptyMemory() const;
//   std::vector<std::string> actions() const;
//
// Compositional models additionally provide:
//
//   std::optional<Memory> compose(const Memory&, const Memory&) const;
//   Memory zero() const;                       // == emptyMemory()
//   std::vector<CorePredicate> corePreds() const;
//   std::vector<PredOutcome<M>> consume(const std::string& pred,
//       const Memory&, const std::vector<Val>& ins, const PathCondition&) const;
//   std::vector<PredOutcome<M>> produce(const std::string& pred,
//       const Memory&, const std::vector<Val>& ins,
//       const std::vector<Val>& outs, const PathCondition&) const;
//
// Getters and setters are derived here, once, from consumers and producers;
// instantiations do not override them.
//
//===---------------------------------------------------------------------===//

#ifndef GIL_MEMORY_MODEL_HPP
#define GIL_MEMORY_MODEL_HPP

#include "gil/solver.hpp"
#include "gil/term.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gil {

/// Result of a memory action: success, non-correctible error, or missing
/// resource.
enum class ActionResult : std::uint8_t { Success, Error, Missing };

inline const char *actionResultName(ActionResult r) {
  switch (r) {
  case ActionResult::Success: return "S";
  case ActionResult::Error: return "E";
  case ActionResult::Missing: return "M";
  }
  return "?";
}

/// One branch of a memory action execution. `unverified` marks branches kept
/// under a solver Unknown.
template <class M> struct ActionOutcome {
  typename M::Memory mem;
  typename M::Val value;
  ActionResult result = ActionResult::Success;
  PathCondition ctx;
  bool unverified = false;
};

/// One branch of a consumer/producer execution; consumers return the
/// consumed out-parameters.
template <class M> struct PredOutcome {
  typename M::Memory mem;
  std::vector<typename M::Val> outs;
  ActionResult result = ActionResult::Success;
  PathCondition ctx;
  bool unverified = false;
};

/// A core predicate: name plus in/out arities.
struct CorePredicate {
  std::string name;
  std::size_t inArity = 0;
  std::size_t outArity = 0;
};

/// Packs consumer outs into a single value: zero outs become true, one out
/// stays bare, more become a list.
inline Value outsToValue(const std::vector<Value> &outs) {
  if (outs.empty())
    return Value::boolean(true);
  if (outs.size() == 1)
    return outs[0];
  return Value::list(outs);
}
inline SymExpr outsToValue(const std::vector<SymExpr> &outs) {
  if (outs.empty())
    return seTrue();
  if (outs.size() == 1)
    return outs[0];
  return makeListTerm(outs);
}

/// A partial injective renaming over locations and symbolic variables,
/// sort-preserving by construction.
class Renaming {
public:
  Renaming() = default;

  void addLocation(const std::string &from, const std::string &to) {
    if (!Value::isLocationName(from) || !Value::isLocationName(to))
      throw EngineFault("renaming must map locations to locations");
    insert(locMap_, locImage_, from, to);
  }
  void addSymVar(const std::string &from, const std::string &to) {
    insert(varMap_, varImage_, from, to);
  }

  bool isIdentity() const { return locMap_.empty() && varMap_.empty(); }
  const std::map<std::string, std::string> &locations() const { return locMap_; }
  const std::map<std::string, std::string> &symVars() const { return varMap_; }

  Value apply(const Value &v) const {
    return SymExpr::mapSymbolsOf(v, [this](const Value &s) {
      auto it = locMap_.find(s.sym().name);
      return it == locMap_.end() ? s : Value::symbol(it->second);
    });
  }

  SymExpr apply(const SymExpr &e) const {
    std::map<std::string, SymExpr> sub;
    for (const auto &[from, to] : varMap_)
      sub.emplace(from, seVar(to));
    SymExpr renamedVars = e.substitute(sub);
    return renamedVars.mapSymbols([this](const Value &s) {
      auto it = locMap_.find(s.sym().name);
      return it == locMap_.end() ? s : Value::symbol(it->second);
    });
  }

  PathCondition apply(const PathCondition &pc) const {
    PathCondition out;
    for (const SymExpr &l : pc.literals())
      out = out.conjoin(apply(l));
    return out;
  }

  Renaming inverse() const {
    Renaming inv;
    for (const auto &[a, b] : locMap_)
      inv.addLocation(b, a);
    for (const auto &[a, b] : varMap_)
      inv.addSymVar(b, a);
    return inv;
  }

  std::string toString() const {
    std::string out = "{";
    bool first = true;
    for (const auto &[a, b] : locMap_) {
      if (!first)
        out += ", ";
      first = false;
      out += "$" + a + " -> $" + b;
    }
    for (const auto &[a, b] : varMap_) {
      if (!first)
        out += ", ";
      first = false;
      out += "#" + a + " -> #" + b;
    }
    return out + "}";
  }

private:
  static void insert(std::map<std::string, std::string> &m,
                     std::set<std::string> &image, const std::string &from,
                     const std::string &to) {
    auto it = m.find(from);
    if (it != m.end()) {
      if (it->second != to)
        throw EngineFault("renaming is not a function");
      return;
    }
    if (image.count(to))
      throw EngineFault("renaming is not injective");
    m.emplace(from, to);
    image.insert(to);
  }

  std::map<std::string, std::string> locMap_, varMap_;
  std::set<std::string> locImage_, varImage_;
};

/// Getter: consume then re-produce with the consumed outs, returning them;
/// non-success propagates the consumer verdict and leaves memory intact.
template <class M>
std::vector<PredOutcome<M>>
derivedGetter(const M &model, const typename M::Memory &mem,
              const std::string &pred, const std::vector<typename M::Val> &ins,
              const PathCondition &pc) {
  std::vector<PredOutcome<M>> out;
  for (const PredOutcome<M> &c : model.consume(pred, mem, ins, pc)) {
    if (c.result != ActionResult::Success) {
      out.push_back({mem, {}, c.result, c.ctx, c.unverified});
      continue;
    }
    for (PredOutcome<M> p : model.produce(pred, c.mem, ins, c.outs, c.ctx)) {
      if (p.result != ActionResult::Success)
        continue; // duplication branches are unsatisfiable after a consume
      p.outs = c.outs;
      p.unverified = p.unverified || c.unverified;
      out.push_back(std::move(p));
    }
  }
  return out;
}

/// Setter: consume the ins (discarding the old outs), then produce with the
/// new outs.
template <class M>
std::vector<PredOutcome<M>>
derivedSetter(const M &model, const typename M::Memory &mem,
              const std::string &pred, const std::vector<typename M::Val> &ins,
              const std::vector<typename M::Val> &outs,
              const PathCondition &pc) {
  std::vector<PredOutcome<M>> out;
  for (const PredOutcome<M> &c : model.consume(pred, mem, ins, pc)) {
    if (c.result != ActionResult::Success) {
      out.push_back({mem, {}, c.result, c.ctx, c.unverified});
      continue;
    }
    for (PredOutcome<M> p : model.produce(pred, c.mem, ins, outs, c.ctx)) {
      if (p.result != ActionResult::Success)
        continue;
      p.outs = {};
      p.unverified = p.unverified || c.unverified;
      out.push_back(std::move(p));
    }
  }
  return out;
}

/// The action vocabulary of a compositional model: its own whole-program
/// actions plus cons_/prod_/getter_/setter_ for each core predicate.
template <class M> std::vector<std::string> predActionNames(const M &model) {
  std::vector<std::string> names;
  for (const CorePredicate &p : model.corePreds()) {
    names.push_back("cons_" + p.name);
    names.push_back("prod_" + p.name);
    names.push_back("getter_" + p.name);
    names.push_back("setter_" + p.name);
  }
  return names;
}

namespace detail {

template <class M>
CorePredicate predOf(const M &model, const std::string &name) {
  for (const CorePredicate &p : model.corePreds())
    if (p.name == name)
      return p;
  throw EngineFault("unknown core predicate '" + name + "'");
}

/// Splits an action argument value into a fixed-arity vector.
template <class M>
std::vector<typename M::Val> splitArgs(const typename M::Val &v,
                                       std::size_t arity) {
  using Val = typename M::Val;
  std::vector<Val> parts;
  if constexpr (std::is_same_v<Val, Value>) {
    if (v.isList())
      parts.assign(v.asList().begin(), v.asList().end());
    else
      parts.push_back(v);
  } else {
    if (!splitListTerm(v, parts)) {
      parts.clear();
      parts.push_back(v);
    }
  }
  if (parts.size() != arity)
    throw EngineFault("action argument arity mismatch: expected " +
                      std::to_string(arity) + " values");
  return parts;
}

} // namespace detail

/// Uniform dispatch for predicate-derived actions; anything else goes to the
/// model's own ea. Predicate actions take their arguments as a list value
/// (ins, or ins ++ outs for producers and setters).
template <class M>
std::vector<ActionOutcome<M>>
execAction(const M &model, const typename M::Memory &mem,
           const std::string &act, const typename M::Val &arg,
           const PathCondition &pc) {
  auto mkBool = [](bool b) -> typename M::Val {
    if constexpr (std::is_same_v<typename M::Val, Value>)
      return Value::boolean(b);
    else
      return b ? seTrue() : seFalse();
  };
  auto wrap = [&](std::vector<PredOutcome<M>> pos, bool valueFromOuts) {
    std::vector<ActionOutcome<M>> out;
    for (PredOutcome<M> &po : pos) {
      typename M::Val v = mkBool(po.result == ActionResult::Success);
      if (po.result == ActionResult::Success && valueFromOuts)
        v = outsToValue(po.outs);
      out.push_back({std::move(po.mem), std::move(v), po.result,
                     std::move(po.ctx), po.unverified});
    }
    return out;
  };

  auto has = [&](const char *prefix, std::string &rest) {
    std::string p(prefix);
    if (act.rfind(p, 0) == 0) {
      rest = act.substr(p.size());
      return true;
    }
    return false;
  };

  std::string pred;
  if (has("cons_", pred)) {
    const CorePredicate cp = detail::predOf(model, pred);
    auto ins = detail::splitArgs<M>(arg, cp.inArity);
    return wrap(model.consume(pred, mem, ins, pc), true);
  }
  if (has("prod_", pred)) {
    const CorePredicate cp = detail::predOf(model, pred);
    auto all = detail::splitArgs<M>(arg, cp.inArity + cp.outArity);
    std::vector<typename M::Val> ins(all.begin(), all.begin() + cp.inArity);
    std::vector<typename M::Val> outs(all.begin() + cp.inArity, all.end());
    return wrap(model.produce(pred, mem, ins, outs, pc), false);
  }
  if (has("getter_", pred)) {
    const CorePredicate cp = detail::predOf(model, pred);
    auto ins = detail::splitArgs<M>(arg, cp.inArity);
    return wrap(derivedGetter(model, mem, pred, ins, pc), true);
  }
  if (has("setter_", pred)) {
    const CorePredicate cp = detail::predOf(model, pred);
    auto all = detail::splitArgs<M>(arg, cp.inArity + cp.outArity);
    std::vector<typename M::Val> ins(all.begin(), all.begin() + cp.inArity);
    std::vector<typename M::Val> outs(all.begin() + cp.inArity, all.end());
    return wrap(derivedSetter(model, mem, pred, ins, outs, pc), false);
  }
  return model.ea(mem, act, arg, pc);
}

} // namespace gil

#endif // GIL_MEMORY_MODEL_HPP

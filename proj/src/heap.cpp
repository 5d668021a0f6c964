//===-- heap.cpp ----------------------------------------------------------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "gil/heap.hpp"

#include <algorithm>
#include <sstream>

namespace gil {

std::string ConcreteHeap::toString() const {
  std::ostringstream os;
  os << "{ ";
  bool first = true;
  for (const auto &[loc, b] : cells_) {
    if (!first)
      os << ", ";
    first = false;
    os << loc.sym().name << " -> " << (b ? b->toString() : "FREED");
  }
  os << " }";
  return os.str();
}

SymbolicHeap SymbolicHeap::normalized() const {
  std::vector<Binding> bs = binds_;
  std::sort(bs.begin(), bs.end(), [](const Binding &a, const Binding &b) {
    if (int c = a.key.compare(b.key))
      return c < 0;
    if (a.val.has_value() != b.val.has_value())
      return !a.val.has_value();
    if (!a.val)
      return false;
    return a.val->compare(*b.val) < 0;
  });
  return SymbolicHeap(std::move(bs));
}

std::set<std::string> SymbolicHeap::svars() const {
  std::set<std::string> out;
  for (const Binding &b : binds_) {
    b.key.collectVars(out);
    if (b.val)
      b.val->collectVars(out);
  }
  return out;
}

std::set<std::string> SymbolicHeap::symbols() const {
  std::set<std::string> out;
  for (const Binding &b : binds_) {
    b.key.collectSymbols(out);
    if (b.val)
      b.val->collectSymbols(out);
  }
  return out;
}

std::string SymbolicHeap::toString() const {
  std::ostringstream os;
  os << "{ ";
  bool first = true;
  for (const Binding &b : binds_) {
    if (!first)
      os << ", ";
    first = false;
    os << b.key.toString() << " -> " << (b.val ? b.val->toString() : "FREED");
  }
  os << " }";
  return os.str();
}

//===----------------------------------------------------------------------===//
// Concrete model
//===----------------------------------------------------------------------===//

std::optional<ConcreteHeap> ConcreteHeapModel::compose(const Memory &a,
                                                       const Memory &b) const {
  ConcreteHeap out = a;
  for (const auto &[loc, bind] : b.cells()) {
    if (out.contains(loc))
      return std::nullopt;
    out = out.with(loc, bind);
  }
  return out;
}

using CPO = PredOutcome<ConcreteHeapModel>;

std::vector<CPO> ConcreteHeapModel::consume(const std::string &pred,
                                            const Memory &mem,
                                            const std::vector<Val> &ins,
                                            const PathCondition &pc) const {
  const Value &loc = ins.at(0);
  bool wantCell = pred == "cell";
  if (!wantCell && pred != "freed")
    throw EngineFault("unknown core predicate '" + pred + "'");
  if (!loc.isLocation())
    return {{mem, {}, ActionResult::Error, pc}};
  const ConcreteHeap::Binding *b = mem.find(loc);
  if (!b)
    return {{mem, {}, ActionResult::Missing, pc}};
  bool isCell = b->has_value();
  if (isCell != wantCell)
    return {{mem, {}, ActionResult::Error, pc}};
  std::vector<Val> outs;
  if (wantCell)
    outs.push_back(**b);
  return {{mem.without(loc), std::move(outs), ActionResult::Success, pc}};
}

std::vector<CPO> ConcreteHeapModel::produce(const std::string &pred,
                                            const Memory &mem,
                                            const std::vector<Val> &ins,
                                            const std::vector<Val> &outs,
                                            const PathCondition &pc) const {
  const Value &loc = ins.at(0);
  bool wantCell = pred == "cell";
  if (!wantCell && pred != "freed")
    throw EngineFault("unknown core predicate '" + pred + "'");
  if (!loc.isLocation())
    return {{mem, {}, ActionResult::Error, pc}};
  if (mem.contains(loc))
    return {{mem, {}, ActionResult::Error, pc}}; // duplication
  ConcreteHeap::Binding bind;
  if (wantCell)
    bind = outs.at(0);
  return {{mem.with(loc, std::move(bind)), {}, ActionResult::Success, pc}};
}

std::vector<ActionOutcome<ConcreteHeapModel>>
ConcreteHeapModel::ea(const Memory &mem, const std::string &act, const Val &arg,
                      const PathCondition &pc) const {
  using AO = ActionOutcome<ConcreteHeapModel>;
  auto fromPred = [&](std::vector<CPO> pos, const Value &okValue) {
    std::vector<AO> out;
    for (CPO &po : pos)
      out.push_back({std::move(po.mem),
                     po.result == ActionResult::Success ? okValue
                                                        : Value::boolean(false),
                     po.result, std::move(po.ctx), po.unverified});
    return out;
  };
  if (act == "alloc") {
    // The fresh location is threaded in as the argument; alloc never invents
    // symbols of its own.
    return fromPred(produce("cell", mem, {arg}, {Value::null()}, pc), arg);
  }
  if (act == "load") {
    std::vector<AO> out;
    for (auto &po : derivedGetter(*this, mem, "cell", {arg}, pc))
      out.push_back({std::move(po.mem),
                     po.result == ActionResult::Success ? po.outs.at(0)
                                                        : Value::boolean(false),
                     po.result, std::move(po.ctx), po.unverified});
    return out;
  }
  if (act == "store") {
    auto parts = detail::splitArgs<ConcreteHeapModel>(arg, 2);
    return fromPred(derivedSetter(*this, mem, "cell", {parts[0]}, {parts[1]}, pc),
                    Value::boolean(true));
  }
  if (act == "free") {
    std::vector<AO> out;
    for (CPO &c : consume("cell", mem, {arg}, pc)) {
      if (c.result != ActionResult::Success) {
        out.push_back({mem, Value::boolean(false), c.result, c.ctx,
                       c.unverified});
        continue;
      }
      for (CPO &p : produce("freed", c.mem, {arg}, {}, c.ctx))
        out.push_back({std::move(p.mem), Value::boolean(true), p.result,
                       std::move(p.ctx), p.unverified || c.unverified});
    }
    return out;
  }
  throw EngineFault("unknown memory action '" + act + "'");
}

//===----------------------------------------------------------------------===//
// Symbolic model
//===----------------------------------------------------------------------===//

std::optional<bool> SymbolicHeapModel::keepBranch(const PathCondition &pc) const {
  SolverResult r = solver_.sat(pc);
  switch (r.verdict) {
  case Verdict::Sat: return false;
  case Verdict::Unknown: return true; // kept, flagged unverified
  default: return std::nullopt;
  }
}

bool SymbolicHeapModel::wf(const Memory &mem, const PathCondition &pc) const {
  PathCondition all = pc;
  const auto &bs = mem.bindings();
  for (std::size_t i = 0; i < bs.size(); ++i)
    for (std::size_t j = i + 1; j < bs.size(); ++j)
      all = all.conjoin(seNeq(bs[i].key, bs[j].key));
  return solver_.sat(all).verdict != Verdict::Unsat;
}

std::optional<SymbolicHeap> SymbolicHeapModel::compose(const Memory &a,
                                                       const Memory &b) const {
  for (const auto &ba : a.bindings())
    for (const auto &bb : b.bindings())
      if (simplify(ba.key) == simplify(bb.key))
        return std::nullopt;
  std::vector<SymbolicHeap::Binding> bs = a.bindings();
  bs.insert(bs.end(), b.bindings().begin(), b.bindings().end());
  return SymbolicHeap(std::move(bs));
}

using SPO = PredOutcome<SymbolicHeapModel>;

std::vector<SPO> SymbolicHeapModel::consume(const std::string &pred,
                                            const Memory &mem,
                                            const std::vector<Val> &ins,
                                            const PathCondition &pc) const {
  bool wantCell = pred == "cell";
  if (!wantCell && pred != "freed")
    throw EngineFault("unknown core predicate '" + pred + "'");
  SymExpr loc = simplify(ins.at(0));
  if (loc.isLit() && !loc.value().isLocation())
    return {{mem, {}, ActionResult::Error, pc}};

  std::vector<SPO> out;
  // Branch per binding, in list order; contexts are made pairwise disjoint
  // by conjoining the disequalities with all earlier keys.
  PathCondition prefix = pc;
  const auto &bs = mem.bindings();
  for (std::size_t i = 0; i < bs.size(); ++i) {
    PathCondition eq = prefix.conjoin(seEq(loc, bs[i].key));
    if (auto keep = keepBranch(eq)) {
      bool isCell = bs[i].val.has_value();
      if (isCell == wantCell) {
        std::vector<Val> outs;
        if (wantCell)
          outs.push_back(*bs[i].val);
        out.push_back(
            {mem.withoutIndex(i), std::move(outs), ActionResult::Success, eq,
             *keep});
      } else {
        // right location, wrong resource kind: non-correctible error
        out.push_back({mem, {}, ActionResult::Error, eq, *keep});
      }
    }
    prefix = prefix.conjoin(seNeq(loc, bs[i].key));
  }
  // No binding matches: the region is unknown.
  if (auto keep = keepBranch(prefix))
    out.push_back({mem, {}, ActionResult::Missing, prefix, *keep});
  return out;
}

std::vector<SPO> SymbolicHeapModel::produce(const std::string &pred,
                                            const Memory &mem,
                                            const std::vector<Val> &ins,
                                            const std::vector<Val> &outs,
                                            const PathCondition &pc) const {
  bool wantCell = pred == "cell";
  if (!wantCell && pred != "freed")
    throw EngineFault("unknown core predicate '" + pred + "'");
  SymExpr loc = simplify(ins.at(0));
  if (loc.isLit() && !loc.value().isLocation())
    return {{mem, {}, ActionResult::Error, pc}};

  std::vector<SPO> out;
  PathCondition prefix = pc;
  const auto &bs = mem.bindings();
  for (std::size_t i = 0; i < bs.size(); ++i) {
    PathCondition eq = prefix.conjoin(seEq(loc, bs[i].key));
    if (auto keep = keepBranch(eq))
      out.push_back({mem, {}, ActionResult::Error, eq, *keep}); // duplication
    prefix = prefix.conjoin(seNeq(loc, bs[i].key));
  }
  if (auto keep = keepBranch(prefix)) {
    std::optional<SymExpr> val;
    if (wantCell)
      val = simplify(outs.at(0));
    out.push_back({mem.withAppended(loc, std::move(val)), {},
                   ActionResult::Success, prefix, *keep});
  }
  return out;
}

std::vector<ActionOutcome<SymbolicHeapModel>>
SymbolicHeapModel::ea(const Memory &mem, const std::string &act, const Val &arg,
                      const PathCondition &pc) const {
  using AO = ActionOutcome<SymbolicHeapModel>;
  auto fromPred = [&](std::vector<SPO> pos, const SymExpr &okValue) {
    std::vector<AO> out;
    for (SPO &po : pos)
      out.push_back({std::move(po.mem),
                     po.result == ActionResult::Success ? okValue : seFalse(),
                     po.result, std::move(po.ctx), po.unverified});
    return out;
  };
  if (act == "alloc")
    return fromPred(produce("cell", mem, {arg}, {seLit(Value::null())}, pc),
                    simplify(arg));
  if (act == "load") {
    std::vector<AO> out;
    for (auto &po : derivedGetter(*this, mem, "cell", {arg}, pc))
      out.push_back({std::move(po.mem),
                     po.result == ActionResult::Success ? po.outs.at(0)
                                                        : seFalse(),
                     po.result, std::move(po.ctx), po.unverified});
    return out;
  }
  if (act == "store") {
    auto parts = detail::splitArgs<SymbolicHeapModel>(arg, 2);
    return fromPred(derivedSetter(*this, mem, "cell", {parts[0]}, {parts[1]}, pc),
                    seTrue());
  }
  if (act == "free") {
    std::vector<AO> out;
    for (SPO &c : consume("cell", mem, {arg}, pc)) {
      if (c.result != ActionResult::Success) {
        out.push_back({mem, seFalse(), c.result, c.ctx, c.unverified});
        continue;
      }
      for (SPO &p : produce("freed", c.mem, {arg}, {}, c.ctx))
        if (p.result == ActionResult::Success)
          out.push_back({std::move(p.mem), seTrue(), p.result, std::move(p.ctx),
                         p.unverified || c.unverified});
    }
    return out;
  }
  throw EngineFault("unknown memory action '" + act + "'");
}

//===----------------------------------------------------------------------===//
// Renaming and interpretation
//===----------------------------------------------------------------------===//

ConcreteHeap renameHeap(const Renaming &al, const ConcreteHeap &h) {
  ConcreteHeap out;
  for (const auto &[loc, b] : h.cells()) {
    ConcreteHeap::Binding nb;
    if (b)
      nb = al.apply(*b);
    out = out.with(al.apply(loc), std::move(nb));
  }
  return out;
}

SymbolicHeap renameHeap(const Renaming &al, const SymbolicHeap &h) {
  std::vector<SymbolicHeap::Binding> bs;
  for (const auto &b : h.bindings()) {
    std::optional<SymExpr> v;
    if (b.val)
      v = al.apply(*b.val);
    bs.push_back({al.apply(b.key), std::move(v)});
  }
  return SymbolicHeap(std::move(bs));
}

std::optional<ConcreteHeap> interpretHeap(const Assignment &env,
                                          const SymbolicHeap &h) {
  ConcreteHeap out;
  for (const auto &b : h.bindings()) {
    Value key;
    try {
      key = evalUnder(b.key, env);
    } catch (const std::runtime_error &) {
      return std::nullopt;
    }
    if (!key.isLocation() || out.contains(key))
      return std::nullopt; // keys must land on pairwise-distinct locations
    ConcreteHeap::Binding bind;
    if (b.val) {
      try {
        bind = evalUnder(*b.val, env);
      } catch (const std::runtime_error &) {
        return std::nullopt;
      }
    }
    out = out.with(key, std::move(bind));
  }
  return out;
}

} // namespace gil

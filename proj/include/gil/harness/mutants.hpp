//===-- mutants.hpp - planted single-rule bugs for the mutation gate ------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//
//
// Each mutant breaks exactly one rule. The memory-model mutants must be
// caught by the conformance suites, the engine mutants (weak assume,
// dropped goto branch) by the differential/coverage suites, and the
// non-fresh allocator by the allocator freshness suite.
//
//===---------------------------------------------------------------------===//

#ifndef GIL_HARNESS_MUTANTS_HPP
#define GIL_HARNESS_MUTANTS_HPP

#include "gil/heap.hpp"

namespace gil {

namespace mutant_detail {

template <class To, class From>
std::vector<PredOutcome<To>> convertPred(std::vector<PredOutcome<From>> v) {
  std::vector<PredOutcome<To>> out;
  out.reserve(v.size());
  for (PredOutcome<From> &o : v)
    out.push_back({std::move(o.mem), std::move(o.outs), o.result,
                   std::move(o.ctx), o.unverified});
  return out;
}

template <class To, class From>
std::vector<ActionOutcome<To>> convertAct(std::vector<ActionOutcome<From>> v) {
  std::vector<ActionOutcome<To>> out;
  out.reserve(v.size());
  for (ActionOutcome<From> &o : v)
    out.push_back({std::move(o.mem), std::move(o.value), o.result,
                   std::move(o.ctx), o.unverified});
  return out;
}

/// Forwarding base: mutants override one behaviour and inherit the rest.
template <class Self> class SymbolicHeapMutant {
public:
  using Val = SymExpr;
  using Memory = SymbolicHeap;

  std::vector<CorePredicate> corePreds() const { return base_.corePreds(); }
  std::vector<std::string> actions() const { return base_.actions(); }
  const Solver &solver() const { return base_.solver(); }
  bool wf(const Memory &m, const PathCondition &pc) const {
    return base_.wf(m, pc);
  }
  Memory emptyMemory() const { return {}; }
  Memory zero() const { return {}; }
  bool memEqual(const Memory &a, const Memory &b) const {
    return base_.memEqual(a, b);
  }
  std::optional<Memory> compose(const Memory &a, const Memory &b) const {
    return base_.compose(a, b);
  }
  std::vector<PredOutcome<Self>> consume(const std::string &pred,
                                         const Memory &mem,
                                         const std::vector<Val> &ins,
                                         const PathCondition &pc) const {
    return convertPred<Self>(base_.consume(pred, mem, ins, pc));
  }
  std::vector<PredOutcome<Self>> produce(const std::string &pred,
                                         const Memory &mem,
                                         const std::vector<Val> &ins,
                                         const std::vector<Val> &outs,
                                         const PathCondition &pc) const {
    return convertPred<Self>(base_.produce(pred, mem, ins, outs, pc));
  }
  std::vector<ActionOutcome<Self>> ea(const Memory &mem, const std::string &act,
                                      const Val &arg,
                                      const PathCondition &pc) const {
    return convertAct<Self>(base_.ea(mem, act, arg, pc));
  }

protected:
  SymbolicHeapModel base_;
};

} // namespace mutant_detail

/// Drops the trailing no-binding-matches branch of cell consumers: breaks
/// full coverage (property 3.5).
class MutantDropNeqBranch
    : public mutant_detail::SymbolicHeapMutant<MutantDropNeqBranch> {
public:
  std::vector<PredOutcome<MutantDropNeqBranch>>
  consume(const std::string &pred, const Memory &mem,
          const std::vector<Val> &ins, const PathCondition &pc) const {
    auto outs = mutant_detail::convertPred<MutantDropNeqBranch>(
        base_.consume(pred, mem, ins, pc));
    if (pred == "cell" && !mem.bindings().empty()) {
      std::vector<PredOutcome<MutantDropNeqBranch>> kept;
      for (auto &o : outs)
        if (o.result != ActionResult::Missing)
          kept.push_back(std::move(o));
      return kept;
    }
    return outs;
  }
};

/// Setter writes through even on error results: breaks error transparency
/// (property 3.6).
class MutantWriteOnError
    : public mutant_detail::SymbolicHeapMutant<MutantWriteOnError> {
public:
  std::vector<ActionOutcome<MutantWriteOnError>>
  ea(const Memory &mem, const std::string &act, const Val &arg,
     const PathCondition &pc) const {
    auto outs = mutant_detail::convertAct<MutantWriteOnError>(
        base_.ea(mem, act, arg, pc));
    if (act == "store") {
      for (auto &o : outs)
        if (o.result == ActionResult::Error) {
          std::vector<SymExpr> parts;
          if (splitListTerm(arg, parts) && parts.size() == 2)
            o.mem = o.mem.withAppended(parts[0], parts[1]); // ghost write
        }
    }
    return outs;
  }
};

/// Producer ignores duplication: breaks 3.12 and CPR non-duplicability.
class MutantDuplicateProducer
    : public mutant_detail::SymbolicHeapMutant<MutantDuplicateProducer> {
public:
  std::vector<PredOutcome<MutantDuplicateProducer>>
  produce(const std::string &pred, const Memory &mem,
          const std::vector<Val> &ins, const std::vector<Val> &outs,
          const PathCondition &pc) const {
    if (pred == "cell") {
      SymExpr loc = simplify(ins.at(0));
      if (!loc.isLit() || loc.value().isLocation()) {
        std::optional<SymExpr> val = simplify(outs.at(0));
        return {{mem.withAppended(loc, std::move(val)), {},
                 ActionResult::Success, pc, false}};
      }
    }
    return mutant_detail::convertPred<MutantDuplicateProducer>(
        base_.produce(pred, mem, ins, outs, pc));
  }
};

} // namespace gil

#endif // GIL_HARNESS_MUTANTS_HPP

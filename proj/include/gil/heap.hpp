//===-- heap.hpp - the cell/freed heap instantiation ----------------------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//
//
// The shipped example instantiation: a heap of single cells with core
// predicates cell<l; v> and freed<l;>. Freed cells are negative resource,
// represented positively so Missing-vs-Error is decidable locally.
//
//===---------------------------------------------------------------------===//

#ifndef GIL_HEAP_HPP
#define GIL_HEAP_HPP

#include "gil/memory_model.hpp"
#include "gil/solver.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gil {

/// Concrete heap: finite map from locations to values or a Freed marker
/// (nullopt).
class ConcreteHeap {
public:
  using Binding = std::optional<Value>; // nullopt = Freed

  ConcreteHeap() = default;

  bool empty() const { return cells_.empty(); }
  const std::map<Value, Binding> &cells() const { return cells_; }

  bool contains(const Value &loc) const { return cells_.count(loc) != 0; }
  const Binding *find(const Value &loc) const {
    auto it = cells_.find(loc);
    return it == cells_.end() ? nullptr : &it->second;
  }

  ConcreteHeap with(const Value &loc, Binding b) const {
    ConcreteHeap h = *this;
    h.cells_[loc] = std::move(b);
    return h;
  }
  ConcreteHeap without(const Value &loc) const {
    ConcreteHeap h = *this;
    h.cells_.erase(loc);
    return h;
  }

  bool operator==(const ConcreteHeap &o) const { return cells_ == o.cells_; }
  std::string toString() const;

private:
  std::map<Value, Binding> cells_;
};

/// Symbolic heap: an ordered list of bindings from location-sorted terms to
/// value terms or Freed. Along executions the ambient context entails that
/// keys are pairwise distinct (maintained by the actions, not assumed).
class SymbolicHeap {
public:
  struct Binding {
    SymExpr key;
    std::optional<SymExpr> val; // nullopt = Freed
    bool operator==(const Binding &o) const {
      return key == o.key && val == o.val;
    }
  };

  SymbolicHeap() = default;
  explicit SymbolicHeap(std::vector<Binding> bs) : binds_(std::move(bs)) {}

  bool empty() const { return binds_.empty(); }
  const std::vector<Binding> &bindings() const { return binds_; }

  SymbolicHeap withAppended(SymExpr key, std::optional<SymExpr> val) const {
    SymbolicHeap h = *this;
    h.binds_.push_back({std::move(key), std::move(val)});
    return h;
  }
  SymbolicHeap withoutIndex(std::size_t i) const {
    SymbolicHeap h = *this;
    h.binds_.erase(h.binds_.begin() + static_cast<std::ptrdiff_t>(i));
    return h;
  }

  /// Normal form: bindings sorted by key then value. Binding list order is
  /// execution detail; equality is defined on the normal form.
  SymbolicHeap normalized() const;
  bool equalsNormalized(const SymbolicHeap &o) const {
    return normalized().binds_ == o.normalized().binds_;
  }

  std::set<std::string> svars() const;
  std::set<std::string> symbols() const;

  std::string toString() const;

private:
  std::vector<Binding> binds_;
};

/// Whole-program + compositional concrete heap model. Contexts are carried
/// to match the parametric signatures; the only well-formed concrete context
/// is (trivially) true.
class ConcreteHeapModel {
public:
  using Val = Value;
  using Memory = ConcreteHeap;

  std::vector<CorePredicate> corePreds() const {
    return {{"cell", 1, 1}, {"freed", 1, 0}};
  }
  std::vector<std::string> actions() const {
    return {"alloc", "load", "store", "free"};
  }

  bool wf(const Memory &mem, const PathCondition &pc) const {
    (void)mem;
    return pc.isTriviallyTrue();
  }

  Memory emptyMemory() const { return {}; }
  Memory zero() const { return {}; }
  bool memEqual(const Memory &a, const Memory &b) const { return a == b; }

  std::optional<Memory> compose(const Memory &a, const Memory &b) const;

  std::vector<PredOutcome<ConcreteHeapModel>>
  consume(const std::string &pred, const Memory &mem,
          const std::vector<Val> &ins, const PathCondition &pc) const;
  std::vector<PredOutcome<ConcreteHeapModel>>
  produce(const std::string &pred, const Memory &mem,
          const std::vector<Val> &ins, const std::vector<Val> &outs,
          const PathCondition &pc) const;

  std::vector<ActionOutcome<ConcreteHeapModel>> ea(const Memory &mem,
                                                   const std::string &act,
                                                   const Val &arg,
                                                   const PathCondition &pc) const;
};

/// Symbolic heap model. Branching on aliasing is resolved against the
/// ambient context through the solver; branch contexts are constructed
/// pairwise-disjoint by matching bindings in list order.
class SymbolicHeapModel {
public:
  using Val = SymExpr;
  using Memory = SymbolicHeap;

  SymbolicHeapModel() = default;
  explicit SymbolicHeapModel(Solver solver) : solver_(std::move(solver)) {}

  const Solver &solver() const { return solver_; }

  std::vector<CorePredicate> corePreds() const {
    return {{"cell", 1, 1}, {"freed", 1, 0}};
  }
  std::vector<std::string> actions() const {
    return {"alloc", "load", "store", "free"};
  }

  bool wf(const Memory &mem, const PathCondition &pc) const;

  Memory emptyMemory() const { return {}; }
  Memory zero() const { return {}; }
  bool memEqual(const Memory &a, const Memory &b) const {
    return a.equalsNormalized(b);
  }

  /// Partial: defined when no two keys are syntactically equal.
  std::optional<Memory> compose(const Memory &a, const Memory &b) const;

  std::vector<PredOutcome<SymbolicHeapModel>>
  consume(const std::string &pred, const Memory &mem,
          const std::vector<Val> &ins, const PathCondition &pc) const;
  std::vector<PredOutcome<SymbolicHeapModel>>
  produce(const std::string &pred, const Memory &mem,
          const std::vector<Val> &ins, const std::vector<Val> &outs,
          const PathCondition &pc) const;

  std::vector<ActionOutcome<SymbolicHeapModel>> ea(const Memory &mem,
                                                   const std::string &act,
                                                   const Val &arg,
                                                   const PathCondition &pc) const;

private:
  /// Sat-checks a branch context: keep (with unverified flag on Unknown) or
  /// drop.
  std::optional<bool> keepBranch(const PathCondition &pc) const;

  Solver solver_;
};

/// Applies a renaming to heaps.
ConcreteHeap renameHeap(const Renaming &al, const ConcreteHeap &h);
SymbolicHeap renameHeap(const Renaming &al, const SymbolicHeap &h);

/// Memory interpretation for the heap instantiation: defined iff every key
/// interprets to a distinct location and every value interprets.
std::optional<ConcreteHeap> interpretHeap(const Assignment &env,
                                          const SymbolicHeap &h);

} // namespace gil

#endif // GIL_HEAP_HPP

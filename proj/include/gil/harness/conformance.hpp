//===-- conformance.hpp - memory-model property suites --------------------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//
//
// Executable property suites for the execution-model contract (well-
// formedness monotonicity, outcome context strengthening, disjointness,
// coverage, error transparency) and the compositional contract (PCM laws,
// producer/consumer laws, frame lemmas), plus the action-level differential
// checks (MA-BC, MA-FS) and renaming equivariance for the heap models.
//
// Context-dependent memory equalities are checked semantically, by sampling
// interpretations of the branch context and comparing the interpreted heaps.
//
//===---------------------------------------------------------------------===//

#ifndef GIL_HARNESS_CONFORMANCE_HPP
#define GIL_HARNESS_CONFORMANCE_HPP

#include "gil/harness/generators.hpp"
#include "gil/harness/interpretation.hpp"
#include "gil/heap.hpp"
#include "gil/memory_model.hpp"

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace gil {

struct PropertyResult {
  std::string property;
  long trials = 0;
  long failures = 0;
  std::string firstCounterexample;

  void fail(const std::string &cx) {
    ++failures;
    if (firstCounterexample.empty())
      firstCounterexample = cx;
  }
};

struct SuiteReport {
  std::string suite;
  std::vector<PropertyResult> properties;

  PropertyResult &prop(const std::string &name) {
    for (PropertyResult &p : properties)
      if (p.property == name)
        return p;
    properties.push_back({name, 0, 0, ""});
    return properties.back();
  }
  bool allPassed() const {
    for (const PropertyResult &p : properties)
      if (p.failures > 0)
        return false;
    return true;
  }
  long totalFailures() const {
    long n = 0;
    for (const PropertyResult &p : properties)
      n += p.failures;
    return n;
  }
  std::string summary() const {
    std::ostringstream os;
    for (const PropertyResult &p : properties) {
      os << "  [" << (p.failures == 0 ? "pass" : "FAIL") << "] " << suite
         << "/" << p.property << "  trials=" << p.trials
         << " failures=" << p.failures;
      if (p.failures > 0)
        os << "\n         counterexample: " << p.firstCounterexample;
      os << "\n";
    }
    return os.str();
  }
};

namespace conformance_detail {

/// A generated action application for the heap vocabulary.
template <class M> struct ActionCase {
  std::string action;
  typename M::Val arg;
};

inline SymExpr genLocTerm(Rng &rng, const SymbolicHeap &mem) {
  std::vector<SymExpr> opts;
  for (const auto &b : mem.bindings())
    opts.push_back(b.key);
  opts.push_back(seLit(Value::symbol("l7")));
  opts.push_back(seVar("q0"));
  if (rng.chance(0.05))
    opts.push_back(seInt(3)); // ill-sorted on purpose
  return rng.pick(opts);
}

inline ActionCase<SymbolicHeapModel> genSymAction(Rng &rng,
                                                  const SymbolicHeap &mem) {
  static const std::vector<std::string> acts = {
      "load",      "store",      "free",        "alloc",
      "cons_cell", "prod_cell",  "cons_freed",  "prod_freed",
      "getter_cell", "setter_cell", "getter_freed", "setter_freed"};
  std::string act = rng.pick(acts);
  SymExpr loc = genLocTerm(rng, mem);
  SymExpr val = rng.chance(0.5) ? seInt(rng.range(-2, 3)) : seVar("w0");
  SymExpr arg = loc;
  if (act == "store" || act == "prod_cell" || act == "setter_cell")
    arg = makeListTerm({loc, val});
  return {act, arg};
}

inline ActionCase<ConcreteHeapModel> genConcAction(Rng &rng,
                                                   const ConcreteHeap &mem) {
  static const std::vector<std::string> acts = {
      "load",      "store",      "free",        "alloc",
      "cons_cell", "prod_cell",  "cons_freed",  "prod_freed",
      "getter_cell", "setter_cell", "getter_freed", "setter_freed"};
  std::string act = rng.pick(acts);
  std::vector<Value> locs;
  for (const auto &[l, b] : mem.cells())
    locs.push_back(l);
  locs.push_back(Value::symbol("l7"));
  if (rng.chance(0.05))
    locs.push_back(Value::integer(3));
  Value loc = rng.pick(locs);
  Value val = genScalarValue(rng);
  Value arg = loc;
  if (act == "store" || act == "prod_cell" || act == "setter_cell")
    arg = Value::list({loc, val});
  return {act, arg};
}

/// Semantic equality of two symbolic heaps under a context, by sampling
/// interpretations.
inline bool heapsEqualUnder(const Solver &solver, const PathCondition &ctx,
                            const SymbolicHeap &a, const SymbolicHeap &b,
                            int samples = 3) {
  // Assemble the sampling query: the context plus location hints.
  SortHints hints;
  std::set<std::string> keyVars;
  for (const SymbolicHeap *h : {&a, &b})
    for (const auto &bind : h->bindings())
      for (const std::string &v : bind.key.vars())
        hints[v] = Sort::Loc;
  auto models = solver.allModels(ctx, samples, hints);
  std::set<std::string> want = ctx.svars();
  for (const SymbolicHeap *h : {&a, &b})
    for (const std::string &v : h->svars())
      want.insert(v);
  for (Assignment &m : models) {
    Assignment env = extendAssignment(std::move(m), want, hints);
    auto ca = interpretHeap(env, a);
    auto cb = interpretHeap(env, b);
    if (!ca || !cb || !(*ca == *cb))
      return false;
  }
  return true;
}

inline bool heapsEqualUnder(const Solver &, const PathCondition &,
                            const ConcreteHeap &a, const ConcreteHeap &b,
                            int = 3) {
  return a == b;
}

/// Builds the CPR memory of one predicate instance.
template <class M>
std::optional<typename M::Memory>
cprOf(const M &model, const std::string &pred,
      const std::vector<typename M::Val> &ins,
      const std::vector<typename M::Val> &outs) {
  for (const PredOutcome<M> &o :
       model.produce(pred, model.zero(), ins, outs, PathCondition()))
    if (o.result == ActionResult::Success)
      return o.mem;
  return std::nullopt;
}

template <class M>
bool ctxEquiv(const Solver &solver, const PathCondition &a,
              const PathCondition &b) {
  return solver.entails(a, b) == Tri::True &&
         solver.entails(b, a) == Tri::True;
}

} // namespace conformance_detail

//===----------------------------------------------------------------------===//
// Execution-model suite (Def. of execution memory models)
//===----------------------------------------------------------------------===//

template <class M> struct ModelCase {
  typename M::Memory mem;
  PathCondition ctx;
};

/// Generates a well-formed (memory, context) pair for the given flavour.
inline ModelCase<SymbolicHeapModel> genModelCase(const SymbolicHeapModel &model,
                                                 Rng &rng) {
  GenHeap g = genSymbolicHeap(rng, model.solver());
  return {g.mem, g.ctx};
}
inline ModelCase<ConcreteHeapModel> genModelCase(const ConcreteHeapModel &,
                                                 Rng &rng) {
  return {genConcreteHeap(rng), PathCondition()};
}

inline conformance_detail::ActionCase<SymbolicHeapModel>
genActionCase(const SymbolicHeapModel &, Rng &rng, const SymbolicHeap &mem) {
  return conformance_detail::genSymAction(rng, mem);
}
inline conformance_detail::ActionCase<ConcreteHeapModel>
genActionCase(const ConcreteHeapModel &, Rng &rng, const ConcreteHeap &mem) {
  return conformance_detail::genConcAction(rng, mem);
}

template <class M>
SuiteReport checkExecModelProps(const M &model, const Solver &solver,
                                long trials, std::uint64_t seed) {
  using namespace conformance_detail;
  SuiteReport rep;
  rep.suite = "exec-model";
  for (long t = 0; t < trials; ++t) {
    Rng rng = Rng::forTrial(seed, static_cast<std::uint64_t>(t));
    ModelCase<M> c = genModelCase(model, rng);
    auto ac = genActionCase(model, rng, c.mem);
    std::string cx;
    {
      std::ostringstream os;
      os << "seed=" << seed << " trial=" << t << " action=" << ac.action;
      cx = os.str();
    }

    // 2.1: contexts of well-formed memories are satisfiable
    auto &p21 = rep.prop("2.1-wf-ctx-sat");
    ++p21.trials;
    if (solver.sat(c.ctx).verdict != Verdict::Sat)
      p21.fail(cx);

    // 2.2: well-formedness is monotone under context strengthening
    auto &p22 = rep.prop("2.2-wf-monotone");
    ++p22.trials;
    {
      // concrete contexts stay ground: strengthen with a folding literal
      SymExpr lit = FlavorOps<typename M::Val>::symbolic
                        ? genBoolLiteral(rng, {"m0"})
                        : seLit(Value::boolean(true));
      PathCondition stronger = c.ctx.conjoin(lit);
      if (solver.sat(stronger).verdict == Verdict::Sat &&
          model.wf(c.mem, c.ctx) && !model.wf(c.mem, stronger))
        p22.fail(cx);
    }

    // 3.1: inputs are well-formed (generator sanity, the ea precondition)
    auto &p31 = rep.prop("3.1-wf-precondition");
    ++p31.trials;
    if (!model.wf(c.mem, c.ctx)) {
      p31.fail(cx);
      continue;
    }

    std::vector<ActionOutcome<M>> outs;
    try {
      outs = execAction(model, c.mem, ac.action, ac.arg, c.ctx);
    } catch (const EngineFault &e) {
      rep.prop("3.x-no-engine-fault").fail(cx + " fault=" + e.what());
      continue;
    }

    // 3.2: action execution preserves well-formedness
    auto &p32 = rep.prop("3.2-preserves-wf");
    ++p32.trials;
    for (const auto &o : outs)
      if (!model.wf(o.mem, o.ctx)) {
        p32.fail(cx);
        break;
      }

    // 3.3: outcome contexts are satisfiable and strengthen the input context
    auto &p33 = rep.prop("3.3-ctx-strengthening");
    ++p33.trials;
    for (const auto &o : outs) {
      if (solver.sat(o.ctx).verdict != Verdict::Sat ||
          solver.entails(o.ctx, c.ctx) != Tri::True) {
        p33.fail(cx);
        break;
      }
    }

    // 3.4: outcome contexts are pairwise disjoint
    auto &p34 = rep.prop("3.4-disjointness");
    ++p34.trials;
    for (std::size_t i = 0; i < outs.size() && p34.failures == 0; ++i)
      for (std::size_t j = i + 1; j < outs.size(); ++j)
        if (solver.sat(outs[i].ctx.conjoin(outs[j].ctx)).verdict !=
            Verdict::Unsat) {
          p34.fail(cx);
          break;
        }

    // 3.5: full coverage
    auto &p35 = rep.prop("3.5-coverage");
    ++p35.trials;
    {
      SymExpr disj = seFalse();
      for (const auto &o : outs)
        disj = seOr(disj, o.ctx.toExpr());
      if (solver.entails(c.ctx, PathCondition(disj)) != Tri::True)
        p35.fail(cx);
    }

    // 3.6: non-successful execution does not affect the memory
    auto &p36 = rep.prop("3.6-error-transparency");
    ++p36.trials;
    for (const auto &o : outs)
      if (o.result != ActionResult::Success && !model.memEqual(o.mem, c.mem)) {
        p36.fail(cx);
        break;
      }
  }
  return rep;
}

//===----------------------------------------------------------------------===//
// Compositional-model suite (PCM laws + producer/consumer laws)
//===----------------------------------------------------------------------===//

template <class M>
SuiteReport checkCompModelProps(const M &model, const Solver &solver,
                                long trials, std::uint64_t seed) {
  using namespace conformance_detail;
  SuiteReport rep;
  rep.suite = "comp-model";
  for (long t = 0; t < trials; ++t) {
    Rng rng = Rng::forTrial(seed ^ 0xc0ffee, static_cast<std::uint64_t>(t));
    ModelCase<M> c = genModelCase(model, rng);
    std::string cx;
    {
      std::ostringstream os;
      os << "seed=" << seed << " trial=" << t;
      cx = os.str();
    }

    // --- PCM laws --------------------------------------------------------
    {
      ModelCase<M> c2 = genModelCase(model, rng);
      ModelCase<M> c3 = genModelCase(model, rng);
      auto &pcm = rep.prop("pcm-laws");
      ++pcm.trials;
      auto ab = model.compose(c.mem, c2.mem);
      auto ba = model.compose(c2.mem, c.mem);
      bool ok = ab.has_value() == ba.has_value() &&
                (!ab || model.memEqual(*ab, *ba));
      // associativity
      auto bc = model.compose(c2.mem, c3.mem);
      std::optional<typename M::Memory> ab_c, a_bc;
      if (ab)
        ab_c = model.compose(*ab, c3.mem);
      if (bc)
        a_bc = model.compose(c.mem, *bc);
      ok = ok && (ab_c.has_value() == a_bc.has_value()) &&
           (!ab_c || model.memEqual(*ab_c, *a_bc));
      // unit + indivisibility
      auto au = model.compose(c.mem, model.zero());
      ok = ok && au && model.memEqual(*au, c.mem);
      if (ab && model.memEqual(*ab, model.zero()))
        ok = ok && model.memEqual(c.mem, model.zero()) &&
             model.memEqual(c2.mem, model.zero());
      if (!ok)
        pcm.fail(cx);

      // 2.3: wf compatible with composition
      auto &p23 = rep.prop("2.3-wf-compose");
      ++p23.trials;
      if (ab) {
        PathCondition both = c.ctx.conjoin(c2.ctx);
        if (model.wf(*ab, both) &&
            (!model.wf(c.mem, both) || !model.wf(c2.mem, both)))
          p23.fail(cx);
      }

      // 2.4: the empty memory is well-formed in any satisfiable context
      auto &p24 = rep.prop("2.4-zero-wf");
      ++p24.trials;
      if (!model.wf(model.zero(), c.ctx))
        p24.fail(cx);
    }

    // --- producer/consumer laws -------------------------------------------
    for (const CorePredicate &pred : model.corePreds()) {
      std::vector<typename M::Val> ins, outs;
      if constexpr (std::is_same_v<typename M::Val, Value>) {
        ins.push_back(rng.chance(0.7) ? Value::symbol("l0")
                                      : Value::symbol("l9"));
        for (std::size_t i = 0; i < pred.outArity; ++i)
          outs.push_back(genScalarValue(rng));
      } else {
        ins.push_back(genLocTerm(rng, c.mem));
        for (std::size_t i = 0; i < pred.outArity; ++i)
          outs.push_back(rng.chance(0.5) ? seInt(rng.range(-2, 3))
                                         : seVar("w1"));
      }

      // 3.7: producers succeed without branching in the empty memory
      auto &p37 = rep.prop("3.7-prod-empty");
      ++p37.trials;
      {
        auto prodOuts = model.produce(pred.name, model.zero(), ins, outs, c.ctx);
        bool isLoc = true;
        if constexpr (std::is_same_v<typename M::Val, Value>)
          isLoc = ins[0].isLocation();
        else
          isLoc = !ins[0].isLit() || ins[0].value().isLocation();
        if (isLoc) {
          long succ = 0;
          for (const auto &o : prodOuts)
            if (o.result == ActionResult::Success)
              ++succ;
          if (succ != 1 || prodOuts.size() != 1)
            p37.fail(cx + " pred=" + pred.name);
          else {
            auto cpr = cprOf(model, pred.name, ins, outs);
            if (!cpr || !model.memEqual(prodOuts[0].mem, *cpr) ||
                !ctxEquiv<M>(solver, prodOuts[0].ctx, c.ctx))
              p37.fail(cx + " pred=" + pred.name);
          }
        }
      }

      auto prodOuts = model.produce(pred.name, c.mem, ins, outs, c.ctx);

      // 3.8: successful producers add exactly the CPR
      auto &p38 = rep.prop("3.8-prod-adds-cpr");
      ++p38.trials;
      for (const auto &o : prodOuts) {
        if (o.result != ActionResult::Success)
          continue;
        auto cpr = cprOf(model, pred.name, ins, outs);
        std::optional<typename M::Memory> composed;
        if (cpr)
          composed = model.compose(c.mem, *cpr);
        if (!composed || !model.memEqual(o.mem, *composed)) {
          p38.fail(cx + " pred=" + pred.name);
          break;
        }
      }

      // 3.9: producers never return Missing
      auto &p39 = rep.prop("3.9-prod-never-missing");
      ++p39.trials;
      for (const auto &o : prodOuts)
        if (o.result == ActionResult::Missing) {
          p39.fail(cx + " pred=" + pred.name);
          break;
        }

      auto consOuts = model.consume(pred.name, c.mem, ins, c.ctx);

      // 3.10 (forward): consumer success contexts pin down the CPR split
      auto &p310 = rep.prop("3.10-cons-iff-cpr");
      ++p310.trials;
      for (const auto &o : consOuts) {
        if (o.result != ActionResult::Success)
          continue;
        auto cpr = cprOf(model, pred.name, ins, o.outs);
        std::optional<typename M::Memory> recomposed;
        if (cpr)
          recomposed = model.compose(o.mem, *cpr);
        if (!recomposed ||
            !heapsEqualUnder(solver, o.ctx, *recomposed, c.mem)) {
          p310.fail(cx + " pred=" + pred.name);
          break;
        }
      }

      // 3.11: consumed CPR can be re-produced under the same context
      auto &p311 = rep.prop("3.11-reproducible");
      ++p311.trials;
      for (const auto &o : consOuts) {
        if (o.result != ActionResult::Success)
          continue;
        bool ok = false;
        for (const auto &p : model.produce(pred.name, o.mem, ins, o.outs, o.ctx))
          if (p.result == ActionResult::Success &&
              ctxEquiv<M>(solver, p.ctx, o.ctx))
            ok = true;
        if (!ok) {
          p311.fail(cx + " pred=" + pred.name);
          break;
        }
      }

      // 3.12a: producers fail where consumers succeed
      auto &p312a = rep.prop("3.12-prod-fails-where-cons-succeeds");
      ++p312a.trials;
      for (const auto &o : consOuts) {
        if (o.result != ActionResult::Success)
          continue;
        bool ok = false;
        for (const auto &p : prodOuts)
          if (p.result == ActionResult::Error &&
              ctxEquiv<M>(solver, p.ctx, o.ctx) && model.memEqual(p.mem, c.mem))
            ok = true;
        if (!ok) {
          p312a.fail(cx + " pred=" + pred.name);
          break;
        }
      }

      // 3.12b: consumers miss exactly where producers succeed
      auto &p312b = rep.prop("3.12-cons-miss-iff-prod-succeeds");
      ++p312b.trials;
      {
        std::vector<PathCondition> missCtxs, succCtxs;
        for (const auto &o : consOuts)
          if (o.result == ActionResult::Missing)
            missCtxs.push_back(o.ctx);
        for (const auto &p : prodOuts)
          if (p.result == ActionResult::Success)
            succCtxs.push_back(p.ctx);
        bool ok = missCtxs.size() == succCtxs.size();
        if (ok && !missCtxs.empty())
          ok = ctxEquiv<M>(solver, missCtxs[0], succCtxs[0]);
        if (!ok)
          p312b.fail(cx + " pred=" + pred.name);
      }

      // 3.13: erroneous consumer/producer executions are frame-preserving
      auto &p313 = rep.prop("3.13-error-frame-preserving");
      ++p313.trials;
      {
        ModelCase<M> frame = genModelCase(model, rng);
        auto framed = model.compose(c.mem, frame.mem);
        PathCondition framedCtx = c.ctx.conjoin(frame.ctx);
        if (framed && model.wf(*framed, framedCtx)) {
          bool bad = false;
          for (const auto &o : consOuts) {
            if (o.result != ActionResult::Error)
              continue;
            PathCondition oFramed = o.ctx.conjoin(frame.ctx);
            if (solver.sat(oFramed).verdict != Verdict::Sat)
              continue; // branch infeasible with the frame
            bool found = false;
            for (const auto &fo :
                 model.consume(pred.name, *framed, ins, framedCtx))
              if (fo.result == ActionResult::Error &&
                  ctxEquiv<M>(solver, fo.ctx, oFramed) &&
                  model.memEqual(fo.mem, *framed))
                found = true;
            if (!found)
              bad = true;
          }
          if (bad)
            p313.fail(cx + " pred=" + pred.name);
        }
      }

      // 3.14: successful producers are frame-cancelling
      auto &p314 = rep.prop("3.14-prod-frame-cancelling");
      ++p314.trials;
      {
        ModelCase<M> frame = genModelCase(model, rng);
        auto framed = model.compose(c.mem, frame.mem);
        PathCondition framedCtx = c.ctx.conjoin(frame.ctx);
        if (framed && model.wf(*framed, framedCtx)) {
          bool bad = false;
          for (const auto &fo :
               model.produce(pred.name, *framed, ins, outs, framedCtx)) {
            if (fo.result != ActionResult::Success)
              continue;
            bool found = false;
            for (const auto &o :
                 model.produce(pred.name, c.mem, ins, outs, fo.ctx))
              if (o.result == ActionResult::Success)
                found = true;
            if (!found)
              bad = true;
          }
          if (bad)
            p314.fail(cx + " pred=" + pred.name);
        }
      }

      // Derived: producer-consumer invertibility
      auto &inv = rep.prop("derived-invertibility");
      ++inv.trials;
      for (const auto &p : prodOuts) {
        if (p.result != ActionResult::Success)
          continue;
        bool ok = false;
        for (const auto &o : model.consume(pred.name, p.mem, ins, p.ctx))
          if (o.result == ActionResult::Success &&
              ctxEquiv<M>(solver, o.ctx, p.ctx) &&
              heapsEqualUnder(solver, o.ctx, o.mem, c.mem))
            ok = true;
        if (!ok) {
          inv.fail(cx + " pred=" + pred.name);
          break;
        }
      }

      // Derived: CPR non-duplicability
      auto &dup = rep.prop("derived-non-duplicability");
      ++dup.trials;
      {
        bool bad = false;
        for (const auto &o : consOuts) {
          if (o.result != ActionResult::Success)
            continue;
          // a second consume of the same ins must miss in the branch ctx
          bool foundMiss = false;
          for (const auto &o2 : model.consume(pred.name, o.mem, ins, o.ctx))
            if (o2.result == ActionResult::Missing &&
                solver.entails(o.ctx, o2.ctx) == Tri::True)
              foundMiss = true;
          if (!foundMiss)
            bad = true;
        }
        for (const auto &p : prodOuts) {
          if (p.result != ActionResult::Success)
            continue;
          bool foundErr = false;
          for (const auto &p2 : model.produce(pred.name, p.mem, ins, outs, p.ctx))
            if (p2.result == ActionResult::Error &&
                solver.entails(p.ctx, p2.ctx) == Tri::True)
              foundErr = true;
          if (!foundErr)
            bad = true;
        }
        if (bad)
          dup.fail(cx + " pred=" + pred.name);
      }

      // Derived: successful consumers are frame-preserving
      auto &fp = rep.prop("derived-cons-frame-preserving");
      ++fp.trials;
      {
        ModelCase<M> frame = genModelCase(model, rng);
        auto framed = model.compose(c.mem, frame.mem);
        PathCondition framedCtx = c.ctx.conjoin(frame.ctx);
        if (framed && model.wf(*framed, framedCtx)) {
          bool bad = false;
          for (const auto &o : consOuts) {
            if (o.result != ActionResult::Success)
              continue;
            PathCondition oFramed = o.ctx.conjoin(frame.ctx);
            if (solver.sat(oFramed).verdict != Verdict::Sat)
              continue;
            bool found = false;
            for (const auto &fo :
                 model.consume(pred.name, *framed, ins, framedCtx)) {
              if (fo.result != ActionResult::Success)
                continue;
              auto expect = model.compose(o.mem, frame.mem);
              if (expect && ctxEquiv<M>(solver, fo.ctx, oFramed) &&
                  heapsEqualUnder(solver, fo.ctx, fo.mem, *expect))
                found = true;
            }
            if (!found)
              bad = true;
          }
          if (bad)
            fp.fail(cx + " pred=" + pred.name);
        }
      }
    }
  }
  return rep;
}

} // namespace gil

#endif // GIL_HARNESS_CONFORMANCE_HPP

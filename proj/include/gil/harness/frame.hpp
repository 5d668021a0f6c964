//===-- frame.hpp - frame preservation of GIL execution -------------------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//
//
// Checks that executions are frame-preserving up to a renaming of allocated
// symbols: for a run cf ->* cf' and a composable frame, the framed run
// reaches, per branch with the same trace, aleph(cf' * pi'') * frame, where
// aleph repairs clashes between symbols the run allocated and symbols the
// frame already holds, and pi'' carries the separation constraints against
// the frame.
//
//===---------------------------------------------------------------------===//

#ifndef GIL_HARNESS_FRAME_HPP
#define GIL_HARNESS_FRAME_HPP

#include "gil/harness/difftest.hpp"
#include "gil/harness/generators.hpp"
#include "gil/harness/interpretation.hpp"

#include <sstream>

namespace gil {

struct FrameViolation {
  std::uint64_t seed = 0;
  std::string program;
  std::string detail;
};

struct FrameReport {
  long pairs = 0;
  long branchesChecked = 0;
  long nontrivialRenamings = 0;
  std::vector<FrameViolation> violations;
  bool passed() const { return violations.empty(); }
};

namespace frame_detail {

using SymM = SymbolicHeapModel;
using Cfg = Configuration<SymM>;

/// Builds the renaming from the base run's allocations to the framed run's:
/// symbols issued at the same position are identified. Counter-issued names
/// are aligned by numeric index, which is their issue order.
inline std::optional<Renaming>
renamingFromLogs(const State<SymM> &baseInit, const State<SymM> &framedInit,
                 const Cfg &baseFinal, const Cfg &framedFinal) {
  Renaming al;
  auto freshLocs = [](const AllocRecord &init, const AllocRecord &fin) {
    std::vector<Value> out;
    for (const Value &l : fin.locations())
      if (!init.locations().count(l))
        out.push_back(l);
    std::sort(out.begin(), out.end(), [](const Value &a, const Value &b) {
      return std::stoll(a.sym().name.substr(1)) <
             std::stoll(b.sym().name.substr(1));
    });
    return out;
  };
  std::vector<Value> baseLocs = freshLocs(baseInit.alloc, baseFinal.st.alloc);
  std::vector<Value> framedLocs =
      freshLocs(framedInit.alloc, framedFinal.st.alloc);
  if (framedLocs.size() != baseLocs.size())
    return std::nullopt;
  for (std::size_t i = 0; i < baseLocs.size(); ++i) {
    if (baseLocs[i] != framedLocs[i])
      al.addLocation(baseLocs[i].sym().name, framedLocs[i].sym().name);
  }
  const auto &baseSv = baseFinal.st.alloc.symVarLog();
  const auto &framedSv = framedFinal.st.alloc.symVarLog();
  if (baseSv.size() != framedSv.size())
    return std::nullopt;
  for (std::size_t i = 0; i < baseSv.size(); ++i)
    if (baseSv[i] != framedSv[i])
      al.addSymVar(baseSv[i], framedSv[i]);
  return al;
}

inline StoreOf<SymExpr> renameStore(const Renaming &al,
                                    const StoreOf<SymExpr> &store) {
  StoreOf<SymExpr> out;
  for (const auto &[k, v] : store)
    out.emplace(k, al.apply(v));
  return out;
}

inline bool stacksMatch(const Renaming &al, const CallStack<SymM> &base,
                        const CallStack<SymM> &framed) {
  if (base.size() != framed.size())
    return false;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const auto &a = base[i];
    const auto &b = framed[i];
    if (a.proc != b.proc || a.bottom != b.bottom || a.retVar != b.retVar ||
        a.retIndex != b.retIndex)
      return false;
    if (renameStore(al, a.store) != b.store)
      return false;
  }
  return true;
}

} // namespace frame_detail

struct FrameConfig {
  GenConfig gen;
  long pairs = 100;
  std::size_t fuel = 2000;
  /// Fraction of frames whose allocation record pre-claims the counter
  /// names the run would otherwise use, forcing a nontrivial renaming.
  double clashChance = 0.3;
};

inline FrameReport checkFrame(const SymbolicHeapModel &model,
                              const Solver &solver, const FrameConfig &cfg) {
  using namespace frame_detail;
  FrameReport rep;
  for (long t = 0; t < cfg.pairs; ++t) {
    Rng rng = Rng::forTrial(cfg.gen.seed ^ 0xf7a3e, static_cast<std::uint64_t>(t));
    GenConfig gc = cfg.gen;
    gc.failChance = 0.02;
    Prog prog = generateProgram(gc, rng);
    ++rep.pairs;
    auto report = [&](const std::string &detail) {
      rep.violations.push_back({cfg.gen.seed, printProgram(prog), detail});
    };

    // base initial state: parameter bound to a symbolic input
    State<SymM> baseSt;
    baseSt.alloc.chargeSymVars({"in0"});
    baseSt.store[prog.procOf("p0").param] = seVar("in0");

    // frame: a small heap over its own locations/symvars, store empty
    State<SymM> frameSt;
    {
      GenHeap g = genSymbolicHeap(rng, solver, 2);
      // keep frame symbols disjoint from engine-issued names unless we are
      // deliberately forcing a clash
      bool forceClash = rng.chance(cfg.clashChance);
      std::vector<SymbolicHeap::Binding> bs;
      int locIdx = forceClash ? 0 : 40; // l0.. collide with counter names
      int i = 0;
      for (const auto &b : g.mem.bindings()) {
        SymExpr key = seLit(Value::symbol("l" + std::to_string(locIdx + i)));
        ++i;
        bs.push_back({key, b.val});
      }
      frameSt.mem = SymbolicHeap(std::move(bs));
      std::set<Value> frameLocs;
      for (const auto &b : frameSt.mem.bindings())
        frameLocs.insert(b.key.value());
      if (!frameLocs.empty())
        frameSt.alloc.charge(AllocRange::Locations, frameLocs);
      for (const std::string &v : frameSt.mem.svars())
        frameSt.alloc.chargeSymVars({v});
      if (forceClash) {
        // also pre-claim symvar counter names
        frameSt.alloc.chargeSymVars({"x0", "x1"});
      }
    }

    auto composed = composeStates(model, baseSt, frameSt);
    if (!composed)
      continue; // not a composable pair; try the next seed

    // run base and framed
    RunResult<SymM> baseRun = runToTermination(
        model, solver, prog, {initialConfig<SymM>(baseSt, "p0")}, cfg.fuel);
    RunResult<SymM> framedRun = runToTermination(
        model, solver, prog, {initialConfig<SymM>(*composed, "p0")}, cfg.fuel);
    if (!baseRun.done || !framedRun.done) {
      report("run did not terminate within fuel");
      continue;
    }

    for (const Cfg &baseFinal : baseRun.configs) {
      if (baseFinal.outcome == OutcomeKind::Miss)
        continue; // the theorem covers non-missing executions
      // the theorem's side-condition: the branch must stay feasible with
      // the frame
      PathCondition withFrame = baseFinal.st.ctx.conjoin(frameSt.ctx);
      if (solver.sat(withFrame).verdict == Verdict::Unsat)
        continue;
      ++rep.branchesChecked;

      bool matched = false;
      std::string why = "no framed final with matching trace";
      for (const Cfg &framedFinal : framedRun.configs) {
        if (framedFinal.trace != baseFinal.trace)
          continue;
        auto al = renamingFromLogs(baseSt, *composed, baseFinal, framedFinal);
        if (!al) {
          why = "allocation logs do not align";
          continue;
        }
        if (!al->isIdentity())
          ++rep.nontrivialRenamings;
        // memory: framed == aleph(base) * frame
        SymbolicHeap renamed = renameHeap(*al, baseFinal.st.mem);
        auto want = model.compose(renamed, frameSt.mem);
        if (!want || !model.memEqual(framedFinal.st.mem, *want)) {
          why = "framed memory is not the renamed base plus the frame";
          continue;
        }
        if (renameStore(*al, baseFinal.st.store) != framedFinal.st.store) {
          why = "framed store differs from the renamed base store";
          continue;
        }
        if (!stacksMatch(*al, baseFinal.cs, framedFinal.cs)) {
          why = "framed call stack differs";
          continue;
        }
        if (baseFinal.outcome != framedFinal.outcome ||
            al->apply(baseFinal.outcomeValue) != framedFinal.outcomeValue) {
          why = "outcome differs";
          continue;
        }
        // context: framed ctx must be aleph(base ctx) /\ pi'' /\ frame ctx
        // with pi'' the separation constraints; check both entailments
        PathCondition expectedLower =
            al->apply(baseFinal.st.ctx).conjoin(frameSt.ctx);
        if (solver.entails(framedFinal.st.ctx, expectedLower) != Tri::True) {
          why = "framed context does not entail the renamed base context";
          continue;
        }
        // pi'': the extra literals; verify they only separate fresh symbols
        // from the frame (every literal must be entailed once the renamed
        // base context and frame context hold together with distinctness of
        // the framed memory's keys)
        PathCondition withWf = expectedLower;
        const auto &bs = framedFinal.st.mem.bindings();
        for (std::size_t i = 0; i < bs.size(); ++i)
          for (std::size_t j = i + 1; j < bs.size(); ++j)
            withWf = withWf.conjoin(seNeq(bs[i].key, bs[j].key));
        if (solver.entails(withWf, framedFinal.st.ctx) != Tri::True) {
          why = "framed context adds more than separation constraints";
          continue;
        }
        matched = true;
        break;
      }
      if (!matched) {
        std::ostringstream os;
        os << "branch " << baseFinal.branchId << " (trace length "
           << baseFinal.trace.size() << "): " << why;
        report(os.str());
      }
    }
  }
  return rep;
}

} // namespace gil

#endif // GIL_HARNESS_FRAME_HPP

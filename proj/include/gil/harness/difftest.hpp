//===-- difftest.hpp - concrete-vs-symbolic differential testing ----------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//
//
// Operationalises the two correctness directions as executable tests over
// generated programs:
//
//  backward completeness — every sampled model of a symbolic final replays
//  concretely along the same command trace to exactly that model;
//
//  forward soundness — every seeded concrete run lands in the models of
//  some symbolic final with the same trace.
//
// Replays drive the concrete allocator's Fresh(Values) draws with the
// interpreted images of the symbolic run's variable allocations (any draw
// is a legal Fresh(Values) instance, so this just picks the witness).
//
//===---------------------------------------------------------------------===//

#ifndef GIL_HARNESS_DIFFTEST_HPP
#define GIL_HARNESS_DIFFTEST_HPP

#include "gil/harness/conformance.hpp"
#include "gil/harness/generators.hpp"
#include "gil/harness/interpretation.hpp"
#include "gil/interpreter.hpp"
#include "gil/parser.hpp"

#include <sstream>

namespace gil {

struct DiffViolation {
  std::string kind; // "BC" | "FS" | "coverage" | "fuel" | "unknown"
  std::uint64_t seed = 0;
  std::string program;
  std::string detail;
};

struct DiffReport {
  long programs = 0;
  long symbolicFinals = 0;
  long bcChecks = 0;
  long fsChecks = 0;
  long coverageChecks = 0;
  std::vector<DiffViolation> violations;
  bool passed() const { return violations.empty(); }
};

namespace diff_detail {

using SymCfg = Configuration<SymbolicHeapModel>;
using ConcCfg = Configuration<ConcreteHeapModel>;

inline bool configsEqual(const ConcCfg &a, const ConcCfg &b) {
  return a.st == b.st && a.cs == b.cs && a.idx == b.idx &&
         a.outcome == b.outcome &&
         (a.outcome == OutcomeKind::Cont || a.outcomeValue == b.outcomeValue) &&
         a.trace == b.trace;
}

inline std::string describe(const ConcCfg &cf) {
  std::ostringstream os;
  os << outcomeKindName(cf.outcome) << "(" << cf.outcomeValue.toString()
     << ") store{";
  for (const auto &[k, v] : cf.st.store)
    os << k << "=" << v.toString() << " ";
  os << "} mem=" << cf.st.mem.toString() << " idx=" << cf.idx;
  return os.str();
}

/// The initial symbolic configuration used for differential runs: empty
/// heap, the entry parameter bound to one fresh symbolic variable.
inline SymCfg initialSymbolicConfig(const Prog &prog) {
  State<SymbolicHeapModel> st;
  const Proc &main = prog.procOf("p0");
  st.alloc.chargeSymVars({"in0"});
  st.store[main.param] = seVar("in0");
  return initialConfig<SymbolicHeapModel>(std::move(st), "p0");
}

/// The matching concrete initial configuration under an interpretation.
inline std::optional<ConcCfg> initialConcreteConfig(const Prog &prog,
                                                    const Assignment &env,
                                                    const SymCfg &symInit) {
  return interpretConfig(env, symInit);
}

/// iSym draws of a symbolic run, beyond the pre-charged prefix, interpreted
/// into a concrete draw script.
inline std::optional<std::vector<Value>>
drawScript(const Assignment &env, const SymCfg &symFinal,
           std::size_t prefixSymVars) {
  std::vector<Value> script;
  const auto &log = symFinal.st.alloc.symVarLog();
  (void)prefixSymVars;
  for (const std::string &sv : log) {
    auto it = env.find(sv);
    if (it == env.end())
      return std::nullopt;
    script.push_back(it->second);
  }
  return script;
}

} // namespace diff_detail

struct DiffConfig {
  GenConfig gen;
  long programs = 200;
  std::size_t modelsPerFinal = 3;
  std::size_t fuel = 2000;
  bool checkCoverage = true;
  bool exhaustiveSmall = true; // exhaustive models on <=2-svar programs
  std::size_t exhaustiveCap = 64;
  EngineMutations mutations;   // planted engine bugs (mutation gate only)
};

/// Runs the BC/FS differential test over generated programs. Engine
/// mutations for the mutation gate hook in through cfg.mutations.
inline DiffReport diffTest(const SymbolicHeapModel &symModel,
                           const ConcreteHeapModel &concModel,
                           const Solver &solver, const DiffConfig &cfg) {
  using namespace diff_detail;
  DiffReport rep;

  for (long pi = 0; pi < cfg.programs; ++pi) {
    Rng rng = Rng::forTrial(cfg.gen.seed, static_cast<std::uint64_t>(pi));
    GenConfig gc = cfg.gen;
    Prog prog = generateProgram(gc, rng);
    ++rep.programs;
    std::uint64_t progSeed = rng.child(0xabcd);
    auto report = [&](const std::string &kind, const std::string &detail) {
      rep.violations.push_back(
          {kind, progSeed, printProgram(prog), detail});
    };

    // --- symbolic collecting run, with coverage instrumentation ---------
    Configuration<SymbolicHeapModel> symInit = initialSymbolicConfig(prog);
    StepOptions<SymbolicHeapModel> symOpts;
    symOpts.mutations = cfg.mutations;
    long coverageFailures = 0;
    std::string coverageDetail;
    if (cfg.checkCoverage) {
      symOpts.onStep = [&](const Configuration<SymbolicHeapModel> &cf,
                           const Cmd &cmd,
                           const std::vector<Configuration<SymbolicHeapModel>>
                               &succs) {
        if (cmd.kind == Cmd::Kind::Vanish)
          return; // documented exception: vanish cuts paths by design
        ++rep.coverageChecks;
        SymExpr disj = seFalse();
        for (const auto &s : succs)
          disj = seOr(disj, s.st.ctx.toExpr());
        if (solver.entails(cf.st.ctx, PathCondition(disj)) != Tri::True) {
          ++coverageFailures;
          if (coverageDetail.empty())
            coverageDetail = "step of " + cmd.toString() + " at branch " +
                             cf.branchId + " under " + cf.st.ctx.toString();
        }
      };
    }
    RunResult<SymbolicHeapModel> symRun = runToTermination(
        symModel, solver, prog, {symInit}, cfg.fuel, symOpts);
    if (coverageFailures > 0)
      report("coverage", coverageDetail);
    if (!symRun.done) {
      report("fuel", "symbolic run did not terminate within fuel");
      continue;
    }
    rep.symbolicFinals += static_cast<long>(symRun.configs.size());

    // --- backward completeness -----------------------------------------
    for (const Configuration<SymbolicHeapModel> &symFinal : symRun.configs) {
      std::set<std::string> cover = svarsOf(symFinal);
      std::set<std::string> initVars = svarsOf(symInit);
      cover.insert(initVars.begin(), initVars.end());
      std::size_t wanted = cfg.modelsPerFinal;
      if (cfg.exhaustiveSmall && cover.size() <= 2)
        wanted = cfg.exhaustiveCap;
      auto models = sampleStateModels(solver, symFinal.st, cover, wanted);
      for (const Assignment &env : models) {
        ++rep.bcChecks;
        auto concFinalWant = interpretConfig(env, symFinal);
        auto concInit = interpretConfig(env, symInit);
        if (!concFinalWant || !concInit) {
          report("BC", "model of final configuration does not interpret");
          continue;
        }
        auto script = drawScript(env, symFinal, 0);
        if (!script) {
          report("BC", "model misses allocated symbolic variables");
          continue;
        }
        StepOptions<ConcreteHeapModel> concOpts;
        concOpts.allocCtx.script =
            std::make_shared<const std::vector<Value>>(*script);
        RunResult<ConcreteHeapModel> concRun = runToTermination(
            concModel, solver, prog, {*concInit}, cfg.fuel, concOpts);
        if (!concRun.done || concRun.configs.size() != 1) {
          report("BC", "concrete replay did not terminate deterministically");
          continue;
        }
        Configuration<ConcreteHeapModel> got = concRun.configs[0];
        got.branchId = concFinalWant->branchId; // branch naming differs
        concFinalWant->unverified = got.unverified = false;
        if (!configsEqual(got, *concFinalWant)) {
          std::ostringstream os;
          os << "replay mismatch at symbolic branch " << symFinal.branchId
             << "\n  expected: " << describe(*concFinalWant)
             << "\n  got:      " << describe(got);
          report("BC", os.str());
        }
      }
    }

    // --- forward soundness ----------------------------------------------
    {
      std::set<std::string> initVars = svarsOf(symInit);
      auto [pc, hints] = stateModelQuery(symInit.st);
      auto models = solver.allModels(pc, cfg.modelsPerFinal, hints);
      std::size_t runIdx = 0;
      for (Assignment &m : models) {
        Assignment env = extendAssignment(std::move(m), initVars, hints);
        ++rep.fsChecks;
        auto concInit = interpretConfig(env, symInit);
        if (!concInit)
          continue;
        StepOptions<ConcreteHeapModel> concOpts;
        concOpts.allocCtx.seed = progSeed + runIdx++;
        RunResult<ConcreteHeapModel> concRun = runToTermination(
            concModel, solver, prog, {*concInit}, cfg.fuel, concOpts);
        if (!concRun.done || concRun.configs.size() != 1)
          continue; // concrete divergence cannot witness an FS violation
        const Configuration<ConcreteHeapModel> &concFinal = concRun.configs[0];

        bool matched = false;
        std::string why = "no symbolic final with matching trace";
        for (const Configuration<SymbolicHeapModel> &symFinal :
             symRun.configs) {
          if (symFinal.trace != concFinal.trace)
            continue;
          // Extend the interpretation over the symbolic run's allocations
          // with the concrete draws, in issue order.
          Assignment env2 = env;
          const auto &symLog = symFinal.st.alloc.symVarLog();
          const auto &valLog = concFinal.st.alloc.valueLog();
          if (symLog.size() != valLog.size()) {
            why = "allocation logs differ in length";
            continue;
          }
          bool consistent = true;
          for (std::size_t i = 0; i < symLog.size(); ++i) {
            auto it = env2.find(symLog[i]);
            if (it != env2.end() && it->second != valLog[i]) {
              consistent = false;
              break;
            }
            env2[symLog[i]] = valLog[i];
          }
          if (!consistent) {
            why = "allocation draw conflicts with the interpretation";
            continue;
          }
          auto ctxVal = interpret(env2, symFinal.st.ctx.toExpr());
          if (!ctxVal || !ctxVal->isBool() || !ctxVal->asBool()) {
            why = "final context not satisfied under the extension";
            continue;
          }
          auto want = interpretConfig(env2, symFinal);
          if (!want) {
            why = "symbolic final does not interpret under the extension";
            continue;
          }
          Configuration<ConcreteHeapModel> got = concFinal;
          got.branchId = want->branchId;
          want->unverified = got.unverified = false;
          if (configsEqual(got, *want)) {
            matched = true;
            break;
          }
          why = "interpreted symbolic final differs from the concrete one";
        }
        if (!matched) {
          std::ostringstream os;
          os << "concrete run not covered: " << describe(concFinal) << " ("
             << why << ")";
          report("FS", os.str());
        }
      }
    }
  }
  return rep;
}

} // namespace gil

#endif // GIL_HARNESS_DIFFTEST_HPP

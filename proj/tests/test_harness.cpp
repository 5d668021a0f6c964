//===-- test_harness.cpp - interpretations, diff tests, frames, mutants ---===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gil/harness/conformance.hpp"
#include "gil/harness/difftest.hpp"
#include "gil/harness/frame.hpp"
#include "gil/harness/mutants.hpp"
#include "gil/parser.hpp"

using namespace gil;

TEST_CASE("interpret: expressions, stores, states") {
  Assignment env{{"x", Value::integer(3)}};
  CHECK(*interpret(env, parseSymExprText("#x + 1")) == Value::integer(4));
  CHECK_FALSE(interpret(env, parseSymExprText("#y")).has_value());

  // a state whose context interprets to false is undefined
  State<SymbolicHeapModel> st;
  st.ctx = PathCondition(parseSymExprText("#x = 0"));
  CHECK_FALSE(interpretState(env, st).has_value());
  st.ctx = PathCondition(parseSymExprText("#x = 3"));
  CHECK(interpretState(env, st).has_value());
}

TEST_CASE("sample_models: blocking enumeration") {
  Solver solver;
  SUBCASE("a pinned variable has exactly one model family") {
    auto ms = solver.allModels(PathCondition(parseSymExprText("#i = 1")), 5);
    REQUIRE(ms.size() == 1);
    CHECK(ms[0].at("i") == Value::integer(1));
  }
  SUBCASE("unsat condition has no models") {
    auto ms = solver.allModels(
        PathCondition(parseSymExprText("#b and not(#b)")), 5);
    CHECK(ms.empty());
  }
  SUBCASE("a free boolean has two models") {
    SortHints hints{{"b", Sort::Bool}};
    auto ms = solver.allModels(PathCondition(parseSymExprText("#b or true")),
                               5, hints);
    // #b or true simplifies to true: no variables left
    CHECK(ms.size() == 1);
    auto ms2 = solver.allModels(
        PathCondition(parseSymExprText("#b = #b2 or true")), 8, hints);
    (void)ms2;
    auto ms3 =
        solver.allModels(PathCondition(parseSymExprText("#b or not(#b)")), 5);
    CHECK(ms3.size() == 2);
  }
}

TEST_CASE("interpretations preserve well-formedness on sampled states") {
  Solver solver;
  SymbolicHeapModel model;
  ConcreteHeapModel conc;
  for (std::uint64_t t = 0; t < 30; ++t) {
    Rng rng = Rng::forTrial(21, t);
    GenHeap g = genSymbolicHeap(rng, solver);
    State<SymbolicHeapModel> st;
    st.mem = g.mem;
    st.ctx = g.ctx;
    auto models = sampleStateModels(solver, st, st.ctx.svars(), 3);
    for (const Assignment &env : models) {
      auto cst = interpretState(env, st);
      REQUIRE(cst.has_value());
      CHECK(conc.wf(cst->mem, PathCondition()));
    }
  }
}

TEST_CASE("diff test: clean engine has zero violations on a small corpus") {
  Solver solver;
  SymbolicHeapModel sym;
  ConcreteHeapModel conc;
  DiffConfig cfg;
  cfg.programs = 25;
  cfg.gen.seed = 2024;
  cfg.modelsPerFinal = 2;
  DiffReport rep = diffTest(sym, conc, solver, cfg);
  for (const auto &v : rep.violations) {
    CAPTURE(v.kind);
    CAPTURE(v.detail);
    CAPTURE(v.program);
    CHECK(false);
  }
  CHECK(rep.passed());
  CHECK(rep.bcChecks > 0);
  CHECK(rep.fsChecks > 0);
  CHECK(rep.coverageChecks > 0);
}

TEST_CASE("mutation gate: each planted bug is detected by some suite") {
  Solver solver;
  SUBCASE("dropped neq-branch fails coverage (3.5)") {
    MutantDropNeqBranch mutant;
    auto rep = checkExecModelProps(mutant, solver, 60, 5);
    bool found = false;
    for (auto &p : rep.properties)
      if (p.property == "3.5-coverage" && p.failures > 0)
        found = true;
    CHECK(found);
  }
  SUBCASE("write-on-error fails error transparency (3.6)") {
    MutantWriteOnError mutant;
    auto rep = checkExecModelProps(mutant, solver, 60, 5);
    bool found = false;
    for (auto &p : rep.properties)
      if (p.property == "3.6-error-transparency" && p.failures > 0)
        found = true;
    CHECK(found);
  }
  SUBCASE("duplicate-producing producer fails 3.12/non-duplicability") {
    MutantDuplicateProducer mutant;
    auto rep = checkCompModelProps(mutant, solver, 40, 5);
    bool found = false;
    for (auto &p : rep.properties)
      if ((p.property == "3.12-prod-fails-where-cons-succeeds" ||
           p.property == "derived-non-duplicability" ||
           p.property == "3.8-prod-adds-cpr") &&
          p.failures > 0)
        found = true;
    CHECK(found);
  }
  SUBCASE("weak assume is caught by the differential test") {
    SymbolicHeapModel sym;
    ConcreteHeapModel conc;
    DiffConfig cfg;
    cfg.programs = 20;
    cfg.gen.seed = 31;
    cfg.mutations.weakAssume = true;
    DiffReport rep = diffTest(sym, conc, solver, cfg);
    CHECK_FALSE(rep.passed());
  }
  SUBCASE("dropped goto branch is caught by FS or coverage") {
    SymbolicHeapModel sym;
    ConcreteHeapModel conc;
    DiffConfig cfg;
    cfg.programs = 20;
    cfg.gen.seed = 33;
    cfg.mutations.dropGotoFalse = true;
    DiffReport rep = diffTest(sym, conc, solver, cfg);
    bool fsOrCoverage = false;
    for (const auto &v : rep.violations)
      if (v.kind == "FS" || v.kind == "coverage")
        fsOrCoverage = true;
    CHECK(fsOrCoverage);
  }
  SUBCASE("non-fresh alloc is caught by the freshness property") {
    // direct freshness check over the planted uSym
    Prog p = parseProgram(
        "proc main(x) { a := usym(1); b := usym(1); return [a, b] }");
    ConcreteHeapModel conc;
    StepOptions<ConcreteHeapModel> opts;
    opts.mutations.nonFreshAlloc = true;
    State<ConcreteHeapModel> st;
    st.store["x"] = Value::integer(0);
    auto run = runToTermination(conc, solver, p,
                                {initialConfig<ConcreteHeapModel>(st, "main")},
                                100, opts);
    REQUIRE(run.done);
    REQUIRE(run.configs.size() == 1);
    const Value &ret = run.configs[0].outcomeValue;
    REQUIRE(ret.isList());
    // the two usym batches returned the same location: freshness violated
    CHECK(ret.asList()[0] == ret.asList()[1]);
    // whereas the healthy engine keeps them distinct
    StepOptions<ConcreteHeapModel> clean;
    auto run2 = runToTermination(conc, solver, p,
                                 {initialConfig<ConcreteHeapModel>(st, "main")},
                                 100, clean);
    CHECK(run2.configs[0].outcomeValue.asList()[0] !=
          run2.configs[0].outcomeValue.asList()[1]);
  }
}

TEST_CASE("frame preservation on a small corpus") {
  Solver solver;
  SymbolicHeapModel model;
  FrameConfig cfg;
  cfg.pairs = 20;
  cfg.gen.seed = 77;
  FrameReport rep = checkFrame(model, solver, cfg);
  for (const auto &v : rep.violations) {
    CAPTURE(v.detail);
    CAPTURE(v.program);
    CHECK(false);
  }
  CHECK(rep.passed());
  CHECK(rep.branchesChecked > 0);
}

TEST_CASE("allocator freshness under composed frames (clash repair)") {
  // base allocates l0; a frame that already holds l0 forces the framed run
  // to pick a different name
  State<SymbolicHeapModel> base;
  auto [rec1, locs1] = allocLocations(base.alloc, 1);
  CHECK(locs1[0] == Value::symbol("l0"));
  AllocRecord framed;
  framed.charge(AllocRange::Locations, {Value::symbol("l0")});
  auto [rec2, locs2] = allocLocations(framed, 1);
  CHECK(locs2[0] != Value::symbol("l0"));
}

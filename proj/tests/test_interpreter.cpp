//===-- test_interpreter.cpp - execution semantics tests ------------------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gil/harness/generators.hpp"
#include "gil/interpreter.hpp"
#include "gil/parser.hpp"

using namespace gil;

using CM = ConcreteHeapModel;
using SM = SymbolicHeapModel;

namespace {

Configuration<CM> concInit(const Prog &p, const Value &arg,
                           const std::string &proc = "main") {
  State<CM> st;
  st.store[p.procOf(proc).param] = arg;
  return initialConfig<CM>(std::move(st), proc);
}

Configuration<SM> symInit(const Prog &p, const std::string &inputVar,
                          const std::string &proc = "main") {
  State<SM> st;
  st.alloc.chargeSymVars({inputVar});
  st.store[p.procOf(proc).param] = seVar(inputVar);
  return initialConfig<SM>(std::move(st), proc);
}

} // namespace

TEST_CASE("cmd_at resolves the active frame's procedure") {
  Prog p = parseProgram("proc main(x) { ret := x; return ret }\n"
                        "proc f(y) { return y }");
  CHECK(cmdAt(p, "main", 1).kind == Cmd::Kind::Return);
  CallStack<CM> cs;
  cs.push_back({"main", true, "", {}, 0});
  cs.push_back({"f", false, "r", {}, 2});
  CHECK(cmdAt(p, cs, 0).kind == Cmd::Kind::Return); // f's first command
  CHECK_THROWS_AS(cmdAt(p, "main", 2), EngineFault);
  CHECK_THROWS_AS(cmdAt(p, "nope", 0), EngineFault);
}

TEST_CASE("assignment step updates the store and advances") {
  Prog p = parseProgram("proc main(x) { y := 1; return y }");
  CM m;
  Solver s;
  auto succ = step(m, s, p, concInit(p, Value::integer(0)));
  REQUIRE(succ.size() == 1);
  CHECK(succ[0].idx == 1);
  CHECK(succ[0].st.store.at("y") == Value::integer(1));
  CHECK_FALSE(succ[0].final());
}

TEST_CASE("top return yields a final Normal configuration") {
  Prog p = parseProgram("proc main(x) { return x + 1 }");
  CM m;
  Solver s;
  auto succ = step(m, s, p, concInit(p, Value::integer(4)));
  REQUIRE(succ.size() == 1);
  CHECK(succ[0].final());
  CHECK(succ[0].outcome == OutcomeKind::Normal);
  CHECK(succ[0].outcomeValue == Value::integer(5));
}

TEST_CASE("symbolic if-goto branches on satisfiable guards only") {
  Prog p = parseProgram("proc main(x) { goto [x = 0] 2; y := 1; return 7 }");
  SM m;
  Solver s;
  auto succ = step(m, s, p, symInit(p, "in"));
  REQUIRE(succ.size() == 2);
  CHECK(succ[0].idx == 2); // true branch jumps
  CHECK(succ[1].idx == 1); // false branch falls through
  CHECK(s.entails(succ[0].st.ctx, PathCondition(parseSymExprText("#in = 0"))) ==
        Tri::True);

  // ground guard: only one branch survives
  Prog p2 = parseProgram("proc main(x) { goto [1 = 0] 2; y := 1; return y }");
  auto succ2 = step(m, s, p2, symInit(p2, "in"));
  REQUIRE(succ2.size() == 1);
  CHECK(succ2[0].idx == 1);
}

TEST_CASE("vanish produces no successors") {
  Prog p = parseProgram("proc main(x) { vanish }");
  CM m;
  Solver s;
  CHECK(step(m, s, p, concInit(p, Value::integer(0))).empty());
}

TEST_CASE("fail yields a final Fail with the evaluated payload") {
  Prog p = parseProgram("proc main(x) { fail x + 1 }");
  CM m;
  Solver s;
  auto succ = step(m, s, p, concInit(p, Value::integer(6)));
  REQUIRE(succ.size() == 1);
  CHECK(succ[0].outcome == OutcomeKind::Fail);
  CHECK(succ[0].outcomeValue == Value::integer(7));
}

TEST_CASE("memory action: success writes the result variable, miss is final") {
  Prog p = parseProgram(
      "proc main(x) { ls := usym(1); l := hd(ls); a := <alloc>(l); "
      "v := <load>(l); return v }");
  CM m;
  Solver s;
  RunResult<CM> run =
      runToTermination(m, s, p, {concInit(p, Value::integer(0))}, 100);
  REQUIRE(run.done);
  REQUIRE(run.configs.size() == 1);
  CHECK(run.configs[0].outcome == OutcomeKind::Normal);
  CHECK(run.configs[0].outcomeValue == Value::null());

  Prog p2 = parseProgram("proc main(x) { v := <load>($l0); return v }");
  auto run2 = runToTermination(m, s, p2, {concInit(p2, Value::integer(0))}, 100);
  REQUIRE(run2.configs.size() == 1);
  CHECK(run2.configs[0].outcome == OutcomeKind::Miss);
}

TEST_CASE("call and return restore the caller store") {
  Prog p = parseProgram("proc main(x) { a := 10; r := @inc(a); return r + a }\n"
                        "proc inc(y) { return y + 1 }");
  CM m;
  Solver s;
  RunResult<CM> run =
      runToTermination(m, s, p, {concInit(p, Value::integer(0))}, 100);
  REQUIRE(run.done);
  REQUIRE(run.configs.size() == 1);
  CHECK(run.configs[0].outcome == OutcomeKind::Normal);
  CHECK(run.configs[0].outcomeValue == Value::integer(21));
}

TEST_CASE("collect_step: finals pass through, non-finals are stepped") {
  Prog p = parseProgram("proc main(x) { goto [x = 0] 2; fail 1; return 2 }");
  SM m;
  Solver s;
  std::vector<Configuration<SM>> gen0{symInit(p, "in")};
  auto gen1 = collectStep(m, s, p, gen0);
  REQUIRE(gen1.size() == 2);
  auto gen2 = collectStep(m, s, p, gen1);
  REQUIRE(gen2.size() == 2);
  // one branch is final Fail(1), the other final Normal(2)
  auto gen3 = collectStep(m, s, p, gen2);
  CHECK(gen3.size() == 2);
  CHECK(allFinal(gen3));
  // all-final set is a fixpoint
  auto gen4 = collectStep(m, s, p, gen3);
  CHECK(gen4.size() == gen3.size());
}

TEST_CASE("run_to_termination: fuel exhaustion on loops") {
  Prog p = parseProgram("proc main(x) { goto [true] 0; return 1 }");
  CM m;
  Solver s;
  RunResult<CM> run =
      runToTermination(m, s, p, {concInit(p, Value::integer(0))}, 10);
  CHECK_FALSE(run.done);
}

TEST_CASE("branch count matches a brute-force path enumeration") {
  // oracle: count satisfiable guard combinations by enumeration
  Prog p = parseProgram("proc main(x) {\n"
                        "  goto [x = 0] 3;\n"
                        "  goto [x = 1] 4;\n"
                        "  return 2;\n"
                        "  return 0;\n"
                        "  return 1\n"
                        "}");
  SM m;
  Solver s;
  RunResult<SM> run = runToTermination(m, s, p, {symInit(p, "in")}, 100);
  REQUIRE(run.done);
  // brute force: inputs 0, 1, other — three semantically distinct paths
  CHECK(run.configs.size() == 3);
  // each final is Normal and the return values are 0, 1, 2 in some order
  std::set<std::string> rets;
  for (auto &cf : run.configs) {
    CHECK(cf.outcome == OutcomeKind::Normal);
    rets.insert(cf.outcomeValue.toString());
  }
  CHECK(rets == std::set<std::string>{"0", "1", "2"});
}

TEST_CASE("deterministic concrete runs: same seed, same result") {
  GenConfig gc;
  gc.seed = 11;
  Rng rng(11);
  Prog p = generateProgram(gc, rng);
  CM m;
  Solver s;
  State<CM> st;
  st.store[p.procOf("p0").param] = Value::integer(1);
  StepOptions<CM> opts;
  opts.allocCtx.seed = 99;
  auto r1 = runToTermination(m, s, p, {initialConfig<CM>(st, "p0")}, 2000, opts);
  auto r2 = runToTermination(m, s, p, {initialConfig<CM>(st, "p0")}, 2000, opts);
  REQUIRE(r1.done);
  REQUIRE(r2.done);
  REQUIRE(r1.configs.size() == r2.configs.size());
  for (std::size_t i = 0; i < r1.configs.size(); ++i) {
    CHECK(r1.configs[i].st == r2.configs[i].st);
    CHECK(r1.configs[i].trace == r2.configs[i].trace);
  }
}

TEST_CASE("executed-command trace records proc:index labels") {
  Prog p = parseProgram("proc main(x) { y := 1; return y }");
  CM m;
  Solver s;
  auto run = runToTermination(m, s, p, {concInit(p, Value::integer(0))}, 10);
  REQUIRE(run.done);
  REQUIRE(run.configs.size() == 1);
  CHECK(run.configs[0].trace ==
        std::vector<std::string>{"main:0", "main:1"});
}

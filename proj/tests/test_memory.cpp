//===-- test_memory.cpp - heap instantiation and model-contract tests -----===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gil/harness/conformance.hpp"
#include "gil/heap.hpp"

using namespace gil;

namespace {
SymExpr loc(const std::string &n) { return seLit(Value::symbol(n)); }
Value cloc(const std::string &n) { return Value::symbol(n); }
} // namespace

TEST_CASE("concrete heap: load/store/alloc/free whole-program actions") {
  ConcreteHeapModel m;
  ConcreteHeap h;
  PathCondition tt;

  SUBCASE("load on {l0 -> 1} yields the value, heap unchanged") {
    ConcreteHeap h1 = h.with(cloc("l0"), Value::integer(1));
    auto outs = m.ea(h1, "load", cloc("l0"), tt);
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].result == ActionResult::Success);
    CHECK(outs[0].value == Value::integer(1));
    CHECK(outs[0].mem == h1);
  }
  SUBCASE("load on the empty heap misses") {
    auto outs = m.ea(h, "load", cloc("l0"), tt);
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].result == ActionResult::Missing);
    CHECK(outs[0].mem == h);
  }
  SUBCASE("alloc initialises to null and returns the location") {
    auto outs = m.ea(h, "alloc", cloc("l0"), tt);
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].result == ActionResult::Success);
    CHECK(outs[0].value == cloc("l0"));
    REQUIRE(outs[0].mem.find(cloc("l0")) != nullptr);
    CHECK(*outs[0].mem.find(cloc("l0")) == Value::null());
  }
  SUBCASE("store on the empty heap misses") {
    auto outs =
        m.ea(h, "store", Value::list({cloc("l0"), Value::integer(3)}), tt);
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].result == ActionResult::Missing);
  }
  SUBCASE("free then load is a use-after-free error") {
    ConcreteHeap h1 = h.with(cloc("l0"), Value::integer(1));
    auto freed = m.ea(h1, "free", cloc("l0"), tt);
    REQUIRE(freed.size() == 1);
    REQUIRE(freed[0].result == ActionResult::Success);
    auto outs = m.ea(freed[0].mem, "load", cloc("l0"), tt);
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].result == ActionResult::Error);
  }
  SUBCASE("store into a freed cell is an error") {
    ConcreteHeap h1 = h.with(cloc("l0"), std::nullopt);
    auto outs =
        m.ea(h1, "store", Value::list({cloc("l0"), Value::integer(3)}), tt);
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].result == ActionResult::Error);
  }
  SUBCASE("non-location argument is a non-correctible error") {
    auto outs = m.ea(h, "load", Value::integer(5), tt);
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].result == ActionResult::Error);
  }
}

TEST_CASE("concrete heap: derived getters and setters") {
  ConcreteHeapModel m;
  PathCondition tt;
  ConcreteHeap h7 = ConcreteHeap().with(cloc("l0"), Value::integer(7));

  SUBCASE("getter restores the consumed cell (re-producibility)") {
    auto outs = derivedGetter(m, h7, "cell", {cloc("l0")}, tt);
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].result == ActionResult::Success);
    REQUIRE(outs[0].outs.size() == 1);
    CHECK(outs[0].outs[0] == Value::integer(7));
    CHECK(m.memEqual(outs[0].mem, h7));
  }
  SUBCASE("getter on the empty heap misses, memory intact") {
    auto outs = derivedGetter(m, ConcreteHeap(), "cell", {cloc("l0")}, tt);
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].result == ActionResult::Missing);
    CHECK(outs[0].mem.empty());
  }
  SUBCASE("getter on a freed cell errors") {
    ConcreteHeap hf = ConcreteHeap().with(cloc("l0"), std::nullopt);
    auto outs = derivedGetter(m, hf, "cell", {cloc("l0")}, tt);
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].result == ActionResult::Error);
  }
  SUBCASE("setter overwrites") {
    auto outs =
        derivedSetter(m, h7, "cell", {cloc("l0")}, {Value::integer(9)}, tt);
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].result == ActionResult::Success);
    CHECK(*outs[0].mem.find(cloc("l0")) == Value::integer(9));
  }
  SUBCASE("setter on an absent cell misses") {
    auto outs =
        derivedSetter(m, h7, "cell", {cloc("l5")}, {Value::integer(9)}, tt);
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].result == ActionResult::Missing);
  }
}

TEST_CASE("symbolic heap: consumer branching on aliasing") {
  SymbolicHeapModel m;
  PathCondition tt;

  SUBCASE("syntactic key match gives a single success branch") {
    SymbolicHeap h = SymbolicHeap().withAppended(loc("l1"), seVar("v1"));
    auto outs = m.consume("cell", h, {loc("l1")}, tt);
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].result == ActionResult::Success);
    CHECK(outs[0].mem.empty());
    REQUIRE(outs[0].outs.size() == 1);
    CHECK(outs[0].outs[0] == seVar("v1"));
  }
  SUBCASE("symbolic key splits into success and missing branches") {
    SymbolicHeap h = SymbolicHeap().withAppended(loc("l1"), seVar("v1"));
    auto outs = m.consume("cell", h, {seVar("x")}, tt);
    REQUIRE(outs.size() == 2);
    CHECK(outs[0].result == ActionResult::Success);
    CHECK(outs[1].result == ActionResult::Missing);
    // disjoint + covering
    Solver solver;
    CHECK(solver.sat(outs[0].ctx.conjoin(outs[1].ctx)).verdict ==
          Verdict::Unsat);
    CHECK(solver.entails(tt, PathCondition(seOr(outs[0].ctx.toExpr(),
                                                outs[1].ctx.toExpr()))) ==
          Tri::True);
  }
  SUBCASE("freed binding match is a use-after-free error") {
    SymbolicHeap h = SymbolicHeap().withAppended(loc("l1"), std::nullopt);
    auto outs = m.consume("cell", h, {loc("l1")}, tt);
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].result == ActionResult::Error);
    CHECK(m.memEqual(outs[0].mem, h));
  }
}

TEST_CASE("symbolic heap: producer branching and duplication") {
  SymbolicHeapModel m;
  PathCondition tt;

  SUBCASE("producing into the empty heap succeeds unconditionally") {
    auto outs = m.produce("cell", SymbolicHeap(), {loc("l0")}, {seInt(5)}, tt);
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].result == ActionResult::Success);
    CHECK(outs[0].ctx == tt);
    REQUIRE(outs[0].mem.bindings().size() == 1);
  }
  SUBCASE("duplicate location is an error") {
    SymbolicHeap h = SymbolicHeap().withAppended(loc("l0"), seInt(5));
    auto outs = m.produce("cell", h, {loc("l0")}, {seInt(7)}, tt);
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].result == ActionResult::Error);
  }
  SUBCASE("symbolic location splits into success and duplication branches") {
    SymbolicHeap h = SymbolicHeap().withAppended(loc("l0"), seInt(5));
    auto outs = m.produce("cell", h, {seVar("x")}, {seInt(7)}, tt);
    REQUIRE(outs.size() == 2);
    CHECK(outs[0].result == ActionResult::Error);   // x = l0
    CHECK(outs[1].result == ActionResult::Success); // x != l0
  }
}

TEST_CASE("symbolic heap: freed predicate consumers/producers") {
  SymbolicHeapModel m;
  PathCondition tt;
  SUBCASE("cons_freed consumes the marker") {
    SymbolicHeap h = SymbolicHeap().withAppended(loc("l0"), std::nullopt);
    auto outs = m.consume("freed", h, {loc("l0")}, tt);
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].result == ActionResult::Success);
    CHECK(outs[0].mem.empty());
    CHECK(outs[0].outs.empty());
  }
  SUBCASE("cons_freed on the empty heap misses") {
    auto outs = m.consume("freed", SymbolicHeap(), {loc("l0")}, tt);
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].result == ActionResult::Missing);
  }
  SUBCASE("prod_freed adds the marker") {
    auto outs = m.produce("freed", SymbolicHeap(), {loc("l0")}, {}, tt);
    REQUIRE(outs.size() == 1);
    REQUIRE(outs[0].mem.bindings().size() == 1);
    CHECK_FALSE(outs[0].mem.bindings()[0].val.has_value());
  }
}

TEST_CASE("symbolic load splits on aliasing with equality branching") {
  SymbolicHeapModel m;
  PathCondition tt;
  SymbolicHeap h = SymbolicHeap().withAppended(loc("l1"), seVar("v"));
  auto outs = m.ea(h, "load", seVar("x"), tt);
  REQUIRE(outs.size() == 2);
  CHECK(outs[0].result == ActionResult::Success);
  CHECK(outs[0].value == seVar("v"));
  CHECK(outs[1].result == ActionResult::Missing);
}

TEST_CASE("renaming equivariance on heaps") {
  Renaming al;
  al.addLocation("l0", "l1");
  SUBCASE("renames concrete heap keys and values") {
    ConcreteHeap h = ConcreteHeap().with(cloc("l0"), Value::integer(5));
    ConcreteHeap renamed = renameHeap(al, h);
    CHECK(renamed.contains(cloc("l1")));
    CHECK_FALSE(renamed.contains(cloc("l0")));
  }
  SUBCASE("identity renaming is a no-op") {
    Renaming id;
    SymbolicHeap h = SymbolicHeap().withAppended(loc("l0"), seVar("v"));
    CHECK(renameHeap(id, h).equalsNormalized(h));
  }
  SUBCASE("inverse undoes the renaming") {
    SymbolicHeap h = SymbolicHeap().withAppended(loc("l0"), seVar("v"));
    CHECK(renameHeap(al.inverse(), renameHeap(al, h)).equalsNormalized(h));
  }
  SUBCASE("sort violations are rejected") {
    Renaming bad;
    CHECK_THROWS_AS(bad.addLocation("l0", "foo"), EngineFault);
    Renaming dup;
    dup.addLocation("l0", "l2");
    CHECK_THROWS_AS(dup.addLocation("l1", "l2"), EngineFault); // not injective
  }
}

TEST_CASE("memory interpretation") {
  SUBCASE("interprets keys and values") {
    Assignment env{{"x", cloc("l0")}};
    SymbolicHeap h = SymbolicHeap().withAppended(seVar("x"), seInt(1));
    auto got = interpretHeap(env, h);
    REQUIRE(got.has_value());
    CHECK(*got->find(cloc("l0")) == Value::integer(1));
  }
  SUBCASE("aliasing keys make the interpretation undefined") {
    Assignment env{{"x", cloc("l0")}, {"y", cloc("l0")}};
    SymbolicHeap h = SymbolicHeap()
                         .withAppended(seVar("x"), seInt(1))
                         .withAppended(seVar("y"), seInt(2));
    CHECK_FALSE(interpretHeap(env, h).has_value());
  }
  SUBCASE("non-location key images make the interpretation undefined") {
    Assignment env{{"x", Value::integer(3)}};
    SymbolicHeap h = SymbolicHeap().withAppended(seVar("x"), seInt(1));
    CHECK_FALSE(interpretHeap(env, h).has_value());
  }
}

TEST_CASE("conformance smoke run: both heap variants pass the suites") {
  Solver solver;
  SymbolicHeapModel sm;
  ConcreteHeapModel cm;
  auto repExec = checkExecModelProps(sm, solver, 40, 7);
  INFO(repExec.summary());
  CHECK(repExec.allPassed());
  auto repExecC = checkExecModelProps(cm, solver, 40, 7);
  INFO(repExecC.summary());
  CHECK(repExecC.allPassed());
  auto repComp = checkCompModelProps(sm, solver, 25, 7);
  INFO(repComp.summary());
  CHECK(repComp.allPassed());
  auto repCompC = checkCompModelProps(cm, solver, 25, 7);
  INFO(repCompC.summary());
  CHECK(repCompC.allPassed());
}

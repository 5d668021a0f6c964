//===-- test_state.cpp - state model unit tests ---------------------------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gil/heap.hpp"
#include "gil/interpreter.hpp"
#include "gil/parser.hpp"
#include "gil/state.hpp"

using namespace gil;

using CM = ConcreteHeapModel;
using SM = SymbolicHeapModel;

TEST_CASE("eval_expr: concrete big-step evaluation") {
  StoreOf<Value> store;
  CHECK(evalExpr<CM>(parseExprText("2 + 3"), store) == Value::integer(5));
  CHECK(evalExpr<CM>(parseExprText("hd([1, 2])"), store) == Value::integer(1));
  store["x"] = Value::integer(7);
  CHECK(evalExpr<CM>(parseExprText("x * 2"), store) == Value::integer(14));
  CHECK_THROWS_AS(evalExpr<CM>(parseExprText("y"), store), EngineFault);
  CHECK_THROWS_AS(evalExpr<CM>(parseExprText("1 + true"), store), EngineFault);
}

TEST_CASE("eval_expr: symbolic evaluation substitutes and simplifies") {
  StoreOf<SymExpr> store;
  store["x"] = simplify(SymExpr::binary(BinOp::Add, seVar("a"), seInt(1)));
  SymExpr got = evalExpr<SM>(parseExprText("x"), store);
  CHECK(got == parseSymExprText("#a + 1"));
  // ground subterms fold
  StoreOf<SymExpr> store2;
  store2["y"] = seInt(2);
  CHECK(evalExpr<SM>(parseExprText("y + 3"), store2) == seInt(5));
}

TEST_CASE("ea_state: assume table rows") {
  SM model;
  Solver solver;
  State<SM> st; // empty heap, ctx true
  auto assume = saAssume<SM>(solver);

  SUBCASE("satisfiable context is conjoined") {
    auto outs = assume(st, seVar("b"));
    REQUIRE(outs.size() == 1);
    CHECK(outs[0].st.ctx.toExpr() == seVar("b"));
    CHECK(outs[0].result == ActionResult::Success);
  }
  SUBCASE("unsat branch is dropped") {
    auto outs = assume(st, seFalse());
    CHECK(outs.empty());
  }
  SUBCASE("concrete assume") {
    CM cmodel;
    State<CM> cst;
    auto cassume = saAssume<CM>(solver);
    CHECK(cassume(cst, Value::boolean(true)).size() == 1);
    CHECK(cassume(cst, Value::boolean(false)).empty());
  }
}

TEST_CASE("ea_state: uSym allocates fresh locations and extends the record") {
  State<SM> st;
  auto outs = saUSym<SM>()(st, seInt(2));
  REQUIRE(outs.size() == 1);
  std::vector<SymExpr> locs;
  REQUIRE(splitListTerm(outs[0].value, locs));
  REQUIRE(locs.size() == 2);
  CHECK(locs[0] != locs[1]);
  CHECK(outs[0].st.alloc.locations().size() == 2);
  // a second allocation avoids the first
  auto outs2 = saUSym<SM>()(outs[0].st, seInt(1));
  std::vector<SymExpr> locs2;
  REQUIRE(splitListTerm(outs2[0].value, locs2));
  CHECK(locs2[0] != locs[0]);
  CHECK(locs2[0] != locs[1]);
}

TEST_CASE("ea_state: iSym symbolic allocates fresh symbolic variables") {
  State<SM> st;
  st.alloc.chargeSymVars({"x0"});
  auto outs = saISym<SM>(AllocCtx{})(st, seInt(1));
  REQUIRE(outs.size() == 1);
  std::vector<SymExpr> vars;
  REQUIRE(splitListTerm(outs[0].value, vars));
  REQUIRE(vars.size() == 1);
  CHECK(vars[0].isVar());
  CHECK(vars[0].varName() != "x0");
}

TEST_CASE("compose_seq matches a manual two-step run") {
  CM model;
  State<CM> st;
  st.store["x"] = Value::integer(3);
  auto act =
      composeSeq<CM>(saEval<CM>(parseExprText("x + 1")), saSetVar<CM>("y"));
  auto outs = act(st, Value::boolean(true));
  REQUIRE(outs.size() == 1);
  CHECK(outs[0].st.store.at("y") == Value::integer(4));

  // oracle: inline the two steps by hand
  auto e1 = saEval<CM>(parseExprText("x + 1"))(st, Value::boolean(true));
  REQUIRE(e1.size() == 1);
  auto e2 = saSetVar<CM>("y")(e1[0].st, e1[0].value);
  REQUIRE(e2.size() == 1);
  CHECK(e2[0].st.store == outs[0].st.store);
}

TEST_CASE("compose_seq short-circuits on non-success") {
  SM model;
  State<SM> st; // empty heap: load misses
  auto act = composeSeq<SM>(saMemAction<SM>(model, "load"),
                            saSetVar<SM>("y"));
  auto outs = act(st, seLit(Value::symbol("l0")));
  REQUIRE(outs.size() == 1);
  CHECK(outs[0].result == ActionResult::Missing);
  CHECK(outs[0].st.store.count("y") == 0);
}

TEST_CASE("compose_pair pairs values and uses undefined on failure") {
  CM model;
  State<CM> st;
  st.store["x"] = Value::integer(1);
  auto act = composePair<CM>(saEval<CM>(parseExprText("x")),
                             saEval<CM>(parseExprText("x + 1")));
  Value arg = Value::list({Value::boolean(true), Value::boolean(true)});
  auto outs = act(st, arg);
  REQUIRE(outs.size() == 1);
  CHECK(outs[0].value ==
        Value::list({Value::integer(1), Value::integer(2)}));
}

TEST_CASE("compose_states: unit, store clash, heap overlap") {
  SM model;
  State<SM> st;
  st.store["x"] = seInt(1);
  st.mem = st.mem.withAppended(seLit(Value::symbol("l0")), seInt(5));

  SUBCASE("unit is neutral") {
    auto got = composeStates(model, st, unitState(model));
    REQUIRE(got.has_value());
    CHECK(got->store == st.store);
    CHECK(model.memEqual(got->mem, st.mem));
  }
  SUBCASE("two non-empty stores do not compose") {
    State<SM> st2;
    st2.store["y"] = seInt(2);
    CHECK_FALSE(composeStates(model, st, st2).has_value());
  }
  SUBCASE("overlapping heap cells do not compose") {
    State<SM> st2;
    st2.mem = st2.mem.withAppended(seLit(Value::symbol("l0")), seInt(9));
    CHECK_FALSE(composeStates(model, st, st2).has_value());
  }
}

TEST_CASE("store serialization round-trips sorted by name") {
  StoreOf<SymExpr> store;
  store["b"] = seVar("v");
  store["a"] = seInt(3);
  SymExpr ser = serializeStore(store);
  CHECK(deserializeStore(ser) == store);

  StoreOf<Value> cstore;
  cstore["z"] = Value::string("hi");
  cstore["a"] = Value::integer(1);
  Value cser = serializeStore(cstore);
  REQUIRE(cser.isList());
  CHECK(cser.asList()[0].asList()[0] == Value::string("a")); // sorted
  CHECK(deserializeStore(cser) == cstore);
}

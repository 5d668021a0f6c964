//===-- generators.hpp - random inputs for the property suites ------------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//

#ifndef GIL_HARNESS_GENERATORS_HPP
#define GIL_HARNESS_GENERATORS_HPP

#include "gil/heap.hpp"
#include "gil/program.hpp"
#include "gil/solver.hpp"
#include "gil/state.hpp"

#include <random>
#include <string>
#include <vector>

namespace gil {

/// Deterministic RNG wrapper; all harness randomness flows through this.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : base_(seed), eng_(seed) {}

  std::uint64_t u64() { return eng_(); }
  int range(int lo, int hi) { // inclusive
    return lo + static_cast<int>(u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool chance(double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(eng_) < p;
  }
  template <class T> const T &pick(const std::vector<T> &v) {
    return v[u64() % v.size()];
  }
  /// Derives a child seed; keeps per-trial runs reproducible regardless of
  /// scheduling.
  std::uint64_t child(std::uint64_t i) const {
    std::uint64_t x = base_ ^ (0x9e3779b97f4a7c15ULL * (i + 1));
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    return x ^ (x >> 27);
  }

  static Rng forTrial(std::uint64_t rootSeed, std::uint64_t trial) {
    Rng r(rootSeed);
    return Rng(r.child(trial));
  }

private:
  std::uint64_t base_ = 0;
  std::mt19937_64 eng_;
};

//===----------------------------------------------------------------------===//
// Values and terms
//===----------------------------------------------------------------------===//

inline Value genScalarValue(Rng &rng) {
  switch (rng.range(0, 3)) {
  case 0: return Value::integer(rng.range(-3, 4));
  case 1: return Value::boolean(rng.chance(0.5));
  case 2: return Value::string(rng.chance(0.5) ? "a" : "b");
  default: return Value::symbol(rng.chance(0.5) ? "null" : "u0");
  }
}

inline Value genValue(Rng &rng, int depth = 0) {
  if (depth < 1 && rng.chance(0.2)) {
    Value::List l;
    int n = rng.range(0, 3);
    for (int i = 0; i < n; ++i)
      l.push_back(genValue(rng, depth + 1));
    return Value::list(std::move(l));
  }
  return genScalarValue(rng);
}

/// Integer-sorted term over the given variables.
inline SymExpr genIntTerm(Rng &rng, const std::vector<std::string> &vars,
                          int depth = 0) {
  if (depth >= 2 || vars.empty() || rng.chance(0.4))
    return vars.empty() || rng.chance(0.5) ? seInt(rng.range(-2, 3))
                                           : seVar(rng.pick(vars));
  BinOp op = rng.chance(0.6) ? BinOp::Add : (rng.chance(0.5) ? BinOp::Sub
                                                             : BinOp::Mul);
  return SymExpr::binary(op, genIntTerm(rng, vars, depth + 1),
                         genIntTerm(rng, vars, depth + 1));
}

/// Boolean literal (an atom or its negation) over integer variables.
inline SymExpr genBoolLiteral(Rng &rng, const std::vector<std::string> &vars) {
  BinOp cmp;
  switch (rng.range(0, 3)) {
  case 0: cmp = BinOp::Eq; break;
  case 1: cmp = BinOp::Lt; break;
  case 2: cmp = BinOp::Leq; break;
  default: cmp = BinOp::Gt; break;
  }
  SymExpr atom =
      SymExpr::binary(cmp, genIntTerm(rng, vars), genIntTerm(rng, vars));
  return rng.chance(0.3) ? seNot(atom) : atom;
}

//===----------------------------------------------------------------------===//
// Heaps
//===----------------------------------------------------------------------===//

struct GenHeap {
  SymbolicHeap mem;
  PathCondition ctx;
};

/// A symbolic heap together with a context that entails pairwise key
/// distinctness (the invariant execution maintains), guaranteed satisfiable.
inline GenHeap genSymbolicHeap(Rng &rng, const Solver &solver,
                               int maxBindings = 3) {
  for (int attempt = 0; attempt < 20; ++attempt) {
    GenHeap g;
    int n = rng.range(0, maxBindings);
    std::vector<SymExpr> keys;
    int litIdx = 0, varIdx = 0;
    for (int i = 0; i < n; ++i) {
      SymExpr key = rng.chance(0.6)
                        ? seLit(Value::symbol("l" + std::to_string(litIdx++)))
                        : seVar("k" + std::to_string(varIdx++));
      keys.push_back(key);
      std::optional<SymExpr> val;
      if (!rng.chance(0.25)) { // cell
        switch (rng.range(0, 2)) {
        case 0: val = seInt(rng.range(-2, 3)); break;
        case 1: val = seVar("v" + std::to_string(i)); break;
        default: val = seLit(Value::boolean(rng.chance(0.5))); break;
        }
      }
      g.mem = g.mem.withAppended(key, val);
    }
    for (std::size_t i = 0; i < keys.size(); ++i)
      for (std::size_t j = i + 1; j < keys.size(); ++j)
        g.ctx = g.ctx.conjoin(seNeq(keys[i], keys[j]));
    if (rng.chance(0.3))
      g.ctx = g.ctx.conjoin(genBoolLiteral(rng, {"a0"}));
    if (solver.sat(g.ctx).verdict == Verdict::Sat)
      return g;
  }
  return {};
}

inline ConcreteHeap genConcreteHeap(Rng &rng, int maxBindings = 3) {
  ConcreteHeap h;
  int n = rng.range(0, maxBindings);
  for (int i = 0; i < n; ++i) {
    Value loc = Value::symbol("l" + std::to_string(i));
    if (rng.chance(0.25))
      h = h.with(loc, std::nullopt);
    else
      h = h.with(loc, genScalarValue(rng));
  }
  return h;
}

//===----------------------------------------------------------------------===//
// Programs
//===----------------------------------------------------------------------===//

/// Bounds for generated programs. Loop-free generation only emits forward
/// goto targets, so termination under fuel is guaranteed.
struct GenConfig {
  std::size_t maxCmds = 25;
  std::size_t maxProcs = 3;
  double branchChance = 0.25;
  std::uint64_t seed = 0;
  bool loopFree = true;
  bool allowVanish = false;
  double failChance = 0.08;
  double memChance = 0.5; // how memory-action-heavy programs are
};

namespace detail_gen {

struct VarEnv {
  std::vector<std::string> ints;    // integer-valued variables
  std::vector<std::string> bools;   // boolean-valued
  std::vector<std::string> locs;    // location-valued
  std::vector<std::string> opaques; // load/isym results: equality-only use
  int next = 0;
  std::string fresh() { return "t" + std::to_string(next++); }
};

inline Expr toExpr(const SymExpr &se) {
  // generators build int terms as SymExpr over program-variable names
  switch (se.kind()) {
  case SymExpr::Kind::Lit: return Expr::lit(se.value());
  case SymExpr::Kind::Var: return Expr::var(se.varName());
  case SymExpr::Kind::Unary: return Expr::unary(se.unOp(), toExpr(se.left()));
  case SymExpr::Kind::Binary:
    return Expr::binary(se.binOp(), toExpr(se.left()), toExpr(se.right()));
  }
  throw EngineFault("bad term");
}

inline Expr genIntExpr(Rng &rng, const VarEnv &env) {
  return toExpr(genIntTerm(rng, env.ints));
}

inline Expr genGuard(Rng &rng, const VarEnv &env) {
  if (!env.bools.empty() && rng.chance(0.25))
    return Expr::var(rng.pick(env.bools));
  // opaque values (loads, isym draws) may only be compared by equality,
  // which is total across sorts
  if (!env.opaques.empty() && rng.chance(0.4)) {
    Expr lhs = Expr::var(rng.pick(env.opaques));
    Expr rhs = rng.chance(0.3) && env.opaques.size() > 1
                   ? Expr::var(rng.pick(env.opaques))
                   : Expr::lit(Value::integer(rng.range(-1, 2)));
    Expr eq = Expr::binary(BinOp::Eq, lhs, rhs);
    return rng.chance(0.3) ? Expr::unary(UnOp::Not, eq) : eq;
  }
  return toExpr(genBoolLiteral(rng, env.ints));
}

} // namespace detail_gen

/// Generates one loop-free program: procedures p0 (entry) .. p{k-1}, calls
/// only to higher-indexed procedures, every body ending in a return.
inline Prog generateProgram(const GenConfig &cfg, Rng &rng) {
  using namespace detail_gen;
  Prog prog;
  std::size_t nProcs = 1 + rng.u64() % cfg.maxProcs;
  std::size_t budget = cfg.maxCmds;
  for (std::size_t pi = 0; pi < nProcs; ++pi) {
    Proc proc;
    proc.name = "p" + std::to_string(pi);
    proc.param = "x";
    VarEnv env;
    env.ints.push_back("x");
    std::size_t maxBody =
        std::min<std::size_t>(budget / (nProcs - pi), cfg.maxCmds / nProcs + 2);
    std::size_t nBody = 2 + rng.u64() % std::max<std::size_t>(maxBody, 3);

    std::vector<Cmd> body;
    while (body.size() + 1 < nBody) {
      std::size_t i = body.size();
      int kind = rng.range(0, 99);
      if (kind < 30) {
        std::string v = env.fresh();
        if (rng.chance(0.75)) {
          body.push_back(Cmd::assign(v, genIntExpr(rng, env)));
          env.ints.push_back(v);
        } else {
          body.push_back(Cmd::assign(v, genGuard(rng, env)));
          env.bools.push_back(v);
        }
      } else if (kind < 30 + static_cast<int>(cfg.branchChance * 100) &&
                 i + 2 < nBody) {
        std::size_t target =
            i + 2 + rng.u64() % std::max<std::size_t>(nBody - i - 2, 1);
        body.push_back(Cmd::ifGoto(genGuard(rng, env), target));
      } else if (kind < 78 && rng.chance(cfg.memChance)) {
        switch (rng.range(0, 4)) {
        case 0: { // usym + bind location
          std::string ls = env.fresh(), l = env.fresh();
          body.push_back(Cmd::uSym(ls, Expr::lit(Value::integer(1))));
          body.push_back(
              Cmd::assign(l, Expr::unary(UnOp::Head, Expr::var(ls))));
          env.locs.push_back(l);
          break;
        }
        case 1: { // isym + bind value (opaque: any GIL value may come back)
          std::string vs = env.fresh(), v = env.fresh();
          body.push_back(Cmd::iSym(vs, Expr::lit(Value::integer(1))));
          body.push_back(
              Cmd::assign(v, Expr::unary(UnOp::Head, Expr::var(vs))));
          env.opaques.push_back(v);
          break;
        }
        case 2: {
          if (env.locs.empty())
            break;
          std::string r = env.fresh();
          body.push_back(
              Cmd::memAction(r, "alloc", Expr::var(rng.pick(env.locs))));
          env.locs.push_back(r);
          break;
        }
        case 3: {
          if (env.locs.empty())
            break;
          std::string r = env.fresh();
          const std::string &l = rng.pick(env.locs);
          if (rng.chance(0.5)) {
            body.push_back(Cmd::memAction(r, "load", Expr::var(l)));
            env.opaques.push_back(r);
          } else {
            Expr stored = !env.opaques.empty() && rng.chance(0.3)
                              ? Expr::var(rng.pick(env.opaques))
                              : genIntExpr(rng, env);
            Expr pair = Expr::binary(
                BinOp::Cons, Expr::var(l),
                Expr::binary(BinOp::Cons, stored, Expr::lit(Value::nil())));
            body.push_back(Cmd::memAction(r, "store", pair));
          }
          break;
        }
        default: {
          if (env.locs.empty())
            break;
          std::string r = env.fresh();
          body.push_back(
              Cmd::memAction(r, "free", Expr::var(rng.pick(env.locs))));
          break;
        }
        }
      } else if (kind < 88 && pi + 1 < nProcs) {
        std::string r = env.fresh();
        std::size_t callee = pi + 1 + rng.u64() % (nProcs - pi - 1);
        body.push_back(Cmd::call(
            r, Expr::lit(Value::procId("p" + std::to_string(callee))),
            genIntExpr(rng, env)));
        env.opaques.push_back(r); // callees may return non-integers

      } else if (rng.chance(cfg.failChance)) {
        body.push_back(Cmd::fail(genIntExpr(rng, env)));
      } else if (cfg.allowVanish && rng.chance(0.05)) {
        body.push_back(Cmd::vanish());
      } else {
        std::string v = env.fresh();
        body.push_back(Cmd::assign(v, genIntExpr(rng, env)));
        env.ints.push_back(v);
      }
    }
    if (!env.opaques.empty() && rng.chance(0.3))
      body.push_back(Cmd::ret(Expr::var(rng.pick(env.opaques))));
    else
      body.push_back(Cmd::ret(genIntExpr(rng, env)));
    // clamp goto targets into range (generation may have shortened plans)
    for (Cmd &c : body)
      if (c.kind == Cmd::Kind::IfGoto && c.target >= body.size())
        c.target = body.size() - 1;

    // Prologue: initialise every variable up front, so forward jumps can
    // never skip a definition. Location variables draw from one usym batch.
    std::vector<Cmd> prologue;
    if (!env.locs.empty()) {
      prologue.push_back(Cmd::uSym(
          "ps", Expr::lit(Value::integer(
                    static_cast<long long>(env.locs.size())))));
      for (std::size_t i = 0; i < env.locs.size(); ++i)
        prologue.push_back(Cmd::assign(
            env.locs[i],
            Expr::binary(BinOp::LNth, Expr::var("ps"),
                         Expr::lit(Value::integer(
                             static_cast<long long>(i))))));
    }
    for (const std::string &v : env.ints)
      if (v != "x")
        prologue.push_back(Cmd::assign(v, Expr::lit(Value::integer(0))));
    for (const std::string &v : env.bools)
      prologue.push_back(Cmd::assign(v, Expr::lit(Value::boolean(false))));
    for (const std::string &v : env.opaques)
      prologue.push_back(Cmd::assign(v, Expr::lit(Value::integer(0))));
    std::size_t shift = prologue.size();
    for (Cmd &c : body)
      if (c.kind == Cmd::Kind::IfGoto)
        c.target += shift;
    prologue.insert(prologue.end(), body.begin(), body.end());
    body = std::move(prologue);

    budget -= std::min(budget, body.size());
    prog.procs.emplace(proc.name, Proc{proc.name, proc.param, std::move(body)});
  }
  return prog;
}

} // namespace gil

#endif // GIL_HARNESS_GENERATORS_HPP

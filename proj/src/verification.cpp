//===-- verification.cpp --------------------------------------------------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "gil/verification.hpp"

namespace gil {

std::vector<CheckIssue> checkSpecTable(const Prog &p, const Solver &solver) {
  std::vector<CheckIssue> issues;
  for (const auto &[f, spec] : p.specs) {
    if (!p.procs.count(f)) {
      issues.push_back({true, f, 0, "spec refers to unknown procedure"});
      continue;
    }
    std::set<std::string> preVars = spec.pre.svars();
    preVars.insert(spec.param);
    std::set<std::string> postVars = spec.post.svars();
    std::set<std::string> retVars = spec.ret.vars();
    for (const std::string &v : retVars)
      if (!preVars.count(v) && !postVars.count(v))
        issues.push_back({true, f, 0,
                          "return expression mentions #" + v +
                              ", which is in neither pre nor post"});

    // pi_pre => pi_post: the post cannot cut paths through its pure part.
    bool pureExistential = false;
    for (const std::string &v : spec.post.pure.vars())
      if (!preVars.count(v))
        pureExistential = true;
    if (!pureExistential) {
      Tri ok = solver.entails(PathCondition(spec.pre.pure),
                              PathCondition(spec.post.pure));
      if (ok == Tri::False)
        issues.push_back({true, f, 0,
                          "pure post-condition is not implied by the pure "
                          "pre-condition (path-cutting spec)"});
      else if (ok == Tri::Unknown)
        issues.push_back({true, f, 0,
                          "pure pre/post entailment is outside the decidable "
                          "fragment"});
    } else {
      // Existentials in the pure part: check that every model of the pre
      // extends to the post (bounded enumeration).
      auto models = solver.allModels(PathCondition(spec.pre.pure), 32);
      bool bad = false, unknown = false;
      for (const Assignment &m : models) {
        PathCondition q = PathCondition(spec.post.pure);
        for (const auto &[v, val] : m)
          q = q.substitute({{v, seLit(val)}});
        SolverResult r = solver.sat(q);
        if (r.verdict == Verdict::Unsat)
          bad = true;
        else if (r.verdict == Verdict::Unknown)
          unknown = true;
      }
      if (models.size() >= 32)
        unknown = true;
      if (bad)
        issues.push_back({true, f, 0,
                          "pure post-condition cuts paths allowed by the "
                          "pre-condition"});
      else if (unknown)
        issues.push_back({true, f, 0,
                          "pure pre/post entailment could not be decided"});
    }
  }
  return issues;
}

} // namespace gil

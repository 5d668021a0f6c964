//===-- allocator.hpp - allocation records and fresh-value allocation ----===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===---------------------------------------------------------------------===//

#ifndef GIL_ALLOCATOR_HPP
#define GIL_ALLOCATOR_HPP

#include "gil/term.hpp"
#include "gil/value.hpp"

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace gil {

/// Allocation ranges used by the engine: memory locations, symbolic
/// variables, and arbitrary GIL values.
enum class AllocRange : std::uint8_t { Locations, SymVars, Values };

const char *allocRangeName(AllocRange r);

/// Per-run allocation context: the seed driving Fresh(Values) draws and an
/// optional prescribed-draw script used by differential replays (any choice
/// is a legal Fresh(Values) instance, so scripting picks the witness).
struct AllocCtx {
  std::uint64_t seed = 0;
  int valueDomainSize = 8;
  std::shared_ptr<const std::vector<Value>> script;
};

/// An allocation record: which values have been handed out from each range.
/// Records also keep the order in which symbolic variables and values were
/// issued; the order is bookkeeping for replays and does not participate in
/// record equality.
class AllocRecord {
public:
  AllocRecord() = default;

  bool hasRange(AllocRange r) const;
  /// The allocated set of a range (empty when the range is absent).
  const std::set<Value> &locations() const { return locs_; }
  const std::set<std::string> &symVars() const { return symvars_; }
  const std::set<Value> &values() const { return values_; }

  /// Issue order of symbolic variables / values (suffix alignment is what
  /// differential replays rely on).
  const std::vector<std::string> &symVarLog() const { return symvarLog_; }
  const std::vector<Value> &valueLog() const { return valueLog_; }

  /// Pre-charges a range with already-known names (e.g. the svars of a
  /// pre-condition, or the locations mentioned by a program).
  void charge(AllocRange r, const std::set<Value> &vs);
  void chargeSymVars(const std::set<std::string> &names);

  bool operator==(const AllocRecord &o) const {
    return present_ == o.present_ && locs_ == o.locs_ &&
           symvars_ == o.symvars_ && values_ == o.values_;
  }
  bool operator!=(const AllocRecord &o) const { return !(*this == o); }

  std::string toString() const;

  friend AllocRecord composeRecords(const AllocRecord &a, const AllocRecord &b);
  friend std::pair<AllocRecord, std::vector<Value>>
  allocLocations(const AllocRecord &rec, std::size_t k);
  friend std::pair<AllocRecord, std::vector<std::string>>
  allocSymVars(const AllocRecord &rec, std::size_t k);
  friend std::pair<AllocRecord, std::vector<Value>>
  allocValues(const AllocRecord &rec, std::size_t k, const AllocCtx &ctx);

private:
  std::uint8_t present_ = 0; // bitmask over AllocRange
  std::set<Value> locs_;
  std::set<std::string> symvars_;
  std::set<Value> values_;
  std::vector<std::string> symvarLog_;
  std::vector<Value> valueLog_;
};

/// Fresh locations: l0, l1, ... skipping anything already in the record.
/// The returned locations are pairwise distinct and not in the input record.
std::pair<AllocRecord, std::vector<Value>> allocLocations(const AllocRecord &rec,
                                                          std::size_t k);

/// Fresh symbolic variables: x0, x1, ... with the same freshness guarantee.
std::pair<AllocRecord, std::vector<std::string>>
allocSymVars(const AllocRecord &rec, std::size_t k);

/// Fresh(Values): arbitrary values, repeats allowed. Draws follow ctx.script
/// when present, otherwise a seeded deterministic pick over a small universe
/// (ints of the solver domain, booleans, short strings, allocated locations).
std::pair<AllocRecord, std::vector<Value>> allocValues(const AllocRecord &rec,
                                                       std::size_t k,
                                                       const AllocCtx &ctx);

/// Record composition: pointwise union of ranges.
AllocRecord composeRecords(const AllocRecord &a, const AllocRecord &b);

} // namespace gil

#endif // GIL_ALLOCATOR_HPP

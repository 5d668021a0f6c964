//===-- allocator.cpp -----------------------------------------------------===//
//
// Part of the gil project, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "gil/allocator.hpp"

#include <sstream>

namespace gil {

const char *allocRangeName(AllocRange r) {
  switch (r) {
  case AllocRange::Locations: return "locations";
  case AllocRange::SymVars: return "symvars";
  case AllocRange::Values: return "values";
  }
  return "?";
}

static std::uint8_t bitOf(AllocRange r) {
  return static_cast<std::uint8_t>(1u << static_cast<unsigned>(r));
}

bool AllocRecord::hasRange(AllocRange r) const { return present_ & bitOf(r); }

void AllocRecord::charge(AllocRange r, const std::set<Value> &vs) {
  present_ |= bitOf(r);
  switch (r) {
  case AllocRange::Locations:
    locs_.insert(vs.begin(), vs.end());
    break;
  case AllocRange::Values:
    values_.insert(vs.begin(), vs.end());
    break;
  case AllocRange::SymVars:
    throw EngineFault("use chargeSymVars for the SymVars range");
  }
}

void AllocRecord::chargeSymVars(const std::set<std::string> &names) {
  present_ |= bitOf(AllocRange::SymVars);
  symvars_.insert(names.begin(), names.end());
}

std::string AllocRecord::toString() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  auto emit = [&](const std::string &name, auto const &set, auto toStr) {
    if (!first)
      os << ", ";
    first = false;
    os << name << " -> {";
    bool f2 = true;
    for (const auto &v : set) {
      if (!f2)
        os << ", ";
      f2 = false;
      os << toStr(v);
    }
    os << "}";
  };
  if (hasRange(AllocRange::Locations))
    emit("locations", locs_, [](const Value &v) { return v.toString(); });
  if (hasRange(AllocRange::SymVars))
    emit("symvars", symvars_, [](const std::string &s) { return "#" + s; });
  if (hasRange(AllocRange::Values))
    emit("values", values_, [](const Value &v) { return v.toString(); });
  os << "}";
  return os.str();
}

static long long maxIndexed(const std::set<std::string> &names, char prefix) {
  long long mx = -1;
  for (const std::string &n : names) {
    if (n.size() < 2 || n[0] != prefix)
      continue;
    bool digits = true;
    for (std::size_t i = 1; i < n.size(); ++i)
      if (!isdigit(static_cast<unsigned char>(n[i])))
        digits = false;
    if (digits)
      mx = std::max(mx, std::stoll(n.substr(1)));
  }
  return mx;
}

std::pair<AllocRecord, std::vector<Value>> allocLocations(const AllocRecord &rec,
                                                          std::size_t k) {
  AllocRecord out = rec;
  out.present_ |= bitOf(AllocRange::Locations);
  std::vector<Value> fresh;
  std::set<std::string> names;
  for (const Value &v : rec.locs_)
    if (v.isSymbol())
      names.insert(v.sym().name);
  long long next = maxIndexed(names, 'l') + 1;
  for (std::size_t i = 0; i < k; ++i) {
    Value loc = Value::symbol("l" + std::to_string(next++));
    fresh.push_back(loc);
    out.locs_.insert(loc);
  }
  return {std::move(out), std::move(fresh)};
}

std::pair<AllocRecord, std::vector<std::string>>
allocSymVars(const AllocRecord &rec, std::size_t k) {
  AllocRecord out = rec;
  out.present_ |= bitOf(AllocRange::SymVars);
  std::vector<std::string> fresh;
  long long next = maxIndexed(rec.symvars_, 'x') + 1;
  for (std::size_t i = 0; i < k; ++i) {
    std::string name = "x" + std::to_string(next++);
    fresh.push_back(name);
    out.symvars_.insert(name);
    out.symvarLog_.push_back(name);
  }
  return {std::move(out), std::move(fresh)};
}

static std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::pair<AllocRecord, std::vector<Value>> allocValues(const AllocRecord &rec,
                                                       std::size_t k,
                                                       const AllocCtx &ctx) {
  AllocRecord out = rec;
  out.present_ |= bitOf(AllocRange::Values);
  std::vector<Value> fresh;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t n = out.valueLog_.size();
    Value v;
    if (ctx.script && n < ctx.script->size()) {
      v = (*ctx.script)[n];
    } else {
      // deterministic pick over a small universe
      std::vector<Value> universe;
      int half = ctx.valueDomainSize / 2;
      for (int j = -(half - 1); j <= half; ++j)
        universe.push_back(Value::integer(j));
      universe.push_back(Value::boolean(false));
      universe.push_back(Value::boolean(true));
      universe.push_back(Value::string("a"));
      universe.push_back(Value::string("b"));
      for (const Value &l : out.locs_)
        universe.push_back(l);
      std::uint64_t h = splitmix64(ctx.seed ^ (0x5851f42d4c957f2dULL * (n + 1)));
      v = universe[h % universe.size()];
    }
    fresh.push_back(v);
    out.values_.insert(v);
    out.valueLog_.push_back(v);
  }
  return {std::move(out), std::move(fresh)};
}

AllocRecord composeRecords(const AllocRecord &a, const AllocRecord &b) {
  AllocRecord out = a;
  out.present_ |= b.present_;
  out.locs_.insert(b.locs_.begin(), b.locs_.end());
  out.symvars_.insert(b.symvars_.begin(), b.symvars_.end());
  out.values_.insert(b.values_.begin(), b.values_.end());
  out.symvarLog_.insert(out.symvarLog_.end(), b.symvarLog_.begin(),
                        b.symvarLog_.end());
  out.valueLog_.insert(out.valueLog_.end(), b.valueLog_.begin(),
                       b.valueLog_.end());
  return out;
}

} // namespace gil

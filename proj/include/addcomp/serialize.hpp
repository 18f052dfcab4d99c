#pragma once

// JSON forms of verdicts, coverage masks, shrink certificates and gap reports.

#include <string>
#include <vector>

#include <json.hpp>

#include "addcomp/constructions.hpp"
#include "addcomp/dsl.hpp"
#include "addcomp/search.hpp"

namespace addcomp {

inline json window_json(const Window& w) { return json::array({w.lo, w.hi}); }

inline json to_json(const Verdict& v) {
  json j{{"status", to_string(v.status)}, {"grade", to_string(v.grade)}, {"witnesses", v.witnesses}};
  j["evidence"] = v.evidence ? json(*v.evidence) : json(nullptr);
  j["window"] = v.checked_window ? window_json(*v.checked_window) : json(nullptr);
  if (!v.note.empty()) j["note"] = v.note;
  if (!v.removals.empty()) {
    json rs = json::array();
    for (const auto& r : v.removals)
      rs.push_back({{"c", r.c}, {"status", to_string(r.status)}, {"grade", to_string(r.grade)}, {"witnesses", r.witnesses}});
    j["removals"] = rs;
  }
  return j;
}

/// Runs of equal coverage, starting with the value at window.lo.
inline json to_json(const CoverageMask& m) {
  json runs = json::array();
  const std::size_t n = m.covered.size();
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    const bool v = m.covered.get(i);
    while (j < n && m.covered.get(j) == v) ++j;
    runs.push_back({{"covered", v}, {"length", j - i}});
    i = j;
  }
  json out{{"window", window_json(m.window)}, {"runs", runs}, {"interior_margin", m.interior_margin}};
  auto t = m.trusted();
  out["trusted"] = t ? window_json(*t) : json(nullptr);
  return out;
}

inline json to_json(const ShrinkCertificate& c) {
  json j{{"removed", c.removed}, {"method", c.method}, {"bound", window_json(c.loss_bound)}, {"verified", c.verified}};
  json frame = json::array({c.a});
  if (c.c) frame.push_back(*c.c);
  j["frame"] = frame;
  if (c.thresholds) j["thresholds"] = {c.thresholds->first, c.thresholds->second};
  if (c.threshold_values) j["threshold_values"] = {c.threshold_values->first, c.threshold_values->second};
  j["verified_window"] = c.verified_window ? window_json(*c.verified_window) : json(nullptr);
  j["loss"] = c.loss;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

inline json to_json(const ShrinkResult& r) {
  return {{"rest", print_set(r.rest)}, {"certificate", to_json(r.cert)}, {"before", to_json(r.before)},
          {"after", to_json(r.after)}};
}

inline json to_json(const GapSummary& g) {
  return {{"count", g.gaps.size()}, {"max_gap", g.max_gap}, {"max_growing", g.max_growing}, {"min_growing", g.min_growing}};
}

inline json to_json(const GapReport& g) {
  json j{{"from", g.from},
         {"horizon", g.horizon},
         {"unbounded_w_gaps", g.unbounded_w_gaps},
         {"growing_complement_gaps", g.growing_complement_gaps},
         {"no_minimal_complement", g.no_minimal_complement}};
  j["w_gaps"] = g.w_gaps ? to_json(*g.w_gaps) : json(nullptr);
  j["complement_gaps"] = g.complement_gaps ? to_json(*g.complement_gaps) : json(nullptr);
  return j;
}

}  // namespace addcomp

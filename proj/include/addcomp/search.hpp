#pragma once

// Reference double-loop coverage, a greedy complement builder, exhaustive
// minimal-subset search and empirical gap statistics.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "addcomp/predicates.hpp"

namespace addcomp {

/// W + (C ∩ [-R, R]) on w by direct double loop. The band of width R at
/// each edge is untrusted unless C lies inside [-R, R].
inline CoverageMask brute_force_cover(const IntSet& w_in, const IntSet& c_in, const Window& win, Int radius) {
  if (radius < 0) throw Error(ErrorKind::BadParams, "radius must be nonnegative");
  IntSet w = normalize(w_in), c = normalize(c_in);
  std::vector<Int> cs = enumerate_window(c, Window(neg(radius), radius));
  if (cs.empty()) throw Error(ErrorKind::RadiusTooSmall, "C has no element in [-R, R]");
  auto lc = lower_bound(c), uc = upper_bound(c);
  const bool complete = lc && uc && *lc >= neg(radius) && *uc <= radius;

  // membership of W on every t - x that the loop can reach
  const Int base = sub(win.lo, cs.back());
  std::vector<char> in_w(static_cast<std::size_t>(sub(win.hi, cs.front()) - base + 1));
  for (std::size_t i = 0; i < in_w.size(); ++i) in_w[i] = contains(w, base + static_cast<Int>(i));

  CoverageMask m{win, BitVec(static_cast<std::size_t>(win.size())), complete ? 0 : radius};
  for (Int t = win.lo; t <= win.hi; ++t)
    for (Int x : cs)
      if (in_w[static_cast<std::size_t>(t - x - base)]) {
        m.covered.set(static_cast<std::size_t>(t - win.lo));
        break;
      }
  return m;
}

struct GreedyResult {
  std::vector<Int> c;
  std::vector<Int> skipped;  // targets with no element of W at or below them
};

/// Scans the targets upwards; an uncovered t gets c = t - max{w ∈ W : w <= t}.
/// The downward search for that w stops after `reach` steps.
inline GreedyResult greedy_asymptotic_complement(const IntSet& w_in, const Window& target, Int reach = 1'000'000) {
  IntSet w = normalize(w_in);
  auto lw = lower_bound(w);
  GreedyResult g;
  for (Int t = target.lo; t <= target.hi; ++t) {
    bool hit = false;
    for (Int x : g.c) hit = hit || contains(w, sub(t, x));
    if (hit) continue;
    std::optional<Int> best;
    const Int stop = lw ? std::max(*lw, sub(t, reach)) : sub(t, reach);
    for (Int y = t; y >= stop; --y)
      if (contains(w, y)) {
        best = y;
        break;
      }
    if (!best) {
      g.skipped.push_back(t);
      continue;
    }
    g.c.push_back(sub(t, *best));
  }
  sort_unique(g.c);
  return g;
}

struct SubsetSearch {
  std::vector<std::vector<Int>> complements;
  std::vector<std::vector<Int>> asymptotic;
};

inline constexpr std::size_t kSubsetCap = 20;

/// All inclusion-minimal subsets of the finite C that are complements,
/// respectively asymptotic complements, of W; lexicographic order.
inline SubsetSearch minimal_subset_search(const IntSet& w_in, const std::vector<Int>& c_in) {
  std::vector<Int> c = c_in;
  sort_unique(c);
  if (c.size() > kSubsetCap)
    throw Error(ErrorKind::TooLarge, "at most " + std::to_string(kSubsetCap) + " elements, got " + std::to_string(c.size()));
  IntSet w = normalize(w_in);
  const std::size_t n = c.size();
  const std::uint32_t full = n == 0 ? 0 : static_cast<std::uint32_t>((std::uint64_t{1} << n) - 1);

  auto subset = [&](std::uint32_t m) {
    std::vector<Int> s;
    for (std::size_t i = 0; i < n; ++i)
      if (m >> i & 1u) s.push_back(c[i]);
    return s;
  };
  // masks in order of size, then numerically
  std::vector<std::uint32_t> order;
  for (std::uint32_t m = 1; m <= full && m != 0; ++m) order.push_back(m);
  std::stable_sort(order.begin(), order.end(),
                   [](std::uint32_t a, std::uint32_t b) { return __builtin_popcount(a) < __builtin_popcount(b); });

  std::vector<std::uint32_t> comp, asym;
  auto covered_by = [](const std::vector<std::uint32_t>& found, std::uint32_t m) {
    for (std::uint32_t f : found)
      if ((m & f) == f) return true;
    return false;
  };
  for (std::uint32_t m : order) {
    const bool need_c = !covered_by(comp, m), need_a = !covered_by(asym, m);
    if (!need_c && !need_a) continue;
    auto u = exact_uncovered(w, finite_set(subset(m)));
    if (!u) throw Error(ErrorKind::NotDecidable, "no exact test for W + " + detail::join(subset(m)));
    if (need_c && u->finite && u->points.empty()) comp.push_back(m);
    if (need_a && u->finite) asym.push_back(m);
  }
  auto listed = [&](const std::vector<std::uint32_t>& ms) {
    std::vector<std::vector<Int>> out;
    for (std::uint32_t m : ms) out.push_back(subset(m));
    std::sort(out.begin(), out.end());
    return out;
  };
  return {listed(comp), listed(asym)};
}

struct GapReport {
  Int from = 0;  // statistics start here: min W, or 1 when W is unbounded below
  Int horizon = 0;
  std::optional<GapSummary> w_gaps;
  std::optional<GapSummary> complement_gaps;
  bool unbounded_w_gaps = false;      // limsup of W's gaps looks infinite
  bool growing_complement_gaps = false;  // gaps of the complement look to tend to infinity
  bool no_minimal_complement = false;    // the previous flag for W bounded below and infinite
};

/// Empirical gap statistics of W and of ℤ≥from \ W on [from, from + horizon].
/// Advisory only.
inline GapReport gap_classifier(const IntSet& w_in, Int horizon = 100'000) {
  IntSet w = normalize(w_in);
  GapReport r;
  auto lb = lower_bound(w);
  r.from = lb ? *lb : 1;
  r.horizon = horizon;
  Window win(r.from, add(r.from, horizon));
  std::vector<Int> in, out;
  for (Int t = win.lo; t <= win.hi; ++t) (contains(w, t) ? in : out).push_back(t);
  if (in.size() >= 2) {
    r.w_gaps = gap_summary_of(in);
    r.unbounded_w_gaps = r.w_gaps->max_growing;
  }
  if (out.size() >= 2) {
    r.complement_gaps = gap_summary_of(out);
    r.growing_complement_gaps = r.complement_gaps->min_growing;
  }
  const bool infinite = !upper_bound(w).has_value();
  r.no_minimal_complement = lb.has_value() && infinite && r.growing_complement_gaps;
  return r;
}

// ---------------------------------------------------------------------------
// Reports

struct ReportRow {
  std::string id;
  std::string predicate;
  std::string status;
  std::string witness;
  double runtime_ms = 0;
};

inline std::string to_tsv(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << "id\tpredicate\tstatus\twitness\truntime-ms\n";
  for (const auto& r : rows) {
    os << r.id << '\t' << r.predicate << '\t' << r.status << '\t' << (r.witness.empty() ? "-" : r.witness) << '\t';
    os.setf(std::ios::fixed);
    os.precision(3);
    os << r.runtime_ms << '\n';
  }
  return os.str();
}

template <class F>
ReportRow timed_row(std::string id, std::string predicate, F&& run) {
  auto t0 = std::chrono::steady_clock::now();
  Verdict v = run();
  auto t1 = std::chrono::steady_clock::now();
  ReportRow r{std::move(id), std::move(predicate), to_string(v.status), "", 0};
  if (!v.witnesses.empty()) r.witness = std::to_string(v.witnesses.front());
  r.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return r;
}

}  // namespace addcomp

#pragma once

// Constructive results: explicit minimal complements, shrinking an asymptotic
// complement by one element with a certified finite loss, and the named sets
// used throughout the test-suite and command-line tool.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "addcomp/predicates.hpp"

namespace addcomp {

// ===========================================================================
// Minimal complements of cofinite sets and finite-set shrinking

struct Construction {
  IntSet set;
  Verdict verdict;
};

/// For W = ℤ \ E: {0, x} with x the least positive element of W outside
/// E − E. Any singleton works when E is empty.
inline Construction cofinite_minimal_pair(const IntSet& w_in) {
  IntSet w = normalize(w_in);
  auto co = w.as<CofiniteSet>();
  if (!co) throw Error(ErrorKind::BadParams, "expected a cofinite set");
  const auto& e = co->excluded;
  IntSet c = finite_set({0});
  if (!e.empty()) {
    std::vector<Int> diffs;
    for (Int x : e)
      for (Int y : e) diffs.push_back(sub(x, y));
    sort_unique(diffs);
    Int x = 1;
    while (sorted_contains(e, x) || sorted_contains(diffs, x)) x = add(x, 1);
    c = finite_set({0, x});
  }
  return {c, is_minimal_complement(w, c)};
}

struct ShrinkOutcome {
  IntSet rest;
  Verdict before;
  Verdict after;
};

/// C \ F for finite W; the asymptotic-complement verdict cannot degrade.
inline ShrinkOutcome finite_set_shrink(const IntSet& w_in, const IntSet& c_in, const std::vector<Int>& f) {
  IntSet w = normalize(w_in), c = normalize(c_in);
  if (!w.as<FiniteSet>()) throw Error(ErrorKind::BadParams, "W must be finite");
  for (Int x : f)
    if (!contains(c, x)) throw Error(ErrorKind::FNotSubset, std::to_string(x) + " is not in C");
  IntSet rest = normalize(minus_finite(c, f));
  return {rest, is_asymptotic_complement(w, c), is_asymptotic_complement(w, rest)};
}

// ===========================================================================
// Subgroups

namespace detail {

/// Scan order 0, 1, -1, 2, -2, ...: smallest absolute value, ties to the nonnegative.
template <class F>
void scan_by_magnitude(Int horizon, F&& visit) {
  if (!visit(Int{0})) return;
  for (Int r = 1; r <= horizon; ++r) {
    if (!visit(r)) return;
    if (!visit(-r)) return;
  }
}

inline Int scan_horizon(const IntSet& c, Int n) {
  if (auto b = as_bep(c)) {
    Int span = std::max(b->lo() < 0 ? -b->lo() : b->lo(), b->hi() < 0 ? -b->hi() : b->hi());
    return add(span, mul(n, b->joint_period()));
  }
  return 1'000'000;
}

}  // namespace detail

/// One representative of C per class mod n; a minimal asymptotic complement
/// of nℤ whenever C meets every class.
inline Construction subgroup_minimal(Int n, const IntSet& c_in) {
  if (n <= 0) throw Error(ErrorKind::BadParams, "n must be positive");
  IntSet c = normalize(c_in);
  std::vector<std::optional<Int>> rep(static_cast<std::size_t>(n));
  std::size_t found = 0;
  detail::scan_by_magnitude(detail::scan_horizon(c, n), [&](Int t) {
    auto& slot = rep[static_cast<std::size_t>(floor_mod(t, n))];
    if (!slot && contains(c, t)) {
      slot = t;
      ++found;
    }
    return found < rep.size();
  });
  std::vector<Int> out;
  for (Int r = 0; r < n; ++r) {
    if (!rep[static_cast<std::size_t>(r)])
      throw Error(ErrorKind::MissingResidueClass, "no element of C is congruent to " + std::to_string(r) + " mod " + std::to_string(n));
    out.push_back(*rep[static_cast<std::size_t>(r)]);
  }
  IntSet cp = finite_set(out);
  return {cp, is_minimal_asymptotic_complement(multiples_set(n), cp)};
}

struct FiniteIndexMinimals {
  Int n = 0;
  std::vector<Int> minimal_complement;
  std::vector<Int> minimal_asymptotic;
};

/// Smallest n > 0 with nℤ ⊆ W, for a Bep W.
inline Int contained_subgroup(const Bep& w) {
  if (!w.left().pattern(0) || !w.right().pattern(0) || !w.contains(0))
    throw Error(ErrorKind::NotContainingSubgroup, "W contains no nonzero subgroup");
  const Int l = w.joint_period();
  const Int span = std::max(w.lo() < 0 ? -w.lo() : w.lo(), w.hi() < 0 ? -w.hi() : w.hi());
  for (Int n = l;; n = add(n, l)) {
    bool ok = true;
    for (Int m = n; m <= span && ok; m += n) ok = w.contains(m) && w.contains(-m);
    if (ok) return n;
  }
}

/// Descends from {0, ..., n-1}, removing the largest removable element and
/// restarting, once for complements and once for asymptotic complements.
inline FiniteIndexMinimals finite_index_minimals(const IntSet& w_in, std::optional<Int> n_opt = std::nullopt) {
  IntSet w = normalize(w_in);
  auto b = as_bep(w);
  if (!b) throw Error(ErrorKind::NotContainingSubgroup, "W must be bi-eventually periodic");
  if (b->is_cofinite()) throw Error(ErrorKind::ComplementNotInfinite, "the complement of W is finite");
  Int n;
  if (n_opt) {
    n = *n_opt < 0 ? neg(*n_opt) : *n_opt;
    if (n == 0 || !(b->intersect(Bep::multiples(n)) == Bep::multiples(n)))
      throw Error(ErrorKind::NotContainingSubgroup, "W does not contain the subgroup");
  } else {
    n = contained_subgroup(*b);
  }
  auto descend = [&](CoverKind kind) {
    std::vector<Int> c;
    for (Int i = 0; i < n; ++i) c.push_back(i);
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto it = c.rbegin(); it != c.rend(); ++it) {
        std::vector<Int> rest;
        for (Int x : c)
          if (x != *it) rest.push_back(x);
        if (rest.empty()) continue;
        Bep s = bep_sumset(*b, Bep::finite(rest));
        bool ok = kind == CoverKind::Complement ? s.is_cofinite() && s.core_gaps().empty() : s.is_cofinite();
        if (ok) {
          c = rest;
          changed = true;
          break;
        }
      }
    }
    return c;
  };
  return {n, descend(CoverKind::Complement), descend(CoverKind::Asymptotic)};
}

// ===========================================================================
// Shrink certificates

struct ShrinkCertificate {
  Int removed = 0;
  Int a = 0;
  std::optional<Int> c;
  Window loss_bound;  // b + (W outside this window, shifted by -b) is covered by the frame
  std::optional<std::pair<Int, Int>> thresholds;        // (i', i'')
  std::optional<std::pair<Int, Int>> threshold_values;  // (v_i', v_i'')
  std::string method;
  bool verified = false;
  std::optional<Window> verified_window;  // range of w checked
  std::vector<Int> loss;                  // points of b + W lost by the removal
  std::string note;
};

struct ShrinkResult {
  IntSet rest;
  ShrinkCertificate cert;
  Verdict before;
  Verdict after;
};

namespace detail {

inline constexpr Int kVerifyCap = 1 << 20;

/// Checks that b + w ∈ frame + W for every w ∈ W in the given ranges but
/// outside the bound (given in w coordinates), and collects the points of
/// b + (W ∩ bound) no longer covered by C \ {b}.
inline void verify_frame(const IntSet& w, const IntSet& rest, const std::vector<Int>& frame, Int b, Window bound_w,
                         const std::vector<Window>& ranges, ShrinkCertificate& cert) {
  cert.verified = true;
  for (const Window& range : ranges) {
    Int last = range.lo - 1;
    try {
      for (Int x = range.lo; x <= range.hi; ++x) {
        if (!contains(w, x)) {
          last = x;
          continue;
        }
        const Int t = add(b, x);
        if (bound_w.contains(x)) {
          if (pointwise_hit(w, rest, t) != Hit::Yes) cert.loss.push_back(t);
        } else {
          bool hit = false;
          for (Int f : frame) hit = hit || contains(w, sub(t, f));
          if (!hit) {
            cert.verified = false;
            cert.note = "uncovered outside the bound at " + std::to_string(t);
            return;
          }
        }
        last = x;
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Overflow) throw;
    }
    if (last >= range.lo && !cert.verified_window) cert.verified_window = Window(range.lo, last);
  }
  sort_unique(cert.loss);
}

/// Ranges to scan: everything from below the bound up to span past it, or
/// when that is too long, the first kVerifyCap points and a band of width
/// span on either side of the upper end of the bound.
inline std::vector<Window> verify_ranges(Window bound_w, Int below, Int span) {
  const Int lo = sub(bound_w.lo, below);
  const Int hi = add(bound_w.hi, span);
  if (sub(hi, lo) <= kVerifyCap) return {Window(lo, hi)};
  return {Window(lo, add(lo, kVerifyCap)), Window(std::max(add(lo, kVerifyCap) + 1, sub(bound_w.hi, span)), hi)};
}

inline ShrinkResult finish(const IntSet& w, const IntSet& c, const IntSet& rest, ShrinkCertificate cert) {
  return {rest, std::move(cert), is_asymptotic_complement(w, c), is_asymptotic_complement(w, rest)};
}

}  // namespace detail

/// Removal of b ∈ C when a ∈ C with a ≡ b modulo the period of the eventually
/// periodic W: b + w ∈ a + W for all w outside the finite exceptional part.
inline ShrinkResult ep_shrink(const IntSet& w_in, const IntSet& c_in, std::optional<std::pair<Int, Int>> pair = std::nullopt) {
  IntSet w = normalize(w_in), c = normalize(c_in);
  auto bw = as_bep(w);
  Classification cl = classify(w);
  if (!bw || !cl.eventually_periodic) throw Error(ErrorKind::PreconditionViolated, "W must be eventually periodic");
  const Int period = bw->right().period();
  Int a, b;
  if (pair) {
    std::tie(a, b) = *pair;
    if (a == b || floor_mod(sub(a, b), period) != 0 || !contains(c, a) || !contains(c, b))
      throw Error(ErrorKind::PreconditionViolated, "pair must be distinct elements of C congruent mod " + std::to_string(period));
  } else {
    std::vector<std::optional<Int>> seen(static_cast<std::size_t>(period));
    std::optional<std::pair<Int, Int>> got;
    detail::scan_by_magnitude(detail::scan_horizon(c, period), [&](Int t) {
      if (!contains(c, t)) return true;
      auto& s = seen[static_cast<std::size_t>(floor_mod(t, period))];
      if (s) {
        got = std::make_pair(*s, t);
        return false;
      }
      s = t;
      return true;
    });
    if (!got) throw Error(ErrorKind::NoCongruentPair, "no two elements of C are congruent mod " + std::to_string(period));
    std::tie(a, b) = *got;
  }
  const Int d = sub(b, a);
  const Int min_w = *lower_bound(w);
  const Int top = add(bw->hi(), d < 0 ? neg(d) : d);
  std::vector<Int> exceptional;
  for (Int x = min_w; x <= top; ++x)
    if (bw->contains(x) && !bw->contains(add(x, d))) exceptional.push_back(x);

  ShrinkCertificate cert;
  cert.removed = b;
  cert.a = a;
  cert.method = "periodic";
  cert.loss_bound = exceptional.empty() ? Window(b, b) : Window(add(b, exceptional.front()), add(b, exceptional.back()));
  if (exceptional.empty()) cert.note = "no exceptional elements";
  IntSet rest = normalize(minus_finite(c, {b}));
  Window bound_w = exceptional.empty() ? Window(min_w - 1, min_w - 1) : Window(exceptional.front(), exceptional.back());
  detail::verify_frame(w, rest, {a}, b, bound_w, {Window(min_w, add(top, mul(4, period) + 64))}, cert);
  return detail::finish(w, c, rest, std::move(cert));
}

namespace detail {

inline FamilySet reflect_family(const FamilySet& f) {
  FamilySet r = f;
  r.sign = -f.sign;
  if (r.extra) r.extra = r.extra->negate();
  for (auto& x : r.removed) x = neg(x);
  sort_unique(r.removed);
  return r;
}

/// Loss window, in W coordinates, for removing b from a < b < c with W an
/// interval family read left to right.
inline Window interval_bound(const FamilySet& f, Int a, Int b, Int c) {
  const FamilyRule& r = f.rule;
  const Int k = sub(c, a);
  for (Int j = 1; j <= std::min<Int>(k + 1, r.max_index()); ++j)
    if (r.length(j) < j) throw Error(ErrorKind::PreconditionViolated, "interval lengths must satisfy length(k) >= k");
  if (f.extra && !f.extra->right().is_empty())
    throw Error(ErrorKind::PreconditionViolated, "the non-family part must be bounded above");
  const bool left_tail = f.extra && !f.extra->left().is_empty();
  if (left_tail && floor_mod(sub(c, b), f.extra->left().period()) != 0)
    throw Error(ErrorKind::PreconditionViolated,
                "b and c must be congruent modulo the left tail period " + std::to_string(f.extra->left().period()));

  const bool doubling_set = r.kind() == FamilyRule::Kind::Doubling && f.sign > 0 && f.offset == 0 && f.removed.empty() &&
                            f.extra && *f.extra == Bep::below(4);
  // intervals beyond index K are wide enough for the frame to cover
  const Int big_k = std::min(k, r.max_index());
  Int upper = r.kind() == FamilyRule::Kind::Doubling ? r.end(big_k) : add(r.start(big_k), r.length(big_k));
  upper = f.from_rule(upper);
  if (doubling_set) return Window(neg(sub(b, a)), upper);

  Int lower = f.from_rule(r.start(1));
  if (f.extra) {
    if (left_tail) lower = std::min(lower, f.extra->lo());
    else if (!f.extra->core().empty()) lower = std::min(lower, f.extra->core().front());
    upper = std::max(upper, f.extra->hi());
  }
  for (Int x : f.removed) {
    lower = std::min(lower, x);
    Int kx = r.last_index_at_or_below(f.to_rule(x));
    upper = std::max(upper, kx >= 1 ? f.from_rule(r.end(kx)) : x);
    upper = std::max(upper, x);
  }
  return Window(lower, upper);
}

}  // namespace detail

/// Removal of the middle element b of a < b < c when W is a union of
/// intervals whose lengths grow at least linearly, optionally with a full or
/// arithmetic left tail.
inline ShrinkResult interval_shrink(const IntSet& w_in, const IntSet& c_in, Int a, Int b, Int c,
                                    Int verify_span = 10'000) {
  IntSet w = normalize(w_in), cs = normalize(c_in);
  auto f = w.as<FamilySet>();
  if (!f) throw Error(ErrorKind::PreconditionViolated, "W must be an interval family");
  if (!(a < b && b < c)) throw Error(ErrorKind::PreconditionViolated, "need a < b < c");
  if (!contains(cs, a) || !contains(cs, b) || !contains(cs, c))
    throw Error(ErrorKind::PreconditionViolated, "a, b, c must belong to C");

  ShrinkCertificate cert;
  cert.removed = b;
  cert.a = a;
  cert.c = c;
  cert.method = "interval";
  Window bound_w(0, 0);
  if (f->sign > 0) {
    bound_w = detail::interval_bound(*f, a, b, c);
  } else {
    Window m = detail::interval_bound(detail::reflect_family(*f), neg(c), neg(b), neg(a));
    bound_w = Window(neg(m.hi), neg(m.lo));
  }
  cert.loss_bound = Window(add(b, bound_w.lo), add(b, bound_w.hi));
  IntSet rest = normalize(minus_finite(cs, {b}));
  detail::verify_frame(w, rest, {a, c}, b, bound_w,
                       detail::verify_ranges(bound_w, std::min<Int>(verify_span, 1000), verify_span), cert);
  if (sub(bound_w.hi, bound_w.lo) > detail::kVerifyCap)
    cert.note = "loss enumerated on the first " + std::to_string(detail::kVerifyCap) + " points of the bound only";
  return detail::finish(w, cs, rest, std::move(cert));
}

struct GapThresholds {
  bool observed = false;
  Int i1 = 0, i2 = 0;  // 1-based indices into v
  Int v1 = 0, v2 = 0;
};

/// Indices after which consecutive elements of v = ℤ≥min W \ W stay at
/// least 2 and at least `spread` apart, as observed up to the horizon.
inline GapThresholds gap_thresholds(const IntSet& w, Int min_w, Int spread, Int horizon) {
  std::vector<Int> v;
  const Int top = add(min_w, horizon);
  for (Int x = min_w; x <= top; ++x)
    if (!contains(w, x)) v.push_back(x);
  GapThresholds g;
  if (v.size() < 4) return g;
  auto first_stable = [&](Int floor_gap) -> std::size_t {
    std::size_t idx = 0;  // 0-based index of the first v after the last small gap
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
      if (v[i + 1] - v[i] < floor_gap) idx = i + 1;
    return idx;
  };
  std::size_t i1 = first_stable(2);
  std::size_t i2 = std::max(i1, first_stable(std::max<Int>(spread, 2)));
  if (i2 + 3 > v.size() || v[i2] > min_w + horizon / 2) return g;
  g.observed = true;
  g.i1 = static_cast<Int>(i1) + 1;
  g.i2 = static_cast<Int>(i2) + 1;
  g.v1 = v[i1];
  g.v2 = v[i2];
  return g;
}

/// Removal of b from a < b < c for W bounded below whose complement gaps grow.
/// Falls back to interval_shrink when the gap hypothesis is not observed and W
/// is an interval family.
inline ShrinkResult gaps_shrink(const IntSet& w_in, const IntSet& c_in, Int a, Int b, Int c,
                                Int horizon = 1'000'000) {
  IntSet w = normalize(w_in), cs = normalize(c_in);
  auto lb = lower_bound(w);
  if (!lb) throw Error(ErrorKind::PreconditionViolated, "W must be bounded below");
  if (!(a < b && b < c)) throw Error(ErrorKind::PreconditionViolated, "need a < b < c");
  if (!contains(cs, a) || !contains(cs, b) || !contains(cs, c))
    throw Error(ErrorKind::PreconditionViolated, "a, b, c must belong to C");
  // (v_i, v_{i+1}) and its shift by c - a only overlap when the gap exceeds c - a
  GapThresholds g = gap_thresholds(w, *lb, add(sub(c, a), 1), horizon);
  if (!g.observed) {
    if (w.as<FamilySet>()) {
      ShrinkResult r = interval_shrink(w, cs, a, b, c);
      r.cert.note = "gap hypothesis not observed within horizon " + std::to_string(horizon) +
                    "; certified by interval containment";
      return r;
    }
    ShrinkCertificate cert;
    cert.removed = b;
    cert.a = a;
    cert.c = c;
    cert.method = "none";
    cert.loss_bound = Window(b, b);
    cert.note = to_string(ErrorKind::HypothesisNotObserved);
    IntSet rest = normalize(minus_finite(cs, {b}));
    Verdict unknown;
    unknown.note = "gap hypothesis not observed within horizon " + std::to_string(horizon);
    return {rest, cert, is_asymptotic_complement(w, cs), unknown};
  }
  ShrinkCertificate cert;
  cert.removed = b;
  cert.a = a;
  cert.c = c;
  cert.method = "gaps";
  cert.thresholds = std::make_pair(g.i1, g.i2);
  cert.threshold_values = std::make_pair(g.v1, g.v2);
  Window bound_w(*lb, g.v2);
  cert.loss_bound = Window(add(b, bound_w.lo), add(b, bound_w.hi));
  IntSet rest = normalize(minus_finite(cs, {b}));
  detail::verify_frame(w, rest, {a, c}, b, bound_w, {Window(*lb, add(*lb, std::min<Int>(horizon, 1 << 16)))}, cert);
  return detail::finish(w, cs, rest, std::move(cert));
}

// ===========================================================================
// Named sets

struct BuiltinParams {
  std::optional<int> variant;
  std::optional<Int> n;
  std::optional<Int> a;
  std::vector<Int> f;
  std::optional<FamilyRule> rule;  // defaults to the doubling family
};

inline std::vector<std::string> builtin_names() {
  return {"doubling", "doubling-ray", "intervals", "blocks", "blocks-complement",
          "nonprimes", "nonpowers2", "nonsquares", "subgroup"};
}

/// Named sets. "doubling" is the interval family with s_k = (k-1)(k+2)/2 +
/// 2^{k+1}; "doubling-ray" adds every t <= 3. "intervals" takes a rule
/// (doubling by default) and a variant: 1 the family alone, 2 with every t
/// below the first interval, 3 the same minus F, 4 with the class a mod n
/// below the first interval.
inline IntSet builtin(const std::string& name, const BuiltinParams& p = {}) {
  FamilyRule rule = p.rule ? *p.rule : FamilyRule::doubling();
  if (name == "doubling") return family_set(FamilyRule::doubling());
  if (name == "doubling-ray") return normalize(union_of(below_set(4), family_set(FamilyRule::doubling())));
  if (name == "blocks") return family_set(FamilyRule::blocks());
  if (name == "blocks-complement") return family_set(FamilyRule::blocks_complement());
  if (name == "nonprimes") return pointwise_set(PredicateKind::NonPrimes);
  if (name == "nonpowers2") return pointwise_set(PredicateKind::NonPowersOfTwo);
  if (name == "nonsquares") return pointwise_set(PredicateKind::NonSquares);
  if (name == "subgroup") {
    if (!p.n || *p.n == 0) throw Error(ErrorKind::BadParams, "subgroup needs n != 0");
    return multiples_set(*p.n);
  }
  if (name == "intervals") {
    const int v = p.variant.value_or(1);
    IntSet fam = family_set(rule);
    const Int first = rule.start(1);
    switch (v) {
      case 1: return fam;
      case 2: return normalize(union_of(below_set(first), fam));
      case 3: {
        if (p.f.empty()) throw Error(ErrorKind::BadParams, "variant 3 needs a nonempty F");
        return normalize(union_of(bep_set(Bep::below(first).minus(p.f)), fam));
      }
      case 4: {
        if (!p.n || *p.n == 0) throw Error(ErrorKind::BadParams, "variant 4 needs n != 0");
        return normalize(union_of(bep_set(Bep::ap(p.a.value_or(0), *p.n, false, first)), fam));
      }
      default: throw Error(ErrorKind::BadParams, "variant must be 1..4");
    }
  }
  throw Error(ErrorKind::BadParams, "unknown builtin '" + name + "'");
}

}  // namespace addcomp

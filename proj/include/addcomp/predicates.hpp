#pragma once

// Complement, asymptotic complement and minimality tests.
//
// Verdicts are three-valued and graded: Exact verdicts are proofs over all
// of ℤ; Window verdicts only speak for the window they name.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "addcomp/sumset.hpp"

namespace addcomp {

enum class Status { True, False, Unknown };
enum class Grade { Exact, Window };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::True: return "True";
    case Status::False: return "False";
    case Status::Unknown: return "Unknown";
  }
  return "?";
}

inline const char* to_string(Grade g) { return g == Grade::Exact ? "exact" : "window"; }

struct Removal {
  Int c = 0;
  Status status = Status::Unknown;
  Grade grade = Grade::Window;
  std::vector<Int> witnesses;
};

struct Verdict {
  Status status = Status::Unknown;
  Grade grade = Grade::Window;
  std::vector<Int> witnesses;             // uncovered points, or redundant elements for minimality
  std::optional<std::vector<Int>> evidence;  // exceptional set of an asymptotic complement
  std::optional<Window> checked_window;
  std::string note;
  std::vector<Removal> removals;
};

struct CheckOptions {
  Window window{-200, 200};
  std::optional<Int> radius;  // enumeration radius when neither operand is finite
};

/// ℤ \ (W + C) when it can be determined over all of ℤ.
struct UncoveredSet {
  bool finite = false;
  std::vector<Int> points;  // all points when finite, otherwise a sample in witness order
  std::string description;
};

namespace detail {

inline constexpr std::size_t kSample = 5;

inline std::string join(const std::vector<Int>& v) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << '}';
  return os.str();
}

inline std::string describe_tail(const TailSpec& t, const char* rel, Int th) {
  std::ostringstream os;
  os << "{t " << rel << ' ' << th;
  if (!t.is_full()) os << " : t mod " << t.period() << " in " << join(t.residues());
  os << '}';
  return os.str();
}

inline std::string describe(const Bep& b) {
  if (b.is_empty_set()) return "{}";
  if (b.is_finite()) return join(b.core());
  std::ostringstream os;
  if (b.left().same_pattern(b.right())) {
    if (b.left().is_full()) os << "all integers";
    else os << "{t : t mod " << b.right().period() << " in " << join(b.right().residues()) << '}';
    std::vector<Int> missing, plus;
    for (Int t = b.lo(); t <= b.hi(); ++t) {
      bool in = sorted_contains(b.core(), t);
      if (in && !b.right().pattern(t)) plus.push_back(t);
      if (!in && b.right().pattern(t)) missing.push_back(t);
    }
    if (!missing.empty()) os << " minus " << join(missing);
    if (!plus.empty()) os << " plus " << join(plus);
    return os.str();
  }
  std::vector<std::string> parts;
  if (!b.left().is_empty()) parts.push_back(describe_tail(b.left(), "<", b.lo()));
  if (!b.core().empty()) parts.push_back(join(b.core()));
  if (!b.right().is_empty()) parts.push_back(describe_tail(b.right(), ">", b.hi()));
  for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? " u " : "") << parts[i];
  return os.str();
}

inline Bep complement_of(const Bep& b) {
  return Bep::from_predicate(b.lo(), b.hi(), b.left().period(), b.right().period(),
                             [&](Int t) { return !b.contains(t); });
}

/// First k members of pred in witness order 0, -1, 1, -2, 2, ... up to radius.
template <class P>
std::vector<Int> scan_witnesses(P&& pred, std::size_t k, Int radius) {
  std::vector<Int> out;
  if (pred(0)) out.push_back(0);
  for (Int r = 1; r <= radius && out.size() < k; ++r) {
    if (pred(-r)) out.push_back(-r);
    if (out.size() < k && pred(r)) out.push_back(r);
  }
  return out;
}

inline std::vector<Int> sample_of(const Bep& b, std::size_t k) {
  Int span = std::max(b.lo() < 0 ? -b.lo() : b.lo(), b.hi() < 0 ? -b.hi() : b.hi());
  Int radius = add(span, mul(static_cast<Int>(k + 1), b.joint_period()));
  return scan_witnesses([&](Int t) { return b.contains(t); }, k, radius);
}

/// A Bep contained in s, when one is known.
inline std::optional<Bep> bep_subset(const IntSet& s) {
  if (auto b = as_bep(s)) return b;
  if (auto f = s.as<FamilySet>()) {
    if (!f->extra) return std::nullopt;
    Bep e = f->extra->minus(f->removed);
    if (e.is_empty_set()) return std::nullopt;
    return e;
  }
  if (auto p = s.as<PointwiseSet>()) {
    if (p->range_lo != std::numeric_limits<Int>::min() || p->range_hi != std::numeric_limits<Int>::max())
      return std::nullopt;
    std::optional<Bep> base;
    switch (p->kind) {
      case PredicateKind::NonPrimes:  // t <= 1, and even t other than 2
        base = Bep::below(2).unite(Bep::multiples(2).minus({2}));
        break;
      case PredicateKind::NonPowersOfTwo:  // positive t prime to 2 or divisible by 3
        base = Bep::from_predicate(1, 0, 1, 6, [](Int t) {
          return t >= 1 && (floor_mod(t, 2) == 1 || floor_mod(t, 3) == 0);
        });
        break;
      case PredicateKind::NonSquares:  // squares are 0 or 1 mod 4
        base = Bep::from_predicate(1, 0, 1, 4, [](Int t) { return t >= 1 && floor_mod(t, 4) >= 2; });
        break;
    }
    // t ∈ S iff sign·t + offset ∈ base
    Bep b = base->translate(neg(p->offset));
    return p->sign > 0 ? b : b.negate();
  }
  if (auto u = s.as<UnionSet>()) {
    std::optional<Bep> acc;
    for (const auto& q : u->parts)
      if (auto b = bep_subset(q)) acc = acc ? acc->unite(*b) : *b;
    return acc;
  }
  if (auto m = s.as<MinusSet>()) {
    auto b = bep_subset(m->base);
    if (!b) return std::nullopt;
    Bep r = b->minus(m->removed);
    if (r.is_empty_set()) return std::nullopt;
    return r;
  }
  return std::nullopt;
}

inline std::optional<UncoveredSet> bounded_rule(const IntSet& w, const IntSet& c) {
  auto lw = lower_bound(w), lc = lower_bound(c);
  if (lw && lc) {
    Int m = add(*lw, *lc);
    UncoveredSet u;
    for (std::size_t i = 1; i <= kSample; ++i) u.points.push_back(sub(m, static_cast<Int>(i)));
    sort_witnesses(u.points);
    u.description = "every t < " + std::to_string(m);
    return u;
  }
  auto uw = upper_bound(w), uc = upper_bound(c);
  if (uw && uc) {
    Int m = add(*uw, *uc);
    UncoveredSet u;
    for (std::size_t i = 1; i <= kSample; ++i) u.points.push_back(add(m, static_cast<Int>(i)));
    sort_witnesses(u.points);
    u.description = "every t > " + std::to_string(m);
    return u;
  }
  return std::nullopt;
}

/// Interval family s, finite f: t = max I_k + 1 + max f is uncovered whenever
/// the gap after I_k is wider than max f − min f.
inline std::optional<UncoveredSet> family_gap_rule(const FamilySet& s, const std::vector<Int>& f) {
  if (s.sign < 0) {
    FamilySet r = s;
    r.sign = 1;
    if (r.extra) r.extra = r.extra->negate();
    for (auto& x : r.removed) x = neg(x);
    std::vector<Int> g;
    for (Int x : f) g.push_back(neg(x));
    sort_unique(g);
    auto u = family_gap_rule(r, g);
    if (!u) return u;
    for (auto& x : u->points) x = neg(x);
    sort_witnesses(u->points);
    u->description = "reflected: " + u->description;
    return u;
  }
  if (s.extra && !s.extra->right().is_empty()) return std::nullopt;
  const Int spread = f.back() - f.front();
  Int floor_t = s.extra ? s.extra->hi() : std::numeric_limits<Int>::min();
  UncoveredSet u;
  try {
    for (Int k = 1; k <= s.rule.max_index() && u.points.size() < kSample; ++k) {
      if (s.rule.gap_after(k) <= spread) continue;
      Int t = add(add(s.from_rule(s.rule.end(k)), 1), f.back());
      if (sub(t, f.back()) <= floor_t) continue;
      u.points.push_back(t);
    }
  } catch (const Error&) {
  }
  if (u.points.empty()) return std::nullopt;
  sort_witnesses(u.points);
  u.description = "max I_k + 1 + " + std::to_string(f.back()) + " for every k with gap after I_k > " +
                  std::to_string(spread);
  return u;
}

inline std::optional<UncoveredSet> finite_side(const std::vector<Int>& f, const IntSet& s) {
  try {
    if (auto sub = bep_subset(s)) {
      Bep t = bep_sumset(*sub, Bep::finite(f));
      if (t.is_cofinite()) {
        UncoveredSet u;
        u.finite = true;
        for (Int x : t.core_gaps()) {
          bool hit = false;
          for (Int y : f) hit = hit || contains(s, x - y);
          if (!hit) u.points.push_back(x);
        }
        sort_witnesses(u.points);
        u.description = detail::join(u.points);
        return u;
      }
    }
    if (f.size() == 1 && complement_known_infinite(s)) {
      const Int g = f.front();
      UncoveredSet u;
      u.points = scan_witnesses([&](Int t) { return !contains(s, t - g); }, kSample, 1'000'000);
      if (!u.points.empty()) {
        u.description = "complement of W translated by " + std::to_string(g);
        return u;
      }
    }
    if (auto fam = s.as<FamilySet>()) return family_gap_rule(*fam, f);
  } catch (const Error&) {
  }
  return std::nullopt;
}

}  // namespace detail

/// ℤ \ (W + C), decided over all of ℤ when a structural rule applies.
inline std::optional<UncoveredSet> exact_uncovered(const IntSet& w_in, const IntSet& c_in) {
  IntSet w = normalize(w_in), c = normalize(c_in);
  auto bw = as_bep(w), bc = as_bep(c);
  if (bw && bc) {
    Bep s = bep_sumset(*bw, *bc);
    UncoveredSet u;
    if (s.is_cofinite()) {
      u.finite = true;
      u.points = s.core_gaps();
      sort_witnesses(u.points);
      u.description = detail::join(s.core_gaps());
    } else {
      Bep comp = detail::complement_of(s);
      u.points = detail::sample_of(comp, detail::kSample);
      u.description = detail::describe(comp);
    }
    return u;
  }
  for (int pass = 0; pass < 2; ++pass) {
    const IntSet& a = pass == 0 ? w : c;
    const IntSet& x = pass == 0 ? c : w;
    if (auto co = a.as<CofiniteSet>()) {
      UncoveredSet u;
      u.finite = true;
      if (auto fx = x.as<FiniteSet>()) {
        // t uncovered iff t − x is excluded for every x
        for (Int e : co->excluded) {
          Int t = add(e, fx->elems.front());
          bool all = true;
          for (Int y : fx->elems) all = all && sorted_contains(co->excluded, sub(t, y));
          if (all) u.points.push_back(t);
        }
      }
      sort_witnesses(u.points);
      u.description = detail::join(u.points);
      return u;
    }
  }
  if (covers_integers_by_rays(w, c)) return UncoveredSet{true, {}, "{}"};
  if (auto u = detail::bounded_rule(w, c)) return u;
  if (auto f = c.as<FiniteSet>()) return detail::finite_side(f->elems, w);
  if (auto f = w.as<FiniteSet>()) return detail::finite_side(f->elems, c);
  return std::nullopt;
}

namespace detail {

/// Uncovered points of W + C on w, with a flag telling whether each reported
/// point is proven uncovered.
struct WindowScan {
  std::vector<Int> uncovered;
  bool proven = false;
};

inline WindowScan scan_window(const IntSet& w, const IntSet& c, const Window& win, std::optional<Int> radius) {
  IntSet wn = normalize(w), cn = normalize(c);
  WindowScan s;
  if (wn.as<FiniteSet>() || cn.as<FiniteSet>()) {
    s.uncovered = windowed_sumset(wn, cn, win).uncovered(false);
    s.proven = true;
    return s;
  }
  Int r = radius ? *radius : win.size();
  Window ext(sub(win.lo, r), add(win.hi, r));
  CoverageMask m = windowed_sumset(wn, cn, ext, r);
  s.proven = m.interior_margin == 0;
  for (Int t = win.lo; t <= win.hi; ++t)
    if (!m.at(t)) s.uncovered.push_back(t);
  return s;
}

inline Window doubled(const Window& w) {
  Int half = w.size() / 2 + 1;
  return Window(sub(w.lo, half), add(w.hi, half));
}

inline Verdict from_exact_complement(const UncoveredSet& u) {
  Verdict v;
  v.grade = Grade::Exact;
  if (u.finite && u.points.empty()) {
    v.status = Status::True;
    return v;
  }
  v.status = Status::False;
  v.witnesses = u.points;
  v.note = u.finite ? "" : "uncovered: " + u.description;
  return v;
}

}  // namespace detail

inline Verdict is_complement(const IntSet& w, const IntSet& c, const CheckOptions& opt = {}) {
  try {
    if (auto u = exact_uncovered(w, c)) return detail::from_exact_complement(*u);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Overflow) throw;
  }
  Verdict v;
  v.grade = Grade::Window;
  v.checked_window = opt.window;
  try {
    auto s = detail::scan_window(w, c, opt.window, opt.radius);
    if (s.uncovered.empty()) {
      v.status = Status::True;
    } else if (s.proven) {
      v.status = Status::False;
      v.grade = Grade::Exact;
      v.checked_window.reset();
      v.witnesses = s.uncovered;
      sort_witnesses(v.witnesses);
    } else {
      v.status = Status::Unknown;
      v.witnesses = s.uncovered;
      sort_witnesses(v.witnesses);
      v.note = "points not covered within the enumeration radius";
    }
  } catch (const Error& e) {
    v.status = Status::Unknown;
    v.note = e.what();
  }
  return v;
}

/// ℤ \ (W + C) as evidence when it is finite.
inline Verdict asymptotic_exceptional_set(const IntSet& w, const IntSet& c, const CheckOptions& opt = {}) {
  Verdict v;
  try {
    if (auto u = exact_uncovered(w, c)) {
      v.grade = Grade::Exact;
      if (u->finite) {
        v.status = Status::True;
        v.evidence = u->points;
      } else {
        v.status = Status::False;
        v.witnesses = u->points;
        v.note = "infinitely many uncovered: " + u->description;
      }
      return v;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Overflow) throw;
  }
  v.grade = Grade::Window;
  try {
    Window big = detail::doubled(opt.window);
    auto s1 = detail::scan_window(w, c, opt.window, opt.radius);
    auto s2 = detail::scan_window(w, c, big, opt.radius ? std::optional<Int>(*opt.radius) : std::nullopt);
    v.checked_window = big;
    if (s1.uncovered == s2.uncovered) {
      v.status = Status::True;
      v.evidence = s1.uncovered;
      sort_witnesses(*v.evidence);
      v.note = "uncovered set stable under window doubling";
    } else {
      v.status = Status::Unknown;
      for (Int t : s2.uncovered)
        if (!opt.window.contains(t)) v.witnesses.push_back(t);
      sort_witnesses(v.witnesses);
      if (v.witnesses.size() > detail::kSample) v.witnesses.resize(detail::kSample);
      v.note = "uncovered set grows with the window";
    }
  } catch (const Error& e) {
    v.status = Status::Unknown;
    v.note = e.what();
  }
  return v;
}

inline Verdict is_asymptotic_complement(const IntSet& w, const IntSet& c, const CheckOptions& opt = {}) {
  Verdict v = asymptotic_exceptional_set(w, c, opt);
  v.evidence.reset();
  return v;
}

// ---------------------------------------------------------------------------
// Minimality

enum class CoverKind { Complement, Asymptotic };

namespace detail {

inline Verdict cover_test(CoverKind k, const IntSet& w, const IntSet& c, const CheckOptions& opt) {
  return k == CoverKind::Complement ? is_complement(w, c, opt) : is_asymptotic_complement(w, c, opt);
}

inline Removal remove_and_test(CoverKind k, const IntSet& w, const IntSet& c, Int x, const CheckOptions& opt) {
  Removal r;
  r.c = x;
  std::optional<IntSet> rest;
  try {
    rest = normalize(minus_finite(c, {x}));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::EmptySet) throw;
    r.status = Status::False;
    r.grade = Grade::Exact;
    r.witnesses = {0};
    return r;
  }
  Verdict v = cover_test(k, w, *rest, opt);
  r.status = v.status;
  r.grade = v.grade;
  r.witnesses = v.witnesses;
  return r;
}

/// Combines per-element removal results: any removal keeping the cover
/// property refutes minimality.
inline Verdict combine(const Verdict& base, std::vector<Removal> rs) {
  Verdict v;
  v.grade = base.grade;
  v.evidence = base.evidence;
  bool unknown = false;
  for (const auto& r : rs) {
    if (r.status == Status::True) v.witnesses.push_back(r.c);
    if (r.status == Status::Unknown) unknown = true;
    if (r.grade == Grade::Window) v.grade = Grade::Window;
  }
  sort_witnesses(v.witnesses);
  if (!v.witnesses.empty()) {
    v.status = Status::False;
    v.grade = Grade::Exact;
    for (const auto& r : rs)
      if (r.status == Status::True && r.grade == Grade::Window) v.grade = Grade::Window;
    v.note = "removable elements listed as witnesses";
  } else {
    v.status = unknown ? Status::Unknown : Status::True;
  }
  v.removals = std::move(rs);
  return v;
}

inline Verdict minimal_impl(CoverKind k, const IntSet& w_in, const IntSet& c_in, const CheckOptions& opt) {
  IntSet w = normalize(w_in), c = normalize(c_in);
  Verdict base = cover_test(k, w, c, opt);
  if (base.status != Status::True) {
    Verdict v = base;
    if (v.status == Status::False) v.note = "not a cover: " + v.note;
    return v;
  }
  if (auto f = c.as<FiniteSet>()) {
    std::vector<Removal> rs;
    for (Int x : f->elems) rs.push_back(remove_and_test(k, w, c, x, opt));
    return combine(base, std::move(rs));
  }
  if (auto bc = as_bep(c)) {
    Int l = bc->joint_period();
    if (auto bw = as_bep(w)) l = lcm_checked(l, bw->joint_period());
    std::vector<Int> cand = bc->core();
    for (Int t = sub(bc->lo(), mul(2, l)); t < bc->lo(); ++t)
      if (bc->contains(t)) cand.push_back(t);
    for (Int t = add(bc->hi(), 1); t <= add(bc->hi(), mul(2, l)); ++t)
      if (bc->contains(t)) cand.push_back(t);
    sort_unique(cand);
    std::vector<Removal> rs;
    for (Int x : cand) rs.push_back(remove_and_test(k, w, c, x, opt));
    Verdict v = combine(base, std::move(rs));
    if (v.status == Status::True) {
      // Elements beyond the candidate band are covered by periodicity only;
      // confirm each candidate's loss on the window before reporting.
      const Int radius = opt.radius ? *opt.radius : opt.window.size();
      for (const auto& r : v.removals) {
        for (Int t : r.witnesses) {
          if (!opt.window.contains(t)) continue;
          for (Int y = sub(t, radius); y <= add(t, radius); ++y) {
            if (y != r.c && bc->contains(y) && contains(w, t - y)) {
              v.status = Status::Unknown;
              v.note = "window oracle disagrees at " + std::to_string(t);
              return v;
            }
          }
        }
      }
      v.grade = Grade::Window;
      v.checked_window = opt.window;
      v.note = "removals checked for the core and two periods beyond each threshold";
    }
    return v;
  }
  Verdict v;
  v.status = Status::Unknown;
  v.note = "minimality is not decided for an infinite aperiodic C";
  return v;
}

}  // namespace detail

inline Verdict is_minimal_complement(const IntSet& w, const IntSet& c, const CheckOptions& opt = {}) {
  return detail::minimal_impl(CoverKind::Complement, w, c, opt);
}

inline Verdict is_minimal_asymptotic_complement(const IntSet& w_in, const IntSet& c, const CheckOptions& opt = {}) {
  IntSet w = normalize(w_in);
  if (w.as<FiniteSet>()) {
    // Removing one element from C only loses finitely many sums.
    Verdict base = is_asymptotic_complement(w, c, opt);
    Verdict v;
    v.grade = Grade::Exact;
    v.status = Status::False;
    if (base.status == Status::False) {
      v.witnesses = base.witnesses;
      v.grade = base.grade;
      v.note = "not a cover";
      return v;
    }
    IntSet cn = normalize(c);
    auto first = detail::scan_witnesses([&](Int t) { return contains(cn, t); }, 1, 1'000'000);
    v.witnesses = first;
    v.note = "W is finite, every element of C is removable";
    return v;
  }
  Verdict v = detail::minimal_impl(CoverKind::Asymptotic, w, c, opt);
  if (v.status == Status::True && !v.evidence) v.evidence = asymptotic_exceptional_set(w, c, opt).evidence;
  return v;
}

struct Redundancy {
  Int c;
  std::vector<Int> lost;  // extra uncovered points after removing c
};

/// Elements of C ∩ w whose removal only uncovers a finite set that stays
/// inside w when the window is doubled.
inline std::vector<Redundancy> redundant_elements(const IntSet& w_in, const IntSet& c_in, const Window& win,
                                                  std::optional<Int> radius = std::nullopt) {
  IntSet w = normalize(w_in), c = normalize(c_in);
  Window big = detail::doubled(win);
  auto base1 = detail::scan_window(w, c, win, radius).uncovered;
  auto base2 = detail::scan_window(w, c, big, radius).uncovered;
  std::vector<Redundancy> out;
  for (Int x : enumerate_window(c, win)) {
    std::optional<IntSet> rest;
    try {
      rest = normalize(minus_finite(c, {x}));
    } catch (const Error&) {
      continue;
    }
    auto diff = [](const std::vector<Int>& a, const std::vector<Int>& b) {
      std::vector<Int> d;
      std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(d));
      return d;
    };
    auto d1 = diff(detail::scan_window(w, *rest, win, radius).uncovered, base1);
    auto d2 = diff(detail::scan_window(w, *rest, big, radius).uncovered, base2);
    if (d1 == d2) out.push_back({x, d1});
  }
  return out;
}

}  // namespace addcomp

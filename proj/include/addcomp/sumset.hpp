#pragma once

// Sumsets A + B = { a + b }: exact on Bep pairs, pointwise where decidable,
// and windowed coverage masks for everything else.

#include <optional>
#include <vector>

#include "addcomp/intset.hpp"

namespace addcomp {

// ===========================================================================
// Exact Bep arithmetic

namespace detail {

inline Int gcd_i(Int a, Int b) { return std::gcd(a, b); }

/// ∃ x ≡ RA (mod TA), y ≡ RB (mod TB) with x + y = t and x drawn from the
/// integer interval [x_lo, x_hi]. Membership of x is periodic with period
/// lcm(TA, TB), so at most one period of candidates is examined.
inline bool tails_meet_in(const TailSpec& a, const TailSpec& b, Int t, Int x_lo, Int x_hi, bool ascending) {
  if (x_lo > x_hi) return false;
  const Int l = lcm_checked(a.period(), b.period());
  const Int n = std::min<__int128>(__int128{x_hi} - x_lo + 1, l);
  for (Int i = 0; i < n; ++i) {
    Int x = ascending ? x_lo + i : x_hi - i;
    if (a.pattern(x) && b.pattern(t - x)) return true;
  }
  return false;
}

/// Residue compatibility of a left tail with a right tail: the pair covers t
/// exactly when t ≡ ra + rb modulo gcd of the periods, for some residues.
inline bool tails_meet_everywhere(const TailSpec& a, const TailSpec& b, Int t) {
  const Int g = gcd_i(a.period(), b.period());
  for (Int ra : a.residues())
    for (Int rb : b.residues())
      if (floor_mod(t - ra - rb, g) == 0) return true;
  return false;
}

}  // namespace detail

/// t ∈ A + B, exactly.
inline bool bep_hit(const Bep& a, const Bep& b, Int t) {
  for (Int x : a.core())
    if (b.contains(t - x)) return true;
  for (Int y : b.core())
    if (a.contains(t - y)) return true;
  const TailSpec &al = a.left(), &ar = a.right(), &bl = b.left(), &br = b.right();
  // right + right: x > hi_a, t - x > hi_b
  if (!ar.is_empty() && !br.is_empty()) {
    __int128 top = __int128{t} - b.hi() - 1;
    if (top > a.hi() &&
        detail::tails_meet_in(ar, br, t, a.hi() + 1, static_cast<Int>(std::min<__int128>(top, std::numeric_limits<Int>::max())), true))
      return true;
  }
  // left + left: x < lo_a, t - x < lo_b
  if (!al.is_empty() && !bl.is_empty()) {
    __int128 bottom = __int128{t} - b.lo() + 1;
    if (bottom < a.lo() &&
        detail::tails_meet_in(al, bl, t, static_cast<Int>(std::max<__int128>(bottom, std::numeric_limits<Int>::min())), a.lo() - 1, false))
      return true;
  }
  if (!al.is_empty() && !br.is_empty() && detail::tails_meet_everywhere(al, br, t)) return true;
  if (!ar.is_empty() && !bl.is_empty() && detail::tails_meet_everywhere(ar, bl, t)) return true;
  return false;
}

/// Exact canonical descriptor of A + B.
inline Bep bep_sumset(const Bep& a, const Bep& b) {
  if (a.is_empty_set() || b.is_empty_set()) throw Error(ErrorKind::EmptySet, "sumset operand is empty");
  Int p = 1;
  for (const TailSpec* t : {&a.left(), &a.right(), &b.left(), &b.right()})
    if (!t->is_empty()) p = lcm_checked(p, t->period());
  if (p > kMaxPeriod) throw Error(ErrorKind::Overflow, "sumset period too large");
  // Beyond these points every contribution is periodic with period p.
  Int hi = add(add(add(a.hi(), b.hi()), p), 2);
  Int lo = sub(sub(add(a.lo(), b.lo()), p), 2);
  return Bep::from_predicate(lo, hi, p, p, [&](Int t) { return bep_hit(a, b, t); });
}

// ===========================================================================
// Structural coverage rule

namespace detail {

inline bool ray_rule_one_way(const IntSet& s1, const IntSet& s2) {
  if (auto lt = left_tail(s2)) {
    const Int p = lt->tail.period();
    auto u = residues_unbounded_above(s1, p);
    std::vector<bool> hit(static_cast<std::size_t>(p), false);
    for (Int r = 0; r < p; ++r)
      if (u[static_cast<std::size_t>(r)])
        for (Int r2 : lt->tail.residues()) hit[static_cast<std::size_t>(floor_mod(r + r2, p))] = true;
    if (std::all_of(hit.begin(), hit.end(), [](bool v) { return v; })) return true;
  }
  if (auto rt = right_tail(s2)) {
    const Int p = rt->tail.period();
    auto u = residues_unbounded_below(s1, p);
    std::vector<bool> hit(static_cast<std::size_t>(p), false);
    for (Int r = 0; r < p; ++r)
      if (u[static_cast<std::size_t>(r)])
        for (Int r2 : rt->tail.residues()) hit[static_cast<std::size_t>(floor_mod(r + r2, p))] = true;
    if (std::all_of(hit.begin(), hit.end(), [](bool v) { return v; })) return true;
  }
  return false;
}

}  // namespace detail

/// Proves A + B = ℤ when one operand contains a one-sided periodic ray whose
/// residues, added to the residues the other operand reaches arbitrarily far
/// in the opposite direction, exhaust every class.
inline bool covers_integers_by_rays(const IntSet& a, const IntSet& b) {
  return detail::ray_rule_one_way(a, b) || detail::ray_rule_one_way(b, a);
}

// ===========================================================================
// Pointwise membership in A + B

enum class Hit { No, Yes, Unknown };

inline const char* to_string(Hit h) {
  switch (h) {
    case Hit::No: return "no";
    case Hit::Yes: return "yes";
    case Hit::Unknown: return "unknown";
  }
  return "?";
}

namespace detail {

inline Hit finite_side_hit(const FiniteSet& f, const IntSet& other, Int t) {
  try {
    for (Int x : f.elems)
      if (contains(other, t - x)) return Hit::Yes;
    return Hit::No;
  } catch (const Error&) {
    return Hit::Unknown;
  }
}

}  // namespace detail

inline Hit pointwise_hit(const IntSet& a_in, const IntSet& b_in, Int t) {
  IntSet a = normalize(a_in), b = normalize(b_in);
  auto ba = as_bep(a), bb = as_bep(b);
  if (ba && bb) return bep_hit(*ba, *bb, t) ? Hit::Yes : Hit::No;
  if (auto f = a.as<FiniteSet>()) return detail::finite_side_hit(*f, b, t);
  if (auto f = b.as<FiniteSet>()) return detail::finite_side_hit(*f, a, t);
  // a cofinite set plus any infinite set is everything
  if (a.as<CofiniteSet>() || b.as<CofiniteSet>()) return Hit::Yes;
  if (covers_integers_by_rays(a, b)) return Hit::Yes;
  return Hit::Unknown;
}

// ===========================================================================
// Windowed coverage

struct CoverageMask {
  Window window;
  BitVec covered;
  Int interior_margin = 0;

  bool at(Int t) const { return covered.get(static_cast<std::size_t>(t - window.lo)); }

  /// Window minus the untrusted boundary band, if anything remains.
  std::optional<Window> trusted() const {
    if (window.size() <= 2 * interior_margin) return std::nullopt;
    return Window(window.lo + interior_margin, window.hi - interior_margin);
  }

  std::vector<Int> uncovered(bool trusted_only = true) const {
    std::vector<Int> out;
    Window w = window;
    if (trusted_only) {
      auto tw = trusted();
      if (!tw) return out;
      w = *tw;
    }
    for (Int t = w.lo; t <= w.hi; ++t)
      if (!at(t)) out.push_back(t);
    return out;
  }
};

namespace detail {

inline BitVec bits_of(const IntSet& s, Int lo, Int hi) {
  BitVec v(static_cast<std::size_t>(hi - lo + 1));
  for (Int t = lo; t <= hi; ++t)
    if (contains(s, t)) v.set(static_cast<std::size_t>(t - lo));
  return v;
}

inline BitVec bits_of(const Bep& s, Int lo, Int hi) {
  BitVec v(static_cast<std::size_t>(hi - lo + 1));
  for (Int t = lo; t <= hi; ++t)
    if (s.contains(t)) v.set(static_cast<std::size_t>(t - lo));
  return v;
}

/// dst[t] |= ∃ b ∈ shifts: src contains t − b, with src laid out on
/// [w.lo − max_shift, w.hi − min_shift].
inline void or_all_shifts(BitVec& dst, const BitVec& src, const std::vector<Int>& shifts, Int max_shift) {
  for (Int b : shifts) dst.or_shifted(src, static_cast<std::size_t>(max_shift - b));
}

}  // namespace detail

/// Coverage of A + B on w. Exact whenever membership is decidable; otherwise
/// B is enumerated on [−radius, radius] and the outer band of width max|b|
/// is marked untrusted.
inline CoverageMask windowed_sumset(const IntSet& a_in, const IntSet& b_in, const Window& w,
                                    std::optional<Int> radius = std::nullopt) {
  IntSet a = normalize(a_in), b = normalize(b_in);
  const Int n = w.size();
  CoverageMask m{w, BitVec(static_cast<std::size_t>(n)), 0};
  auto ba = as_bep(a), bb = as_bep(b);
  if (ba && bb) {
    m.covered = detail::bits_of(bep_sumset(*ba, *bb), w.lo, w.hi);
    return m;
  }
  if (b.as<FiniteSet>() == nullptr && a.as<FiniteSet>() != nullptr) std::swap(a, b);
  if (auto f = b.as<FiniteSet>()) {
    const Int mn = f->elems.front(), mx = f->elems.back();
    BitVec src = detail::bits_of(a, sub(w.lo, mx), sub(w.hi, mn));
    detail::or_all_shifts(m.covered, src, f->elems, mx);
    return m;
  }
  if (a.as<CofiniteSet>() || b.as<CofiniteSet>() || covers_integers_by_rays(a, b)) {
    m.covered.set_all();
    return m;
  }
  if (!radius) throw Error(ErrorKind::UndecidablePair, "membership of the sum is not decidable without bounds");
  const Int r = *radius;
  if (r < 0) throw Error(ErrorKind::RadiusTooSmall, "negative radius");
  std::vector<Int> shifts = enumerate_window(b, Window(neg(r), r));
  if (shifts.empty()) throw Error(ErrorKind::RadiusTooSmall, "no element of the enumerated operand within radius");
  BitVec src = detail::bits_of(a, sub(w.lo, r), add(w.hi, r));
  detail::or_all_shifts(m.covered, src, shifts, r);
  Int used = 0;
  for (Int x : shifts) used = std::max(used, x < 0 ? -x : x);
  m.interior_margin = std::min(used, n);
  return m;
}

}  // namespace addcomp

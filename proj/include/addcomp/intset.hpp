#pragma once

// Symbolic subsets of the integers.
//
// Every descriptor is an immutable value. The decidable substrate is the
// bi-eventually-periodic set (Bep): an explicit core on [lo, hi] plus periodic
// residue tails below lo and above hi. Finite and cofinite sets are Beps whose
// tails are both empty or both full. Interval families and pointwise
// predicates are layered on top; membership is always a pure function.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "addcomp/core.hpp"
#include "addcomp/primes.hpp"

namespace addcomp {

// ===========================================================================
// TailSpec

/// Behaviour of a set beyond a threshold. Left tails cover t < threshold,
/// right tails cover t > threshold; the side is fixed by usage.
class TailSpec {
 public:
  enum class Kind { Empty, Periodic };

  TailSpec() = default;

  static TailSpec empty(Int threshold) {
    TailSpec t;
    t.threshold_ = threshold;
    return t;
  }

  static TailSpec full(Int threshold) { return periodic(threshold, 1, {0}); }

  /// Residues are reduced modulo period; an empty residue list yields Empty.
  static TailSpec periodic(Int threshold, Int period, const std::vector<Int>& residues) {
    if (period < 1) throw Error(ErrorKind::BadParams, "tail period must be >= 1");
    if (period > kMaxPeriod) throw Error(ErrorKind::Overflow, "tail period too large");
    TailSpec t;
    t.threshold_ = threshold;
    t.mask_.assign(static_cast<std::size_t>(period), false);
    for (Int r : residues) t.mask_[static_cast<std::size_t>(floor_mod(r, period))] = true;
    t.reduce();
    return t;
  }

  static TailSpec from_mask(Int threshold, std::vector<bool> mask) {
    TailSpec t;
    t.threshold_ = threshold;
    t.mask_ = std::move(mask);
    t.reduce();
    return t;
  }

  Kind kind() const { return mask_.empty() ? Kind::Empty : Kind::Periodic; }
  bool is_empty() const { return mask_.empty(); }
  bool is_full() const { return mask_.size() == 1 && mask_[0]; }
  Int threshold() const { return threshold_; }
  /// Least period; 1 for empty tails.
  Int period() const { return mask_.empty() ? 1 : static_cast<Int>(mask_.size()); }

  std::vector<Int> residues() const {
    std::vector<Int> r;
    for (std::size_t i = 0; i < mask_.size(); ++i)
      if (mask_[i]) r.push_back(static_cast<Int>(i));
    return r;
  }

  /// Residue test, ignoring the threshold.
  bool pattern(Int t) const {
    if (mask_.empty()) return false;
    return mask_[static_cast<std::size_t>(floor_mod(t, static_cast<Int>(mask_.size())))];
  }

  bool same_pattern(const TailSpec& o) const { return mask_ == o.mask_; }

  TailSpec with_threshold(Int th) const {
    TailSpec t = *this;
    t.threshold_ = th;
    return t;
  }

  friend bool operator==(const TailSpec& a, const TailSpec& b) {
    return a.threshold_ == b.threshold_ && a.mask_ == b.mask_;
  }

 private:
  void reduce() {
    const std::size_t p = mask_.size();
    bool any = false;
    for (bool b : mask_) any = any || b;
    if (!any) {
      mask_.clear();
      return;
    }
    for (std::size_t d = 1; d < p; ++d) {
      if (p % d != 0) continue;
      bool ok = true;
      for (std::size_t i = d; i < p && ok; ++i) ok = mask_[i] == mask_[i - d];
      if (ok) {
        mask_.resize(d);
        return;
      }
    }
  }

  Int threshold_ = 0;
  std::vector<bool> mask_;
};

// ===========================================================================
// Bep

class Bep {
 public:
  /// Builds a canonical Bep. Left tail applies below lo, right tail above hi;
  /// core elements must lie in [lo, hi]. lo == hi + 1 denotes an empty core.
  Bep(const TailSpec& left, Int lo, Int hi, std::vector<Int> core, const TailSpec& right)
      : left_(left.with_threshold(lo)), right_(right.with_threshold(hi)), lo_(lo), hi_(hi),
        core_(std::move(core)) {
    if (lo > add(hi, 1)) throw Error(ErrorKind::InvalidWindow, "bep core window");
    sort_unique(core_);
    for (Int c : core_)
      if (c < lo || c > hi) throw Error(ErrorKind::BadParams, "core element outside core window");
    canonicalize();
  }

  static Bep finite(std::vector<Int> elems) {
    sort_unique(elems);
    if (elems.empty()) return Bep(TailSpec::empty(0), 0, -1, {}, TailSpec::empty(0));
    Int lo = elems.front(), hi = elems.back();
    return Bep(TailSpec::empty(lo), lo, hi, std::move(elems), TailSpec::empty(hi));
  }

  static Bep cofinite(std::vector<Int> excluded) {
    sort_unique(excluded);
    if (excluded.empty()) return Bep(TailSpec::full(0), 0, -1, {}, TailSpec::full(0));
    Int lo = excluded.front(), hi = excluded.back();
    std::vector<Int> core;
    for (Int t = lo; t <= hi; ++t)
      if (!sorted_contains(excluded, t)) core.push_back(t);
    return Bep(TailSpec::full(lo), lo, hi, std::move(core), TailSpec::full(hi));
  }

  /// { t : t < x }
  static Bep below(Int x) { return Bep(TailSpec::full(x), x, sub(x, 1), {}, TailSpec::empty(x)); }
  /// { t : t > x }
  static Bep above(Int x) { return Bep(TailSpec::empty(x), add(x, 1), x, {}, TailSpec::full(x)); }

  /// { t : t ≡ res (mod m), t < from } or { ... t > from }.
  static Bep ap(Int res, Int m, bool above_side, Int from) {
    if (m == 0) throw Error(ErrorKind::SemanticError, "modulus must be nonzero");
    if (m < 0) m = neg(m);
    auto tail = TailSpec::periodic(from, m, {res});
    if (above_side) return Bep(TailSpec::empty(from), add(from, 1), from, {}, tail);
    return Bep(tail, from, sub(from, 1), {}, TailSpec::empty(from));
  }

  /// nℤ (n ≠ 0; sign ignored).
  static Bep multiples(Int n) {
    if (n == 0) throw Error(ErrorKind::BadParams, "subgroup generator must be nonzero");
    if (n < 0) n = neg(n);
    auto t = TailSpec::periodic(0, n, {0});
    return Bep(t, 0, -1, {}, t);
  }

  /// Builds the Bep whose membership is f, given that f is periodic with
  /// period left_period below lo and right_period above hi.
  template <class F>
  static Bep from_predicate(Int lo, Int hi, Int left_period, Int right_period, F&& f) {
    std::vector<bool> lm(static_cast<std::size_t>(left_period)), rm(static_cast<std::size_t>(right_period));
    for (Int t = sub(lo, left_period); t < lo; ++t)
      lm[static_cast<std::size_t>(floor_mod(t, left_period))] = f(t);
    for (Int t = add(hi, 1); t <= add(hi, right_period); ++t)
      rm[static_cast<std::size_t>(floor_mod(t, right_period))] = f(t);
    std::vector<Int> core;
    for (Int t = lo; t <= hi; ++t)
      if (f(t)) core.push_back(t);
    return Bep(TailSpec::from_mask(lo, std::move(lm)), lo, hi, std::move(core),
               TailSpec::from_mask(hi, std::move(rm)));
  }

  bool contains(Int t) const {
    if (t < lo_) return left_.pattern(t);
    if (t > hi_) return right_.pattern(t);
    return sorted_contains(core_, t);
  }

  const TailSpec& left() const { return left_; }
  const TailSpec& right() const { return right_; }
  Int lo() const { return lo_; }
  Int hi() const { return hi_; }
  const std::vector<Int>& core() const { return core_; }

  bool is_empty_set() const { return left_.is_empty() && right_.is_empty() && core_.empty(); }
  bool is_finite() const { return left_.is_empty() && right_.is_empty(); }
  bool is_cofinite() const { return left_.is_full() && right_.is_full(); }

  /// Elements of the core window that are absent (the excluded set of a cofinite Bep).
  std::vector<Int> core_gaps() const {
    std::vector<Int> out;
    for (Int t = lo_; t <= hi_; ++t)
      if (!sorted_contains(core_, t)) out.push_back(t);
    return out;
  }

  /// lcm of both tail periods.
  Int joint_period() const { return lcm_checked(left_.period(), right_.period()); }

  Bep translate(Int g) const {
    auto shift_tail = [g](const TailSpec& t, Int th) {
      if (t.is_empty()) return TailSpec::empty(th);
      std::vector<Int> r;
      for (Int x : t.residues()) r.push_back(floor_mod(add(x, floor_mod(g, t.period())), t.period()));
      return TailSpec::periodic(th, t.period(), r);
    };
    std::vector<Int> c;
    c.reserve(core_.size());
    for (Int x : core_) c.push_back(add(x, g));
    Int lo = add(lo_, g), hi = add(hi_, g);
    return Bep(shift_tail(left_, lo), lo, hi, std::move(c), shift_tail(right_, hi));
  }

  Bep negate() const {
    auto reflect = [](const TailSpec& t, Int th) {
      if (t.is_empty()) return TailSpec::empty(th);
      std::vector<Int> r;
      for (Int x : t.residues()) r.push_back(floor_mod(-x, t.period()));
      return TailSpec::periodic(th, t.period(), r);
    };
    std::vector<Int> c;
    c.reserve(core_.size());
    for (Int x : core_) c.push_back(neg(x));
    Int lo = neg(hi_), hi = neg(lo_);
    return Bep(reflect(right_, lo), lo, hi, std::move(c), reflect(left_, hi));
  }

  Bep unite(const Bep& o) const {
    Int lo = std::min(lo_, o.lo_), hi = std::max(hi_, o.hi_);
    Int pl = lcm_checked(left_.period(), o.left_.period());
    Int pr = lcm_checked(right_.period(), o.right_.period());
    return from_predicate(lo, hi, pl, pr, [&](Int t) { return contains(t) || o.contains(t); });
  }

  Bep intersect(const Bep& o) const {
    Int lo = std::min(lo_, o.lo_), hi = std::max(hi_, o.hi_);
    Int pl = lcm_checked(left_.period(), o.left_.period());
    Int pr = lcm_checked(right_.period(), o.right_.period());
    return from_predicate(lo, hi, pl, pr, [&](Int t) { return contains(t) && o.contains(t); });
  }

  Bep minus(std::vector<Int> f) const {
    if (f.empty()) return *this;
    sort_unique(f);
    Int lo = std::min(lo_, f.front()), hi = std::max(hi_, f.back());
    return from_predicate(lo, hi, left_.period(), right_.period(),
                          [&](Int t) { return contains(t) && !sorted_contains(f, t); });
  }

  friend bool operator==(const Bep& a, const Bep& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_ && a.core_ == b.core_ && a.left_ == b.left_ &&
           a.right_ == b.right_;
  }

 private:
  void canonicalize() {
    const Bep old = shallow_copy();
    auto g = [&old](Int t) { return old.contains(t); };
    Int lo = lo_, hi = hi_;
    if (left_.same_pattern(right_)) {
      Int first = 0, last = -1;
      bool any = false;
      for (Int t = lo; t <= hi; ++t) {
        if (g(t) != right_.pattern(t)) {
          if (!any) first = t;
          last = t;
          any = true;
        }
      }
      lo = any ? first : 0;
      hi = any ? last : -1;
    } else {
      while (hi >= lo && g(hi) == right_.pattern(hi)) --hi;
      while (lo <= hi && g(lo) == left_.pattern(lo)) ++lo;
      if (lo > hi) {
        while (left_.pattern(lo - 1) == right_.pattern(lo - 1)) {
          --lo;
          --hi;
        }
      }
    }
    std::vector<Int> core;
    for (Int t = lo; t <= hi; ++t)
      if (g(t)) core.push_back(t);
    lo_ = lo;
    hi_ = hi;
    core_ = std::move(core);
    left_ = left_.with_threshold(lo);
    right_ = right_.with_threshold(hi);
  }

  Bep shallow_copy() const {
    Bep b;
    b.left_ = left_;
    b.right_ = right_;
    b.lo_ = lo_;
    b.hi_ = hi_;
    b.core_ = core_;
    return b;
  }

  Bep() = default;

  TailSpec left_, right_;
  Int lo_ = 0, hi_ = -1;
  std::vector<Int> core_;
};

// ===========================================================================
// FamilyRule

/// Quadratic c0 + c1·k + c2·k².
struct Poly {
  Int c0 = 0, c1 = 0, c2 = 0;

  __int128 at(Int k) const {
    __int128 kk = k;
    return __int128{c0} + __int128{c1} * kk + __int128{c2} * kk * kk;
  }
  /// Σ_{j=1}^{m} p(j)
  __int128 prefix_sum(Int m) const {
    __int128 mm = m;
    return __int128{c0} * mm + __int128{c1} * (mm * (mm + 1) / 2) +
           __int128{c2} * (mm * (mm + 1) * (2 * mm + 1) / 6);
  }
  bool strictly_increasing() const { return c2 >= 0 && c1 + 3 * c2 > 0; }
  friend bool operator==(const Poly&, const Poly&) = default;
};

/// Closed-form family of disjoint, ordered intervals I_1 < I_2 < ... with
/// strictly increasing lengths and strictly increasing gaps.
class FamilyRule {
 public:
  enum class Kind { Doubling, Generic, Blocks, BlocksComplement };

  static constexpr Int kDoublingMaxIndex = 40;

  /// s_k = (k-1)(k+2)/2 + 2^{k+1}, |I_k| = k + 1.
  static FamilyRule doubling() { return FamilyRule(Kind::Doubling); }

  /// |I_k| = len_i(k), |J_k| = len_j(k), s_1 = origin.
  static FamilyRule generic(Poly len_i, Poly len_j, Int origin) {
    if (!len_i.strictly_increasing() || !len_j.strictly_increasing())
      throw Error(ErrorKind::BadParams, "interval and gap lengths must be strictly increasing");
    if (len_i.at(1) < 1 || len_j.at(1) < 1)
      throw Error(ErrorKind::BadParams, "first interval and gap must be nonempty");
    FamilyRule r(Kind::Generic);
    r.len_i_ = len_i;
    r.len_j_ = len_j;
    r.origin_ = origin;
    r.max_k_ = r.compute_max_index();
    return r;
  }

  /// [10k², 10k(k+1)]
  static FamilyRule blocks() { return FamilyRule(Kind::Blocks); }
  /// Maximal runs of ℤ≥1 \ ∪[10k², 10k(k+1)]: [10k(k-1)+1, 10k²-1].
  static FamilyRule blocks_complement() { return FamilyRule(Kind::BlocksComplement); }

  Kind kind() const { return kind_; }
  const Poly& len_i() const { return len_i_; }
  const Poly& len_j() const { return len_j_; }
  Int origin() const { return origin_; }
  Int max_index() const { return max_k_; }

  std::string name() const {
    switch (kind_) {
      case Kind::Doubling: return "doubling";
      case Kind::Generic: return "generic";
      case Kind::Blocks: return "blocks";
      case Kind::BlocksComplement: return "blocks-complement";
    }
    return "?";
  }

  Int start(Int k) const {
    check_index(k);
    return start_unchecked(k);
  }

  Int length(Int k) const {
    check_index(k);
    switch (kind_) {
      case Kind::Doubling: return k + 1;
      case Kind::Generic: return narrow(len_i_.at(k));
      case Kind::Blocks: return add(mul(10, k), 1);
      case Kind::BlocksComplement: return sub(mul(10, k), 1);
    }
    return 0;
  }

  /// Last element of I_k.
  Int end(Int k) const { return sub(add(start(k), length(k)), 1); }

  /// Number of integers strictly between I_k and I_{k+1}.
  Int gap_after(Int k) const { return sub(sub(start(k + 1), end(k)), 1); }

  /// Largest k with start(k) <= x, or 0 when x < start(1).
  Int last_index_at_or_below(Int x) const {
    if (x < start(1)) return 0;
    if (x > end(max_k_)) throw Error(ErrorKind::Overflow, "family evaluated beyond index " + std::to_string(max_k_));
    Int lo = 1, hi = max_k_;
    while (lo < hi) {
      Int mid = lo + (hi - lo + 1) / 2;
      if (start(mid) <= x) lo = mid;
      else hi = mid - 1;
    }
    return lo;
  }

  std::optional<Int> index_containing(Int x) const {
    Int k = last_index_at_or_below(x);
    if (k == 0 || x > end(k)) return std::nullopt;
    return k;
  }

  bool contains(Int x) const { return index_containing(x).has_value(); }

  friend bool operator==(const FamilyRule& a, const FamilyRule& b) {
    return a.kind_ == b.kind_ && a.len_i_ == b.len_i_ && a.len_j_ == b.len_j_ && a.origin_ == b.origin_;
  }

 private:
  explicit FamilyRule(Kind k) : kind_(k) {
    switch (k) {
      case Kind::Doubling: max_k_ = kDoublingMaxIndex; break;
      // largest k keeping 10(k+1)² within 64 bits
      case Kind::Blocks:
      case Kind::BlocksComplement: max_k_ = 960'000'000; break;
      case Kind::Generic: break;
    }
  }

  void check_index(Int k) const {
    if (k < 1) throw Error(ErrorKind::BadParams, "family index must be >= 1");
    // start(max+1) is still representable; anything beyond is not.
    if (k > max_k_ + 1 || (kind_ == Kind::Doubling && k > kDoublingMaxIndex))
      throw Error(ErrorKind::Overflow, "family index " + std::to_string(k) + " exceeds cap");
  }

  Int start_unchecked(Int k) const {
    switch (kind_) {
      case Kind::Doubling: return narrow(__int128(k - 1) * (k + 2) / 2 + (__int128{1} << (k + 1)));
      case Kind::Generic: {
        Poly p{add(len_i_.c0, len_j_.c0), add(len_i_.c1, len_j_.c1), add(len_i_.c2, len_j_.c2)};
        return narrow(__int128{origin_} + p.prefix_sum(k - 1));
      }
      case Kind::Blocks: return narrow(__int128{10} * k * k);
      case Kind::BlocksComplement: return narrow(__int128{10} * k * (k - 1) + 1);
    }
    return 0;
  }

  Int compute_max_index() const {
    auto fits = [this](Int k) {
      try {
        (void)start_unchecked(k + 1);
        (void)narrow(len_i_.at(k + 1));
        return true;
      } catch (const Error&) {
        return false;
      }
    };
    Int lo = 1, hi = 1;
    while (hi < (Int{1} << 40) && fits(hi * 2)) hi *= 2;
    hi *= 2;
    while (lo < hi) {
      Int mid = lo + (hi - lo + 1) / 2;
      if (fits(mid)) lo = mid;
      else hi = mid - 1;
    }
    return lo;
  }

  Kind kind_;
  Poly len_i_{}, len_j_{};
  Int origin_ = 0;
  Int max_k_ = 0;
};

// ===========================================================================
// Pointwise predicates

enum class PredicateKind { NonPrimes, NonPowersOfTwo, NonSquares };

inline const char* predicate_name(PredicateKind k) {
  switch (k) {
    case PredicateKind::NonPrimes: return "nonprimes";
    case PredicateKind::NonPowersOfTwo: return "nonpowers2";
    case PredicateKind::NonSquares: return "nonsquares";
  }
  return "?";
}

inline bool predicate_holds(PredicateKind k, Int x) {
  switch (k) {
    case PredicateKind::NonPrimes: return !is_prime(x);
    case PredicateKind::NonPowersOfTwo: return x >= 1 && !is_power_of_two_pos(x);
    case PredicateKind::NonSquares: return x >= 1 && !is_square_pos(x);
  }
  return false;
}

// ===========================================================================
// Descriptor nodes

struct Node;

class IntSet {
 public:
  explicit IntSet(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  const Node& node() const { return *node_; }
  template <class T>
  const T* as() const;
  bool contains(Int t) const;

 private:
  std::shared_ptr<const Node> node_;
};

struct FiniteSet {
  std::vector<Int> elems;  // sorted, nonempty
};

struct CofiniteSet {
  std::vector<Int> excluded;  // sorted, possibly empty (ℤ)
};

struct BepSet {
  Bep bep;
};

/// t ∈ S  iff  t ∉ removed and (t ∈ extra or rule contains sign·t + offset).
struct FamilySet {
  FamilyRule rule;
  int sign = 1;
  Int offset = 0;
  std::optional<Bep> extra;
  std::vector<Int> removed;

  Int to_rule(Int t) const { return add(sign > 0 ? t : neg(t), offset); }
  Int from_rule(Int x) const {
    Int y = sub(x, offset);
    return sign > 0 ? y : neg(y);
  }
};

/// t ∈ S iff predicate(sign·t + offset), decidable for base values in range.
struct PointwiseSet {
  PredicateKind kind = PredicateKind::NonPrimes;
  int sign = 1;
  Int offset = 0;
  Int range_lo = std::numeric_limits<Int>::min();
  Int range_hi = std::numeric_limits<Int>::max();

  Int to_base(Int t) const { return add(sign > 0 ? t : neg(t), offset); }
};

struct UnionSet {
  std::vector<IntSet> parts;
};

struct MinusSet {
  IntSet base;
  std::vector<Int> removed;
};

struct TranslateSet {
  IntSet base;
  Int shift;
};

struct NegateSet {
  IntSet base;
};

using NodeVariant = std::variant<FiniteSet, CofiniteSet, BepSet, FamilySet, PointwiseSet, UnionSet,
                                 MinusSet, TranslateSet, NegateSet>;

struct Node : NodeVariant {
  using NodeVariant::NodeVariant;
};

template <class T>
const T* IntSet::as() const {
  return std::get_if<T>(static_cast<const NodeVariant*>(node_.get()));
}

// ---------------------------------------------------------------------------
// Constructors

inline IntSet make_set(Node n) { return IntSet(std::make_shared<const Node>(std::move(n))); }

inline IntSet finite_set(std::vector<Int> elems) {
  sort_unique(elems);
  if (elems.empty()) throw Error(ErrorKind::EmptySet, "finite set must be nonempty");
  return make_set(FiniteSet{std::move(elems)});
}

inline IntSet cofinite_set(std::vector<Int> excluded) {
  sort_unique(excluded);
  return make_set(CofiniteSet{std::move(excluded)});
}

inline IntSet integers() { return cofinite_set({}); }

/// Wraps a Bep in its most specific leaf form.
inline IntSet bep_set(const Bep& b) {
  if (b.is_empty_set()) throw Error(ErrorKind::EmptySet, "set is empty");
  if (b.is_finite()) return make_set(FiniteSet{b.core()});
  if (b.is_cofinite()) return make_set(CofiniteSet{b.core_gaps()});
  return make_set(BepSet{b});
}

inline IntSet below_set(Int x) { return bep_set(Bep::below(x)); }
inline IntSet above_set(Int x) { return bep_set(Bep::above(x)); }
inline IntSet multiples_set(Int n) { return bep_set(Bep::multiples(n)); }

inline IntSet family_set(FamilyRule rule) { return make_set(FamilySet{std::move(rule), 1, 0, std::nullopt, {}}); }

inline IntSet pointwise_set(PredicateKind k) { return make_set(PointwiseSet{k}); }

inline IntSet union_of(std::vector<IntSet> parts) {
  if (parts.empty()) throw Error(ErrorKind::EmptySet, "empty union");
  return make_set(UnionSet{std::move(parts)});
}
inline IntSet union_of(IntSet a, IntSet b) { return union_of(std::vector<IntSet>{std::move(a), std::move(b)}); }

inline IntSet minus_finite(IntSet base, std::vector<Int> f) {
  sort_unique(f);
  return make_set(MinusSet{std::move(base), std::move(f)});
}

inline IntSet translated(IntSet base, Int g) { return make_set(TranslateSet{std::move(base), g}); }
inline IntSet negated(IntSet base) { return make_set(NegateSet{std::move(base)}); }

// ---------------------------------------------------------------------------
// Membership

inline bool contains(const IntSet& s, Int t);

namespace detail {

inline bool contains_node(const Node& n, Int t) {
  return std::visit(
      [t](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, FiniteSet>) {
          return sorted_contains(v.elems, t);
        } else if constexpr (std::is_same_v<T, CofiniteSet>) {
          return !sorted_contains(v.excluded, t);
        } else if constexpr (std::is_same_v<T, BepSet>) {
          return v.bep.contains(t);
        } else if constexpr (std::is_same_v<T, FamilySet>) {
          if (sorted_contains(v.removed, t)) return false;
          if (v.extra && v.extra->contains(t)) return true;
          return v.rule.contains(v.to_rule(t));
        } else if constexpr (std::is_same_v<T, PointwiseSet>) {
          Int x = v.to_base(t);
          if (x < v.range_lo || x > v.range_hi)
            throw Error(ErrorKind::OutOfDecidableRange, std::to_string(t) + " outside decidable range");
          return predicate_holds(v.kind, x);
        } else if constexpr (std::is_same_v<T, UnionSet>) {
          for (const auto& p : v.parts)
            if (contains(p, t)) return true;
          return false;
        } else if constexpr (std::is_same_v<T, MinusSet>) {
          return !sorted_contains(v.removed, t) && contains(v.base, t);
        } else if constexpr (std::is_same_v<T, TranslateSet>) {
          return contains(v.base, sub(t, v.shift));
        } else {
          return contains(v.base, neg(t));
        }
      },
      static_cast<const NodeVariant&>(n));
}

}  // namespace detail

inline bool contains(const IntSet& s, Int t) { return detail::contains_node(s.node(), t); }
inline bool IntSet::contains(Int t) const { return addcomp::contains(*this, t); }

inline std::vector<Int> enumerate_window(const IntSet& s, const Window& w) {
  std::vector<Int> out;
  for (Int t = w.lo;; ++t) {
    if (contains(s, t)) out.push_back(t);
    if (t == w.hi) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Normalization

/// The Bep form of a Finite/Cofinite/Bep leaf.
inline std::optional<Bep> as_bep(const IntSet& s) {
  if (auto f = s.as<FiniteSet>()) return Bep::finite(f->elems);
  if (auto c = s.as<CofiniteSet>()) return Bep::cofinite(c->excluded);
  if (auto b = s.as<BepSet>()) return b->bep;
  return std::nullopt;
}

inline IntSet normalize(const IntSet& s, bool strict = false);

namespace detail {

inline IntSet make_family(FamilySet f) {
  if (f.extra && f.extra->is_empty_set()) f.extra.reset();
  sort_unique(f.removed);
  // keep only removals that would otherwise be members
  std::vector<Int> keep;
  for (Int r : f.removed) {
    bool member = (f.extra && f.extra->contains(r)) || f.rule.contains(f.to_rule(r));
    if (member) keep.push_back(r);
  }
  f.removed = std::move(keep);
  return make_set(std::move(f));
}

inline IntSet translate_leaf(const IntSet& n, Int g);
inline IntSet negate_leaf(const IntSet& n);

inline IntSet translate_leaf(const IntSet& n, Int g) {
  if (auto b = as_bep(n)) return bep_set(b->translate(g));
  if (auto f = n.as<FamilySet>()) {
    FamilySet r = *f;
    r.offset = sub(r.offset, f->sign > 0 ? g : neg(g));
    if (r.extra) r.extra = r.extra->translate(g);
    for (auto& x : r.removed) x = add(x, g);
    return make_family(std::move(r));
  }
  if (auto p = n.as<PointwiseSet>()) {
    PointwiseSet r = *p;
    r.offset = sub(r.offset, p->sign > 0 ? g : neg(g));
    return make_set(r);
  }
  if (auto u = n.as<UnionSet>()) {
    std::vector<IntSet> parts;
    for (const auto& q : u->parts) parts.push_back(translate_leaf(q, g));
    return make_set(UnionSet{std::move(parts)});
  }
  if (auto m = n.as<MinusSet>()) {
    std::vector<Int> f = m->removed;
    for (auto& x : f) x = add(x, g);
    return make_set(MinusSet{translate_leaf(m->base, g), std::move(f)});
  }
  return translated(n, g);
}

inline IntSet negate_leaf(const IntSet& n) {
  if (auto b = as_bep(n)) return bep_set(b->negate());
  if (auto f = n.as<FamilySet>()) {
    FamilySet r = *f;
    r.sign = -f->sign;
    if (r.extra) r.extra = r.extra->negate();
    for (auto& x : r.removed) x = neg(x);
    return make_family(std::move(r));
  }
  if (auto p = n.as<PointwiseSet>()) {
    PointwiseSet r = *p;
    r.sign = -p->sign;
    return make_set(r);
  }
  if (auto u = n.as<UnionSet>()) {
    std::vector<IntSet> parts;
    for (const auto& q : u->parts) parts.push_back(negate_leaf(q));
    return make_set(UnionSet{std::move(parts)});
  }
  if (auto m = n.as<MinusSet>()) {
    std::vector<Int> f = m->removed;
    for (auto& x : f) x = neg(x);
    return make_set(MinusSet{negate_leaf(m->base), std::move(f)});
  }
  return negated(n);
}

}  // namespace detail

/// Folds combinators into canonical Finite/Cofinite/Bep leaves; families
/// absorb Bep parts and finite removals. Unions of two families (or of a
/// pointwise set with anything) stay unevaluated unless strict is set, in
/// which case NonRepresentable is thrown.
inline IntSet normalize(const IntSet& s, bool strict) {
  if (auto b = as_bep(s)) return bep_set(*b);
  if (auto f = s.as<FamilySet>()) return detail::make_family(*f);
  if (s.as<PointwiseSet>()) return s;
  if (auto t = s.as<TranslateSet>()) return detail::translate_leaf(normalize(t->base, strict), t->shift);
  if (auto n = s.as<NegateSet>()) return detail::negate_leaf(normalize(n->base, strict));
  if (auto m = s.as<MinusSet>()) {
    IntSet base = normalize(m->base, strict);
    if (auto b = as_bep(base)) return bep_set(b->minus(m->removed));
    if (auto f = base.as<FamilySet>()) {
      FamilySet r = *f;
      r.removed.insert(r.removed.end(), m->removed.begin(), m->removed.end());
      return detail::make_family(std::move(r));
    }
    std::vector<Int> keep;
    for (Int x : m->removed)
      if (contains(base, x)) keep.push_back(x);
    if (keep.empty()) return base;
    if (strict) throw Error(ErrorKind::NonRepresentable, "removal from a pointwise set");
    return make_set(MinusSet{base, keep});
  }
  const auto& u = *s.as<UnionSet>();
  std::vector<IntSet> flat;
  std::function<void(const IntSet&)> collect = [&](const IntSet& x) {
    IntSet n = normalize(x, strict);
    if (auto uu = n.as<UnionSet>()) {
      for (const auto& p : uu->parts) collect(p);
    } else {
      flat.push_back(n);
    }
  };
  for (const auto& p : u.parts) collect(p);

  std::optional<Bep> bep;
  std::vector<IntSet> others;
  for (const auto& p : flat) {
    if (auto b = as_bep(p)) bep = bep ? bep->unite(*b) : *b;
    else others.push_back(p);
  }
  if (others.empty()) return bep_set(*bep);
  if (others.size() == 1) {
    if (!bep) return others.front();
    if (auto f = others.front().as<FamilySet>()) {
      FamilySet r = *f;
      r.extra = r.extra ? r.extra->unite(*bep) : *bep;
      std::vector<Int> keep;
      for (Int x : r.removed)
        if (!bep->contains(x)) keep.push_back(x);
      r.removed = std::move(keep);
      return detail::make_family(std::move(r));
    }
  }
  if (strict) throw Error(ErrorKind::NonRepresentable, "union mixes non-absorbable parts");
  if (bep) others.push_back(bep_set(*bep));
  return make_set(UnionSet{std::move(others)});
}

inline IntSet translate(const IntSet& s, Int g) { return normalize(translated(s, g)); }
inline IntSet negate(const IntSet& s) { return normalize(negated(s)); }

// ---------------------------------------------------------------------------
// Structural queries on normalized descriptors

inline bool is_finite(const IntSet& s) { return s.as<FiniteSet>() != nullptr; }

/// A proven lower bound of the set, when it is bounded below.
inline std::optional<Int> lower_bound(const IntSet& s);
inline std::optional<Int> upper_bound(const IntSet& s);

namespace detail {

inline std::optional<Int> bep_min(const Bep& b) {
  if (!b.left().is_empty()) return std::nullopt;
  if (!b.core().empty()) return b.core().front();
  if (b.right().is_empty()) return std::nullopt;
  for (Int t = b.hi() + 1;; ++t)
    if (b.right().pattern(t)) return t;
}

}  // namespace detail

inline std::optional<Int> lower_bound(const IntSet& s) {
  if (auto b = as_bep(s)) return detail::bep_min(*b);
  if (auto f = s.as<FamilySet>()) {
    if (f->sign < 0) return std::nullopt;
    Int m = f->from_rule(f->rule.start(1));
    if (f->extra) {
      auto e = detail::bep_min(*f->extra);
      if (!e) return std::nullopt;
      m = std::min(m, *e);
    }
    return m;
  }
  if (auto p = s.as<PointwiseSet>()) {
    if (p->kind == PredicateKind::NonPrimes || p->sign < 0) return std::nullopt;
    return sub(1, p->offset);
  }
  if (auto u = s.as<UnionSet>()) {
    std::optional<Int> m;
    for (const auto& q : u->parts) {
      auto b = lower_bound(q);
      if (!b) return std::nullopt;
      m = m ? std::min(*m, *b) : *b;
    }
    return m;
  }
  if (auto m = s.as<MinusSet>()) return lower_bound(m->base);
  return std::nullopt;
}

inline std::optional<Int> upper_bound(const IntSet& s) {
  auto b = lower_bound(negate(s));
  if (!b) return std::nullopt;
  return neg(*b);
}

/// Periodic pattern (period, residues) contained in the set below some point,
/// as (pattern tail, point below which the pattern holds).
struct TailWitness {
  TailSpec tail;
  Int below;
};

inline std::optional<TailWitness> left_tail(const IntSet& s) {
  if (auto b = as_bep(s)) {
    if (b->left().is_empty()) return std::nullopt;
    return TailWitness{b->left(), b->lo()};
  }
  if (auto f = s.as<FamilySet>()) {
    if (!f->extra || f->extra->left().is_empty()) return std::nullopt;
    Int below = f->extra->lo();
    if (!f->removed.empty()) below = std::min(below, f->removed.front());
    return TailWitness{f->extra->left(), below};
  }
  if (auto p = s.as<PointwiseSet>()) {
    // nonprimes contain every base value <= 1
    if (p->kind == PredicateKind::NonPrimes && p->sign > 0) return TailWitness{TailSpec::full(0), sub(2, p->offset)};
    return std::nullopt;
  }
  if (auto u = s.as<UnionSet>()) {
    for (const auto& q : u->parts)
      if (auto t = left_tail(q)) return t;
    return std::nullopt;
  }
  if (auto m = s.as<MinusSet>()) {
    auto t = left_tail(m->base);
    if (t && !m->removed.empty()) t->below = std::min(t->below, m->removed.front());
    return t;
  }
  return std::nullopt;
}

inline std::optional<TailWitness> right_tail(const IntSet& s) {
  auto t = left_tail(negate(s));
  if (!t) return std::nullopt;
  std::vector<Int> r;
  for (Int x : t->tail.residues()) r.push_back(floor_mod(-x, t->tail.period()));
  return TailWitness{TailSpec::periodic(0, t->tail.period(), r), neg(t->below)};
}

/// Residues r mod m such that S contains arbitrarily large elements ≡ r.
/// Returns a conservative subset when the structure is not fully known.
inline std::vector<bool> residues_unbounded_above(const IntSet& s, Int m) {
  std::vector<bool> out(static_cast<std::size_t>(m), false);
  auto from_tail = [&](const TailSpec& t) {
    if (t.is_empty()) return;
    Int g = std::gcd(m, t.period());
    for (Int r = 0; r < m; ++r)
      for (Int x : t.residues())
        if (floor_mod(r - x, g) == 0) out[static_cast<std::size_t>(r)] = true;
  };
  if (auto b = as_bep(s)) {
    from_tail(b->right());
  } else if (auto f = s.as<FamilySet>()) {
    if (f->sign > 0) out.assign(out.size(), true);  // interval lengths grow without bound
    else if (f->extra) from_tail(f->extra->right());
  } else if (auto p = s.as<PointwiseSet>()) {
    if (p->sign > 0 || p->kind == PredicateKind::NonPrimes) out.assign(out.size(), true);
  } else if (auto u = s.as<UnionSet>()) {
    for (const auto& q : u->parts) {
      auto r = residues_unbounded_above(q, m);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] || r[i];
    }
  } else if (auto mm = s.as<MinusSet>()) {
    return residues_unbounded_above(mm->base, m);
  }
  return out;
}

inline std::vector<bool> residues_unbounded_below(const IntSet& s, Int m) {
  auto r = residues_unbounded_above(negate(s), m);
  std::vector<bool> out(r.size());
  for (Int i = 0; i < m; ++i) out[static_cast<std::size_t>(floor_mod(-i, m))] = r[static_cast<std::size_t>(i)];
  return out;
}

/// True when ℤ \ S is known to be infinite.
inline bool complement_known_infinite(const IntSet& s) {
  if (auto b = as_bep(s)) return !b->is_cofinite();
  if (s.as<FamilySet>()) {
    const auto& f = *s.as<FamilySet>();
    // gaps J_k are nonempty on the rule side; the extra part can only cover one side
    if (!f.extra) return true;
    return f.sign > 0 ? f.extra->right().is_empty() : f.extra->left().is_empty();
  }
  if (s.as<PointwiseSet>()) return true;
  if (auto m = s.as<MinusSet>()) return complement_known_infinite(m->base);
  return false;
}

// ---------------------------------------------------------------------------
// Classification and gap statistics

enum class SetClass { Finite, Cofinite, Bep, Family, Pointwise, WindowOnly };

inline const char* to_string(SetClass c) {
  switch (c) {
    case SetClass::Finite: return "finite";
    case SetClass::Cofinite: return "cofinite";
    case SetClass::Bep: return "bep";
    case SetClass::Family: return "family";
    case SetClass::Pointwise: return "pointwise";
    case SetClass::WindowOnly: return "window-only";
  }
  return "?";
}

struct Classification {
  SetClass tag;
  bool bounded_below = false;
  bool bounded_above = false;
  bool eventually_periodic = false;
  std::optional<Int> period;  // least period of the upper tail, when periodic
};

inline Classification classify(const IntSet& input) {
  IntSet s = normalize(input);
  Classification c{SetClass::WindowOnly, false, false, false, std::nullopt};
  c.bounded_below = lower_bound(s).has_value();
  c.bounded_above = upper_bound(s).has_value();
  if (s.as<FiniteSet>()) c.tag = SetClass::Finite;
  else if (s.as<CofiniteSet>()) c.tag = SetClass::Cofinite;
  else if (auto b = s.as<BepSet>()) {
    c.tag = SetClass::Bep;
    if (!b->bep.right().is_empty()) c.period = b->bep.right().period();
    c.eventually_periodic = c.bounded_below && !b->bep.right().is_empty();
  } else if (s.as<FamilySet>()) c.tag = SetClass::Family;
  else if (s.as<PointwiseSet>()) c.tag = SetClass::Pointwise;
  return c;
}

namespace detail {

/// Gap extremum per dyadic segment [P/8, P/4), [P/4, P/2), [P/2, P] of gap
/// end positions measured from the first element; strictly increasing
/// extrema across the three segments mark a growing trend.
inline bool segment_trend(const std::vector<Int>& elems, bool use_min) {
  if (elems.size() < 4) return false;
  const Int base = elems.front();
  const Int span = elems.back() - base;
  if (span < 8) return false;
  std::optional<Int> ext[3];
  for (std::size_t i = 0; i + 1 < elems.size(); ++i) {
    Int pos = elems[i + 1] - base;
    int seg = pos >= span / 2 ? 2 : pos >= span / 4 ? 1 : pos >= span / 8 ? 0 : -1;
    if (seg < 0) continue;
    Int g = elems[i + 1] - elems[i];
    auto& e = ext[seg];
    if (!e) e = g;
    else e = use_min ? std::min(*e, g) : std::max(*e, g);
  }
  if (!ext[0] || !ext[1] || !ext[2]) return false;
  if (use_min && *ext[2] < 2) return false;
  return *ext[0] < *ext[1] && *ext[1] < *ext[2];
}

}  // namespace detail

struct GapSummary {
  std::vector<Int> gaps;
  Int max_gap = 0;
  bool max_growing = false;  // record gaps keep growing (limsup → ∞ evidence)
  bool min_growing = false;  // every gap keeps growing (lim → ∞ evidence)
};

inline GapSummary gap_summary_of(const std::vector<Int>& elems) {
  if (elems.size() < 2) throw Error(ErrorKind::TooFewElements, "need at least two elements");
  GapSummary g;
  for (std::size_t i = 1; i < elems.size(); ++i) g.gaps.push_back(elems[i] - elems[i - 1]);
  g.max_gap = *std::max_element(g.gaps.begin(), g.gaps.end());
  g.max_growing = detail::segment_trend(elems, false);
  g.min_growing = detail::segment_trend(elems, true);
  return g;
}

inline GapSummary gap_sequence(const IntSet& s, const Window& w) {
  return gap_summary_of(enumerate_window(s, w));
}

}  // namespace addcomp

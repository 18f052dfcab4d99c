#pragma once

// Shared primitives: error type, checked 64-bit arithmetic, windows, bit vectors.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace addcomp {

using Int = std::int64_t;

enum class ErrorKind {
  EmptySet,
  Overflow,
  OutOfDecidableRange,
  NonRepresentable,
  TooFewElements,
  UndecidablePair,
  RadiusTooSmall,
  TooLarge,
  NotDecidable,
  FNotSubset,
  MissingResidueClass,
  NotContainingSubgroup,
  ComplementNotInfinite,
  NoCongruentPair,
  PreconditionViolated,
  HypothesisNotObserved,
  BadParams,
  SyntaxError,
  SemanticError,
  InvalidWindow,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::OutOfDecidableRange: return "OutOfDecidableRange";
    case ErrorKind::NonRepresentable: return "NonRepresentable";
    case ErrorKind::TooFewElements: return "TooFewElements";
    case ErrorKind::UndecidablePair: return "UndecidablePair";
    case ErrorKind::RadiusTooSmall: return "RadiusTooSmall";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotDecidable: return "NotDecidable";
    case ErrorKind::FNotSubset: return "FNotSubset";
    case ErrorKind::MissingResidueClass: return "MissingResidueClass";
    case ErrorKind::NotContainingSubgroup: return "NotContainingSubgroup";
    case ErrorKind::ComplementNotInfinite: return "ComplementNotInfinite";
    case ErrorKind::NoCongruentPair: return "NoCongruentPair";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::HypothesisNotObserved: return "HypothesisNotObserved";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::SemanticError: return "SemanticError";
    case ErrorKind::InvalidWindow: return "InvalidWindow";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// ---------------------------------------------------------------------------
// Checked arithmetic

inline Int add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "addition");
  return r;
}

inline Int sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "subtraction");
  return r;
}

inline Int mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "multiplication");
  return r;
}

inline Int neg(Int a) {
  if (a == std::numeric_limits<Int>::min()) throw Error(ErrorKind::Overflow, "negation");
  return -a;
}

inline Int narrow(__int128 v) {
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
    throw Error(ErrorKind::Overflow, "value exceeds 64-bit range");
  return static_cast<Int>(v);
}

/// Mathematical modulus: result in [0, m) for m > 0.
inline Int floor_mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

inline Int lcm_checked(Int a, Int b) { return mul(a / std::gcd(a, b), b); }

// Cap on tail periods produced by set algebra; keeps residue tables small.
inline constexpr Int kMaxPeriod = Int{1} << 22;

// ---------------------------------------------------------------------------

struct Window {
  Int lo = 0;
  Int hi = 0;

  Window() = default;
  Window(Int l, Int h) : lo(l), hi(h) {
    if (lo > hi) throw Error(ErrorKind::InvalidWindow, "lo > hi");
  }

  Int size() const { return add(sub(hi, lo), 1); }
  bool contains(Int t) const { return lo <= t && t <= hi; }
  friend bool operator==(const Window&, const Window&) = default;
};

/// Ordering used for witness reporting: smallest |t| first, ties to the negative.
inline bool witness_less(Int a, Int b) {
  auto abs_u = [](Int x) -> unsigned long long {
    return x < 0 ? 0ULL - static_cast<unsigned long long>(x) : static_cast<unsigned long long>(x);
  };
  if (abs_u(a) != abs_u(b)) return abs_u(a) < abs_u(b);
  return a < b;
}

inline void sort_witnesses(std::vector<Int>& v) {
  std::sort(v.begin(), v.end(), witness_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

inline void sort_unique(std::vector<Int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

inline bool sorted_contains(const std::vector<Int>& v, Int t) {
  return std::binary_search(v.begin(), v.end(), t);
}

// ---------------------------------------------------------------------------

/// Fixed-length bit vector with a word-level shifted OR, the inner kernel of
/// every windowed sumset.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  void set_all() {
    std::fill(w_.begin(), w_.end(), ~std::uint64_t{0});
    trim();
  }

  /// this[i] |= src[i + offset] for all i in [0, size()); requires
  /// offset + size() <= src.size().
  void or_shifted(const BitVec& src, std::size_t offset) {
    const std::size_t ws = offset >> 6;
    const unsigned bs = offset & 63;
    const std::size_t nw = w_.size();
    const std::size_t sw = src.w_.size();
    for (std::size_t i = 0; i < nw; ++i) {
      std::uint64_t lo = ws + i < sw ? src.w_[ws + i] : 0;
      std::uint64_t v = lo >> bs;
      if (bs != 0 && ws + i + 1 < sw) v |= src.w_[ws + i + 1] << (64 - bs);
      w_[i] |= v;
    }
    trim();
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
    return c;
  }

  bool all() const { return count() == n_; }

  friend bool operator==(const BitVec&, const BitVec&) = default;

 private:
  void trim() {
    if (n_ % 64 != 0 && !w_.empty()) w_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace addcomp

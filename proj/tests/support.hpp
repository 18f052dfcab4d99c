#pragma once

// Test-side generators and reference implementations. Nothing here calls
// into the canonicalization or sumset code paths it is used to check.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "addcomp/addcomp.hpp"

namespace testsupport {

using addcomp::Int;

/// A bi-eventually-periodic set given by raw, non-canonical parameters.
struct RawBep {
  Int lp = 1, rp = 1;
  std::vector<bool> lmask, rmask;  // residue masks; all-false means empty tail
  Int lo = 0, hi = -1;
  std::vector<Int> core;

  bool operator()(Int t) const {
    if (t < lo) return lmask[static_cast<std::size_t>(((t % lp) + lp) % lp)];
    if (t > hi) return rmask[static_cast<std::size_t>(((t % rp) + rp) % rp)];
    for (Int c : core)
      if (c == t) return true;
    return false;
  }

  addcomp::Bep build() const {
    auto to_tail = [](Int th, Int p, const std::vector<bool>& m) {
      std::vector<Int> r;
      for (Int i = 0; i < p; ++i)
        if (m[static_cast<std::size_t>(i)]) r.push_back(i);
      return r.empty() ? addcomp::TailSpec::empty(th) : addcomp::TailSpec::periodic(th, p, r);
    };
    return addcomp::Bep(to_tail(lo, lp, lmask), lo, hi, core, to_tail(hi, rp, rmask));
  }

  bool nonempty() const {
    for (bool b : lmask)
      if (b) return true;
    for (bool b : rmask)
      if (b) return true;
    return !core.empty();
  }
};

/// Random raw Bep with periods in [1, max_period] and thresholds in
/// [-max_threshold, max_threshold]. Each tail is empty with probability 1/4.
inline RawBep random_raw_bep(std::mt19937_64& rng, Int max_period, Int max_threshold) {
  std::uniform_int_distribution<Int> pd(1, max_period), td(-max_threshold, max_threshold);
  std::bernoulli_distribution coin(0.5), quarter(0.25);
  RawBep r;
  do {
    r.lp = pd(rng);
    r.rp = pd(rng);
    r.lmask.assign(static_cast<std::size_t>(r.lp), false);
    r.rmask.assign(static_cast<std::size_t>(r.rp), false);
    if (!quarter(rng))
      for (auto&& b : r.lmask) b = coin(rng);
    if (!quarter(rng))
      for (auto&& b : r.rmask) b = coin(rng);
    Int a = td(rng), b = td(rng);
    r.lo = std::min(a, b);
    r.hi = std::max(a, b);
    r.core.clear();
    for (Int t = r.lo; t <= r.hi; ++t)
      if (coin(rng)) r.core.push_back(t);
  } while (!r.nonempty());
  return r;
}

/// Reference coverage by direct double loop over explicit element lists.
inline std::vector<bool> naive_cover(const std::vector<Int>& a, const std::vector<Int>& b, Int lo, Int hi) {
  std::vector<bool> out(static_cast<std::size_t>(hi - lo + 1), false);
  for (Int x : a)
    for (Int y : b) {
      Int t = x + y;
      if (t >= lo && t <= hi) out[static_cast<std::size_t>(t - lo)] = true;
    }
  return out;
}

inline std::vector<Int> elements_in(const std::function<bool(Int)>& f, Int lo, Int hi) {
  std::vector<Int> out;
  for (Int t = lo; t <= hi; ++t)
    if (f(t)) out.push_back(t);
  return out;
}

/// Intervals of the doubling family listed from the closed form directly.
inline std::vector<std::pair<Int, Int>> doubling_family_intervals(int count) {
  std::vector<std::pair<Int, Int>> out;
  for (Int k = 1; k <= count; ++k) {
    Int s = (k - 1) * (k + 2) / 2 + (Int{1} << (k + 1));
    out.emplace_back(s, s + k);
  }
  return out;
}

inline bool trial_division_prime(Int n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace testsupport

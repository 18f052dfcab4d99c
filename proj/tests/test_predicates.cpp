#include <catch_amalgamated.hpp>

#include <random>

#include "support.hpp"

using namespace addcomp;
using testsupport::RawBep;

namespace {

IntSet nonprimes() { return pointwise_set(PredicateKind::NonPrimes); }
IntSet doubling() { return family_set(FamilyRule::doubling()); }
IntSet doubling_ray() { return normalize(union_of(below_set(4), doubling())); }

// uncovered points of W + C on [lo, hi], by double loop with C given explicitly
std::vector<Int> naive_uncovered(const IntSet& w, const std::vector<Int>& c, Int lo, Int hi) {
  std::vector<Int> out;
  for (Int t = lo; t <= hi; ++t) {
    bool hit = false;
    for (Int x : c) hit = hit || contains(w, t - x);
    if (!hit) out.push_back(t);
  }
  return out;
}

}  // namespace

TEST_CASE("complement verdicts") {
  CheckOptions wide;
  wide.window = Window(-10000, 10000);
  auto v = is_complement(nonprimes(), finite_set({0, 1, -1}), wide);
  CHECK(v.status == Status::True);
  CHECK(v.witnesses.empty());

  auto f = is_complement(nonprimes(), finite_set({0, 1}));
  CHECK(f.status == Status::False);
  REQUIRE_FALSE(f.witnesses.empty());
  CHECK(f.witnesses.front() == 3);

  auto e = is_complement(multiples_set(2), finite_set({0}));
  CHECK(e.status == Status::False);
  CHECK(e.grade == Grade::Exact);
  // 1 and -1 tie on absolute value
  CHECK(e.witnesses.front() == -1);

  auto co = is_complement(cofinite_set({0, 2}), finite_set({0, 1}));
  CHECK(co.status == Status::True);
  CHECK(co.grade == Grade::Exact);
}

TEST_CASE("asymptotic exceptional sets") {
  auto v = asymptotic_exceptional_set(nonprimes(), finite_set({0, 1}));
  CHECK(v.status == Status::True);
  REQUIRE(v.evidence);
  CHECK(*v.evidence == std::vector<Int>{3});
  CHECK(naive_uncovered(nonprimes(), {0, 1}, -1000, 1000) == std::vector<Int>{3});

  IntSet w = normalize(union_of(multiples_set(4), finite_set({1})));
  auto f = asymptotic_exceptional_set(w, finite_set({0, 1, 2}));
  CHECK(f.status == Status::False);
  CHECK(f.grade == Grade::Exact);
  REQUIRE(f.witnesses.size() >= 3);
  // smallest absolute value first, ties to the negative
  CHECK(f.witnesses[0] == -1);
  CHECK(f.witnesses[1] == -5);
  CHECK(f.witnesses[2] == 7);
  for (Int t : f.witnesses) {
    CHECK(floor_mod(t, 4) == 3);
    CHECK(t != 3);
  }

  auto t = asymptotic_exceptional_set(multiples_set(2), finite_set({0, 1}));
  CHECK(t.status == Status::True);
  CHECK(t.grade == Grade::Exact);
  REQUIRE(t.evidence);
  CHECK(t.evidence->empty());
}

TEST_CASE("asymptotic complement verdicts") {
  CHECK(is_asymptotic_complement(doubling_ray(), below_set(1)).status == Status::True);
  auto v = is_asymptotic_complement(above_set(-1), finite_set({0}));
  CHECK(v.status == Status::False);
  CHECK(v.witnesses.front() == -1);
  auto s = is_asymptotic_complement(multiples_set(3), finite_set({0, 1, 2}));
  CHECK(s.status == Status::True);
  CHECK(s.grade == Grade::Exact);
  CHECK_FALSE(s.evidence);
}

TEST_CASE("minimal complement verdicts") {
  auto v = is_minimal_complement(nonprimes(), finite_set({0, 1, -1}));
  CHECK(v.status == Status::True);
  REQUIRE(v.removals.size() == 3);
  std::map<Int, Int> first;
  for (const auto& r : v.removals) {
    CHECK(r.status == Status::False);
    REQUIRE_FALSE(r.witnesses.empty());
    first[r.c] = r.witnesses.front();
  }
  // each witness checked by exhaustive decomposition
  auto lost = [](Int t, std::vector<Int> c) {
    for (Int x : c)
      if (!testsupport::trial_division_prime(t - x)) return false;
    return true;
  };
  CHECK(lost(first[-1], {0, 1}));
  CHECK(lost(first[0], {1, -1}));
  CHECK(lost(first[1], {0, -1}));
  CHECK(first[-1] == 3);
  CHECK(first[0] == 4);
  CHECK(first[1] == 2);

  auto co = is_minimal_complement(cofinite_set({0, 2}), finite_set({0, 1}));
  CHECK(co.status == Status::True);
  CHECK(co.grade == Grade::Exact);

  auto ev = is_minimal_complement(multiples_set(2), finite_set({0, 1, 2}));
  CHECK(ev.status == Status::False);
  CHECK(std::find(ev.witnesses.begin(), ev.witnesses.end(), 2) != ev.witnesses.end());
}

TEST_CASE("minimal asymptotic complement verdicts") {
  auto v = is_minimal_asymptotic_complement(nonprimes(), finite_set({0, 1}));
  CHECK(v.status == Status::True);

  auto reps = is_minimal_asymptotic_complement(multiples_set(4), finite_set({0, 5, -2, 7}));
  CHECK(reps.status == Status::True);
  CHECK(reps.grade == Grade::Exact);

  auto fin = is_minimal_asymptotic_complement(finite_set({0, 1}), multiples_set(2));
  CHECK(fin.status == Status::False);

  auto ray = is_minimal_asymptotic_complement(above_set(-1), below_set(1));
  CHECK(ray.status == Status::False);
  CHECK(std::find(ray.witnesses.begin(), ray.witnesses.end(), -1) != ray.witnesses.end());
}

TEST_CASE("redundant elements") {
  auto all = redundant_elements(finite_set({0, 1}), integers(), Window(-50, 50));
  CHECK(all.size() == 101);

  // losses of the middle elements stop once the intervals are longer than 14
  auto mid = redundant_elements(doubling(), finite_set({0, 5, 9, 14}), Window(-100, 50000));
  std::vector<Int> got;
  for (const auto& r : mid) got.push_back(r.c);
  CHECK(got == std::vector<Int>{5, 9});
  for (const auto& r : mid) CHECK_FALSE(r.lost.empty());

  CHECK(redundant_elements(multiples_set(3), finite_set({0, 4, -1}), Window(-60, 60)).empty());
}

TEST_CASE("exact verdicts agree with the double loop") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<Int> d(-12, 12);
  std::uniform_int_distribution<int> sz(1, 4);
  int checked = 0;
  for (int iter = 0; iter < 300; ++iter) {
    RawBep rw = testsupport::random_raw_bep(rng, 6, 30);
    IntSet w = bep_set(rw.build());
    std::vector<Int> c;
    for (int i = sz(rng); i > 0; --i) c.push_back(d(rng));
    sort_unique(c);
    auto naive = naive_uncovered(w, c, -200, 200);

    Verdict v = is_complement(w, finite_set(c));
    REQUIRE(v.grade == Grade::Exact);
    if (v.status == Status::True) {
      REQUIRE(naive.empty());
    } else {
      REQUIRE(v.status == Status::False);
      REQUIRE_FALSE(v.witnesses.empty());
      for (Int t : v.witnesses) REQUIRE(pointwise_hit(w, finite_set(c), t) == Hit::No);
      if (!naive.empty()) {
        ++checked;
        // the first witness is the uncovered point nearest zero
        Int best = naive.front();
        for (Int t : naive)
          if (witness_less(t, best)) best = t;
        REQUIRE(v.witnesses.front() == best);
      }
    }

    Verdict a = asymptotic_exceptional_set(w, finite_set(c));
    REQUIRE(a.grade == Grade::Exact);
    if (a.status == Status::True) {
      REQUIRE(a.evidence);
      std::vector<Int> in;
      for (Int t : *a.evidence)
        if (t >= -200 && t <= 200) in.push_back(t);
      std::sort(in.begin(), in.end());
      REQUIRE(in == naive);
    } else {
      for (Int t : a.witnesses) REQUIRE(pointwise_hit(w, finite_set(c), t) == Hit::No);
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("minimal verdicts imply the cover property and witnesses recheck") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<Int> d(-8, 8);
  int minimal = 0;
  for (int iter = 0; iter < 200; ++iter) {
    IntSet w = bep_set(testsupport::random_raw_bep(rng, 5, 12).build());
    std::vector<Int> c{d(rng), d(rng), d(rng)};
    sort_unique(c);
    IntSet cs = finite_set(c);
    Verdict mc = is_minimal_complement(w, cs);
    if (mc.status == Status::True) {
      ++minimal;
      REQUIRE(is_complement(w, cs).status == Status::True);
      for (const auto& r : mc.removals) {
        REQUIRE(r.status == Status::False);
        std::vector<Int> rest;
        for (Int x : c)
          if (x != r.c) rest.push_back(x);
        if (!rest.empty()) REQUIRE(pointwise_hit(w, finite_set(rest), r.witnesses.front()) == Hit::No);
      }
    }
    Verdict mac = is_minimal_asymptotic_complement(w, cs);
    if (mac.status == Status::True) REQUIRE(is_asymptotic_complement(w, cs).status == Status::True);
    if (mc.status == Status::False && !mc.witnesses.empty() && mc.removals.empty())
      for (Int t : mc.witnesses) REQUIRE(pointwise_hit(w, cs, t) == Hit::No);
  }
  CHECK(minimal > 0);
}

TEST_CASE("finite sets lose nothing asymptotically under finite removals") {
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<Int> d(-10, 10);
  int tried = 0;
  for (int iter = 0; iter < 400 && tried < 60; ++iter) {
    std::vector<Int> w{d(rng), d(rng), d(rng)};
    sort_unique(w);
    RawBep rc = testsupport::random_raw_bep(rng, 4, 15);
    IntSet c = bep_set(rc.build());
    if (is_asymptotic_complement(finite_set(w), c).status != Status::True) continue;
    ++tried;
    std::vector<Int> f;
    for (Int t : testsupport::elements_in(rc, -20, 20))
      if (d(rng) > 0) f.push_back(t);
    std::optional<IntSet> rest;
    try {
      rest = normalize(minus_finite(c, f));
    } catch (const Error&) {
      continue;
    }
    Verdict v = asymptotic_exceptional_set(finite_set(w), *rest);
    REQUIRE(v.status == Status::True);
    REQUIRE(v.grade == Grade::Exact);
  }
  CHECK(tried >= 20);
}

TEST_CASE("congruent elements of a complement to an eventually periodic set are redundant") {
  std::mt19937_64 rng(3535);
  int tried = 0;
  for (int iter = 0; iter < 2000 && tried < 80; ++iter) {
    RawBep rw = testsupport::random_raw_bep(rng, 6, 20);
    std::fill(rw.lmask.begin(), rw.lmask.end(), false);
    if (!rw.nonempty()) continue;
    Bep bw = rw.build();
    if (bw.right().is_empty()) continue;
    const Int period = bw.right().period();
    IntSet c = bep_set(testsupport::random_raw_bep(rng, 6, 20).build());
    if (is_asymptotic_complement(bep_set(bw), c).status != Status::True) continue;
    auto elems = enumerate_window(c, Window(-60, 60));
    std::optional<Int> b;
    for (std::size_t i = 0; i < elems.size() && !b; ++i)
      for (std::size_t j = i + 1; j < elems.size() && !b; ++j)
        if ((elems[j] - elems[i]) % period == 0) b = elems[j];
    if (!b) continue;
    ++tried;
    Verdict v = is_asymptotic_complement(bep_set(bw), minus_finite(c, {*b}));
    REQUIRE(v.status == Status::True);
  }
  CHECK(tried >= 20);
}

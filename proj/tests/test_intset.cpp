#include <catch_amalgamated.hpp>

#include <random>

#include "support.hpp"

using namespace addcomp;
using testsupport::RawBep;

namespace {

IntSet doubling_family() { return family_set(FamilyRule::doubling()); }

}  // namespace

TEST_CASE("doubling family membership matches the closed form") {
  auto iv = testsupport::doubling_family_intervals(12);
  auto in_oracle = [&](Int t) {
    for (auto [a, b] : iv)
      if (a <= t && t <= b) return true;
    return false;
  };
  auto w = doubling_family();
  for (Int t = -20; t <= iv.back().first - 1; ++t) REQUIRE(contains(w, t) == in_oracle(t));
  CHECK(contains(w, 4));
  CHECK_FALSE(contains(w, 6));
  CHECK(contains(w, 12));
  CHECK(enumerate_window(w, Window(1, 30)) == std::vector<Int>{4, 5, 10, 11, 12, 21, 22, 23, 24});
}

TEST_CASE("doubling family starts, lengths and gaps") {
  auto r = FamilyRule::doubling();
  CHECK(r.start(1) == 4);
  CHECK(r.start(2) == 10);
  CHECK(r.start(3) == 21);
  CHECK(r.start(4) == 41);
  for (Int k = 1; k <= 4; ++k) CHECK(r.length(k) == k + 1);
  for (Int k = 1; k < FamilyRule::kDoublingMaxIndex; ++k) CHECK(r.gap_after(k) == (Int{1} << (k + 1)));
  CHECK_THROWS_AS(r.start(41), Error);
  CHECK_THROWS_AS(contains(doubling_family(), r.end(40) + 1), Error);
  CHECK(contains(doubling_family(), r.end(40)));
}

TEST_CASE("family rules are ordered with growing lengths") {
  std::vector<FamilyRule> rules = {FamilyRule::doubling(), FamilyRule::blocks(), FamilyRule::blocks_complement(),
                                   FamilyRule::generic({1, 1, 0}, {1, 1, 0}, 1),
                                   FamilyRule::generic({0, 2, 1}, {3, 0, 1}, -50)};
  for (const auto& r : rules) {
    for (Int k = 1; k < 30; ++k) {
      CHECK(r.length(k) >= k);
      CHECK(r.length(k + 1) > r.length(k));
      CHECK(r.start(k + 1) > r.end(k) + 1);
      if (k > 1) CHECK(r.gap_after(k) > r.gap_after(k - 1));
    }
  }
  CHECK_THROWS_AS(FamilyRule::generic({3, 0, 0}, {1, 1, 0}, 0), Error);
  CHECK_THROWS_AS(FamilyRule::generic({1, 1, 0}, {5, -1, 0}, 0), Error);
}

TEST_CASE("block families follow the block formula") {
  auto blocks = family_set(FamilyRule::blocks());
  auto gaps = family_set(FamilyRule::blocks_complement());
  auto in_block = [](Int t) {
    for (Int k = 1; 10 * k * k <= t; ++k)
      if (t <= 10 * k * (k + 1)) return true;
    return false;
  };
  for (Int t = -5; t <= 3000; ++t) {
    REQUIRE(contains(blocks, t) == in_block(t));
    REQUIRE(contains(gaps, t) == (t >= 1 && !in_block(t)));
  }
  std::vector<Int> expect;
  for (Int t = 1; t <= 45; ++t)
    if (!in_block(t)) expect.push_back(t);
  CHECK(enumerate_window(gaps, Window(1, 45)) == expect);
  CHECK(expect.back() == 39);
}

TEST_CASE("nonprime membership uses positive primes only") {
  auto np = pointwise_set(PredicateKind::NonPrimes);
  CHECK_FALSE(contains(np, 7));
  CHECK(contains(np, -3));
  CHECK(contains(np, 1));
  CHECK(contains(np, 0));
  for (Int t = -50; t <= 5000; ++t) REQUIRE(contains(np, t) == !testsupport::trial_division_prime(t));
  CHECK_FALSE(contains(np, 1'000'000'007));
  CHECK(contains(np, Int{1'000'000'007} * 3));
}

TEST_CASE("empty sets are rejected") {
  CHECK_THROWS_AS(finite_set({}), Error);
  CHECK_THROWS_AS(normalize(minus_finite(finite_set({1, 2}), {1, 2})), Error);
}

TEST_CASE("windows and basic enumerations") {
  CHECK(enumerate_window(multiples_set(2), Window(-3, 3)) == std::vector<Int>{-2, 0, 2});
  CHECK_THROWS_AS(Window(3, 2), Error);
}

TEST_CASE("normalize folds leaves into canonical forms") {
  auto u = normalize(union_of(finite_set({0}), multiples_set(2)));
  REQUIRE(u.as<BepSet>() != nullptr);
  CHECK(u.as<BepSet>()->bep == Bep::multiples(2));
  CHECK(u.as<BepSet>()->bep.core().empty());

  auto t = normalize(translated(cofinite_set({0, 2}), 5));
  REQUIRE(t.as<CofiniteSet>() != nullptr);
  CHECK(t.as<CofiniteSet>()->excluded == std::vector<Int>{5, 7});

  auto w = normalize(union_of(below_set(4), doubling_family()));
  auto f = w.as<FamilySet>();
  REQUIRE(f != nullptr);
  REQUIRE(f->extra.has_value());
  CHECK(f->extra->left().is_full());
  CHECK(f->extra->lo() == 4);
  for (Int t = -30; t <= 200; ++t) REQUIRE(contains(w, t) == (t <= 3 || contains(doubling_family(), t)));
}

TEST_CASE("translate and negate") {
  auto t = translate(finite_set({0, 1}), 3);
  REQUIRE(t.as<FiniteSet>() != nullptr);
  CHECK(t.as<FiniteSet>()->elems == std::vector<Int>{3, 4});

  auto n = negate(doubling_family());
  CHECK(contains(n, -4));
  CHECK_FALSE(contains(n, 4));
  CHECK(upper_bound(n).value() == -4);
  CHECK_FALSE(lower_bound(n).has_value());

  auto r = negate(below_set(4));
  REQUIRE(r.as<BepSet>() != nullptr);
  CHECK(r.as<BepSet>()->bep == Bep::above(-4));
  CHECK(lower_bound(r).value() == -3);

  auto np = pointwise_set(PredicateKind::NonPrimes);
  auto nn = negate(negate(np));
  auto shifted = translate(np, -7);
  for (Int x = -100; x <= 100; ++x) {
    REQUIRE(contains(nn, x) == contains(np, x));
    REQUIRE(contains(shifted, x) == contains(np, x + 7));
  }
}

TEST_CASE("gap sequences") {
  auto g = gap_sequence(doubling_family(), Window(1, 50));
  std::vector<Int> big;
  for (Int d : g.gaps)
    if (d > 1) big.push_back(d);
  CHECK(big == std::vector<Int>{5, 9, 17});

  CHECK(gap_sequence(multiples_set(2), Window(0, 10)).gaps == std::vector<Int>(5, 2));

  auto blocks = gap_sequence(family_set(FamilyRule::blocks()), Window(10, 120));
  std::vector<Int> jumps;
  for (Int d : blocks.gaps)
    if (d > 1) jumps.push_back(d);
  CHECK(jumps == std::vector<Int>{20, 30});
  CHECK(blocks.max_gap == 30);

  CHECK_THROWS_AS(gap_sequence(finite_set({3}), Window(0, 10)), Error);
}

TEST_CASE("gap trends separate growing from bounded gaps") {
  auto w = gap_sequence(doubling_family(), Window(1, 1'000'000));
  CHECK(w.max_growing);
  CHECK_FALSE(w.min_growing);
  auto nonpowers = gap_sequence(pointwise_set(PredicateKind::NonPowersOfTwo), Window(1, 100000));
  CHECK_FALSE(nonpowers.max_growing);
  CHECK(nonpowers.max_gap == 2);
  std::vector<Int> pw;
  for (Int p = 2; p <= (Int{1} << 20); p *= 2) pw.push_back(p);
  auto pg = gap_summary_of(pw);
  CHECK(pg.min_growing);
  CHECK(pg.max_growing);
  CHECK_FALSE(gap_sequence(family_set(FamilyRule::blocks()), Window(1, 100000)).min_growing);
}

TEST_CASE("classification") {
  auto c = classify(union_of(multiples_set(4), finite_set({1})));
  CHECK(c.tag == SetClass::Bep);
  CHECK(c.period.value() == 4);
  // the set extends to -infinity, so it is not eventually periodic in the one-sided sense
  CHECK_FALSE(c.eventually_periodic);
  CHECK_FALSE(c.bounded_below);

  auto c1 = classify(union_of(bep_set(Bep::ap(0, 4, true, -1)), finite_set({1})));
  CHECK(c1.tag == SetClass::Bep);
  CHECK(c1.eventually_periodic);
  CHECK(c1.period.value() == 4);

  auto c2 = classify(doubling_family());
  CHECK(c2.tag == SetClass::Family);
  CHECK(c2.bounded_below);
  CHECK_FALSE(c2.eventually_periodic);

  CHECK(classify(cofinite_set({0})).tag == SetClass::Cofinite);
  CHECK(classify(finite_set({0})).tag == SetClass::Finite);
  CHECK(classify(pointwise_set(PredicateKind::NonPrimes)).tag == SetClass::Pointwise);
  CHECK(classify(union_of(doubling_family(), family_set(FamilyRule::blocks()))).tag == SetClass::WindowOnly);
  CHECK_THROWS_AS(normalize(union_of(doubling_family(), family_set(FamilyRule::blocks())), true), Error);
}

TEST_CASE("canonical form is unique and preserves membership") {
  std::mt19937_64 rng(20240611);
  for (int iter = 0; iter < 400; ++iter) {
    RawBep r = testsupport::random_raw_bep(rng, 8, 30);
    Bep b = r.build();
    for (Int t = -120; t <= 120; ++t) REQUIRE(b.contains(t) == r(t));

    // A padded description of the same set: doubled periods, widened core.
    RawBep pad = r;
    pad.lp = r.lp * 2;
    pad.rp = r.rp * 3;
    pad.lmask.resize(static_cast<std::size_t>(pad.lp));
    pad.rmask.resize(static_cast<std::size_t>(pad.rp));
    for (Int i = 0; i < pad.lp; ++i) pad.lmask[static_cast<std::size_t>(i)] = r.lmask[static_cast<std::size_t>(i % r.lp)];
    for (Int i = 0; i < pad.rp; ++i) pad.rmask[static_cast<std::size_t>(i)] = r.rmask[static_cast<std::size_t>(i % r.rp)];
    pad.lo = r.lo - 17;
    pad.hi = r.hi + 23;
    pad.core = testsupport::elements_in(r, pad.lo, pad.hi);
    REQUIRE(pad.build() == b);

    // Canonical tails carry least periods.
    if (!b.right().is_empty()) CHECK(b.right().period() <= r.rp);
  }
}

TEST_CASE("normalize preserves membership of random combinator trees") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<Int> shift(-40, 40);
  std::uniform_int_distribution<int> pick(0, 5);
  std::function<IntSet(int)> gen = [&](int depth) -> IntSet {
    int k = depth <= 0 ? pick(rng) % 3 : pick(rng);
    switch (k) {
      case 0: return bep_set(testsupport::random_raw_bep(rng, 6, 20).build());
      case 1: return doubling_family();
      case 2: return finite_set({shift(rng), shift(rng)});
      case 3: return union_of(gen(depth - 1), gen(depth - 1));
      case 4: return translated(gen(depth - 1), shift(rng));
      default: return negated(gen(depth - 1));
    }
  };
  for (int iter = 0; iter < 300; ++iter) {
    IntSet s = gen(3);
    IntSet n = normalize(s);
    for (Int t = -150; t <= 150; ++t) REQUIRE(contains(n, t) == contains(s, t));
    for (Int g : {-9, 0, 13}) {
      auto tr = translate(s, g);
      for (Int t = -60; t <= 60; ++t) REQUIRE(contains(tr, t) == contains(s, t - g));
    }
    auto ng = negate(s);
    for (Int t = -60; t <= 60; ++t) REQUIRE(contains(ng, t) == contains(s, -t));
  }
}

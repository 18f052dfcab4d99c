#include <catch_amalgamated.hpp>

#include <random>

#include "support.hpp"

using namespace addcomp;
using testsupport::RawBep;

namespace {

IntSet nonprimes() { return pointwise_set(PredicateKind::NonPrimes); }
IntSet doubling_family() { return family_set(FamilyRule::doubling()); }
IntSet nonsquares() { return pointwise_set(PredicateKind::NonSquares); }

std::vector<bool> mask_bits(const CoverageMask& m) {
  std::vector<bool> out;
  for (Int t = m.window.lo; t <= m.window.hi; ++t) out.push_back(m.at(t));
  return out;
}

}  // namespace

TEST_CASE("pointwise hits") {
  CHECK(pointwise_hit(nonprimes(), finite_set({0, 1}), 3) == Hit::No);
  CHECK(pointwise_hit(nonprimes(), finite_set({0, 1}), 4) == Hit::Yes);
  CHECK(pointwise_hit(multiples_set(2), multiples_set(2), 1) == Hit::No);
  CHECK(pointwise_hit(multiples_set(2), multiples_set(2), 0) == Hit::Yes);
  CHECK(pointwise_hit(doubling_family(), finite_set({0, 1}), 6) == Hit::Yes);
  CHECK(pointwise_hit(doubling_family(), finite_set({0, 1}), 7) == Hit::No);
  CHECK(pointwise_hit(cofinite_set({0}), doubling_family(), 0) == Hit::Yes);
  CHECK(pointwise_hit(doubling_family(), nonsquares(), 0) == Hit::Unknown);
  // nonprimes contain every t <= 1
  CHECK(pointwise_hit(doubling_family(), nonprimes(), 0) == Hit::Yes);
  // a full left ray meets a set unbounded above in every class
  CHECK(pointwise_hit(doubling_family(), below_set(1), 123456) == Hit::Yes);
}

TEST_CASE("windowed sums of exact pairs") {
  auto m = windowed_sumset(nonprimes(), finite_set({0, 1}), Window(-20, 20));
  CHECK(m.interior_margin == 0);
  CHECK(m.uncovered() == std::vector<Int>{3});

  auto e = windowed_sumset(multiples_set(2), finite_set({0, 1}), Window(0, 10));
  CHECK(e.covered.all());

  auto r = FamilyRule::doubling();
  Int s5 = r.start(5);
  auto w = union_of(below_set(4), doubling_family());
  auto abc = windowed_sumset(w, finite_set({0, 2}), Window(s5, s5 + 6));
  for (Int t = s5 + 1; t <= r.end(5) + 1; ++t) CHECK(abc.at(t));

  CHECK_THROWS_AS(windowed_sumset(doubling_family(), nonsquares(), Window(0, 10)), Error);
}

TEST_CASE("windowed sums with enumeration bounds flag the boundary band") {
  auto m = windowed_sumset(doubling_family(), nonsquares(), Window(-50, 50), Int{30});
  CHECK(m.interior_margin == 30);
  for (Int t = -50; t <= 50; ++t) {
    bool expect = false;
    for (Int b = -30; b <= 30 && !expect; ++b) expect = contains(nonsquares(), b) && contains(doubling_family(), t - b);
    REQUIRE(m.at(t) == expect);
  }
  CHECK_THROWS_AS(windowed_sumset(doubling_family(), translate(nonsquares(), 1000000), Window(0, 10), Int{3}),
                  Error);
}

TEST_CASE("exact sums of simple periodic sets") {
  CHECK(bep_sumset(Bep::multiples(2), Bep::finite({0, 1})).is_cofinite());
  CHECK(bep_sumset(Bep::multiples(5), Bep::finite({0, 1, 2, 3, 4})).is_cofinite());
  auto s = bep_sumset(Bep::below(4), Bep::above(-1));
  CHECK(s.is_cofinite());
  CHECK(s.core_gaps().empty());
  auto f = bep_sumset(Bep::finite({1, 5}), Bep::finite({0, 10}));
  CHECK(f.is_finite());
  CHECK(f.core() == std::vector<Int>{1, 5, 11, 15});
  auto ray = bep_sumset(Bep::ap(1, 6, true, 20), Bep::finite({0, 3}));
  CHECK(ray.right().period() == 3);
  CHECK(ray.right().residues() == std::vector<Int>{1});
  CHECK(ray.left().is_empty());
  auto two = bep_sumset(Bep::ap(0, 4, true, 0), Bep::ap(2, 6, true, 0));
  CHECK(two.right().period() == 2);
  CHECK(two.right().residues() == std::vector<Int>{0});
  auto both = bep_sumset(Bep::ap(1, 4, false, 0), Bep::ap(0, 6, true, 0));
  CHECK(both.left().same_pattern(both.right()));
  CHECK(both.right().period() == 2);
}

TEST_CASE("exact sums agree with a double loop over explicit elements") {
  std::mt19937_64 rng(91);
  for (int iter = 0; iter < 500; ++iter) {
    RawBep ra = testsupport::random_raw_bep(rng, 12, 50);
    RawBep rb = testsupport::random_raw_bep(rng, 12, 50);
    Bep s = bep_sumset(ra.build(), rb.build());
    auto cover = testsupport::naive_cover(testsupport::elements_in(ra, -800, 800),
                                          testsupport::elements_in(rb, -800, 800), -300, 300);
    for (Int t = -300; t <= 300; ++t) REQUIRE(s.contains(t) == cover[static_cast<std::size_t>(t + 300)]);

    // the result period divides the lcm of the input periods
    Int l = 1;
    for (Int p : {ra.build().left().period(), ra.build().right().period(), rb.build().left().period(),
                  rb.build().right().period()})
      l = std::lcm(l, p);
    if (!s.right().is_empty()) CHECK(l % s.right().period() == 0);
    if (!s.left().is_empty()) CHECK(l % s.left().period() == 0);
    for (Int t = -300; t <= 300; t += 7)
      REQUIRE(bep_hit(ra.build(), rb.build(), t) == cover[static_cast<std::size_t>(t + 300)]);
  }
}

TEST_CASE("windowed sums commute and shift with translation") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Int> g(-15, 15);
  for (int iter = 0; iter < 60; ++iter) {
    IntSet a = bep_set(testsupport::random_raw_bep(rng, 5, 10).build());
    IntSet b = iter % 2 ? bep_set(testsupport::random_raw_bep(rng, 5, 10).build())
                        : finite_set({g(rng), g(rng), g(rng)});
    Window w(-40, 40);
    auto ab = windowed_sumset(a, b, w), ba = windowed_sumset(b, a, w);
    REQUIRE(mask_bits(ab) == mask_bits(ba));
    Int shift = g(rng);
    auto shifted = windowed_sumset(translate(a, shift), b, Window(w.lo + shift, w.hi + shift));
    REQUIRE(mask_bits(shifted) == mask_bits(ab));
  }
  // the same with a pointwise operand against a finite one
  for (Int shift : {-4, 0, 9}) {
    auto base = windowed_sumset(nonprimes(), finite_set({0, 2, 7}), Window(-30, 30));
    auto moved = windowed_sumset(translate(nonprimes(), shift), finite_set({0, 2, 7}), Window(-30 + shift, 30 + shift));
    REQUIRE(mask_bits(base) == mask_bits(moved));
    REQUIRE(mask_bits(base) == mask_bits(windowed_sumset(finite_set({0, 2, 7}), nonprimes(), Window(-30, 30))));
  }
}

TEST_CASE("sums of finite sets associate") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<Int> d(-20, 20);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<Int> x{d(rng), d(rng)}, y{d(rng), d(rng), d(rng)}, z{d(rng)};
    Bep ab_c = bep_sumset(bep_sumset(Bep::finite(x), Bep::finite(y)), Bep::finite(z));
    Bep a_bc = bep_sumset(Bep::finite(x), bep_sumset(Bep::finite(y), Bep::finite(z)));
    REQUIRE(ab_c == a_bc);
    std::vector<Int> triple;
    for (Int p : x)
      for (Int q : y)
        for (Int r : z) triple.push_back(p + q + r);
    sort_unique(triple);
    REQUIRE(ab_c.core() == triple);
  }
}

TEST_CASE("bit vector shifted or") {
  BitVec src(200), dst(70);
  for (std::size_t i = 0; i < 200; i += 3) src.set(i);
  for (std::size_t off : {0u, 1u, 63u, 64u, 65u, 130u}) {
    BitVec d = dst;
    d.or_shifted(src, off);
    for (std::size_t i = 0; i < 70; ++i) REQUIRE(d.get(i) == ((i + off) % 3 == 0));
  }
}

#include <catch_amalgamated.hpp>

#include <random>

#include "addcomp/serialize.hpp"
#include "support.hpp"

using namespace addcomp;

TEST_CASE("coverage runs decode to the same bits") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    auto a = testsupport::random_raw_bep(rng, 6, 20), b = testsupport::random_raw_bep(rng, 6, 20);
    if (!a.nonempty() || !b.nonempty()) continue;
    CoverageMask m = windowed_sumset(bep_set(a.build()), bep_set(b.build()), Window(-60, 60));
    json j = to_json(m);
    CHECK(j["window"] == json::array({-60, 60}));
    std::vector<bool> bits;
    bool prev = false;
    for (std::size_t r = 0; r < j["runs"].size(); ++r) {
      const auto& run = j["runs"][r];
      bool v = run["covered"].get<bool>();
      CHECK(run["length"].get<Int>() > 0);
      if (r) CHECK(v != prev);
      prev = v;
      bits.insert(bits.end(), run["length"].get<std::size_t>(), v);
    }
    REQUIRE(bits.size() == 121);
    for (Int t = -60; t <= 60; ++t) CHECK(bits[static_cast<std::size_t>(t + 60)] == m.at(t));
  }
}

TEST_CASE("verdict fields") {
  Verdict v = asymptotic_exceptional_set(pointwise_set(PredicateKind::NonPrimes), finite_set({0, 1}));
  json j = to_json(v);
  CHECK(j["status"] == "True");
  CHECK(j["grade"] == "exact");
  CHECK(j["evidence"] == json::array({3}));
  CHECK(j.contains("window"));

  Verdict f = is_complement(multiples_set(2), finite_set({0}));
  json k = to_json(f);
  CHECK(k["status"] == "False");
  CHECK(k["witnesses"][0] == -1);
}

TEST_CASE("shrink certificate fields") {
  IntSet w = builtin("doubling-ray");
  IntSet c = normalize(union_of(bep_set(Bep::ap(0, 2, false, -20)), finite_set({0, 1, 2, 5})));
  json j = to_json(interval_shrink(w, c, 0, 1, 2));
  CHECK(j["certificate"]["removed"] == 1);
  CHECK(j["certificate"]["frame"] == json::array({0, 2}));
  CHECK(j["certificate"]["verified"] == true);
  CHECK(j["after"]["status"] == "True");
  CHECK(parse_set(j["rest"].get<std::string>()).as<FiniteSet>() == nullptr);
}

TEST_CASE("gap report fields") {
  json j = to_json(gap_classifier(builtin("nonsquares"), 20000));
  CHECK(j["from"] == 1);
  CHECK(j["growing_complement_gaps"] == true);
  CHECK(j["no_minimal_complement"] == true);
  CHECK(j["w_gaps"]["max_gap"] == 2);
}

#include "doctest.h"

#include <random>

#include "decmon/alphabet.hpp"
#include "test_support.hpp"

using namespace decmon;

TEST_CASE("partition validation") {
  SUBCASE("three singleton blocks") {
    DistributedAlphabet a({"a", "b", "c"}, {{0}, {1}, {2}});
    CHECK(a.n_props() == 3);
    CHECK(a.n_components() == 3);
    CHECK(a.component_of(0) == 0);
    CHECK(a.component_of(2) == 2);
  }
  SUBCASE("overlapping blocks rejected") {
    CHECK_THROWS_AS(DistributedAlphabet({"a", "b"}, {{0, 1}, {1}}), PartitionError);
  }
  SUBCASE("duplicate names rejected") {
    CHECK_THROWS_AS(DistributedAlphabet({"a", "a"}, {{0}, {1}}), PartitionError);
  }
  SUBCASE("empty block rejected") {
    CHECK_THROWS_AS(DistributedAlphabet({"a"}, {{0}, {}}), PartitionError);
  }
  SUBCASE("uncovered proposition rejected") {
    CHECK_THROWS_AS(DistributedAlphabet({"a", "b"}, {{0}}), PartitionError);
  }
  SUBCASE("out-of-range id rejected") {
    CHECK_THROWS_AS(DistributedAlphabet({"a"}, {{0, 3}}), PartitionError);
  }
  SUBCASE("too many propositions rejected") {
    std::vector<std::string> names;
    std::vector<int> all;
    for (int i = 0; i < 32; ++i) {
      names.push_back("p" + std::to_string(i));
      all.push_back(i);
    }
    CHECK_THROWS_AS(DistributedAlphabet(names, {all}), PartitionError);
  }
  SUBCASE("error kinds are distinguishable") {
    try {
      DistributedAlphabet({"a", "b"}, {{0, 1}, {1}});
      CHECK(false);
    } catch (const PartitionError& e) {
      CHECK(e.kind == PartitionError::Kind::Overlap);
    }
  }
}

TEST_CASE("centralized alphabet observes everything") {
  auto a = DistributedAlphabet::centralized({"x", "y", "z"});
  CHECK(a.n_components() == 1);
  CHECK(a.component_mask(0) == a.full_event_mask());
  CHECK(a.observed_mask(1) == 0b111u);
}

TEST_CASE("projection properties") {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 200; ++iter) {
    std::uniform_int_distribution<int> np(1, 6), nc(1, 4);
    int props = np(rng);
    int comps = std::min(nc(rng), props);
    auto a = testsup::random_alphabet(rng, props, comps);

    // The component masks partition the full event mask.
    Event uni = 0;
    for (int c = 0; c < a.n_components(); ++c) {
      CHECK((uni & a.component_mask(c)) == 0u);
      uni |= a.component_mask(c);
    }
    CHECK(uni == a.full_event_mask());

    std::uniform_int_distribution<Event> ev(0, a.full_event_mask());
    std::uniform_int_distribution<ComponentSet> cs(1, a.all_components());
    for (int k = 0; k < 20; ++k) {
      Event e = ev(rng);
      ComponentSet s = cs(rng);
      CHECK(a.project(a.all_components(), e) == e);
      CHECK((a.project(s, e) & ~a.observed_mask(s)) == 0u);
      CHECK(a.project(s, a.project(s, e)) == a.project(s, e));
      // Projections over a partition recombine losslessly.
      Event glued = 0;
      for (int c = 0; c < a.n_components(); ++c)
        glued |= a.project(static_cast<ComponentSet>(1u << c), e);
      CHECK(glued == e);
    }
  }
}

TEST_CASE("event rendering and parsing") {
  DistributedAlphabet a({"a", "b", "c"}, {{0}, {1}, {2}});
  CHECK(a.render_event(0) == "∅");
  CHECK(a.render_event(0b011) == "{a,b}");
  CHECK(a.render_event(0b111) == "{a,b,c}");
  CHECK(a.parse_event("∅") == 0u);
  CHECK(a.parse_event("{}") == 0u);
  CHECK(a.parse_event("{a,c}") == 0b101u);
  CHECK(a.parse_event(" { b } ") == 0b010u);
  CHECK_THROWS_AS(a.parse_event("{d}"), EventParseError);
  CHECK_THROWS_AS(a.parse_event("a,b"), EventParseError);
  CHECK_THROWS_AS(a.parse_event("{a,,b}"), EventParseError);

  for (Event e = 0; e <= a.full_event_mask(); ++e)
    CHECK(a.parse_event(a.render_event(e)) == e);
}

TEST_CASE("component set rendering is 1-based") {
  CHECK(DistributedAlphabet::render_components(0b101) == "{1,3}");
  CHECK(DistributedAlphabet::render_components(0b1) == "{1}");
  CHECK(DistributedAlphabet::render_components(0) == "{}");
}

TEST_CASE("prop_id lookups") {
  DistributedAlphabet a({"fast", "f"}, {{0, 1}});
  CHECK(a.prop_id("fast") == 0);
  CHECK(a.prop_id("f") == 1);
  CHECK(a.prop_id("slow") == -1);
}

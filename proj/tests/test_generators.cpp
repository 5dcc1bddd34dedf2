#include "doctest.h"

#include <algorithm>

#include "decmon/generators.hpp"
#include "decmon/ltl.hpp"
#include "test_support.hpp"

using namespace decmon;

TEST_CASE("splitmix64 reference values") {
  // First outputs of the reference stream seeded with 0.
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafull);
  CHECK(splitmix64(splitmix64(0)) != splitmix64(0));
}

TEST_CASE("seed streams are deterministic and independent") {
  auto a1 = make_rng(42, 7);
  auto a2 = make_rng(42, 7);
  auto b = make_rng(42, 8);
  auto c = make_rng(43, 7);
  std::uint64_t x = a1();
  CHECK(x == a2());
  CHECK(x != b());
  CHECK(x != c());
}

TEST_CASE("trace generation respects the partition") {
  DistributedAlphabet a({"p", "q", "r"}, {{0, 1}, {2}});

  SUBCASE("probability extremes") {
    auto rng = make_rng(1, 0);
    auto none = gen_trace(a, 20, 0.0, rng);
    auto all = gen_trace(a, 20, 1.0, rng);
    REQUIRE(none.size() == 2);
    for (int c = 0; c < 2; ++c)
      for (Event e : none[c]) CHECK(e == 0);
    for (int c = 0; c < 2; ++c)
      for (Event e : all[c]) CHECK(e == a.observed_mask(1u << c));
  }
  SUBCASE("locals stay within their component masks") {
    auto rng = make_rng(9, 1);
    auto t = gen_trace(a, 50, 0.5, rng);
    for (int c = 0; c < 2; ++c)
      for (Event e : t[c]) CHECK((e & ~a.observed_mask(1u << c)) == 0);
  }
  SUBCASE("same stream reproduces, different stream differs") {
    auto r1 = make_rng(5, 3);
    auto r2 = make_rng(5, 3);
    auto r3 = make_rng(5, 4);
    auto t1 = gen_trace(a, 30, 0.5, r1);
    CHECK(t1 == gen_trace(a, 30, 0.5, r2));
    CHECK(t1 != gen_trace(a, 30, 0.5, r3));
  }
}

TEST_CASE("formula generator hits the requested size exactly") {
  DistributedAlphabet a({"p", "q", "r"}, {{0}, {1}, {2}});
  auto rng = make_rng(11, 0);
  for (int size = 0; size <= 6; ++size) {
    for (int iter = 0; iter < 30; ++iter) {
      FormulaPtr f = gen_formula(a, size, rng);
      CHECK(entailment_size(f) == size);
      CHECK(f->op != Op::True);
      CHECK(f->op != Op::False);
    }
  }
  CHECK_THROWS_AS(gen_formula(a, -1, rng), GeneratorError);

  auto r1 = make_rng(3, 5);
  auto r2 = make_rng(3, 5);
  CHECK(print_ltl(gen_formula(a, 3, r1), a) == print_ltl(gen_formula(a, 3, r2), a));
}

TEST_CASE("pattern lookup") {
  CHECK(pattern_by_name("absence") == Pattern::Absence);
  CHECK(pattern_by_name("abs") == Pattern::Absence);
  CHECK(pattern_by_name("response_chain") == Pattern::ResponseChain);
  CHECK(pattern_by_name("respc") == Pattern::ResponseChain);
  CHECK_FALSE(pattern_by_name("nonesuch").has_value());
  CHECK(pattern_names().size() == 9);
  CHECK(pattern_names().front() == "absence");
  CHECK(pattern_name(Pattern::ConstrainedChain) == "constrained_chain");
}

TEST_CASE("pattern templates over a single proposition") {
  DistributedAlphabet a({"p"}, {{0}});
  auto rng = make_rng(17, 0);
  CHECK(print_ltl(pattern_formula(Pattern::Absence, a, rng), a) == "G !p");
  CHECK(print_ltl(pattern_formula(Pattern::Existence, a, rng), a) == "F p");
  CHECK(print_ltl(pattern_formula(Pattern::Universality, a, rng), a) == "G p");
  // W chains right-associatively, so the canonical form needs no parentheses.
  CHECK(print_ltl(pattern_formula(Pattern::BoundedExistence, a, rng), a) ==
        "!p W p W !p W p W G !p");
}

TEST_CASE("pattern entailment sizes") {
  DistributedAlphabet a({"p", "q", "r", "z"}, {{0}, {1}, {2}, {3}});
  auto rng = make_rng(19, 0);
  auto size_of = [&](Pattern p) {
    return entailment_size(pattern_formula(p, a, rng));
  };
  CHECK(size_of(Pattern::Absence) == 1);
  CHECK(size_of(Pattern::Existence) == 1);
  CHECK(size_of(Pattern::BoundedExistence) == 5);
  CHECK(size_of(Pattern::Universality) == 1);
  CHECK(size_of(Pattern::Precedence) == 1);
  CHECK(size_of(Pattern::Response) == 2);
  CHECK(size_of(Pattern::PrecedenceChain) == 3);
  CHECK(size_of(Pattern::ResponseChain) == 4);
  CHECK(size_of(Pattern::ConstrainedChain) == 4);
}

TEST_CASE("patterns draw distinct propositions when available") {
  DistributedAlphabet a({"p", "q", "r", "z"}, {{0}, {1}, {2}, {3}});
  for (int iter = 0; iter < 20; ++iter) {
    auto rng = make_rng(23, iter);
    FormulaPtr f = pattern_formula(Pattern::ConstrainedChain, a, rng);
    // Collect the atoms actually used.
    std::vector<int> seen;
    std::vector<FormulaPtr> todo{f};
    while (!todo.empty()) {
      FormulaPtr cur = todo.back();
      todo.pop_back();
      if (cur->op == Op::Atom) seen.push_back(cur->atom);
      for (const auto& k : cur->kids) todo.push_back(k);
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    CHECK(seen.size() == 4);
  }

  // A cramped alphabet wraps around rather than failing.
  DistributedAlphabet tiny({"p"}, {{0}});
  auto rng = make_rng(29, 0);
  CHECK_NOTHROW(pattern_formula(Pattern::ConstrainedChain, tiny, rng));
}

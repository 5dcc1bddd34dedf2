#include "doctest.h"

#include <random>

#include "decmon/ltl.hpp"
#include "decmon/monitor.hpp"

using namespace decmon;

namespace {

const DistributedAlphabet& abc() {
  static DistributedAlphabet a({"a", "b", "c"}, {{0}, {1}, {2}});
  return a;
}

FormulaPtr parse(const std::string& text) { return parse_ltl(text, abc()); }

std::string canon(const std::string& text) {
  return print_ltl(simplify(parse(text)), abc());
}

// Unbiased raw tree over every operator, for round-trip and idempotence
// properties. Not canonical on purpose.
FormulaPtr random_tree(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth == 0 ? 2 : 13);
  std::uniform_int_distribution<int> prop(0, 2);
  switch (pick(rng)) {
    case 0: return f_true();
    case 1: return f_false();
    case 2: return f_atom(prop(rng));
    case 3: return f_not(random_tree(rng, depth - 1));
    case 4: return f_and({random_tree(rng, depth - 1), random_tree(rng, depth - 1)});
    case 5: return f_or({random_tree(rng, depth - 1), random_tree(rng, depth - 1)});
    case 6: return f_implies(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 7: return f_iff(random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 8: return f_unary(Op::Next, random_tree(rng, depth - 1));
    case 9: return f_unary(Op::WeakNext, random_tree(rng, depth - 1));
    case 10: return f_unary(Op::Finally, random_tree(rng, depth - 1));
    case 11: return f_unary(Op::Globally, random_tree(rng, depth - 1));
    case 12:
      return f_binary(Op::Until, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    default:
      return f_binary(rng() & 1 ? Op::Release : Op::WeakUntil, random_tree(rng, depth - 1),
                      random_tree(rng, depth - 1));
  }
}

}  // namespace

TEST_CASE("parser precedence and associativity") {
  CHECK(print_ltl(parse("a | b & c"), abc()) == "a | b & c");
  CHECK(equal(parse("a | b & c"), parse("a | (b & c)")));
  CHECK(equal(parse("a -> b -> c"), parse("a -> (b -> c)")));
  CHECK(equal(parse("a <-> b <-> c"), parse("a <-> (b <-> c)")));
  CHECK(equal(parse("a U b U c"), parse("a U (b U c)")));
  CHECK(equal(parse("a U b & c"), parse("(a U b) & c")));
  CHECK(equal(parse("!a U b"), parse("(!a) U b")));
  CHECK(equal(parse("X a U b"), parse("(X a) U b")));
  CHECK(equal(parse("F a & b"), parse("(F a) & b")));
  CHECK(equal(parse("a -> b <-> c"), parse("(a -> b) <-> c")));
  CHECK(equal(parse("a && b"), parse("a & b")));
  CHECK(equal(parse("a || b"), parse("a | b")));
  CHECK_FALSE(equal(parse("a U (b & c)"), parse("a U b & c")));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse("zz"), ParseError);
  CHECK_THROWS_AS(parse("(a"), ParseError);
  CHECK_THROWS_AS(parse("a <- b"), ParseError);
  CHECK_THROWS_AS(parse("a @ b"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
  try {
    parse("a &");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.pos == 3);
  }
  try {
    parse("a & zz");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.pos == 4);
  }
}

TEST_CASE("reserved words are not atoms") {
  CHECK_THROWS_AS(parse("U"), ParseError);
  CHECK(parse("true")->op == Op::True);
  CHECK(parse("false")->op == Op::False);
}

TEST_CASE("print/parse round-trip on random trees") {
  std::mt19937_64 rng(41);
  for (int iter = 0; iter < 500; ++iter) {
    FormulaPtr f = random_tree(rng, 4);
    FormulaPtr back = parse(print_ltl(f, abc()));
    CHECK(equal(f, back));
  }
}

TEST_CASE("simplify is idempotent") {
  std::mt19937_64 rng(43);
  for (int iter = 0; iter < 500; ++iter) {
    FormulaPtr once = simplify(random_tree(rng, 4));
    CHECK(equal(once, simplify(once)));
  }
}

TEST_CASE("simplify rewrites") {
  CHECK(canon("!!a") == "a");
  CHECK(canon("!true") == "false");
  CHECK(canon("a & a") == "a");
  CHECK(canon("b & a") == "a & b");
  CHECK(canon("a & b & a") == "a & b");
  CHECK(canon("a & true") == "a");
  CHECK(canon("a & false") == "false");
  CHECK(canon("a | true") == "true");
  CHECK(canon("a | false") == "a");
  CHECK(canon("a & (a | b)") == "a");
  CHECK(canon("a | a & b") == "a");
  CHECK(canon("X true") == "true");
  CHECK(canon("F true") == "true");
  CHECK(canon("G false") == "false");
  CHECK(canon("F false") == "false");
  CHECK(canon("a U true") == "true");
  CHECK(canon("a U false") == "false");
  CHECK(canon("false U b") == "b");
  CHECK(canon("true U b") == "F b");
  CHECK(canon("a R true") == "true");
  CHECK(canon("a R false") == "false");
  CHECK(canon("true R b") == "b");
  CHECK(canon("false R b") == "G b");
  CHECK(canon("true W b") == "true");
  CHECK(canon("a W true") == "true");
  CHECK(canon("false W b") == "b");
  CHECK(canon("a W false") == "G a");
  CHECK(canon("a U a") == "a");
  CHECK(canon("a -> a") == "true");
  CHECK(canon("a <-> a") == "true");
  CHECK(canon("false -> a") == "true");
  CHECK(canon("true -> a") == "a");
  CHECK(canon("a -> true") == "true");
  CHECK(canon("a -> false") == "!a");
  CHECK(canon("a <-> true") == "a");
  CHECK(canon("a <-> false") == "!a");
  CHECK(canon("(a & b) & c") == "a & b & c");
}

namespace {

Event ev(bool a, bool b = false, bool c = false) {
  return (a ? 1u : 0u) | (b ? 2u : 0u) | (c ? 4u : 0u);
}

std::string step(const std::string& text, Event e) {
  return print_ltl(progress(parse(text), e, abc()), abc());
}

}  // namespace

TEST_CASE("progression steps") {
  CHECK(step("a", ev(true)) == "true");
  CHECK(step("a", ev(false)) == "false");
  CHECK(step("!a", ev(false)) == "true");
  CHECK(step("G a", ev(true)) == "G a");
  CHECK(step("G a", ev(false)) == "false");
  CHECK(step("F a", ev(false)) == "F a");
  CHECK(step("F a", ev(true)) == "true");
  CHECK(step("X a", ev(false)) == "a");
  CHECK(step("Xw a", ev(true)) == "a");
  CHECK(step("a U b", ev(false, true)) == "true");
  CHECK(step("a U b", ev(true, false)) == "a U b");
  CHECK(step("a U b", ev(false, false)) == "false");
  CHECK(step("a R b", ev(false, true)) == "a R b");
  CHECK(step("a R b", ev(true, true)) == "true");
  CHECK(step("a R b", ev(true, false)) == "false");
  CHECK(step("a R b", ev(false, false)) == "false");
  CHECK(step("a W b", ev(true, false)) == "a W b");
  CHECK(step("a W b", ev(false, true)) == "true");
  CHECK(step("a W b", ev(false, false)) == "false");
  CHECK(step("a <-> b", ev(true, false)) == "false");
  CHECK(step("a <-> b", ev(true, true)) == "true");
  CHECK(step("G (a -> F b)", ev(true, false)) == "F b & G (a -> F b)");
}

TEST_CASE("compiled monitor shapes") {
  DistributedAlphabet one({"p"}, {{0}});
  SUBCASE("always") {
    auto cm = compile_ltl(parse_ltl("G p", one), one);
    CHECK(cm.monitor.n_states == 2);
    CHECK(cm.state_formulas == std::vector<std::string>{"G p", "false"});
    CHECK(cm.monitor.verdict(0) == Verdict::Unknown);
    CHECK(cm.monitor.verdict(1) == Verdict::Bottom);
  }
  SUBCASE("eventually") {
    auto cm = compile_ltl(parse_ltl("F p", one), one);
    CHECK(cm.monitor.n_states == 2);
    CHECK(cm.state_formulas == std::vector<std::string>{"F p", "true"});
  }
  SUBCASE("next is a four-state ladder") {
    auto cm = compile_ltl(parse_ltl("X p", one), one);
    CHECK(cm.monitor.n_states == 4);
    CHECK(cm.state_formulas ==
          std::vector<std::string>{"X p", "p", "false", "true"});
    CHECK(cm.monitor.next(0, 0) == 1);
    CHECK(cm.monitor.next(0, 1) == 1);
    CHECK(cm.monitor.next(1, 0) == 2);
    CHECK(cm.monitor.next(1, 1) == 3);
  }
  SUBCASE("definitive states are traps") {
    auto cm = compile_ltl(parse_ltl("F p", one), one);
    CHECK(cm.monitor.next(1, 0) == 1);
    CHECK(cm.monitor.next(1, 1) == 1);
  }
}

TEST_CASE("state cap throws") {
  DistributedAlphabet one({"p"}, {{0}});
  CHECK_THROWS_AS(compile_ltl(parse_ltl("X X X p", one), one, 3), StateExplosion);
  CHECK_THROWS_AS(compile_ltl(parse("F a & F b & F c"), abc(), 4), StateExplosion);
  // Generous caps succeed.
  CHECK(compile_ltl(parse("F a & F b & F c"), abc()).monitor.n_states == 9);
}

TEST_CASE("compilation needs a dense event space") {
  std::vector<std::string> names;
  std::vector<int> all;
  for (int i = 0; i < 17; ++i) {
    names.push_back("p" + std::to_string(i));
    all.push_back(i);
  }
  DistributedAlphabet wide(names, {all});
  CHECK_THROWS_AS(compile_ltl(parse_ltl("p0", wide), wide), MonitorError);
}

TEST_CASE("compiled monitor replays progression") {
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<Event> event(0, abc().full_event_mask());
  std::uniform_int_distribution<int> len(0, 10);
  for (int iter = 0; iter < 300; ++iter) {
    FormulaPtr f = random_tree(rng, 3);
    CompiledMonitor cm;
    try {
      cm = compile_ltl(f, abc());
    } catch (const StateExplosion&) {
      continue;
    }
    FormulaPtr g = simplify(f);
    int q = cm.monitor.init;
    int steps = len(rng);
    for (int k = 0; k < steps; ++k) {
      Event e = event(rng);
      g = progress(g, e, abc());
      q = cm.monitor.next(q, e);
      Verdict expect = g->op == Op::True    ? Verdict::Top
                       : g->op == Op::False ? Verdict::Bottom
                                            : Verdict::Unknown;
      CHECK(cm.monitor.verdict(q) == expect);
      // States are interned by rendering, so the formulas stay in lockstep.
      CHECK(cm.state_formulas[q] == print_ltl(g, abc()));
    }
  }
}

TEST_CASE("size measures") {
  CHECK(entailment_size(parse("a & b")) == 0);
  CHECK(entailment_size(parse("F a & G (b & c)")) == 2);
  CHECK(entailment_size(parse("F G a")) == 2);
  CHECK(entailment_size(parse("F a | G b")) == 1);
  CHECK(entailment_size(parse("!a W (a W (!a W (a W G !a)))")) == 5);
  CHECK(entailment_size(parse("a U b")) == 1);
  CHECK(entailment_size(parse("X a & X b")) == 2);

  CHECK(temporal_op_count(parse("a & b")) == 0);
  CHECK(temporal_op_count(parse("F G a")) == 2);
  CHECK(temporal_op_count(parse("F a | G b")) == 2);

  CHECK(symbol_count(parse("G !a"), abc()) == 3);
  CHECK(symbol_count(parse("a U b"), abc()) == 3);
  CHECK(symbol_count(parse("F (a & b)"), abc()) == 6);
}

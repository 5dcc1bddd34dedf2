#include "decmon/generators.hpp"

#include <algorithm>

namespace decmon {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::mt19937_64 make_rng(std::uint64_t root, std::uint64_t stream) {
  return std::mt19937_64(splitmix64(root ^ splitmix64(stream)));
}

std::vector<std::vector<Event>> gen_trace(const DistributedAlphabet& alphabet, int len,
                                          double prob, std::mt19937_64& rng) {
  if (len < 0) throw GeneratorError("negative trace length");
  if (prob < 0.0 || prob > 1.0) throw GeneratorError("probability outside [0,1]");
  std::bernoulli_distribution flip(prob);
  std::vector<std::vector<Event>> locals(alphabet.n_components());
  for (auto& lt : locals) lt.reserve(len);
  for (int i = 0; i < len; ++i) {
    Event global = 0;
    for (int p = 0; p < alphabet.n_props(); ++p)
      if (flip(rng)) global |= (1u << p);
    for (int c = 0; c < alphabet.n_components(); ++c)
      locals[c].push_back(global & alphabet.component_mask(c));
  }
  return locals;
}

// ---------------------------------------------------------------------------
// Random formulas with an exact size target.
//
// The grammar walk keeps every recursive call at a strictly smaller budget:
// unary temporal spends one level, binary temporal spends one level and splits,
// conjunction splits the budget across both sides, and the max-taking
// connectives (| -> <->) put the full budget on one side through a non-max
// node and strictly less on the other.

namespace {

FormulaPtr gen_leaf(const DistributedAlphabet& alphabet, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> prop(0, alphabet.n_props() - 1);
  FormulaPtr atom = f_atom(prop(rng));
  std::uniform_int_distribution<int> neg(0, 9);
  return neg(rng) == 0 ? f_not(atom) : atom;
}

FormulaPtr gen_sized(const DistributedAlphabet& alphabet, int size, std::mt19937_64& rng);

// Top node is temporal or a conjunction: entailment size is exactly `size`
// and every recursion shrinks the budget.
FormulaPtr gen_core(const DistributedAlphabet& alphabet, int size, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, size >= 2 ? 2 : 1);
  switch (pick(rng)) {
    case 0: {  // unary temporal
      static const Op ops[] = {Op::Next, Op::WeakNext, Op::Finally, Op::Globally};
      std::uniform_int_distribution<int> which(0, 3);
      return f_unary(ops[which(rng)], gen_sized(alphabet, size - 1, rng));
    }
    case 1: {  // binary temporal: 1 + max of the sides
      static const Op ops[] = {Op::Until, Op::Release, Op::WeakUntil};
      std::uniform_int_distribution<int> which(0, 2);
      std::uniform_int_distribution<int> other(0, size - 1);
      FormulaPtr big = gen_sized(alphabet, size - 1, rng);
      FormulaPtr small = gen_sized(alphabet, other(rng), rng);
      std::uniform_int_distribution<int> swap(0, 1);
      return swap(rng) ? f_binary(ops[which(rng)], small, big)
                       : f_binary(ops[which(rng)], big, small);
    }
    default: {  // conjunction: sizes add; both sides below the budget
      std::uniform_int_distribution<int> cut(1, size - 1);
      int left = cut(rng);
      return f_and({gen_sized(alphabet, left, rng), gen_sized(alphabet, size - left, rng)});
    }
  }
}

FormulaPtr gen_sized(const DistributedAlphabet& alphabet, int size, std::mt19937_64& rng) {
  if (size == 0) return gen_leaf(alphabet, rng);
  std::uniform_int_distribution<int> pick(0, 9);
  int r = pick(rng);
  if (r < 7) return gen_core(alphabet, size, rng);
  // Max-taking connective: the dominant side carries the whole budget.
  std::uniform_int_distribution<int> other(0, size - 1);
  FormulaPtr big = gen_core(alphabet, size, rng);
  FormulaPtr small = gen_sized(alphabet, other(rng), rng);
  std::uniform_int_distribution<int> swap(0, 1);
  bool big_left = swap(rng) == 0;
  FormulaPtr l = big_left ? big : small;
  FormulaPtr rr = big_left ? small : big;
  if (r == 7) return f_or({l, rr});
  if (r == 8) return f_implies(l, rr);
  return f_iff(l, rr);
}

}  // namespace

FormulaPtr gen_formula(const DistributedAlphabet& alphabet, int size,
                       std::mt19937_64& rng) {
  if (alphabet.n_props() == 0) throw GeneratorError("alphabet has no propositions");
  if (size < 0) throw GeneratorError("negative formula size");
  // Canonicalization can shrink the walk's output (dedup, absorption); retry
  // until the target survives it.
  for (int attempt = 0; attempt < 200; ++attempt) {
    FormulaPtr f = simplify(gen_sized(alphabet, size, rng));
    if (entailment_size(f) == size && f->op != Op::True && f->op != Op::False) return f;
  }
  throw GeneratorError("no formula of size " + std::to_string(size) +
                       " found in 200 attempts");
}

// ---------------------------------------------------------------------------
// Pattern templates (global scope).

namespace {

struct PatternInfo {
  Pattern p;
  const char* name;
  const char* alias;
  int arity;  // distinct propositions used
};

const PatternInfo kPatterns[] = {
    {Pattern::Absence, "absence", "abs", 1},
    {Pattern::Existence, "existence", "exis", 1},
    {Pattern::BoundedExistence, "bounded_existence", "bexis", 1},
    {Pattern::Universality, "universality", "univ", 1},
    {Pattern::Precedence, "precedence", "prec", 2},
    {Pattern::Response, "response", "resp", 2},
    {Pattern::PrecedenceChain, "precedence_chain", "precc", 3},
    {Pattern::ResponseChain, "response_chain", "respc", 3},
    {Pattern::ConstrainedChain, "constrained_chain", "consc", 4},
};

}  // namespace

std::optional<Pattern> pattern_by_name(const std::string& name) {
  for (const auto& info : kPatterns)
    if (name == info.name || name == info.alias) return info.p;
  return std::nullopt;
}

const std::vector<std::string>& pattern_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& info : kPatterns) out.push_back(info.name);
    return out;
  }();
  return names;
}

std::string pattern_name(Pattern p) {
  for (const auto& info : kPatterns)
    if (info.p == p) return info.name;
  return "?";
}

FormulaPtr pattern_formula(Pattern p, const DistributedAlphabet& alphabet,
                           std::mt19937_64& rng) {
  if (alphabet.n_props() == 0) throw GeneratorError("alphabet has no propositions");
  // Draw distinct propositions while supplies last, then wrap around.
  std::vector<int> ids(alphabet.n_props());
  for (int i = 0; i < alphabet.n_props(); ++i) ids[i] = i;
  std::shuffle(ids.begin(), ids.end(), rng);
  auto prop = [&](int k) { return f_atom(ids[k % ids.size()]); };

  FormulaPtr pp = prop(0), q = prop(1), r = prop(2), z = prop(3);
  switch (p) {
    case Pattern::Absence:
      return f_unary(Op::Globally, f_not(pp));
    case Pattern::Existence:
      return f_unary(Op::Finally, pp);
    case Pattern::BoundedExistence:
      return f_binary(
          Op::WeakUntil, f_not(pp),
          f_binary(Op::WeakUntil, pp,
                   f_binary(Op::WeakUntil, f_not(pp),
                            f_binary(Op::WeakUntil, pp,
                                     f_unary(Op::Globally, f_not(pp))))));
    case Pattern::Universality:
      return f_unary(Op::Globally, pp);
    case Pattern::Precedence:
      return f_binary(Op::WeakUntil, f_not(q), pp);
    case Pattern::Response:
      return f_unary(Op::Globally, f_implies(pp, f_unary(Op::Finally, q)));
    case Pattern::PrecedenceChain:
      return f_implies(
          f_unary(Op::Finally, pp),
          f_binary(Op::Until, f_not(pp),
                   f_and({q, f_not(pp),
                          f_unary(Op::Next, f_binary(Op::Until, f_not(pp), r))})));
    case Pattern::ResponseChain:
      return f_unary(
          Op::Globally,
          f_implies(pp, f_unary(Op::Finally,
                                f_and({q, f_unary(Op::Next, f_unary(Op::Finally, r))}))));
    case Pattern::ConstrainedChain:
      return f_unary(
          Op::Globally,
          f_implies(pp, f_unary(Op::Finally,
                                f_and({q, f_not(z),
                                       f_unary(Op::Next,
                                               f_binary(Op::Until, f_not(z), r))}))));
  }
  throw GeneratorError("unknown pattern");
}

}  // namespace decmon

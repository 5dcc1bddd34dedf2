#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "decmon/alphabet.hpp"
#include "decmon/monitor.hpp"

namespace decmon {

enum class Op {
  True,
  False,
  Atom,
  Not,
  And,   // n-ary, kids canonically sorted
  Or,    // n-ary, kids canonically sorted
  Implies,
  Iff,
  Next,
  WeakNext,  // "Xw": like Next but satisfied at the end of the trace
  Finally,
  Globally,
  Until,
  Release,
  WeakUntil,
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  Op op;
  int atom = -1;  // proposition id when op == Atom
  std::vector<FormulaPtr> kids;
};

// Leaf/constructor helpers. These do NOT simplify; see simplify().
FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_atom(int prop);
FormulaPtr f_not(FormulaPtr a);
FormulaPtr f_and(std::vector<FormulaPtr> kids);
FormulaPtr f_or(std::vector<FormulaPtr> kids);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b);
FormulaPtr f_unary(Op op, FormulaPtr a);    // Next/WeakNext/Finally/Globally
FormulaPtr f_binary(Op op, FormulaPtr a, FormulaPtr b);  // Until/Release/WeakUntil

// Total structural order; 0 iff structurally equal.
int compare(const Formula& a, const Formula& b);
inline bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  return compare(*a, *b) == 0;
}

struct ParseError : std::runtime_error {
  size_t pos;  // byte offset into the input
  ParseError(size_t at, const std::string& what)
      : std::runtime_error("at " + std::to_string(at) + ": " + what), pos(at) {}
};

// Grammar (ASCII): atoms are identifiers over the given alphabet; constants
// true/false; unary ! X Xw F G; binary U R W (right-associative) bind tighter
// than & (and &&), then | (||), then -> (right-associative), then <->.
FormulaPtr parse_ltl(const std::string& text, const DistributedAlphabet& alphabet);

// Canonical rendering with minimal parentheses; parse_ltl(print_ltl(f)) is f.
std::string print_ltl(const FormulaPtr& f, const DistributedAlphabet& alphabet);

// Canonical form: constants folded (including through temporal operators),
// double negation removed, &/| flattened, sorted, deduplicated, absorbed.
// Idempotent; preserves meaning.
FormulaPtr simplify(const FormulaPtr& f);

// One step of formula progression: the residual obligation after observing
// event e. Result is canonical.
FormulaPtr progress(const FormulaPtr& f, Event e, const DistributedAlphabet& alphabet);

struct StateExplosion : std::runtime_error {
  int cap;
  explicit StateExplosion(int cap_states)
      : std::runtime_error("progression closure exceeded " + std::to_string(cap_states) +
                           " states"),
        cap(cap_states) {}
};

struct CompiledMonitor {
  Monitor monitor;
  std::vector<std::string> state_formulas;  // canonical rendering per state
};

// Builds the verdict monitor whose states are the canonical progressions of f,
// reached breadth-first with events in ascending order (deterministic state
// numbering). State verdicts: formula true -> Top, false -> Bottom, else
// Unknown. Throws StateExplosion past cap_states.
CompiledMonitor compile_ltl(const FormulaPtr& f, const DistributedAlphabet& alphabet,
                            int cap_states = 10000);

// Obligation-depth size measure: constants and atoms are 0, negation is
// transparent, conjunction adds, disjunction (and -> <->) takes the max, and
// each temporal operator adds one level on top of its argument(s).
int entailment_size(const FormulaPtr& f);

// Plain count of temporal operators, as an alternative size measure.
int temporal_op_count(const FormulaPtr& f);

// Number of tokens in the canonical rendering, parentheses included.
int symbol_count(const FormulaPtr& f, const DistributedAlphabet& alphabet);

}  // namespace decmon

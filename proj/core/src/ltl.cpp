#include "decmon/ltl.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>

namespace decmon {

FormulaPtr f_true() {
  static FormulaPtr t = std::make_shared<Formula>(Formula{Op::True, -1, {}});
  return t;
}
FormulaPtr f_false() {
  static FormulaPtr f = std::make_shared<Formula>(Formula{Op::False, -1, {}});
  return f;
}
FormulaPtr f_atom(int prop) {
  return std::make_shared<Formula>(Formula{Op::Atom, prop, {}});
}
FormulaPtr f_not(FormulaPtr a) {
  return std::make_shared<Formula>(Formula{Op::Not, -1, {std::move(a)}});
}
FormulaPtr f_and(std::vector<FormulaPtr> kids) {
  return std::make_shared<Formula>(Formula{Op::And, -1, std::move(kids)});
}
FormulaPtr f_or(std::vector<FormulaPtr> kids) {
  return std::make_shared<Formula>(Formula{Op::Or, -1, std::move(kids)});
}
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Formula{Op::Implies, -1, {std::move(a), std::move(b)}});
}
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Formula{Op::Iff, -1, {std::move(a), std::move(b)}});
}
FormulaPtr f_unary(Op op, FormulaPtr a) {
  return std::make_shared<Formula>(Formula{op, -1, {std::move(a)}});
}
FormulaPtr f_binary(Op op, FormulaPtr a, FormulaPtr b) {
  return std::make_shared<Formula>(Formula{op, -1, {std::move(a), std::move(b)}});
}

int compare(const Formula& a, const Formula& b) {
  if (a.op != b.op) return static_cast<int>(a.op) < static_cast<int>(b.op) ? -1 : 1;
  if (a.op == Op::Atom) return a.atom < b.atom ? -1 : (a.atom > b.atom ? 1 : 0);
  if (a.kids.size() != b.kids.size()) return a.kids.size() < b.kids.size() ? -1 : 1;
  for (size_t i = 0; i < a.kids.size(); ++i)
    if (int c = compare(*a.kids[i], *b.kids[i]); c != 0) return c;
  return 0;
}

// ---------------------------------------------------------------------------
// Smart constructors: take canonical inputs, produce canonical results.

namespace {

bool is_const(const FormulaPtr& f, Op which) { return f->op == which; }

FormulaPtr mk_not(const FormulaPtr& a) {
  if (a->op == Op::True) return f_false();
  if (a->op == Op::False) return f_true();
  if (a->op == Op::Not) return a->kids[0];
  return f_not(a);
}

struct PtrLess {
  bool operator()(const FormulaPtr& a, const FormulaPtr& b) const {
    return compare(*a, *b) < 0;
  }
};

// Sort + dedupe + absorption shared by And/Or. `dual` is the operator absorbed
// into this one (Or inside And and vice versa).
std::vector<FormulaPtr> normalize_kids(std::vector<FormulaPtr> kids, Op dual) {
  std::sort(kids.begin(), kids.end(), PtrLess{});
  kids.erase(std::unique(kids.begin(), kids.end(),
                         [](const FormulaPtr& a, const FormulaPtr& b) {
                           return compare(*a, *b) == 0;
                         }),
             kids.end());
  // Absorption: drop a dual-node kid that contains some other kid.
  std::vector<FormulaPtr> out;
  for (const auto& k : kids) {
    bool absorbed = false;
    if (k->op == dual) {
      for (const auto& other : kids) {
        if (other.get() == k.get()) continue;
        for (const auto& dk : k->kids)
          if (compare(*dk, *other) == 0) {
            absorbed = true;
            break;
          }
        if (absorbed) break;
      }
    }
    if (!absorbed) out.push_back(k);
  }
  return out;
}

FormulaPtr mk_and(std::vector<FormulaPtr> kids) {
  std::vector<FormulaPtr> flat;
  for (auto& k : kids) {
    if (is_const(k, Op::True)) continue;
    if (is_const(k, Op::False)) return f_false();
    if (k->op == Op::And)
      flat.insert(flat.end(), k->kids.begin(), k->kids.end());
    else
      flat.push_back(std::move(k));
  }
  flat = normalize_kids(std::move(flat), Op::Or);
  if (flat.empty()) return f_true();
  if (flat.size() == 1) return flat[0];
  return f_and(std::move(flat));
}

FormulaPtr mk_or(std::vector<FormulaPtr> kids) {
  std::vector<FormulaPtr> flat;
  for (auto& k : kids) {
    if (is_const(k, Op::False)) continue;
    if (is_const(k, Op::True)) return f_true();
    if (k->op == Op::Or)
      flat.insert(flat.end(), k->kids.begin(), k->kids.end());
    else
      flat.push_back(std::move(k));
  }
  flat = normalize_kids(std::move(flat), Op::And);
  if (flat.empty()) return f_false();
  if (flat.size() == 1) return flat[0];
  return f_or(std::move(flat));
}

FormulaPtr mk_implies(const FormulaPtr& a, const FormulaPtr& b) {
  if (a->op == Op::True) return b;
  if (a->op == Op::False) return f_true();
  if (b->op == Op::True) return f_true();
  if (b->op == Op::False) return mk_not(a);
  if (compare(*a, *b) == 0) return f_true();
  return f_implies(a, b);
}

FormulaPtr mk_iff(const FormulaPtr& a, const FormulaPtr& b) {
  if (a->op == Op::True) return b;
  if (a->op == Op::False) return mk_not(b);
  if (b->op == Op::True) return a;
  if (b->op == Op::False) return mk_not(a);
  if (compare(*a, *b) == 0) return f_true();
  return f_iff(a, b);
}

FormulaPtr mk_unary(Op op, const FormulaPtr& a) {
  // Constants pass through every temporal operator.
  if (a->op == Op::True) return f_true();
  if (a->op == Op::False) return f_false();
  return f_unary(op, a);
}

FormulaPtr mk_binary(Op op, const FormulaPtr& a, const FormulaPtr& b) {
  switch (op) {
    case Op::Until:
      if (b->op == Op::True) return f_true();
      if (b->op == Op::False) return f_false();
      if (a->op == Op::False) return b;
      if (a->op == Op::True) return mk_unary(Op::Finally, b);
      if (compare(*a, *b) == 0) return a;
      break;
    case Op::Release:
      if (b->op == Op::True) return f_true();
      if (b->op == Op::False) return f_false();
      if (a->op == Op::True) return b;
      if (a->op == Op::False) return mk_unary(Op::Globally, b);
      if (compare(*a, *b) == 0) return a;
      break;
    case Op::WeakUntil:
      if (a->op == Op::True) return f_true();
      if (b->op == Op::True) return f_true();
      if (a->op == Op::False) return b;
      if (b->op == Op::False) return mk_unary(Op::Globally, a);
      if (compare(*a, *b) == 0) return a;
      break;
    default:
      break;
  }
  return f_binary(op, a, b);
}

}  // namespace

FormulaPtr simplify(const FormulaPtr& f) {
  switch (f->op) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return f;
    case Op::Not:
      return mk_not(simplify(f->kids[0]));
    case Op::And: {
      std::vector<FormulaPtr> kids;
      kids.reserve(f->kids.size());
      for (const auto& k : f->kids) kids.push_back(simplify(k));
      return mk_and(std::move(kids));
    }
    case Op::Or: {
      std::vector<FormulaPtr> kids;
      kids.reserve(f->kids.size());
      for (const auto& k : f->kids) kids.push_back(simplify(k));
      return mk_or(std::move(kids));
    }
    case Op::Implies:
      return mk_implies(simplify(f->kids[0]), simplify(f->kids[1]));
    case Op::Iff:
      return mk_iff(simplify(f->kids[0]), simplify(f->kids[1]));
    case Op::Next:
    case Op::WeakNext:
    case Op::Finally:
    case Op::Globally:
      return mk_unary(f->op, simplify(f->kids[0]));
    case Op::Until:
    case Op::Release:
    case Op::WeakUntil:
      return mk_binary(f->op, simplify(f->kids[0]), simplify(f->kids[1]));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Token {
  enum Kind { Ident, TrueK, FalseK, Bang, AmpK, PipeK, Arrow, DArrow, LPar, RPar,
              NextK, WeakNextK, FinallyK, GloballyK, UntilK, ReleaseK, WeakUntilK,
              End } kind;
  std::string text;
  size_t pos;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    size_t at = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      std::string word = s.substr(i, j - i);
      i = j;
      Token::Kind k = Token::Ident;
      if (word == "true") k = Token::TrueK;
      else if (word == "false") k = Token::FalseK;
      else if (word == "X") k = Token::NextK;
      else if (word == "Xw") k = Token::WeakNextK;
      else if (word == "F") k = Token::FinallyK;
      else if (word == "G") k = Token::GloballyK;
      else if (word == "U") k = Token::UntilK;
      else if (word == "R") k = Token::ReleaseK;
      else if (word == "W") k = Token::WeakUntilK;
      out.push_back({k, word, at});
      continue;
    }
    switch (c) {
      case '!': out.push_back({Token::Bang, "!", at}); ++i; break;
      case '&':
        ++i;
        if (i < s.size() && s[i] == '&') ++i;
        out.push_back({Token::AmpK, "&", at});
        break;
      case '|':
        ++i;
        if (i < s.size() && s[i] == '|') ++i;
        out.push_back({Token::PipeK, "|", at});
        break;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          out.push_back({Token::Arrow, "->", at});
          i += 2;
        } else {
          throw ParseError(at, "stray '-'");
        }
        break;
      case '<':
        if (s.compare(i, 3, "<->") == 0) {
          out.push_back({Token::DArrow, "<->", at});
          i += 3;
        } else {
          throw ParseError(at, "stray '<'");
        }
        break;
      case '(': out.push_back({Token::LPar, "(", at}); ++i; break;
      case ')': out.push_back({Token::RPar, ")", at}); ++i; break;
      default:
        throw ParseError(at, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Token::End, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const DistributedAlphabet& alphabet)
      : toks_(std::move(toks)), alphabet_(alphabet) {}

  FormulaPtr parse() {
    auto f = parse_iff();
    expect(Token::End, "end of input");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  void expect(Token::Kind k, const std::string& what) {
    if (peek().kind != k) throw ParseError(peek().pos, "expected " + what);
    ++pos_;
  }

  FormulaPtr parse_iff() {
    auto l = parse_implies();
    if (peek().kind == Token::DArrow) {
      take();
      return f_iff(l, parse_iff());
    }
    return l;
  }

  FormulaPtr parse_implies() {
    auto l = parse_or();
    if (peek().kind == Token::Arrow) {
      take();
      return f_implies(l, parse_implies());
    }
    return l;
  }

  FormulaPtr parse_or() {
    std::vector<FormulaPtr> kids{parse_and()};
    while (peek().kind == Token::PipeK) {
      take();
      kids.push_back(parse_and());
    }
    return kids.size() == 1 ? kids[0] : f_or(std::move(kids));
  }

  FormulaPtr parse_and() {
    std::vector<FormulaPtr> kids{parse_temporal()};
    while (peek().kind == Token::AmpK) {
      take();
      kids.push_back(parse_temporal());
    }
    return kids.size() == 1 ? kids[0] : f_and(std::move(kids));
  }

  FormulaPtr parse_temporal() {
    auto l = parse_unary();
    switch (peek().kind) {
      case Token::UntilK: take(); return f_binary(Op::Until, l, parse_temporal());
      case Token::ReleaseK: take(); return f_binary(Op::Release, l, parse_temporal());
      case Token::WeakUntilK: take(); return f_binary(Op::WeakUntil, l, parse_temporal());
      default: return l;
    }
  }

  FormulaPtr parse_unary() {
    switch (peek().kind) {
      case Token::Bang: take(); return f_not(parse_unary());
      case Token::NextK: take(); return f_unary(Op::Next, parse_unary());
      case Token::WeakNextK: take(); return f_unary(Op::WeakNext, parse_unary());
      case Token::FinallyK: take(); return f_unary(Op::Finally, parse_unary());
      case Token::GloballyK: take(); return f_unary(Op::Globally, parse_unary());
      default: return parse_primary();
    }
  }

  FormulaPtr parse_primary() {
    Token t = take();
    switch (t.kind) {
      case Token::TrueK: return f_true();
      case Token::FalseK: return f_false();
      case Token::Ident: {
        int p = alphabet_.prop_id(t.text);
        if (p < 0) throw ParseError(t.pos, "unknown proposition '" + t.text + "'");
        return f_atom(p);
      }
      case Token::LPar: {
        auto f = parse_iff();
        expect(Token::RPar, "')'");
        return f;
      }
      default:
        throw ParseError(t.pos, "expected a formula, got '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  const DistributedAlphabet& alphabet_;
  size_t pos_ = 0;
};

}  // namespace

FormulaPtr parse_ltl(const std::string& text, const DistributedAlphabet& alphabet) {
  return Parser(lex(text), alphabet).parse();
}

// ---------------------------------------------------------------------------
// Printer

namespace {

// Binding strength; higher binds tighter.
int prec_of(Op op) {
  switch (op) {
    case Op::Iff: return 1;
    case Op::Implies: return 2;
    case Op::Or: return 3;
    case Op::And: return 4;
    case Op::Until:
    case Op::Release:
    case Op::WeakUntil: return 5;
    case Op::Not:
    case Op::Next:
    case Op::WeakNext:
    case Op::Finally:
    case Op::Globally: return 6;
    default: return 7;
  }
}

const char* binary_sym(Op op) {
  switch (op) {
    case Op::Until: return " U ";
    case Op::Release: return " R ";
    case Op::WeakUntil: return " W ";
    case Op::Implies: return " -> ";
    case Op::Iff: return " <-> ";
    default: return "?";
  }
}

void print_rec(const FormulaPtr& f, const DistributedAlphabet& alphabet, int min_prec,
               std::string& out) {
  int p = prec_of(f->op);
  bool parens = p < min_prec;
  if (parens) out += "(";
  switch (f->op) {
    case Op::True: out += "true"; break;
    case Op::False: out += "false"; break;
    case Op::Atom: out += alphabet.prop_name(f->atom); break;
    case Op::Not:
      out += "!";
      print_rec(f->kids[0], alphabet, 7, out);
      break;
    case Op::Next:
    case Op::WeakNext:
    case Op::Finally:
    case Op::Globally:
      out += f->op == Op::Next ? "X" : f->op == Op::WeakNext ? "Xw"
             : f->op == Op::Finally ? "F" : "G";
      out += " ";
      print_rec(f->kids[0], alphabet, 6, out);
      break;
    case Op::And: {
      for (size_t i = 0; i < f->kids.size(); ++i) {
        if (i) out += " & ";
        print_rec(f->kids[i], alphabet, 5, out);
      }
      break;
    }
    case Op::Or: {
      for (size_t i = 0; i < f->kids.size(); ++i) {
        if (i) out += " | ";
        print_rec(f->kids[i], alphabet, 4, out);
      }
      break;
    }
    case Op::Until:
    case Op::Release:
    case Op::WeakUntil:
      print_rec(f->kids[0], alphabet, 6, out);
      out += binary_sym(f->op);
      print_rec(f->kids[1], alphabet, 5, out);
      break;
    case Op::Implies:
      print_rec(f->kids[0], alphabet, 3, out);
      out += binary_sym(f->op);
      print_rec(f->kids[1], alphabet, 2, out);
      break;
    case Op::Iff:
      print_rec(f->kids[0], alphabet, 2, out);
      out += binary_sym(f->op);
      print_rec(f->kids[1], alphabet, 1, out);
      break;
  }
  if (parens) out += ")";
}

}  // namespace

std::string print_ltl(const FormulaPtr& f, const DistributedAlphabet& alphabet) {
  std::string out;
  print_rec(f, alphabet, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Progression

namespace {

FormulaPtr progress_canonical(const FormulaPtr& f, Event e,
                              const DistributedAlphabet& alphabet) {
  switch (f->op) {
    case Op::True:
    case Op::False:
      return f;
    case Op::Atom:
      return (e >> f->atom) & 1 ? f_true() : f_false();
    case Op::Not:
      return mk_not(progress_canonical(f->kids[0], e, alphabet));
    case Op::And: {
      std::vector<FormulaPtr> kids;
      kids.reserve(f->kids.size());
      for (const auto& k : f->kids) kids.push_back(progress_canonical(k, e, alphabet));
      return mk_and(std::move(kids));
    }
    case Op::Or: {
      std::vector<FormulaPtr> kids;
      kids.reserve(f->kids.size());
      for (const auto& k : f->kids) kids.push_back(progress_canonical(k, e, alphabet));
      return mk_or(std::move(kids));
    }
    case Op::Implies:
      return mk_implies(progress_canonical(f->kids[0], e, alphabet),
                        progress_canonical(f->kids[1], e, alphabet));
    case Op::Iff:
      return mk_iff(progress_canonical(f->kids[0], e, alphabet),
                    progress_canonical(f->kids[1], e, alphabet));
    case Op::Next:
    case Op::WeakNext:
      return f->kids[0];
    case Op::Finally:
      return mk_or({progress_canonical(f->kids[0], e, alphabet), f});
    case Op::Globally:
      return mk_and({progress_canonical(f->kids[0], e, alphabet), f});
    case Op::Until:
      return mk_or({progress_canonical(f->kids[1], e, alphabet),
                    mk_and({progress_canonical(f->kids[0], e, alphabet), f})});
    case Op::Release:
      return mk_and({progress_canonical(f->kids[1], e, alphabet),
                     mk_or({progress_canonical(f->kids[0], e, alphabet), f})});
    case Op::WeakUntil:
      return mk_or({progress_canonical(f->kids[1], e, alphabet),
                    mk_and({progress_canonical(f->kids[0], e, alphabet), f})});
  }
  return f;
}

}  // namespace

FormulaPtr progress(const FormulaPtr& f, Event e, const DistributedAlphabet& alphabet) {
  return progress_canonical(simplify(f), e, alphabet);
}

CompiledMonitor compile_ltl(const FormulaPtr& f, const DistributedAlphabet& alphabet,
                            int cap_states) {
  if (alphabet.n_props() > TransitionFn::kDenseMaxProps)
    throw MonitorError("formula compilation over more than 16 propositions");
  Event full = alphabet.full_event_mask();

  std::vector<FormulaPtr> states;
  std::map<std::string, int> ids;
  // Some residual families never close up syntactically (each step nests one
  // more copy of an obligation). A residual far longer than the root formula
  // is the signature of that divergence; give up early instead of grinding
  // toward the state cap with ever-larger formulas.
  size_t growth_budget = 0;
  auto intern = [&](const FormulaPtr& g) {
    std::string key = print_ltl(g, alphabet);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    if (static_cast<int>(states.size()) >= cap_states || key.size() > growth_budget)
      throw StateExplosion(cap_states);
    int id = static_cast<int>(states.size());
    states.push_back(g);
    ids.emplace(std::move(key), id);
    return id;
  };

  FormulaPtr root = simplify(f);
  growth_budget = std::max<size_t>(1024, 32 * print_ltl(root, alphabet).size());
  intern(root);
  std::vector<std::vector<int>> rows;
  for (size_t q = 0; q < states.size(); ++q) {
    std::vector<int> row(static_cast<size_t>(full) + 1);
    for (Event e = 0;; ++e) {
      row[e] = intern(progress_canonical(states[q], e, alphabet));
      if (e == full) break;
    }
    rows.push_back(std::move(row));
  }

  CompiledMonitor out;
  out.monitor.n_props = alphabet.n_props();
  out.monitor.n_states = static_cast<int>(states.size());
  out.monitor.init = 0;
  out.monitor.delta = TransitionFn::dense(out.monitor.n_states, out.monitor.n_props);
  out.monitor.verdicts.reserve(states.size());
  for (size_t q = 0; q < states.size(); ++q) {
    for (Event e = 0;; ++e) {
      out.monitor.delta.set(static_cast<int>(q), e, rows[q][e]);
      if (e == full) break;
    }
    Verdict v = Verdict::Unknown;
    if (states[q]->op == Op::True) v = Verdict::Top;
    else if (states[q]->op == Op::False) v = Verdict::Bottom;
    out.monitor.verdicts.push_back(v);
    out.state_formulas.push_back(print_ltl(states[q], alphabet));
  }
  return out;
}

int entailment_size(const FormulaPtr& f) {
  switch (f->op) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return 0;
    case Op::Not:
      return entailment_size(f->kids[0]);
    case Op::And: {
      int s = 0;
      for (const auto& k : f->kids) s += entailment_size(k);
      return s;
    }
    case Op::Or: {
      int s = 0;
      for (const auto& k : f->kids) s = std::max(s, entailment_size(k));
      return s;
    }
    case Op::Implies:
    case Op::Iff:
      return std::max(entailment_size(f->kids[0]), entailment_size(f->kids[1]));
    case Op::Next:
    case Op::WeakNext:
    case Op::Finally:
    case Op::Globally:
      return 1 + entailment_size(f->kids[0]);
    case Op::Until:
    case Op::Release:
    case Op::WeakUntil:
      return 1 + std::max(entailment_size(f->kids[0]), entailment_size(f->kids[1]));
  }
  return 0;
}

int temporal_op_count(const FormulaPtr& f) {
  int self = 0;
  switch (f->op) {
    case Op::Next:
    case Op::WeakNext:
    case Op::Finally:
    case Op::Globally:
    case Op::Until:
    case Op::Release:
    case Op::WeakUntil:
      self = 1;
      break;
    default:
      break;
  }
  for (const auto& k : f->kids) self += temporal_op_count(k);
  return self;
}

int symbol_count(const FormulaPtr& f, const DistributedAlphabet& alphabet) {
  return static_cast<int>(lex(print_ltl(f, alphabet)).size()) - 1;  // minus End
}

}  // namespace decmon

#include "ccsynth/formula.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <vector>

namespace ccsynth {

Formula Formula::make(Op op, Property name, const Formula* lhs, const Formula* rhs) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->name = std::move(name);
  if (lhs) n->lhs = std::make_shared<const Formula>(*lhs);
  if (rhs) n->rhs = std::make_shared<const Formula>(*rhs);
  return Formula(std::move(n));
}

Formula Formula::truth() { return make(Op::True, {}, nullptr, nullptr); }
Formula Formula::falsity() { return make(Op::False, {}, nullptr, nullptr); }
Formula Formula::atom(Property p) {
  if (p.empty()) throw std::invalid_argument("empty property name");
  return make(Op::Atom, std::move(p), nullptr, nullptr);
}
Formula Formula::negation(Formula f) { return make(Op::Not, {}, &f, nullptr); }
Formula Formula::next(Formula f) { return make(Op::Next, {}, &f, nullptr); }
Formula Formula::eventually(Formula f) { return make(Op::Eventually, {}, &f, nullptr); }
Formula Formula::always(Formula f) { return make(Op::Always, {}, &f, nullptr); }
Formula Formula::conj(Formula a, Formula b) { return make(Op::And, {}, &a, &b); }
Formula Formula::disj(Formula a, Formula b) { return make(Op::Or, {}, &a, &b); }
Formula Formula::implies(Formula a, Formula b) { return make(Op::Implies, {}, &a, &b); }
Formula Formula::until(Formula a, Formula b) { return make(Op::Until, {}, &a, &b); }
Formula Formula::release(Formula a, Formula b) { return make(Op::Release, {}, &a, &b); }

bool Formula::is_unary() const {
  switch (op()) {
    case Op::Not:
    case Op::Next:
    case Op::Eventually:
    case Op::Always:
      return true;
    default:
      return false;
  }
}

bool Formula::is_binary() const {
  switch (op()) {
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Until:
    case Op::Release:
      return true;
    default:
      return false;
  }
}

std::size_t Formula::depth() const {
  if (is_unary()) return 1 + sub().depth();
  if (is_binary()) return 1 + std::max(lhs().depth(), rhs().depth());
  return 0;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op() || a.name() != b.name()) return false;
  if (a.is_unary()) return a.sub() == b.sub();
  if (a.is_binary()) return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  return true;
}

std::string Formula::str() const {
  switch (op()) {
    case Op::True:
      return "true";
    case Op::False:
      return "false";
    case Op::Atom:
      return name();
    case Op::Not:
      return "!" + sub().str();
    case Op::Next:
      return "X " + sub().str();
    case Op::Eventually:
      return "F " + sub().str();
    case Op::Always:
      return "G " + sub().str();
    case Op::And:
      return "(" + lhs().str() + " & " + rhs().str() + ")";
    case Op::Or:
      return "(" + lhs().str() + " | " + rhs().str() + ")";
    case Op::Implies:
      return "(" + lhs().str() + " -> " + rhs().str() + ")";
    case Op::Until:
      return "(" + lhs().str() + " U " + rhs().str() + ")";
    case Op::Release:
      // No release token in the grammar; print its dual.
      return "!(!" + lhs().str() + " U !" + rhs().str() + ")";
  }
  return {};
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { Ident, True, False, Not, Next, Eventually, Always, And, Or, Implies, Until, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : src_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
      if (i_ >= src_.size()) {
        out.push_back({Tok::End, i_, {}});
        return out;
      }
      const std::size_t start = i_;
      const char c = src_[i_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_')) ++i_;
        std::string word(src_.substr(start, i_ - start));
        out.push_back({keyword(word), start, word});
        continue;
      }
      auto two = src_.substr(i_, 2);
      if (two == "[]") {
        out.push_back({Tok::Always, start, "[]"});
        i_ += 2;
      } else if (two == "<>") {
        out.push_back({Tok::Eventually, start, "<>"});
        i_ += 2;
      } else if (two == "->") {
        out.push_back({Tok::Implies, start, "->"});
        i_ += 2;
      } else if (c == '!') {
        out.push_back({Tok::Not, start, "!"});
        ++i_;
      } else if (c == '&') {
        out.push_back({Tok::And, start, "&"});
        ++i_;
      } else if (c == '|') {
        out.push_back({Tok::Or, start, "|"});
        ++i_;
      } else if (c == '(') {
        out.push_back({Tok::LParen, start, "("});
        ++i_;
      } else if (c == ')') {
        out.push_back({Tok::RParen, start, ")"});
        ++i_;
      } else {
        throw LtlParseError(LtlParseError::Kind::Syntax, start, {},
                            "unexpected character '" + std::string(1, c) + "' at position " + std::to_string(start));
      }
    }
  }

 private:
  static Tok keyword(const std::string& w) {
    if (w == "X") return Tok::Next;
    if (w == "F") return Tok::Eventually;
    if (w == "G") return Tok::Always;
    if (w == "U") return Tok::Until;
    if (w == "true") return Tok::True;
    if (w == "false") return Tok::False;
    return Tok::Ident;
  }

  std::string_view src_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, const PropertySet& alphabet) : toks_(std::move(toks)), alphabet_(alphabet) {}

  Formula parse() {
    Formula f = implication();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  Token take() { return toks_[i_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw LtlParseError(LtlParseError::Kind::Syntax, peek().pos, {},
                        "syntax error at position " + std::to_string(peek().pos) + ": " + msg);
  }

  // -> is right associative and binds weakest.
  Formula implication() {
    Formula lhs = disjunction();
    if (peek().kind == Tok::Implies) {
      take();
      return Formula::implies(lhs, implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (peek().kind == Tok::Or) {
      take();
      f = Formula::disj(f, conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = until();
    while (peek().kind == Tok::And) {
      take();
      f = Formula::conj(f, until());
    }
    return f;
  }

  Formula until() {
    Formula lhs = unary();
    if (peek().kind == Tok::Until) {
      take();
      return Formula::until(lhs, until());
    }
    return lhs;
  }

  Formula unary() {
    const Token t = take();
    switch (t.kind) {
      case Tok::Not:
        return Formula::negation(unary());
      case Tok::Next:
        return Formula::next(unary());
      case Tok::Eventually:
        return Formula::eventually(unary());
      case Tok::Always:
        return Formula::always(unary());
      case Tok::True:
        return Formula::truth();
      case Tok::False:
        return Formula::falsity();
      case Tok::Ident:
        if (!alphabet_.contains(t.text))
          throw LtlParseError(LtlParseError::Kind::UnknownAtom, t.pos, t.text,
                              "unknown atom '" + t.text + "' at position " + std::to_string(t.pos));
        return Formula::atom(t.text);
      case Tok::LParen: {
        Formula f = implication();
        if (peek().kind != Tok::RParen) fail("expected ')'");
        take();
        return f;
      }
      default:
        --i_;
        fail(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  const PropertySet& alphabet_;
  std::size_t i_ = 0;
};

}  // namespace

Formula parse_ltl(std::string_view text, const PropertySet& alphabet) {
  return Parser(Lexer(text).run(), alphabet).parse();
}

// ---------------------------------------------------------------------------
// Negation normal form

namespace {

Formula nnf(const Formula& f, bool negated) {
  switch (f.op()) {
    case Op::True:
      return negated ? Formula::falsity() : Formula::truth();
    case Op::False:
      return negated ? Formula::truth() : Formula::falsity();
    case Op::Atom:
      return negated ? Formula::negation(f) : f;
    case Op::Not:
      return nnf(f.sub(), !negated);
    case Op::Next:
      return Formula::next(nnf(f.sub(), negated));
    case Op::And:
      return negated ? Formula::disj(nnf(f.lhs(), true), nnf(f.rhs(), true))
                     : Formula::conj(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Or:
      return negated ? Formula::conj(nnf(f.lhs(), true), nnf(f.rhs(), true))
                     : Formula::disj(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Implies:
      return negated ? Formula::conj(nnf(f.lhs(), false), nnf(f.rhs(), true))
                     : Formula::disj(nnf(f.lhs(), true), nnf(f.rhs(), false));
    case Op::Until:
      return negated ? Formula::release(nnf(f.lhs(), true), nnf(f.rhs(), true))
                     : Formula::until(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Release:
      return negated ? Formula::until(nnf(f.lhs(), true), nnf(f.rhs(), true))
                     : Formula::release(nnf(f.lhs(), false), nnf(f.rhs(), false));
    case Op::Eventually:
      // F a = true U a ;  !F a = false R !a
      return negated ? Formula::release(Formula::falsity(), nnf(f.sub(), true))
                     : Formula::until(Formula::truth(), nnf(f.sub(), false));
    case Op::Always:
      return negated ? Formula::until(Formula::truth(), nnf(f.sub(), true))
                     : Formula::release(Formula::falsity(), nnf(f.sub(), false));
  }
  return f;
}

}  // namespace

Formula to_negation_normal_form(const Formula& f) { return nnf(f, false); }

bool is_negation_normal_form(const Formula& f) {
  switch (f.op()) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return true;
    case Op::Not:
      return f.sub().op() == Op::Atom;
    case Op::Next:
      return is_negation_normal_form(f.sub());
    case Op::And:
    case Op::Or:
    case Op::Until:
    case Op::Release:
      return is_negation_normal_form(f.lhs()) && is_negation_normal_form(f.rhs());
    default:
      return false;
  }
}

// ---------------------------------------------------------------------------
// Lasso evaluation

namespace {

class LassoEvaluator {
 public:
  explicit LassoEvaluator(const LassoWord& w) : w_(w), n_(w.size()) {}

  std::vector<char> eval(const Formula& f) {
    auto it = memo_.find(&f);
    if (it != memo_.end()) return it->second;
    std::vector<char> v = compute(f);
    memo_.emplace(&f, v);
    return v;
  }

 private:
  std::size_t succ(std::size_t i) const { return i + 1 < n_ ? i + 1 : w_.prefix.size(); }

  // Least (until) or greatest (release) fixpoint of
  //   v(i) = now(i) OR/AND (keep(i) AND/OR v(succ i))
  // over the lasso graph; |w| sweeps backwards reach it.
  std::vector<char> fixpoint(const std::vector<char>& keep, const std::vector<char>& now, bool least) {
    std::vector<char> v(n_, least ? 0 : 1);
    for (std::size_t round = 0; round <= n_; ++round) {
      bool changed = false;
      for (std::size_t k = n_; k-- > 0;) {
        char nv = least ? (now[k] || (keep[k] && v[succ(k)])) : (now[k] && (keep[k] || v[succ(k)]));
        if (nv != v[k]) {
          v[k] = nv;
          changed = true;
        }
      }
      if (!changed) break;
    }
    return v;
  }

  std::vector<char> compute(const Formula& f) {
    std::vector<char> v(n_);
    switch (f.op()) {
      case Op::True:
        std::fill(v.begin(), v.end(), 1);
        return v;
      case Op::False:
        return v;
      case Op::Atom:
        for (std::size_t i = 0; i < n_; ++i) v[i] = w_.at(i).first == f.name();
        return v;
      case Op::Not: {
        auto a = eval(f.sub());
        for (std::size_t i = 0; i < n_; ++i) v[i] = !a[i];
        return v;
      }
      case Op::Next: {
        auto a = eval(f.sub());
        for (std::size_t i = 0; i < n_; ++i) v[i] = a[succ(i)];
        return v;
      }
      case Op::And: {
        auto a = eval(f.lhs());
        auto b = eval(f.rhs());
        for (std::size_t i = 0; i < n_; ++i) v[i] = a[i] && b[i];
        return v;
      }
      case Op::Or: {
        auto a = eval(f.lhs());
        auto b = eval(f.rhs());
        for (std::size_t i = 0; i < n_; ++i) v[i] = a[i] || b[i];
        return v;
      }
      case Op::Implies: {
        auto a = eval(f.lhs());
        auto b = eval(f.rhs());
        for (std::size_t i = 0; i < n_; ++i) v[i] = !a[i] || b[i];
        return v;
      }
      case Op::Until:
        return fixpoint(eval(f.lhs()), eval(f.rhs()), true);
      case Op::Release:
        return fixpoint(eval(f.lhs()), eval(f.rhs()), false);
      case Op::Eventually:
        return fixpoint(std::vector<char>(n_, 1), eval(f.sub()), true);
      case Op::Always:
        return fixpoint(std::vector<char>(n_, 0), eval(f.sub()), false);
    }
    return v;
  }

  const LassoWord& w_;
  std::size_t n_;
  std::map<const Formula*, std::vector<char>> memo_;
};

}  // namespace

bool eval_on_lasso(const Formula& f, const LassoWord& w) {
  if (w.is_finite()) throw std::invalid_argument("eval_on_lasso needs an infinite word (nonempty period)");
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w.at(i).is_pair()) throw std::invalid_argument("eval_on_lasso needs single-property letters");
  LassoEvaluator ev(w);
  return ev.eval(f)[0] != 0;
}

PropertySet atoms_of(const Formula& f) {
  PropertySet out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.op() == Op::Atom) out.insert(g.name());
    if (g.is_unary()) walk(g.sub());
    if (g.is_binary()) {
      walk(g.lhs());
      walk(g.rhs());
    }
  };
  walk(f);
  return out;
}

std::string to_string(const LassoWord& w) {
  std::string s;
  for (const auto& l : w.prefix) s += l.str() + " ";
  if (!w.period.empty()) {
    s += "(";
    for (std::size_t i = 0; i < w.period.size(); ++i) s += (i ? " " : "") + w.period[i].str();
    s += ")^w";
  }
  if (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

std::string to_string(const Lasso<Property>& w) { return to_string(letters_of(w)); }

}  // namespace ccsynth

#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ccsynth/word.hpp"

namespace ccsynth {

enum class Op {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Implies,
  Next,
  Until,
  Release,  // produced only by to_negation_normal_form
  Eventually,
  Always,
};

/// Immutable LTL syntax tree. Copies share structure.
class Formula {
 public:
  static Formula truth();
  static Formula falsity();
  static Formula atom(Property p);
  static Formula negation(Formula f);
  static Formula next(Formula f);
  static Formula eventually(Formula f);
  static Formula always(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula until(Formula a, Formula b);
  static Formula release(Formula a, Formula b);

  Op op() const { return node_->op; }
  const Property& name() const { return node_->name; }
  const Formula& lhs() const { return *node_->lhs; }
  const Formula& rhs() const { return *node_->rhs; }
  /// Operand of unary operators.
  const Formula& sub() const { return *node_->lhs; }

  bool is_unary() const;
  bool is_binary() const;
  std::size_t depth() const;

  /// Fully parenthesized concrete syntax accepted by parse_ltl.
  std::string str() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Op op;
    Property name;
    std::shared_ptr<const Formula> lhs;
    std::shared_ptr<const Formula> rhs;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Op op, Property name, const Formula* lhs, const Formula* rhs);

  std::shared_ptr<const Node> node_;
};

class LtlParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, UnknownAtom };

  LtlParseError(Kind kind, std::size_t position, std::string identifier, const std::string& what)
      : std::runtime_error(what), kind_(kind), position_(position), identifier_(std::move(identifier)) {}

  Kind kind() const { return kind_; }
  std::size_t position() const { return position_; }
  /// Offending identifier for UnknownAtom errors.
  const std::string& identifier() const { return identifier_; }

 private:
  Kind kind_;
  std::size_t position_;
  std::string identifier_;
};

/// Parses the concrete syntax
///
///   formula := unary (("U" | "&" | "|" | "->") unary)*
///   unary   := ("!" | "X" | "F" | "G" | "[]" | "<>") unary | atom | "true" | "false" | "(" formula ")"
///
/// with binary precedence U > & > | > ->. `U` and `->` associate to the
/// right, `&` and `|` to the left. Every atom must belong to `alphabet`.
Formula parse_ltl(std::string_view text, const PropertySet& alphabet);

/// Pushes negations down to atoms. The result uses only True, False, Atom,
/// Not(Atom), And, Or, Next, Until and Release.
Formula to_negation_normal_form(const Formula& f);

bool is_negation_normal_form(const Formula& f);

/// Truth of w |= f where w is an infinite lasso over single letters and an
/// atom holds at position i iff w(i) is that atom.
bool eval_on_lasso(const Formula& f, const LassoWord& w);

/// Atoms occurring in f.
PropertySet atoms_of(const Formula& f);

}  // namespace ccsynth

// Expression language for 1-morphisms.  Grammar:
//
//   expr    := term ('+' term)*
//   term    := factor ('*' factor)*
//   factor  := primary ('<' INT '>')*
//   primary := 'Id' '(' INT ')' | 'P' '(' INT ',' INT ')' | NAME
//
// '+' is direct sum, '*' is horizontal composition (left after right) and
// binds tighter than '+', '<n>' is the postfix shift.  Idempotent indices in
// the surface syntax are 1-based.  NAME refers to a named 1-morphism supplied
// by the evaluation environment (e.g. defined in an algebra file).
// Whitespace is ignored between tokens.  Syntax errors carry the offending
// input position.  print_expr emits the canonical form ('*' and shifts tight,
// ' + ' spaced), and parsing it back yields an equal tree.
#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "pdgcat/bimod.hpp"

namespace pdgcat {

class ExprError : public std::runtime_error {
 public:
  ExprError(const std::string& msg, int position)
      : std::runtime_error(msg + " at position " + std::to_string(position)),
        position_(position) {}
  int position() const { return position_; }

 private:
  int position_;
};

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
  enum class Kind { Id, Proj, Name, Shift, Compose, Sum };
  Kind kind = Kind::Id;
  int a = 0;         ///< Id(a); P(a,b) first index; Shift amount (all as written)
  int b = 0;         ///< P(a,b) second index
  std::string name;  ///< Name
  std::vector<ExprPtr> children;  ///< Shift: 1; Compose, Sum: 2 (left, right)

  bool equals(const Expr& other) const;
};

/// Parse a full expression; rejects trailing input.  Throws ExprError.
ExprPtr parse_expr(const std::string& text);
std::string print_expr(const Expr& e);

/// Environment of named 1-morphisms for NAME resolution.
using OneMorphismEnv = std::map<std::string, OneMorphism>;

/// Evaluate over an algebra.  Surface indices are 1-based and range-checked;
/// P(s,t) requires s and t in one block each (any blocks), Id(i) takes a
/// 1-based block index.  Throws ExprError for unknown names or bad indices
/// and DimensionError for block mismatches in '*' or '+'.
OneMorphism eval_expr(const Expr& e, AlgebraPtr A, const OneMorphismEnv& env);
OneMorphism eval_expr_text(const std::string& text, AlgebraPtr A, const OneMorphismEnv& env);

/// Canonical expression for an untwisted 1-morphism: the direct sum of its
/// summand labels.  Twisted 1-morphisms have no expression form; returns
/// empty for those.
std::string one_morphism_expression(const OneMorphism& m);

}  // namespace pdgcat

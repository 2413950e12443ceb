#include "pdgcat/expr.hpp"

#include <cctype>

#include "pdgcat/algebra.hpp"

namespace pdgcat {
namespace {

struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  explicit Parser(const std::string& t) : text(t) {}

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      throw ExprError(std::string("expected '") + c + "'", static_cast<int>(pos));
    ++pos;
  }

  int parse_int() {
    skip_ws();
    std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    std::size_t digits = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == digits) throw ExprError("expected an integer", static_cast<int>(start));
    return std::stoi(text.substr(start, pos - start));
  }

  ExprPtr parse_primary() {
    skip_ws();
    std::size_t start = pos;
    if (pos >= text.size()) throw ExprError("expected an expression", static_cast<int>(pos));
    char c = text[pos];
    if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_')
      throw ExprError("expected 'Id', 'P' or a name", static_cast<int>(pos));
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                 text[pos] == '_'))
      ++pos;
    std::string word = text.substr(start, pos - start);
    auto e = std::make_unique<Expr>();
    if (word == "Id") {
      e->kind = Expr::Kind::Id;
      expect('(');
      e->a = parse_int();
      expect(')');
    } else if (word == "P") {
      e->kind = Expr::Kind::Proj;
      expect('(');
      e->a = parse_int();
      expect(',');
      e->b = parse_int();
      expect(')');
    } else {
      e->kind = Expr::Kind::Name;
      e->name = word;
    }
    return e;
  }

  ExprPtr parse_factor() {
    ExprPtr e = parse_primary();
    while (peek() == '<') {
      ++pos;
      int n = parse_int();
      expect('>');
      auto sh = std::make_unique<Expr>();
      sh->kind = Expr::Kind::Shift;
      sh->a = n;
      sh->children.push_back(std::move(e));
      e = std::move(sh);
    }
    return e;
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_factor();
    while (peek() == '*') {
      ++pos;
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::Compose;
      node->children.push_back(std::move(e));
      node->children.push_back(parse_factor());
      e = std::move(node);
    }
    return e;
  }

  ExprPtr parse_sum() {
    ExprPtr e = parse_term();
    while (peek() == '+') {
      ++pos;
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::Sum;
      node->children.push_back(std::move(e));
      node->children.push_back(parse_term());
      e = std::move(node);
    }
    return e;
  }
};

}  // namespace

bool Expr::equals(const Expr& other) const {
  if (kind != other.kind || a != other.a || b != other.b || name != other.name) return false;
  if (children.size() != other.children.size()) return false;
  for (std::size_t i = 0; i < children.size(); ++i)
    if (!children[i]->equals(*other.children[i])) return false;
  return true;
}

ExprPtr parse_expr(const std::string& text) {
  Parser p(text);
  ExprPtr e = p.parse_sum();
  if (!p.at_end()) throw ExprError("unexpected trailing input", static_cast<int>(p.pos));
  return e;
}

std::string print_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Id:
      return "Id(" + std::to_string(e.a) + ")";
    case Expr::Kind::Proj:
      return "P(" + std::to_string(e.a) + "," + std::to_string(e.b) + ")";
    case Expr::Kind::Name:
      return e.name;
    case Expr::Kind::Shift:
      return print_expr(*e.children[0]) + "<" + std::to_string(e.a) + ">";
    case Expr::Kind::Compose:
      return print_expr(*e.children[0]) + "*" + print_expr(*e.children[1]);
    case Expr::Kind::Sum:
      return print_expr(*e.children[0]) + " + " + print_expr(*e.children[1]);
  }
  return {};
}

OneMorphism eval_expr(const Expr& e, AlgebraPtr A, const OneMorphismEnv& env) {
  switch (e.kind) {
    case Expr::Kind::Id: {
      if (e.a < 1 || e.a > A->num_blocks())
        throw ExprError("block index " + std::to_string(e.a) + " out of range (algebra has " +
                            std::to_string(A->num_blocks()) + " blocks)",
                        0);
      return id_one(A, e.a - 1);
    }
    case Expr::Kind::Proj: {
      if (e.a < 1 || e.a > A->num_idempotents() || e.b < 1 || e.b > A->num_idempotents())
        throw ExprError("idempotent index out of range in P(" + std::to_string(e.a) + "," +
                            std::to_string(e.b) + ") (algebra has " +
                            std::to_string(A->num_idempotents()) + " idempotents)",
                        0);
      return proj_one(A, e.a - 1, e.b - 1);
    }
    case Expr::Kind::Name: {
      auto it = env.find(e.name);
      if (it == env.end()) throw ExprError("unknown 1-morphism name \"" + e.name + "\"", 0);
      return it->second;
    }
    case Expr::Kind::Shift:
      return shift_one(eval_expr(*e.children[0], A, env), e.a);
    case Expr::Kind::Compose:
      return hcompose(eval_expr(*e.children[0], A, env), eval_expr(*e.children[1], A, env));
    case Expr::Kind::Sum:
      return direct_sum_one(eval_expr(*e.children[0], A, env),
                            eval_expr(*e.children[1], A, env));
  }
  throw ExprError("malformed expression tree", 0);
}

OneMorphism eval_expr_text(const std::string& text, AlgebraPtr A, const OneMorphismEnv& env) {
  return eval_expr(*parse_expr(text), A, env);
}

std::string one_morphism_expression(const OneMorphism& m) {
  for (const auto& row : m.twist)
    for (const CellValue& v : row)
      if (!value_is_zero(v)) return {};
  std::string out;
  for (const Summand& s : m.summands) {
    if (!out.empty()) out += " + ";
    out += summand_label(s);
  }
  return out;
}

}  // namespace pdgcat

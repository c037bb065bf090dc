#pragma once

// Operator expressions over a and a† ("ad"), parsed and then normal ordered.
//
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ['^' uint]
//   atom   := 'a' | 'ad' | rational | '(' expr ')'
//
// rational is digits ['/' digits]. Whitespace is insignificant.

#include <boson/errors.hpp>
#include <boson/normal_polynomial.hpp>
#include <boson/rational.hpp>

#include <cctype>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace boson {

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

enum class Ladder { annihilation, creation };

struct LiteralNode {
  Rational value;
};

struct LadderNode {
  Ladder kind;
};

struct SumNode {
  struct Term {
    bool negated = false;
    ExprPtr expr;
  };
  std::vector<Term> terms;
};

struct ProductNode {
  std::vector<ExprPtr> factors;
};

struct PowerNode {
  ExprPtr base;
  unsigned exponent = 0;
};

struct Expr {
  std::variant<LiteralNode, LadderNode, SumNode, ProductNode, PowerNode> node;
};

namespace detail {

class ExpressionParser {
 public:
  explicit ExpressionParser(std::string_view src) : src_(src) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + peek() + "'");
    return e;
  }

 private:
  ExprPtr expr() {
    SumNode sum;
    sum.terms.push_back({false, term()});
    for (;;) {
      skip_space();
      if (at_end() || (peek() != '+' && peek() != '-')) break;
      const bool negated = take() == '-';
      sum.terms.push_back({negated, term()});
    }
    if (sum.terms.size() == 1 && !sum.terms.front().negated) return std::move(sum.terms.front().expr);
    return std::make_unique<Expr>(Expr{std::move(sum)});
  }

  ExprPtr term() {
    ProductNode product;
    product.factors.push_back(factor());
    for (;;) {
      skip_space();
      if (at_end() || peek() != '*') break;
      take();
      product.factors.push_back(factor());
    }
    if (product.factors.size() == 1) return std::move(product.factors.front());
    return std::make_unique<Expr>(Expr{std::move(product)});
  }

  ExprPtr factor() {
    ExprPtr base = atom();
    skip_space();
    if (at_end() || peek() != '^') return base;
    take();
    skip_space();
    if (at_end()) fail("expected exponent after '^'");
    if (peek() == '-') fail("negative exponent");
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("exponent must be a non-negative integer");
    const std::string digits = take_digits();
    if (!at_end() && (peek() == '/' || peek() == '.')) fail("exponent must be a non-negative integer");
    if (digits.size() > 6) fail("exponent too large");
    return std::make_unique<Expr>(Expr{PowerNode{std::move(base), static_cast<unsigned>(std::stoul(digits))}});
  }

  ExprPtr atom() {
    skip_space();
    if (at_end()) fail("unexpected end of input");
    const char c = peek();
    if (c == '(') {
      take();
      ExprPtr inner = expr();
      skip_space();
      if (at_end() || peek() != ')') fail("expected ')'");
      take();
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = take_digits();
      std::string den = "1";
      if (!at_end() && peek() == '/') {
        take();
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected denominator digits");
        den = take_digits();
        if (den.find_first_not_of('0') == std::string::npos) fail("zero denominator");
      }
      if (!at_end() && peek() == '.') fail("decimal literals are not supported; use p/q");
      return std::make_unique<Expr>(Expr{LiteralNode{Rational(BigInt(num), BigInt(den))}});
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t line = line_, column = column_;
      std::string word;
      while (!at_end() && std::isalnum(static_cast<unsigned char>(peek()))) word += take();
      if (word == "a") return std::make_unique<Expr>(Expr{LadderNode{Ladder::annihilation}});
      if (word == "ad") return std::make_unique<Expr>(Expr{LadderNode{Ladder::creation}});
      throw SyntaxError("unknown identifier '" + word + "' (expected 'a' or 'ad')", line, column);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string take_digits() {
    std::string out;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) out += take();
    return out;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) take();
  }

  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return src_[pos_]; }

  char take() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  [[noreturn]] void fail(const std::string& message) const { throw SyntaxError(message, line_, column_); }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace detail

inline ExprPtr parse_operator_expression(std::string_view src) {
  return detail::ExpressionParser(src).parse();
}

/// Normal form of a parsed expression; products go through mul_normal.
inline NormalPolynomial evaluate(const Expr& e) {
  struct Visitor {
    NormalPolynomial operator()(const LiteralNode& lit) const { return NormalPolynomial::constant(lit.value); }
    NormalPolynomial operator()(const LadderNode& l) const {
      return l.kind == Ladder::annihilation ? NormalPolynomial::annihilation() : NormalPolynomial::creation();
    }
    NormalPolynomial operator()(const SumNode& s) const {
      NormalPolynomial out;
      for (const auto& t : s.terms) {
        if (t.negated) {
          out -= evaluate(*t.expr);
        } else {
          out += evaluate(*t.expr);
        }
      }
      return out;
    }
    NormalPolynomial operator()(const ProductNode& p) const {
      NormalPolynomial out = NormalPolynomial::identity();
      for (const auto& f : p.factors) out = mul_normal(out, evaluate(*f));
      return out;
    }
    NormalPolynomial operator()(const PowerNode& p) const {
      const NormalPolynomial base = evaluate(*p.base);
      NormalPolynomial out = NormalPolynomial::identity();
      for (unsigned i = 0; i < p.exponent; ++i) out = mul_normal(out, base);
      return out;
    }
  };
  return std::visit(Visitor{}, e.node);
}

inline NormalPolynomial normal_order_expression(std::string_view src) {
  return evaluate(*parse_operator_expression(src));
}

}  // namespace boson

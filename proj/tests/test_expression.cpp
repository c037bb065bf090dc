#include <boson/expression.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace boson;

TEST_CASE("a*ad normal orders to a†a + 1", "[expression]") {
  NormalPolynomial expected = NormalPolynomial::monomial(1, 1);
  expected.add_term({0, 0}, 1);
  CHECK(normal_order_expression("a*ad") == expected);
}

TEST_CASE("(a+ad)^2 is :X²: + 1", "[expression]") {
  CHECK(normal_order_expression("(a+ad)^2") == colon_power(2) + NormalPolynomial::identity());
}

TEST_CASE("already normal-ordered input is unchanged", "[expression]") {
  NormalPolynomial expected = NormalPolynomial::monomial(2, 1, Rational(3, 2));
  expected.add_term({0, 1}, -1);
  CHECK(normal_order_expression("3/2*ad^2*a - a") == expected);
}

TEST_CASE("powers of the quadrature match brute force", "[expression][property]") {
  for (unsigned m = 0; m <= 12; ++m) {
    CHECK(normal_order_expression("(a + ad)^" + std::to_string(m)) == brute_force_normal_order(m));
    CHECK(normal_order_expression("(ad+a)^" + std::to_string(m)) == brute_force_normal_order(m));
  }
}

TEST_CASE("polynomial anharmonicity", "[expression]") {
  const auto p = normal_order_expression("1/4*(a+ad)^4 - 2*(a+ad)^2 + 7");
  CHECK(p.coefficient(0, 0) == Rational(3, 4) - 2 + 7);
  CHECK(p.coefficient(2, 2) == Rational(6, 4));
  CHECK(p.coefficient(1, 1) == Rational(12, 4) - 4);
}

TEST_CASE("whitespace and newlines are insignificant", "[expression]") {
  CHECK(normal_order_expression("  a *\n ad\t") == normal_order_expression("a*ad"));
}

TEST_CASE("subtraction chains and nesting", "[expression]") {
  CHECK(normal_order_expression("a - a - a") == NormalPolynomial::monomial(0, 1, -1));
  CHECK(normal_order_expression("((a))") == NormalPolynomial::annihilation());
  CHECK(normal_order_expression("ad^0") == NormalPolynomial::identity());
  CHECK(normal_order_expression("0*a").is_zero());
}

TEST_CASE("syntax errors carry a position", "[expression]") {
  auto position_of = [](const std::string& src) {
    try {
      parse_operator_expression(src);
    } catch (const SyntaxError& e) {
      return std::make_pair(e.line(), e.column());
    }
    FAIL("expected a syntax error for '" << src << "'");
    return std::make_pair(std::size_t{0}, std::size_t{0});
  };
  CHECK(position_of("a +") == std::make_pair(std::size_t{1}, std::size_t{4}));
  CHECK(position_of("a*\n  b") == std::make_pair(std::size_t{2}, std::size_t{3}));
  CHECK(position_of("(a + ad") == std::make_pair(std::size_t{1}, std::size_t{8}));
  CHECK(position_of("a ad") == std::make_pair(std::size_t{1}, std::size_t{3}));
}

TEST_CASE("bad exponents and literals are rejected", "[expression]") {
  CHECK_THROWS_WITH(parse_operator_expression("a^-1"), Catch::Matchers::ContainsSubstring("negative exponent"));
  CHECK_THROWS_WITH(parse_operator_expression("a^1/2"), Catch::Matchers::ContainsSubstring("non-negative integer"));
  CHECK_THROWS_WITH(parse_operator_expression("a^x"), Catch::Matchers::ContainsSubstring("non-negative integer"));
  CHECK_THROWS_AS(parse_operator_expression("1.5*a"), SyntaxError);
  CHECK_THROWS_AS(parse_operator_expression("3/0"), SyntaxError);
  CHECK_THROWS_AS(parse_operator_expression("-a"), SyntaxError);
  CHECK_THROWS_WITH(parse_operator_expression("b"), Catch::Matchers::ContainsSubstring("unknown identifier 'b'"));
  CHECK_THROWS_AS(parse_operator_expression(""), SyntaxError);
}

TEST_CASE("AST shape", "[expression]") {
  const auto e = parse_operator_expression("2*a^3 - ad");
  const auto* sum = std::get_if<SumNode>(&e->node);
  REQUIRE(sum != nullptr);
  REQUIRE(sum->terms.size() == 2);
  CHECK_FALSE(sum->terms[0].negated);
  CHECK(sum->terms[1].negated);
  const auto* product = std::get_if<ProductNode>(&sum->terms[0].expr->node);
  REQUIRE(product != nullptr);
  REQUIRE(product->factors.size() == 2);
  const auto* power = std::get_if<PowerNode>(&product->factors[1]->node);
  REQUIRE(power != nullptr);
  CHECK(power->exponent == 3);
}

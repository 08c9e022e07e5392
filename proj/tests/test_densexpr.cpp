#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "besselorbit/densexpr.hpp"
#include "doctest.h"

using besselorbit::DensityExpr;
using besselorbit::EvalError;
using besselorbit::ParseError;

namespace {

double eval1(const DensityExpr& expr, double value) {
  return expr.eval(std::span<const double>(&value, 1));
}

}  // namespace

TEST_CASE("basic parsing and evaluation") {
  const auto expr = DensityExpr::parse("1 + 0.5*cos(theta)", {"theta"});
  CHECK(eval1(expr, 0.0) == doctest::Approx(1.5).epsilon(1e-15));

  const auto pow_expr = DensityExpr::parse("2^3^2", {});
  CHECK(pow_expr.eval({}) == doctest::Approx(512.0));  // right-associative

  const auto singular = DensityExpr::parse("1/(t*sqrt(-log(t)))", {"t"});
  CHECK(eval1(singular, std::exp(-1.0)) ==
        doctest::Approx(std::exp(1.0)).epsilon(1e-14));

  const auto gauss = DensityExpr::parse("exp(-t^2)", {"t"});
  CHECK(eval1(gauss, 0.0) == doctest::Approx(1.0));

  const auto pi_expr = DensityExpr::parse("pi", {});
  CHECK(pi_expr.eval({}) == 3.141592653589793);
}

TEST_CASE("precedence: ^ binds tighter than unary minus") {
  CHECK(DensityExpr::parse("-2^2", {}).eval({}) == doctest::Approx(-4.0));
  CHECK(DensityExpr::parse("2^-2", {}).eval({}) == doctest::Approx(0.25));
  CHECK(DensityExpr::parse("-2*3", {}).eval({}) == doctest::Approx(-6.0));
  CHECK(DensityExpr::parse("1 - -2", {}).eval({}) == doctest::Approx(3.0));
}

TEST_CASE("whitespace and parenthesization do not change the value") {
  const auto a = DensityExpr::parse("1+2*t^2", {"t"});
  const auto b = DensityExpr::parse(" 1 + (2 * (t^2)) ", {"t"});
  for (double t : {0.0, 0.5, -1.25, 3.0}) {
    CHECK(eval1(a, t) == eval1(b, t));
  }
}

TEST_CASE("domain errors surface instead of being clipped") {
  const auto log_expr = DensityExpr::parse("log(t)", {"t"});
  CHECK_THROWS_AS(eval1(log_expr, -1.0), EvalError);
  CHECK_THROWS_AS(eval1(log_expr, 0.0), EvalError);

  const auto sqrt_expr = DensityExpr::parse("sqrt(t)", {"t"});
  CHECK_THROWS_AS(eval1(sqrt_expr, -0.5), EvalError);

  const auto div_expr = DensityExpr::parse("1/t", {"t"});
  CHECK_THROWS_AS(eval1(div_expr, 0.0), EvalError);

  const auto overflow = DensityExpr::parse("exp(t)", {"t"});
  CHECK_THROWS_AS(eval1(overflow, 1e9), EvalError);  // infinite result
}

TEST_CASE("parse errors carry a position") {
  try {
    DensityExpr::parse("1 + * 2", {});
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(DensityExpr::parse("unknown_var", {"t"}), ParseError);
  CHECK_THROWS_AS(DensityExpr::parse("cos", {"t"}), ParseError);   // arity
  CHECK_THROWS_AS(DensityExpr::parse("t(2)", {"t"}), ParseError);  // not a fn
  CHECK_THROWS_AS(DensityExpr::parse("", {}), ParseError);
  CHECK_THROWS_AS(DensityExpr::parse("(1+2", {}), ParseError);
  CHECK_THROWS_AS(DensityExpr::parse("1 2", {}), ParseError);
}

TEST_CASE("evaluation is deterministic") {
  const auto expr = DensityExpr::parse("exp(-t^2)*sin(t)/(1+t^2)", {"t"});
  const double first = eval1(expr, 0.7391);
  for (int i = 0; i < 100; ++i) {
    CHECK(eval1(expr, 0.7391) == first);  // bit-identical
  }
}

namespace {

// Random well-formed expression generator for the totality property.
std::string random_expr(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 6);
  switch (pick(rng)) {
    case 0:
      return std::to_string(
          std::uniform_real_distribution<double>(0.1, 4.0)(rng));
    case 1:
      return "t";
    case 2:
      return "pi";
    case 3:
      return "(" + random_expr(rng, depth - 1) + "+" +
             random_expr(rng, depth - 1) + ")";
    case 4:
      return "(" + random_expr(rng, depth - 1) + "*" +
             random_expr(rng, depth - 1) + ")";
    case 5:
      return "cos(" + random_expr(rng, depth - 1) + ")";
    default:
      return "-" + random_expr(rng, depth - 1);
  }
}

}  // namespace

TEST_CASE("parser totality on generated and mangled inputs") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 300; ++trial) {
    const std::string source = random_expr(rng, 4);
    const auto expr = DensityExpr::parse(source, {"t"});
    const double value = 0.3;
    (void)expr.eval(std::span<const double>(&value, 1));

    // Mangle: drop one character; must parse or raise ParseError, nothing else.
    std::string broken = source;
    broken.erase(std::uniform_int_distribution<std::size_t>(
        0, broken.size() - 1)(rng), 1);
    if (!broken.empty()) {
      try {
        const auto mangled = DensityExpr::parse(broken, {"t"});
        try {
          (void)mangled.eval(std::span<const double>(&value, 1));
        } catch (const EvalError&) {
        }
      } catch (const ParseError&) {
      }
    }
  }
}

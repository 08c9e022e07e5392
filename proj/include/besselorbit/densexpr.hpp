#ifndef BESSELORBIT_DENSEXPR_HPP_
#define BESSELORBIT_DENSEXPR_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace besselorbit {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) +
                           ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class EvalError : public std::runtime_error {
 public:
  explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

// A parsed density expression over a fixed set of named variables.
//
// Grammar (EBNF, see docs/expression-grammar.md):
//   expr    = term { ("+" | "-") term } ;
//   term    = unary { ("*" | "/") unary } ;
//   unary   = "-" unary | power ;
//   power   = primary [ "^" unary ] ;          (* right-associative *)
//   primary = number | name | name "(" expr ")" | "(" expr ")" ;
//
// "^" binds tighter than unary minus: -2^2 == -4.
// Functions: exp, log, sqrt, abs, sin, cos. Constants: pi, e.
class DensityExpr {
 public:
  DensityExpr() = default;

  static DensityExpr parse(std::string_view source,
                           std::vector<std::string> allowed_vars);

  // Values are matched positionally with the allowed-variable list given
  // at parse time. Domain violations (log of a nonpositive value, sqrt of a
  // negative value, division by zero, non-finite results) raise EvalError.
  double eval(std::span<const double> values) const;

  const std::string& source() const { return source_; }
  const std::vector<std::string>& variables() const { return variables_; }

 private:
  enum class Op : std::uint8_t {
    kPushNum,
    kPushVar,
    kNeg,
    kAdd,
    kSub,
    kMul,
    kDiv,
    kPow,
    kExp,
    kLog,
    kSqrt,
    kAbs,
    kSin,
    kCos,
  };
  struct Instr {
    Op op;
    double num = 0.0;
    std::size_t var = 0;
  };

  friend class ExprParser;

  std::string source_;
  std::vector<std::string> variables_;
  std::vector<Instr> program_;  // reverse Polish order
};

}  // namespace besselorbit

#endif  // BESSELORBIT_DENSEXPR_HPP_

#include "besselorbit/densexpr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace besselorbit {

namespace {

struct Token {
  enum Kind { kNumber, kIdent, kOperator, kLParen, kRParen, kEnd };
  Kind kind;
  std::size_t pos;
  double number = 0.0;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
    }
    if (pos_ >= src_.size()) {
      return {Token::kEnd, pos_};
    }
    const std::size_t start = pos_;
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = src_.data() + pos_;
      char* end = nullptr;
      const double value = std::strtod(begin, &end);
      if (end == begin) {
        throw ParseError("malformed number", start);
      }
      pos_ += static_cast<std::size_t>(end - begin);
      Token tok{Token::kNumber, start};
      tok.number = value;
      return tok;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_')) {
        ++end;
      }
      Token tok{Token::kIdent, start};
      tok.text = std::string(src_.substr(start, end - start));
      pos_ = end;
      return tok;
    }
    ++pos_;
    switch (c) {
      case '(':
        return {Token::kLParen, start};
      case ')':
        return {Token::kRParen, start};
      case '+':
      case '-':
      case '*':
      case '/':
      case '^': {
        Token tok{Token::kOperator, start};
        tok.text = std::string(1, c);
        return tok;
      }
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

class ExprParser {
 public:
  ExprParser(std::string_view source, DensityExpr& out)
      : lexer_(source), expr_(out) {
    advance();
  }

  void run() {
    parseExpr();
    if (cur_.kind != Token::kEnd) {
      throw ParseError("unexpected trailing input", cur_.pos);
    }
  }

 private:
  using Op = DensityExpr::Op;

  void advance() { cur_ = lexer_.next(); }

  bool isOp(const char* text) const {
    return cur_.kind == Token::kOperator && cur_.text == text;
  }

  void emit(Op op) { expr_.program_.push_back({op}); }

  void parseExpr() {
    parseTerm();
    while (isOp("+") || isOp("-")) {
      const bool add = cur_.text == "+";
      advance();
      parseTerm();
      emit(add ? Op::kAdd : Op::kSub);
    }
  }

  void parseTerm() {
    parseUnary();
    while (isOp("*") || isOp("/")) {
      const bool mul = cur_.text == "*";
      advance();
      parseUnary();
      emit(mul ? Op::kMul : Op::kDiv);
    }
  }

  void parseUnary() {
    if (isOp("-")) {
      advance();
      parseUnary();
      emit(Op::kNeg);
      return;
    }
    parsePower();
  }

  void parsePower() {
    parsePrimary();
    if (isOp("^")) {
      advance();
      parseUnary();  // right-associative, exponent may carry a sign
      emit(Op::kPow);
    }
  }

  void parsePrimary() {
    switch (cur_.kind) {
      case Token::kNumber: {
        expr_.program_.push_back({Op::kPushNum, cur_.number});
        advance();
        return;
      }
      case Token::kLParen: {
        advance();
        parseExpr();
        expect(Token::kRParen, "expected ')'");
        return;
      }
      case Token::kIdent: {
        const Token ident = cur_;
        advance();
        const Op func = functionOp(ident.text);
        if (func != Op::kPushNum) {
          if (cur_.kind != Token::kLParen) {
            throw ParseError("function '" + ident.text + "' requires an argument",
                             ident.pos);
          }
          advance();
          parseExpr();
          expect(Token::kRParen, "expected ')' after function argument");
          emit(func);
          return;
        }
        if (cur_.kind == Token::kLParen) {
          throw ParseError("'" + ident.text + "' is not a function", ident.pos);
        }
        if (ident.text == "pi") {
          expr_.program_.push_back({Op::kPushNum, 3.141592653589793238462643383279502884});
          return;
        }
        if (ident.text == "e") {
          expr_.program_.push_back({Op::kPushNum, 2.718281828459045235360287471352662498});
          return;
        }
        for (std::size_t i = 0; i < expr_.variables_.size(); ++i) {
          if (expr_.variables_[i] == ident.text) {
            DensityExpr::Instr instr{Op::kPushVar};
            instr.var = i;
            expr_.program_.push_back(instr);
            return;
          }
        }
        throw ParseError("unknown identifier '" + ident.text + "'", ident.pos);
      }
      case Token::kOperator:
        throw ParseError("unexpected operator '" + cur_.text + "'", cur_.pos);
      case Token::kRParen:
        throw ParseError("unexpected ')'", cur_.pos);
      case Token::kEnd:
        throw ParseError("unexpected end of expression", cur_.pos);
    }
  }

  static Op functionOp(const std::string& name) {
    if (name == "exp") return Op::kExp;
    if (name == "log") return Op::kLog;
    if (name == "sqrt") return Op::kSqrt;
    if (name == "abs") return Op::kAbs;
    if (name == "sin") return Op::kSin;
    if (name == "cos") return Op::kCos;
    return Op::kPushNum;  // sentinel: not a function
  }

  void expect(Token::Kind kind, const char* message) {
    if (cur_.kind != kind) {
      throw ParseError(message, cur_.pos);
    }
    advance();
  }

  Lexer lexer_;
  DensityExpr& expr_;
  Token cur_;
};

DensityExpr DensityExpr::parse(std::string_view source,
                               std::vector<std::string> allowed_vars) {
  if (source.empty()) {
    throw ParseError("empty expression", 0);
  }
  DensityExpr expr;
  expr.source_ = std::string(source);
  expr.variables_ = std::move(allowed_vars);
  ExprParser parser(source, expr);
  parser.run();
  std::size_t depth = 0, max_depth = 0;
  for (const Instr& instr : expr.program_) {
    if (instr.op == Op::kPushNum || instr.op == Op::kPushVar) {
      max_depth = std::max(max_depth, ++depth);
    } else if (instr.op != Op::kNeg && instr.op != Op::kExp &&
               instr.op != Op::kLog && instr.op != Op::kSqrt &&
               instr.op != Op::kAbs && instr.op != Op::kSin &&
               instr.op != Op::kCos) {
      --depth;
    }
  }
  if (max_depth > 64) {
    throw ParseError("expression nesting too deep", 0);
  }
  return expr;
}

namespace {

[[noreturn]] void evalFail(const std::string& what, const DensityExpr& expr,
                           std::span<const double> values) {
  std::ostringstream oss;
  oss << what << " in '" << expr.source() << "' with";
  for (std::size_t i = 0; i < expr.variables().size() && i < values.size(); ++i) {
    oss << ' ' << expr.variables()[i] << '=' << values[i];
  }
  throw EvalError(oss.str());
}

}  // namespace

double DensityExpr::eval(std::span<const double> values) const {
  if (values.size() < variables_.size()) {
    throw EvalError("missing variable bindings for '" + source_ + "'");
  }
  double stack[64];
  std::size_t top = 0;
  for (const Instr& instr : program_) {
    switch (instr.op) {
      case Op::kPushNum:
        stack[top++] = instr.num;
        break;
      case Op::kPushVar:
        stack[top++] = values[instr.var];
        break;
      case Op::kNeg:
        stack[top - 1] = -stack[top - 1];
        break;
      case Op::kAdd:
        stack[top - 2] += stack[top - 1];
        --top;
        break;
      case Op::kSub:
        stack[top - 2] -= stack[top - 1];
        --top;
        break;
      case Op::kMul:
        stack[top - 2] *= stack[top - 1];
        --top;
        break;
      case Op::kDiv:
        if (stack[top - 1] == 0.0) {
          evalFail("division by zero", *this, values);
        }
        stack[top - 2] /= stack[top - 1];
        --top;
        break;
      case Op::kPow:
        stack[top - 2] = std::pow(stack[top - 2], stack[top - 1]);
        --top;
        break;
      case Op::kExp:
        stack[top - 1] = std::exp(stack[top - 1]);
        break;
      case Op::kLog:
        if (stack[top - 1] <= 0.0) {
          evalFail("log of a nonpositive value", *this, values);
        }
        stack[top - 1] = std::log(stack[top - 1]);
        break;
      case Op::kSqrt:
        if (stack[top - 1] < 0.0) {
          evalFail("sqrt of a negative value", *this, values);
        }
        stack[top - 1] = std::sqrt(stack[top - 1]);
        break;
      case Op::kAbs:
        stack[top - 1] = std::fabs(stack[top - 1]);
        break;
      case Op::kSin:
        stack[top - 1] = std::sin(stack[top - 1]);
        break;
      case Op::kCos:
        stack[top - 1] = std::cos(stack[top - 1]);
        break;
    }
  }
  const double result = stack[0];
  if (!std::isfinite(result)) {
    evalFail("non-finite result", *this, values);
  }
  return result;
}

}  // namespace besselorbit

#pragma once

// Real-valued expressions of one variable `t` and the time-scale spec
// grammar.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?          right-associative
//   primary := number | 't' | name '(' expr (',' expr)* ')' | '(' expr ')'
//
//   scale   := piece ('u' piece)*
//   piece   := '[' real ',' real ']' | '{' real (',' real)* '}'
//            | 'hZ(' real ';' real ';' real ')'

#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tscalc/error.hpp"
#include "tscalc/timescale.hpp"

namespace tscalc {

enum class Op {
  constant,
  variable,
  neg,
  add,
  sub,
  mul,
  div,
  pow,
  abs,
  exp,
  ln,
  sin,
  cos,
  sqrt,
  min,
  max,
};

/// Immutable expression tree with value semantics. Copies share nodes.
class FuncExpr {
 public:
  struct Node {
    Op op = Op::constant;
    double value = 0.0;
    std::vector<std::shared_ptr<const Node>> args;
  };
  using NodePtr = std::shared_ptr<const Node>;

  FuncExpr() : FuncExpr(constant(0.0)) {}

  static FuncExpr constant(double c) {
    return FuncExpr(std::make_shared<const Node>(Node{Op::constant, c, {}}));
  }
  static FuncExpr variable() {
    return FuncExpr(std::make_shared<const Node>(Node{Op::variable, 0.0, {}}));
  }
  static FuncExpr apply(Op op, std::vector<FuncExpr> operands) {
    Node n{op, 0.0, {}};
    n.args.reserve(operands.size());
    for (auto& e : operands) n.args.push_back(std::move(e.root_));
    return FuncExpr(std::make_shared<const Node>(std::move(n)));
  }

  double eval(double t) const { return eval_node(*root_, t); }
  double operator()(double t) const { return eval(t); }

  const Node& root() const noexcept { return *root_; }

  /// Fully parenthesized text that parses back to an equivalent tree.
  std::string to_string() const { return print_node(*root_); }

  friend FuncExpr operator+(FuncExpr x, FuncExpr y) { return apply(Op::add, {std::move(x), std::move(y)}); }
  friend FuncExpr operator-(FuncExpr x, FuncExpr y) { return apply(Op::sub, {std::move(x), std::move(y)}); }
  friend FuncExpr operator*(FuncExpr x, FuncExpr y) { return apply(Op::mul, {std::move(x), std::move(y)}); }
  friend FuncExpr operator/(FuncExpr x, FuncExpr y) { return apply(Op::div, {std::move(x), std::move(y)}); }
  friend FuncExpr operator-(FuncExpr x) { return apply(Op::neg, {std::move(x)}); }

  static std::string_view name(Op op) noexcept {
    switch (op) {
      case Op::abs: return "abs";
      case Op::exp: return "exp";
      case Op::ln: return "ln";
      case Op::sin: return "sin";
      case Op::cos: return "cos";
      case Op::sqrt: return "sqrt";
      case Op::min: return "min";
      case Op::max: return "max";
      default: return "";
    }
  }

 private:
  explicit FuncExpr(NodePtr root) : root_(std::move(root)) {}

  static double checked(const Node& n, double t, double v) {
    if (!std::isfinite(v)) throw domain_error(t, print_node(n), "non-finite result");
    return v;
  }

  static double eval_node(const Node& n, double t) {
    const auto arg = [&](std::size_t i) { return eval_node(*n.args[i], t); };
    switch (n.op) {
      case Op::constant: return n.value;
      case Op::variable: return t;
      case Op::neg: return -arg(0);
      case Op::add: return checked(n, t, arg(0) + arg(1));
      case Op::sub: return checked(n, t, arg(0) - arg(1));
      case Op::mul: return checked(n, t, arg(0) * arg(1));
      case Op::div: {
        const double num = arg(0);
        const double den = arg(1);
        if (den == 0.0) throw domain_error(t, print_node(n), "division by zero");
        return checked(n, t, num / den);
      }
      case Op::pow: {
        const double base = arg(0);
        const double expo = arg(1);
        if (base < 0.0 && expo != std::trunc(expo)) {
          throw domain_error(t, print_node(n), "negative base with non-integer exponent");
        }
        if (base == 0.0 && expo < 0.0) {
          throw domain_error(t, print_node(n), "zero to a negative power");
        }
        return checked(n, t, std::pow(base, expo));
      }
      case Op::abs: return std::abs(arg(0));
      case Op::exp: return checked(n, t, std::exp(arg(0)));
      case Op::ln: {
        const double x = arg(0);
        if (!(x > 0.0)) throw domain_error(t, print_node(n), "logarithm of a non-positive value");
        return std::log(x);
      }
      case Op::sin: return std::sin(arg(0));
      case Op::cos: return std::cos(arg(0));
      case Op::sqrt: {
        const double x = arg(0);
        if (x < 0.0) throw domain_error(t, print_node(n), "square root of a negative value");
        return std::sqrt(x);
      }
      case Op::min: return std::min(arg(0), arg(1));
      case Op::max: return std::max(arg(0), arg(1));
    }
    return 0.0;
  }

  static std::string print_node(const Node& n) {
    const auto bin = [&](const char* sym) {
      return "(" + print_node(*n.args[0]) + " " + sym + " " + print_node(*n.args[1]) + ")";
    };
    switch (n.op) {
      case Op::constant: {
        auto s = detail::format_real(n.value);
        return n.value < 0.0 || std::signbit(n.value) ? "(" + s + ")" : s;
      }
      case Op::variable: return "t";
      case Op::neg: return "(-" + print_node(*n.args[0]) + ")";
      case Op::add: return bin("+");
      case Op::sub: return bin("-");
      case Op::mul: return bin("*");
      case Op::div: return bin("/");
      case Op::pow: return bin("^");
      default: break;
    }
    std::string out(name(n.op));
    out += '(';
    for (std::size_t i = 0; i < n.args.size(); ++i) {
      if (i) out += ", ";
      out += print_node(*n.args[i]);
    }
    out += ')';
    return out;
  }

  NodePtr root_;
};

inline FuncExpr abs(FuncExpr x) { return FuncExpr::apply(Op::abs, {std::move(x)}); }
inline FuncExpr pow(FuncExpr x, FuncExpr y) { return FuncExpr::apply(Op::pow, {std::move(x), std::move(y)}); }
inline FuncExpr min(FuncExpr x, FuncExpr y) { return FuncExpr::apply(Op::min, {std::move(x), std::move(y)}); }
inline FuncExpr max(FuncExpr x, FuncExpr y) { return FuncExpr::apply(Op::max, {std::move(x), std::move(y)}); }

inline double eval(const FuncExpr& f, double t) { return f.eval(t); }

namespace detail {

class Cursor {
 public:
  explicit Cursor(std::string_view src) : src_(src) {}

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= src_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) {
      fail(std::string("expected '") + c + "'" + found());
    }
  }
  std::size_t pos() const noexcept { return pos_; }

  [[noreturn]] void fail(const std::string& msg) const { throw syntax_error(pos_, msg); }

  std::string found() const {
    if (pos_ >= src_.size()) return " but reached end of input";
    return std::string(" but found '") + src_[pos_] + "'";
  }

  /// Decimal literal with optional exponent; `signed_ok` admits a leading sign.
  double number(bool signed_ok) {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t i = pos_;
    if (signed_ok && i < src_.size() && (src_[i] == '+' || src_[i] == '-')) ++i;
    const std::size_t mantissa = i;
    while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]))) ++i;
    if (i < src_.size() && src_[i] == '.') {
      ++i;
      while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]))) ++i;
    }
    if (i == mantissa || (i == mantissa + 1 && src_[mantissa] == '.')) {
      fail("expected a number" + found());
    }
    if (i < src_.size() && (src_[i] == 'e' || src_[i] == 'E')) {
      std::size_t j = i + 1;
      if (j < src_.size() && (src_[j] == '+' || src_[j] == '-')) ++j;
      if (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) {
        while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
        i = j;
      }
    }
    const std::string text(src_.substr(start, i - start));
    const double v = std::strtod(text.c_str(), nullptr);
    if (!std::isfinite(v)) fail("number out of range");
    pos_ = i;
    return v;
  }

  std::string identifier() {
    skip_ws();
    std::size_t i = pos_;
    while (i < src_.size() && std::isalpha(static_cast<unsigned char>(src_[i]))) ++i;
    std::string id(src_.substr(pos_, i - pos_));
    pos_ = i;
    return id;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
};

class ExprParser {
 public:
  explicit ExprParser(std::string_view src) : cur_(src) {}

  FuncExpr parse() {
    if (cur_.at_end()) cur_.fail("empty expression");
    FuncExpr e = expr();
    if (!cur_.at_end()) cur_.fail("unexpected trailing input" + cur_.found());
    return e;
  }

 private:
  FuncExpr expr() {
    FuncExpr lhs = term();
    for (;;) {
      if (cur_.accept('+')) {
        lhs = std::move(lhs) + term();
      } else if (cur_.accept('-')) {
        lhs = std::move(lhs) - term();
      } else {
        return lhs;
      }
    }
  }

  FuncExpr term() {
    FuncExpr lhs = unary();
    for (;;) {
      if (cur_.accept('*')) {
        lhs = std::move(lhs) * unary();
      } else if (cur_.accept('/')) {
        lhs = std::move(lhs) / unary();
      } else {
        return lhs;
      }
    }
  }

  FuncExpr unary() {
    if (cur_.accept('-')) return -unary();
    if (cur_.accept('+')) return unary();
    return power();
  }

  FuncExpr power() {
    FuncExpr base = primary();
    if (cur_.accept('^')) return pow(std::move(base), unary());
    return base;
  }

  FuncExpr primary() {
    const char c = cur_.peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return FuncExpr::constant(cur_.number(false));
    }
    if (cur_.accept('(')) {
      FuncExpr e = expr();
      cur_.expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t at = cur_.pos();
      const std::string id = cur_.identifier();
      if (id == "t") return FuncExpr::variable();
      const auto [op, arity] = lookup(id);
      if (arity == 0) throw syntax_error(at, "unknown identifier '" + id + "'");
      cur_.expect('(');
      std::vector<FuncExpr> args;
      args.push_back(expr());
      while (cur_.accept(',')) args.push_back(expr());
      if (args.size() != arity) {
        throw syntax_error(at, "'" + id + "' takes " + std::to_string(arity) + " argument(s)");
      }
      cur_.expect(')');
      return FuncExpr::apply(op, std::move(args));
    }
    cur_.fail("expected an operand" + cur_.found());
  }

  static std::pair<Op, std::size_t> lookup(const std::string& id) {
    static constexpr std::pair<std::string_view, std::pair<Op, std::size_t>> table[] = {
        {"abs", {Op::abs, 1}}, {"exp", {Op::exp, 1}},   {"ln", {Op::ln, 1}},
        {"sin", {Op::sin, 1}}, {"cos", {Op::cos, 1}},   {"sqrt", {Op::sqrt, 1}},
        {"min", {Op::min, 2}}, {"max", {Op::max, 2}},
    };
    for (const auto& [name, entry] : table) {
      if (name == id) return entry;
    }
    return {Op::constant, 0};
  }

  Cursor cur_;
};

inline constexpr std::size_t max_hz_points = 10'000'000;

class ScaleParser {
 public:
  ScaleParser(std::string_view src, double eps) : cur_(src), eps_(eps) {}

  TimeScale parse() {
    if (cur_.at_end()) cur_.fail("empty time scale spec");
    std::vector<Segment> segs;
    piece(segs);
    while (!cur_.at_end()) {
      if (cur_.peek() != 'u' && cur_.peek() != 'U') {
        cur_.fail("expected 'u'" + cur_.found());
      }
      cur_.accept(cur_.peek());
      piece(segs);
    }
    return TimeScale(std::move(segs), eps_);
  }

 private:
  void piece(std::vector<Segment>& segs) {
    const std::size_t at = cur_.pos();
    if (cur_.accept('[')) {
      const double lo = cur_.number(true);
      cur_.expect(',');
      const double hi = cur_.number(true);
      cur_.expect(']');
      if (lo > hi + eps_) {
        throw error(errc::invalid_segment, std::to_string(at) + ": interval [" +
                                               detail::format_real(lo) + ", " +
                                               detail::format_real(hi) + "] has lo > hi");
      }
      segs.push_back({lo, std::max(lo, hi)});
      return;
    }
    if (cur_.accept('{')) {
      do {
        const double p = cur_.number(true);
        segs.push_back({p, p});
      } while (cur_.accept(','));
      cur_.expect('}');
      return;
    }
    if (cur_.peek() == 'h') {
      const std::string id = cur_.identifier();
      if (id != "hZ") throw syntax_error(at, "expected 'hZ(', '[' or '{'");
      cur_.expect('(');
      const double h = cur_.number(true);
      cur_.expect(';');
      const double a = cur_.number(true);
      cur_.expect(';');
      const double b = cur_.number(true);
      cur_.expect(')');
      if (!(h > 0.0)) {
        throw error(errc::invalid_step, std::to_string(at) + ": hZ step must be positive");
      }
      if (a > b + eps_) {
        throw error(errc::invalid_segment, std::to_string(at) + ": hZ range has a > b");
      }
      const double count = std::floor((b - a) / h + 1e-9);
      if (count + 1.0 > static_cast<double>(max_hz_points)) {
        throw error(errc::invalid_step, std::to_string(at) + ": hZ expands to too many points");
      }
      const auto n = static_cast<std::size_t>(count);
      for (std::size_t k = 0; k <= n; ++k) {
        const double p = a + static_cast<double>(k) * h;
        segs.push_back({p, p});
      }
      return;
    }
    cur_.fail("expected '[', '{' or 'hZ('" + cur_.found());
  }

  Cursor cur_;
  double eps_;
};

}  // namespace detail

inline FuncExpr parse_func(std::string_view src) { return detail::ExprParser(src).parse(); }

inline TimeScale parse_scale(std::string_view src, double eps_point = default_eps_point) {
  return detail::ScaleParser(src, eps_point).parse();
}

}  // namespace tscalc

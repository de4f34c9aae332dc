#pragma once
// Scalar expressions over chart coordinates with exact first and second
// derivatives via forward-mode automatic differentiation.

#include <Eigen/Dense>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace subver::expr {

using Point = Eigen::VectorXd;

// ---------------------------------------------------------------------------
// Jet2: value, gradient and (symmetric) Hessian of a scalar quantity.
// ---------------------------------------------------------------------------
struct Jet2 {
  double v = 0.0;
  Eigen::VectorXd g;
  Eigen::MatrixXd h;

  Jet2() = default;
  explicit Jet2(int dim)
      : v(0.0), g(Eigen::VectorXd::Zero(dim)), h(Eigen::MatrixXd::Zero(dim, dim)) {}

  int dim() const { return static_cast<int>(g.size()); }

  static Jet2 constant(double c, int dim) {
    Jet2 j(dim);
    j.v = c;
    return j;
  }
  static Jet2 variable(double x, int index, int dim) {
    Jet2 j(dim);
    j.v = x;
    j.g(index) = 1.0;
    return j;
  }
};

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 r(a.dim());
  r.v = a.v + b.v;
  r.g = a.g + b.g;
  r.h = a.h + b.h;
  return r;
}
inline Jet2 operator-(const Jet2& a, const Jet2& b) {
  Jet2 r(a.dim());
  r.v = a.v - b.v;
  r.g = a.g - b.g;
  r.h = a.h - b.h;
  return r;
}
inline Jet2 operator-(const Jet2& a) {
  Jet2 r(a.dim());
  r.v = -a.v;
  r.g = -a.g;
  r.h = -a.h;
  return r;
}
inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 r(a.dim());
  r.v = a.v * b.v;
  r.g = a.g * b.v + b.g * a.v;
  r.h = a.h * b.v + b.h * a.v + a.g * b.g.transpose() + b.g * a.g.transpose();
  return r;
}
inline Jet2 operator*(const Jet2& a, double c) {
  Jet2 r(a.dim());
  r.v = a.v * c;
  r.g = a.g * c;
  r.h = a.h * c;
  return r;
}
inline Jet2 operator*(double c, const Jet2& a) { return a * c; }
inline Jet2 operator+(const Jet2& a, double c) {
  Jet2 r = a;
  r.v += c;
  return r;
}
inline Jet2 operator+(double c, const Jet2& a) { return a + c; }

// Composition with a univariate function: F(f), given F(f.v), F'(f.v), F''(f.v).
inline Jet2 compose(const Jet2& f, double F, double dF, double ddF) {
  Jet2 r(f.dim());
  r.v = F;
  r.g = dF * f.g;
  r.h = dF * f.h + ddF * (f.g * f.g.transpose());
  return r;
}

inline Jet2 inverse(const Jet2& a) {
  if (a.v == 0.0) throw std::domain_error("division by zero");
  const double iv = 1.0 / a.v;
  return compose(a, iv, -iv * iv, 2.0 * iv * iv * iv);
}
inline Jet2 operator/(const Jet2& a, const Jet2& b) { return a * inverse(b); }
inline Jet2 sin(const Jet2& a) { return compose(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }
inline Jet2 cos(const Jet2& a) { return compose(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }
inline Jet2 exp(const Jet2& a) {
  const double e = std::exp(a.v);
  return compose(a, e, e, e);
}
inline Jet2 pow(const Jet2& a, int n) {
  if (n == 0) return Jet2::constant(1.0, a.dim());
  if (n < 0) return inverse(pow(a, -n));
  Jet2 r = a;
  for (int i = 1; i < n; ++i) r = r * a;
  return r;
}

// ---------------------------------------------------------------------------
// ScalarExpr: immutable AST over coordinates.
// ---------------------------------------------------------------------------
namespace detail {
enum class Kind { Constant, Variable, Add, Sub, Mul, Div, Neg, Pow, Sin, Cos, Exp };

struct Node {
  Kind kind;
  double value = 0.0;       // Constant
  int var_index = -1;       // Variable
  std::string var_name;     // Variable
  int exponent = 0;         // Pow
  std::shared_ptr<const Node> a, b;
};
using NodePtr = std::shared_ptr<const Node>;

inline NodePtr make(Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}
}  // namespace detail

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

class ScalarExpr {
 public:
  ScalarExpr() = default;  // empty; evaluates as 0 in dimension 0 contexts
  ScalarExpr(detail::NodePtr root, int dim) : root_(std::move(root)), dim_(dim) {}

  static ScalarExpr constant(double c, int dim) {
    auto n = detail::make(detail::Kind::Constant);
    const_cast<detail::Node&>(*n).value = c;
    return ScalarExpr(n, dim);
  }
  static ScalarExpr variable(int index, int dim, std::string name = {}) {
    auto n = detail::make(detail::Kind::Variable);
    auto& m = const_cast<detail::Node&>(*n);
    m.var_index = index;
    m.var_name = name.empty() ? "x" + std::to_string(index) : std::move(name);
    return ScalarExpr(n, dim);
  }

  bool valid() const { return root_ != nullptr; }
  int dim() const { return dim_; }

  double eval(const Point& p) const { return eval_node<double>(root_.get(), p); }
  Jet2 eval_jet2(const Point& p) const { return eval_node<Jet2>(root_.get(), p); }

  std::string to_string() const { return print(root_.get(), 0); }

  friend ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b) {
    return ScalarExpr(detail::make(detail::Kind::Add, a.root_, b.root_), a.dim_);
  }
  friend ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b) {
    return ScalarExpr(detail::make(detail::Kind::Sub, a.root_, b.root_), a.dim_);
  }
  friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
    return ScalarExpr(detail::make(detail::Kind::Mul, a.root_, b.root_), a.dim_);
  }
  friend ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b) {
    return ScalarExpr(detail::make(detail::Kind::Div, a.root_, b.root_), a.dim_);
  }
  friend ScalarExpr operator-(const ScalarExpr& a) {
    return ScalarExpr(detail::make(detail::Kind::Neg, a.root_), a.dim_);
  }
  friend ScalarExpr operator*(double c, const ScalarExpr& a) {
    return constant(c, a.dim_) * a;
  }
  friend ScalarExpr pow(const ScalarExpr& a, int n) {
    auto node = detail::make(detail::Kind::Pow, a.root_);
    const_cast<detail::Node&>(*node).exponent = n;
    return ScalarExpr(node, a.dim_);
  }
  friend ScalarExpr sin(const ScalarExpr& a) {
    return ScalarExpr(detail::make(detail::Kind::Sin, a.root_), a.dim_);
  }
  friend ScalarExpr cos(const ScalarExpr& a) {
    return ScalarExpr(detail::make(detail::Kind::Cos, a.root_), a.dim_);
  }
  friend ScalarExpr exp(const ScalarExpr& a) {
    return ScalarExpr(detail::make(detail::Kind::Exp, a.root_), a.dim_);
  }

 private:
  template <class T>
  T eval_node(const detail::Node* n, const Point& p) const {
    using detail::Kind;
    if (!n) throw std::logic_error("empty expression");
    auto lift_const = [&](double c) -> T {
      if constexpr (std::is_same_v<T, double>)
        return c;
      else
        return Jet2::constant(c, static_cast<int>(p.size()));
    };
    switch (n->kind) {
      case Kind::Constant:
        return lift_const(n->value);
      case Kind::Variable: {
        if (n->var_index >= p.size())
          throw std::out_of_range("point dimension does not match expression");
        if constexpr (std::is_same_v<T, double>)
          return p(n->var_index);
        else
          return Jet2::variable(p(n->var_index), n->var_index, static_cast<int>(p.size()));
      }
      case Kind::Add:
        return eval_node<T>(n->a.get(), p) + eval_node<T>(n->b.get(), p);
      case Kind::Sub:
        return eval_node<T>(n->a.get(), p) - eval_node<T>(n->b.get(), p);
      case Kind::Mul:
        return eval_node<T>(n->a.get(), p) * eval_node<T>(n->b.get(), p);
      case Kind::Div: {
        T denom = eval_node<T>(n->b.get(), p);
        if constexpr (std::is_same_v<T, double>) {
          if (denom == 0.0) throw std::domain_error("division by zero");
          return eval_node<T>(n->a.get(), p) / denom;
        } else {
          return eval_node<T>(n->a.get(), p) / denom;
        }
      }
      case Kind::Neg:
        return -eval_node<T>(n->a.get(), p);
      case Kind::Pow: {
        T base = eval_node<T>(n->a.get(), p);
        if constexpr (std::is_same_v<T, double>) {
          if (n->exponent < 0 && base == 0.0) throw std::domain_error("division by zero");
          double r = 1.0;
          int e = n->exponent < 0 ? -n->exponent : n->exponent;
          for (int i = 0; i < e; ++i) r *= base;
          return n->exponent < 0 ? 1.0 / r : r;
        } else {
          return pow(base, n->exponent);
        }
      }
      case Kind::Sin:
        using std::sin;
        return sin(eval_node<T>(n->a.get(), p));
      case Kind::Cos:
        using std::cos;
        return cos(eval_node<T>(n->a.get(), p));
      case Kind::Exp:
        using std::exp;
        return exp(eval_node<T>(n->a.get(), p));
    }
    throw std::logic_error("unreachable");
  }

  // Precedence levels: 0 add, 1 mul, 2 unary, 3 power/atom.
  std::string print(const detail::Node* n, int parent_prec) const {
    using detail::Kind;
    if (!n) return "0";
    auto wrap = [&](const std::string& s, int prec) {
      return prec < parent_prec ? "(" + s + ")" : s;
    };
    switch (n->kind) {
      case Kind::Constant: {
        std::string s = format_number(n->value);
        return n->value < 0 ? wrap(s, 2) : s;
      }
      case Kind::Variable:
        return n->var_name;
      case Kind::Add:
        return wrap(print(n->a.get(), 0) + " + " + print(n->b.get(), 1), 0);
      case Kind::Sub:
        return wrap(print(n->a.get(), 0) + " - " + print(n->b.get(), 1), 0);
      case Kind::Mul:
        return wrap(print(n->a.get(), 1) + "*" + print(n->b.get(), 2), 1);
      case Kind::Div:
        return wrap(print(n->a.get(), 1) + "/" + print(n->b.get(), 2), 1);
      case Kind::Neg:
        return wrap("-" + print(n->a.get(), 2), 2);
      case Kind::Pow:
        return wrap(print(n->a.get(), 4) + "^" + std::to_string(n->exponent), 3);
      case Kind::Sin:
        return "sin(" + print(n->a.get(), 0) + ")";
      case Kind::Cos:
        return "cos(" + print(n->a.get(), 0) + ")";
      case Kind::Exp:
        return "exp(" + print(n->a.get(), 0) + ")";
    }
    return "?";
  }

  static std::string format_number(double v) {
    // Shortest representation that round-trips.
    for (int prec = 1; prec <= 17; ++prec) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
      if (std::strtod(buf, nullptr) == v) return buf;
    }
    return std::to_string(v);
  }

  detail::NodePtr root_;
  int dim_ = 0;
};

// ---------------------------------------------------------------------------
// Recursive-descent parser.
// Grammar:  expr   := term (('+'|'-') term)*
//           term   := factor (('*'|'/') factor)*
//           factor := ('+'|'-') factor | power
//           power  := atom ('^' ('-')? integer)?
//           atom   := number | ident | ident '(' expr ')' | '(' expr ')'
// ---------------------------------------------------------------------------
namespace detail {

class Parser {
 public:
  Parser(std::string_view src, const std::vector<std::string>& coords)
      : src_(src), coords_(coords) {}

  ScalarExpr parse() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("empty expression", 0);
    ScalarExpr e = parse_expr();
    skip_ws();
    if (pos_ < src_.size()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  int dim() const { return static_cast<int>(coords_.size()); }

  ScalarExpr parse_expr() {
    ScalarExpr e = parse_term();
    for (;;) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        e = e + parse_term();
      } else if (peek() == '-') {
        ++pos_;
        e = e - parse_term();
      } else {
        return e;
      }
    }
  }

  ScalarExpr parse_term() {
    ScalarExpr e = parse_factor();
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        e = e * parse_factor();
      } else if (peek() == '/') {
        ++pos_;
        e = e / parse_factor();
      } else {
        return e;
      }
    }
  }

  ScalarExpr parse_factor() {
    skip_ws();
    if (peek() == '-') {
      ++pos_;
      return -parse_factor();
    }
    if (peek() == '+') {
      ++pos_;
      return parse_factor();
    }
    return parse_power();
  }

  ScalarExpr parse_power() {
    ScalarExpr base = parse_atom();
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      bool negative = false;
      if (peek() == '-') {
        negative = true;
        ++pos_;
      }
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (pos_ == start) throw ParseError("expected integer exponent after '^'", pos_);
      int e = std::stoi(std::string(src_.substr(start, pos_ - start)));
      return pow(base, negative ? -e : e);
    }
    return base;
  }

  ScalarExpr parse_atom() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      ScalarExpr e = parse_expr();
      skip_ws();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  ScalarExpr parse_number() {
    std::size_t start = pos_;
    const char* begin = src_.data() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) throw ParseError("invalid number", start);
    pos_ += static_cast<std::size_t>(end - begin);
    return ScalarExpr::constant(v, dim());
  }

  ScalarExpr parse_ident() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    std::string name(src_.substr(start, pos_ - start));
    skip_ws();
    if (peek() == '(') {
      if (name != "sin" && name != "cos" && name != "exp")
        throw ParseError("unknown function '" + name + "'", start);
      ++pos_;
      ScalarExpr arg = parse_expr();
      skip_ws();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      if (name == "sin") return sin(arg);
      if (name == "cos") return cos(arg);
      return exp(arg);
    }
    for (int i = 0; i < dim(); ++i)
      if (coords_[i] == name) return ScalarExpr::variable(i, dim(), name);
    throw ParseError("unknown identifier '" + name + "'", start);
  }

  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  std::string_view src_;
  const std::vector<std::string>& coords_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline ScalarExpr parse_expr(std::string_view source, const std::vector<std::string>& coords) {
  for (std::size_t i = 0; i < coords.size(); ++i)
    for (std::size_t j = i + 1; j < coords.size(); ++j)
      if (coords[i] == coords[j])
        throw std::invalid_argument("duplicate coordinate name '" + coords[i] + "'");
  return detail::Parser(source, coords).parse();
}

}  // namespace subver::expr

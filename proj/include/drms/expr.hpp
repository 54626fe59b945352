#pragma once

/// Expression trees over the scalar algebra in the real variables u, v:
/// parsing, printing, evaluation and symbolic differentiation.
///
/// Grammar (whitespace insensitive):
///   expr   := term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*
///   unary  := '-' unary | factor
///   factor := base ('^' ['+'|'-'] int)?
///   base   := number | 'u' | 'v' | 'i' | 'tau' | ident '(' expr ')' | '(' expr ')'
///   ident  := exp | ln | sin | cos | sinh | cosh | conj
/// so '^' binds tighter than unary minus: -u^2 is -(u^2).

#include <array>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <system_error>

#include "drms/algebra.hpp"
#include "drms/errors.hpp"

namespace drms {

enum class Op {
  Constant,
  VarU,
  VarV,
  Unit,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
  Neg,
  Conj,
  Exp,
  Ln,
  Sin,
  Cos,
  Sinh,
  Cosh,
};

enum class Variable { U, V };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// One immutable tree node. `lhs` is the sole operand of unary nodes.
struct Node {
  static constexpr std::size_t kNoPosition = std::numeric_limits<std::size_t>::max();

  Op op = Op::Constant;
  Scalar value{};  // Constant
  int exponent = 0;  // Pow
  NodePtr lhs;
  NodePtr rhs;
  std::size_t position = kNoPosition;  // offset in the source text
};

inline bool is_function(Op op) {
  switch (op) {
    case Op::Conj:
    case Op::Exp:
    case Op::Ln:
    case Op::Sin:
    case Op::Cos:
    case Op::Sinh:
    case Op::Cosh:
      return true;
    default:
      return false;
  }
}

inline const char* function_name(Op op) {
  switch (op) {
    case Op::Conj: return "conj";
    case Op::Exp: return "exp";
    case Op::Ln: return "ln";
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Sinh: return "sinh";
    case Op::Cosh: return "cosh";
    default: return "";
  }
}

/// A kind-homogeneous expression tree.
class Expr {
 public:
  Expr(NodePtr root, Algebra kind) : root_(std::move(root)), kind_(kind) {}

  const Node& root() const { return *root_; }
  const NodePtr& ptr() const { return root_; }
  Algebra kind() const { return kind_; }

 private:
  NodePtr root_;
  Algebra kind_;
};

// Node construction --------------------------------------------------------

namespace node {

inline NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr,
                    std::size_t pos = Node::kNoPosition) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  n->position = pos;
  return n;
}

inline NodePtr constant(const Scalar& s, std::size_t pos = Node::kNoPosition) {
  auto n = std::make_shared<Node>();
  n->op = Op::Constant;
  n->value = s;
  n->position = pos;
  return n;
}

inline NodePtr constant(double x, Algebra k) { return constant(Scalar::real(x, k)); }

inline NodePtr pow(NodePtr base, int e, std::size_t pos = Node::kNoPosition) {
  auto n = std::make_shared<Node>();
  n->op = Op::Pow;
  n->exponent = e;
  n->lhs = std::move(base);
  n->position = pos;
  return n;
}

inline NodePtr add(NodePtr a, NodePtr b) { return make(Op::Add, std::move(a), std::move(b)); }
inline NodePtr sub(NodePtr a, NodePtr b) { return make(Op::Sub, std::move(a), std::move(b)); }
inline NodePtr mul(NodePtr a, NodePtr b) { return make(Op::Mul, std::move(a), std::move(b)); }
inline NodePtr div(NodePtr a, NodePtr b) { return make(Op::Div, std::move(a), std::move(b)); }
inline NodePtr neg(NodePtr a) { return make(Op::Neg, std::move(a)); }
inline NodePtr apply(Op fn, NodePtr a) { return make(fn, std::move(a)); }

}  // namespace node

// Printing -------------------------------------------------------------------

/// Shortest decimal string that reads back to exactly `x`.
inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline std::string to_string(const Node& n) {
  switch (n.op) {
    case Op::Constant: {
      const Scalar& s = n.value;
      const char* unit = s.kind == Algebra::Complex ? "i" : "tau";
      if (s.im == 0.0) return format_double(s.re);
      return "(" + format_double(s.re) + " + " + format_double(s.im) + "*" + unit + ")";
    }
    case Op::VarU: return "u";
    case Op::VarV: return "v";
    case Op::Unit: return n.value.kind == Algebra::Complex ? "i" : "tau";
    case Op::Add: return "(" + to_string(*n.lhs) + " + " + to_string(*n.rhs) + ")";
    case Op::Sub: return "(" + to_string(*n.lhs) + " - " + to_string(*n.rhs) + ")";
    case Op::Mul: return "(" + to_string(*n.lhs) + " * " + to_string(*n.rhs) + ")";
    case Op::Div: return "(" + to_string(*n.lhs) + " / " + to_string(*n.rhs) + ")";
    case Op::Pow: {
      // A power base is printed parenthesized unless it is atomic.
      std::string base = to_string(*n.lhs);
      const Op b = n.lhs->op;
      const bool atomic = b == Op::VarU || b == Op::VarV || b == Op::Unit ||
                          (b == Op::Constant && n.lhs->value.im == 0.0 &&
                           n.lhs->value.re >= 0.0) ||
                          is_function(b) || (b != Op::Pow && base.front() == '(');
      if (!atomic) base = "(" + base + ")";
      return base + "^" + std::to_string(n.exponent);
    }
    case Op::Neg: return "(-" + to_string(*n.lhs) + ")";
    default: return std::string(function_name(n.op)) + "(" + to_string(*n.lhs) + ")";
  }
}

inline std::string to_string(const Expr& e) { return to_string(e.root()); }

inline bool structurally_equal(const Node& a, const Node& b) {
  if (a.op != b.op) return false;
  switch (a.op) {
    case Op::Constant: return a.value == b.value;
    case Op::Unit: return a.value.kind == b.value.kind;
    case Op::VarU:
    case Op::VarV: return true;
    case Op::Pow:
      return a.exponent == b.exponent && structurally_equal(*a.lhs, *b.lhs);
    default:
      if (!structurally_equal(*a.lhs, *b.lhs)) return false;
      if (a.rhs || b.rhs) return a.rhs && b.rhs && structurally_equal(*a.rhs, *b.rhs);
      return true;
  }
}

// Parsing --------------------------------------------------------------------

namespace detail {

class Parser {
 public:
  Parser(std::string_view text, Algebra kind) : text_(text), kind_(kind) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_ws();
    if (pos_ != text_.size()) {
      throw SyntaxError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    }
    return root;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) {
        throw SyntaxError(std::string("expected '") + c + "' but input ended", pos_);
      }
      throw SyntaxError(std::string("expected '") + c + "'", pos_);
    }
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (accept('+')) {
        lhs = node::make(Op::Add, lhs, term(), at);
      } else if (accept('-')) {
        lhs = node::make(Op::Sub, lhs, term(), at);
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (accept('*')) {
        lhs = node::make(Op::Mul, lhs, unary(), at);
      } else if (accept('/')) {
        lhs = node::make(Op::Div, lhs, unary(), at);
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    skip_ws();
    const std::size_t at = pos_;
    if (accept('-')) return node::make(Op::Neg, unary(), nullptr, at);
    return factor();
  }

  NodePtr factor() {
    NodePtr b = base();
    skip_ws();
    const std::size_t at = pos_;
    if (!accept('^')) return b;
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (digits == pos_) throw SyntaxError("expected integer exponent", digits);
    int e = 0;
    const char* first = text_.data() + start + (text_[start] == '+' ? 1 : 0);
    auto [ptr, ec] = std::from_chars(first, text_.data() + pos_, e);
    if (ec != std::errc{}) throw SyntaxError("exponent out of range", start);
    return node::pow(b, e, at);
  }

  NodePtr base() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
    const std::size_t at = pos_;
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view id = text_.substr(at, pos_ - at);
      if (id == "u") return node::make(Op::VarU, nullptr, nullptr, at);
      if (id == "v") return node::make(Op::VarV, nullptr, nullptr, at);
      if (id == "i" || id == "tau") {
        const Algebra wanted = id == "i" ? Algebra::Complex : Algebra::Para;
        if (wanted != kind_) {
          throw KindError("unit '" + std::string(id) + "' is not allowed in a " +
                              to_string(kind_) + " configuration",
                          at);
        }
        auto n = std::make_shared<Node>();
        n->op = Op::Unit;
        n->value = Scalar::unit(kind_);
        n->position = at;
        return n;
      }
      const Op fn = function_op(id, at);
      expect('(');
      NodePtr arg = expr();
      expect(')');
      return node::make(fn, arg, nullptr, at);
    }
    throw SyntaxError("unexpected '" + std::string(1, c) + "'", at);
  }

  static Op function_op(std::string_view id, std::size_t at) {
    if (id == "exp") return Op::Exp;
    if (id == "ln") return Op::Ln;
    if (id == "sin") return Op::Sin;
    if (id == "cos") return Op::Cos;
    if (id == "sinh") return Op::Sinh;
    if (id == "cosh") return Op::Cosh;
    if (id == "conj") return Op::Conj;
    throw SyntaxError("unknown identifier '" + std::string(id) + "'", at);
  }

  NodePtr number() {
    const std::size_t at = pos_;
    auto digits = [&] {
      const std::size_t s = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return pos_ - s;
    };
    std::size_t n = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) throw SyntaxError("malformed number", at);
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;  // not an exponent; leave 'e' for the caller
    }
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + at, text_.data() + pos_, x);
    if (ec != std::errc{} || ptr != text_.data() + pos_) {
      throw SyntaxError("malformed number", at);
    }
    return node::constant(Scalar::real(x, kind_), at);
  }

  std::string_view text_;
  Algebra kind_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse(std::string_view text, Algebra kind) {
  return Expr(detail::Parser(text, kind).parse(), kind);
}

// Evaluation -----------------------------------------------------------------

namespace detail {

inline Scalar eval_node(const Node& n, Algebra k, double u, double v) {
  auto wrap = [&](auto&& f) -> Scalar {
    try {
      return f();
    } catch (const EvalError&) {
      throw;
    } catch (const Error& err) {
      std::string where = to_string(n);
      if (n.position != Node::kNoPosition) where += " @" + std::to_string(n.position);
      throw EvalError(where, err.what());
    }
  };
  switch (n.op) {
    case Op::Constant: return n.value;
    case Op::VarU: return Scalar::real(u, k);
    case Op::VarV: return Scalar::real(v, k);
    case Op::Unit: return Scalar::unit(k);
    case Op::Add: return eval_node(*n.lhs, k, u, v) + eval_node(*n.rhs, k, u, v);
    case Op::Sub: return eval_node(*n.lhs, k, u, v) - eval_node(*n.rhs, k, u, v);
    case Op::Mul: return eval_node(*n.lhs, k, u, v) * eval_node(*n.rhs, k, u, v);
    case Op::Neg: return -eval_node(*n.lhs, k, u, v);
    case Op::Conj: return conj(eval_node(*n.lhs, k, u, v));
    default: break;
  }
  const Scalar a = eval_node(*n.lhs, k, u, v);
  switch (n.op) {
    case Op::Div: {
      const Scalar b = eval_node(*n.rhs, k, u, v);
      return wrap([&] { return a / b; });
    }
    case Op::Pow: return wrap([&] { return pow_int(a, n.exponent); });
    case Op::Exp: return exp_scalar(a);
    case Op::Ln: return wrap([&] { return ln_scalar(a); });
    case Op::Sin: return sin_scalar(a);
    case Op::Cos: return cos_scalar(a);
    case Op::Sinh: return sinh_scalar(a);
    case Op::Cosh: return cosh_scalar(a);
    default: throw Error("corrupt expression node");
  }
}

}  // namespace detail

/// Value at z = u + unit*v.
inline Scalar eval(const Expr& e, double u, double v) {
  return detail::eval_node(e.root(), e.kind(), u, v);
}

// Differentiation ------------------------------------------------------------

namespace detail {

inline NodePtr diff_node(const NodePtr& p, Variable wrt, Algebra k) {
  const Node& n = *p;
  auto d = [&](const NodePtr& c) { return diff_node(c, wrt, k); };
  switch (n.op) {
    case Op::Constant:
    case Op::Unit: return node::constant(0.0, k);
    case Op::VarU: return node::constant(wrt == Variable::U ? 1.0 : 0.0, k);
    case Op::VarV: return node::constant(wrt == Variable::V ? 1.0 : 0.0, k);
    case Op::Add: return node::add(d(n.lhs), d(n.rhs));
    case Op::Sub: return node::sub(d(n.lhs), d(n.rhs));
    case Op::Mul:
      return node::add(node::mul(d(n.lhs), n.rhs), node::mul(n.lhs, d(n.rhs)));
    case Op::Div:
      return node::div(node::sub(node::mul(d(n.lhs), n.rhs), node::mul(n.lhs, d(n.rhs))),
                       node::pow(n.rhs, 2));
    case Op::Pow:
      if (n.exponent == 0) return node::constant(0.0, k);
      return node::mul(node::mul(node::constant(static_cast<double>(n.exponent), k),
                                 node::pow(n.lhs, n.exponent - 1)),
                       d(n.lhs));
    case Op::Neg: return node::neg(d(n.lhs));
    case Op::Conj: return node::apply(Op::Conj, d(n.lhs));
    case Op::Exp: return node::mul(p, d(n.lhs));
    case Op::Ln: return node::div(d(n.lhs), n.lhs);
    case Op::Sin: return node::mul(node::apply(Op::Cos, n.lhs), d(n.lhs));
    case Op::Cos: return node::neg(node::mul(node::apply(Op::Sin, n.lhs), d(n.lhs)));
    case Op::Sinh: return node::mul(node::apply(Op::Cosh, n.lhs), d(n.lhs));
    case Op::Cosh: return node::mul(node::apply(Op::Sinh, n.lhs), d(n.lhs));
  }
  throw Error("corrupt expression node");
}

}  // namespace detail

/// Exact partial derivative, unsimplified.
inline Expr diff(const Expr& e, Variable wrt) {
  return Expr(detail::diff_node(e.ptr(), wrt, e.kind()), e.kind());
}

/// d/dzbar = (d/du - unit^{-1} d/dv)/2, the operator annihilating
/// z = u + unit*v. For paracomplex data unit^{-1} = tau; for complex data
/// unit^{-1} = -i, giving the usual (d/du + i d/dv)/2.
inline Expr wirtinger_bar(const Expr& e) {
  const Algebra k = e.kind();
  const Scalar unit_inv = invert(Scalar::unit(k));
  NodePtr body = node::sub(diff(e, Variable::U).ptr(),
                           node::mul(node::constant(unit_inv), diff(e, Variable::V).ptr()));
  return Expr(node::mul(node::constant(0.5, k), body), k);
}

/// Companion operator d/dz = (d/du + unit^{-1} d/dv)/2.
inline Expr wirtinger(const Expr& e) {
  const Algebra k = e.kind();
  const Scalar unit_inv = invert(Scalar::unit(k));
  NodePtr body = node::add(diff(e, Variable::U).ptr(),
                           node::mul(node::constant(unit_inv), diff(e, Variable::V).ptr()));
  return Expr(node::mul(node::constant(0.5, k), body), k);
}

// Weierstrass data -----------------------------------------------------------

/// Frame components psi_1..psi_4 of the tangent vector dz-derivative.
struct WeierstrassData {
  std::array<Expr, 4> psi;
  std::array<std::string, 4> text;
  Algebra kind;

  static WeierstrassData parse(const std::array<std::string, 4>& sources, Algebra kind) {
    return WeierstrassData{{drms::parse(sources[0], kind), drms::parse(sources[1], kind),
                            drms::parse(sources[2], kind), drms::parse(sources[3], kind)},
                           sources,
                           kind};
  }

  std::array<Scalar, 4> eval(double u, double v) const {
    return {drms::eval(psi[0], u, v), drms::eval(psi[1], u, v), drms::eval(psi[2], u, v),
            drms::eval(psi[3], u, v)};
  }
};

}  // namespace drms

#include "specneumann/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace specneumann {

namespace detail {

enum class Op { constant, variable, add, sub, mul, div, pow, neg, exp, sin, cos, sqrt };

struct ExprNode {
  Op op;
  double value = 0.0;  // constant
  int var = -1;        // variable
  std::shared_ptr<const ExprNode> lhs, rhs;
};

using NodePtr = std::shared_ptr<const ExprNode>;

namespace {

NodePtr constant(double v) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::constant;
  n->value = v;
  return n;
}

NodePtr variable(int idx) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::variable;
  n->var = idx;
  return n;
}

NodePtr node(Op op, NodePtr lhs, NodePtr rhs = nullptr) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

bool is_const(const NodePtr& n, double v) {
  return n->op == Op::constant && n->value == v;
}

// Light algebraic cleanup so repeated differentiation stays small.
NodePtr simplified(Op op, NodePtr a, NodePtr b = nullptr) {
  const bool ca = a && a->op == Op::constant;
  const bool cb = b && b->op == Op::constant;
  switch (op) {
    case Op::add:
      if (ca && cb) return constant(a->value + b->value);
      if (is_const(a, 0.0)) return b;
      if (is_const(b, 0.0)) return a;
      break;
    case Op::sub:
      if (ca && cb) return constant(a->value - b->value);
      if (is_const(b, 0.0)) return a;
      if (is_const(a, 0.0)) return simplified(Op::neg, b);
      break;
    case Op::mul:
      if (ca && cb) return constant(a->value * b->value);
      if (is_const(a, 0.0) || is_const(b, 0.0)) return constant(0.0);
      if (is_const(a, 1.0)) return b;
      if (is_const(b, 1.0)) return a;
      break;
    case Op::div:
      if (is_const(a, 0.0)) return constant(0.0);
      if (is_const(b, 1.0)) return a;
      if (ca && cb && b->value != 0.0) return constant(a->value / b->value);
      break;
    case Op::pow:
      if (is_const(b, 1.0)) return a;
      if (is_const(b, 0.0)) return constant(1.0);
      if (ca && cb) return constant(std::pow(a->value, b->value));
      break;
    case Op::neg:
      if (ca) return constant(-a->value);
      break;
    default:
      break;
  }
  return node(op, std::move(a), std::move(b));
}

double eval_node(const ExprNode& n, const Eigen::VectorXd& args) {
  switch (n.op) {
    case Op::constant: return n.value;
    case Op::variable: return args(n.var);
    case Op::add: return eval_node(*n.lhs, args) + eval_node(*n.rhs, args);
    case Op::sub: return eval_node(*n.lhs, args) - eval_node(*n.rhs, args);
    case Op::mul: return eval_node(*n.lhs, args) * eval_node(*n.rhs, args);
    case Op::div: return eval_node(*n.lhs, args) / eval_node(*n.rhs, args);
    case Op::pow: return std::pow(eval_node(*n.lhs, args), eval_node(*n.rhs, args));
    case Op::neg: return -eval_node(*n.lhs, args);
    case Op::exp: return std::exp(eval_node(*n.lhs, args));
    case Op::sin: return std::sin(eval_node(*n.lhs, args));
    case Op::cos: return std::cos(eval_node(*n.lhs, args));
    case Op::sqrt: return std::sqrt(eval_node(*n.lhs, args));
  }
  return 0.0;
}

NodePtr diff_node(const NodePtr& n, int var) {
  switch (n->op) {
    case Op::constant: return constant(0.0);
    case Op::variable: return constant(n->var == var ? 1.0 : 0.0);
    case Op::add: return simplified(Op::add, diff_node(n->lhs, var), diff_node(n->rhs, var));
    case Op::sub: return simplified(Op::sub, diff_node(n->lhs, var), diff_node(n->rhs, var));
    case Op::mul:
      return simplified(Op::add,
                        simplified(Op::mul, diff_node(n->lhs, var), n->rhs),
                        simplified(Op::mul, n->lhs, diff_node(n->rhs, var)));
    case Op::div:
      // (u/v)' = u'/v - u v' / v^2
      return simplified(
          Op::sub, simplified(Op::div, diff_node(n->lhs, var), n->rhs),
          simplified(Op::div, simplified(Op::mul, n->lhs, diff_node(n->rhs, var)),
                     simplified(Op::pow, n->rhs, constant(2.0))));
    case Op::pow: {
      if (n->rhs->op == Op::constant) {
        const double p = n->rhs->value;
        return simplified(
            Op::mul, constant(p),
            simplified(Op::mul, simplified(Op::pow, n->lhs, constant(p - 1.0)),
                       diff_node(n->lhs, var)));
      }
      // u^v = exp(v log u): d = u^v (v' log u + v u'/u); log support is
      // intentionally omitted, so restrict to constant exponents.
      throw std::invalid_argument("expression: only constant exponents can be differentiated");
    }
    case Op::neg: return simplified(Op::neg, diff_node(n->lhs, var));
    case Op::exp: return simplified(Op::mul, node(Op::exp, n->lhs), diff_node(n->lhs, var));
    case Op::sin: return simplified(Op::mul, node(Op::cos, n->lhs), diff_node(n->lhs, var));
    case Op::cos:
      return simplified(Op::neg,
                        simplified(Op::mul, node(Op::sin, n->lhs), diff_node(n->lhs, var)));
    case Op::sqrt:
      return simplified(Op::div, diff_node(n->lhs, var),
                        simplified(Op::mul, constant(2.0), node(Op::sqrt, n->lhs)));
  }
  return constant(0.0);
}

std::string print_node(const ExprNode& n, const std::vector<std::string>& names) {
  switch (n.op) {
    case Op::constant: {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.17g", n.value);
      return buf;
    }
    case Op::variable: return names[n.var];
    case Op::add: return "(" + print_node(*n.lhs, names) + "+" + print_node(*n.rhs, names) + ")";
    case Op::sub: return "(" + print_node(*n.lhs, names) + "-" + print_node(*n.rhs, names) + ")";
    case Op::mul: return "(" + print_node(*n.lhs, names) + "*" + print_node(*n.rhs, names) + ")";
    case Op::div: return "(" + print_node(*n.lhs, names) + "/" + print_node(*n.rhs, names) + ")";
    case Op::pow: return "(" + print_node(*n.lhs, names) + "^" + print_node(*n.rhs, names) + ")";
    case Op::neg: return "(-" + print_node(*n.lhs, names) + ")";
    case Op::exp: return "exp(" + print_node(*n.lhs, names) + ")";
    case Op::sin: return "sin(" + print_node(*n.lhs, names) + ")";
    case Op::cos: return "cos(" + print_node(*n.lhs, names) + ")";
    case Op::sqrt: return "sqrt(" + print_node(*n.lhs, names) + ")";
  }
  return "";
}

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& variables)
      : text_(text), vars_(variables) {}

  NodePtr run() {
    NodePtr result = parse_sum();
    skip_space();
    if (pos_ != text_.size())
      throw std::invalid_argument("expression: unexpected trailing input at '" +
                                  text_.substr(pos_) + "'");
    return result;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr parse_sum() {
    NodePtr lhs = parse_product();
    for (;;) {
      if (consume('+'))
        lhs = simplified(Op::add, lhs, parse_product());
      else if (consume('-'))
        lhs = simplified(Op::sub, lhs, parse_product());
      else
        return lhs;
    }
  }

  NodePtr parse_product() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (consume('*'))
        lhs = simplified(Op::mul, lhs, parse_unary());
      else if (consume('/'))
        lhs = simplified(Op::div, lhs, parse_unary());
      else
        return lhs;
    }
  }

  NodePtr parse_unary() {
    if (consume('-')) return simplified(Op::neg, parse_unary());
    if (consume('+')) return parse_unary();
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (consume('^')) return simplified(Op::pow, base, parse_unary());
    return base;
  }

  NodePtr parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) throw std::invalid_argument("expression: unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
    if (consume('(')) {
      NodePtr inner = parse_sum();
      if (!consume(')')) throw std::invalid_argument("expression: missing ')'");
      return inner;
    }
    throw std::invalid_argument(std::string("expression: unexpected character '") + c + "'");
  }

  NodePtr parse_number() {
    std::size_t used = 0;
    const double v = std::stod(text_.substr(pos_), &used);
    pos_ += used;
    return constant(v);
  }

  NodePtr parse_name() {
    std::size_t end = pos_;
    while (end < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
      ++end;
    const std::string name = text_.substr(pos_, end - pos_);
    pos_ = end;
    if (name == "pi") return constant(std::numbers::pi);
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return variable(static_cast<int>(i));
    Op op;
    if (name == "exp")
      op = Op::exp;
    else if (name == "sin")
      op = Op::sin;
    else if (name == "cos")
      op = Op::cos;
    else if (name == "sqrt")
      op = Op::sqrt;
    else
      throw std::invalid_argument("expression: unknown name '" + name + "'");
    if (!consume('(')) throw std::invalid_argument("expression: '" + name + "' needs '('");
    NodePtr arg = parse_sum();
    if (!consume(')')) throw std::invalid_argument("expression: missing ')'");
    return node(op, std::move(arg));
  }

  const std::string& text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

}  // namespace detail

Expression Expression::parse(const std::string& text, std::vector<std::string> variables) {
  Expression e;
  e.root_ = detail::Parser(text, variables).run();
  e.variables_ = std::move(variables);
  return e;
}

double Expression::operator()(const Eigen::VectorXd& args) const {
  if (!root_) throw std::logic_error("expression: evaluating an empty expression");
  if (args.size() != static_cast<Eigen::Index>(variables_.size()))
    throw std::invalid_argument("expression: wrong argument count");
  return detail::eval_node(*root_, args);
}

Expression Expression::derivative(int variable) const {
  if (!root_) throw std::logic_error("expression: differentiating an empty expression");
  if (variable < 0 || variable >= arity())
    throw std::invalid_argument("expression: no such variable");
  Expression out;
  out.root_ = detail::diff_node(root_, variable);
  out.variables_ = variables_;
  return out;
}

std::string Expression::to_string() const {
  return root_ ? detail::print_node(*root_, variables_) : "";
}

}  // namespace specneumann

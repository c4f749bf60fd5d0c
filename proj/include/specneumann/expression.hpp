#pragma once

#include <Eigen/Core>

#include <memory>
#include <string>
#include <vector>

namespace specneumann {

namespace detail {
struct ExprNode;
}

/// A parsed scalar expression over named variables, with exact symbolic
/// differentiation. The grammar covers numbers, the named variables,
/// `pi`, the operators + - * / ^ with usual precedence, parentheses, and
/// the functions exp, sin, cos, sqrt. Immutable and cheap to copy.
class Expression {
 public:
  Expression() = default;

  static Expression parse(const std::string& text, std::vector<std::string> variables);

  bool valid() const { return root_ != nullptr; }
  int arity() const { return static_cast<int>(variables_.size()); }

  double operator()(const Eigen::VectorXd& args) const;
  Expression derivative(int variable) const;

  std::string to_string() const;

 private:
  std::shared_ptr<const detail::ExprNode> root_;
  std::vector<std::string> variables_;
};

}  // namespace specneumann

#pragma once

#include <map>
#include <memory>
#include <string>

namespace speclab {

// A compiled real-valued expression in one free variable.
//
// Grammar: numbers, the variable (any of `x`, `t`, `s`), named constants,
// + - * / ^, parentheses, unary minus and the functions sin cos exp sqrt log
// abs. A bare function name with no argument list applies to the variable,
// so "2+sin" means 2 + sin(x).
class Expression {
 public:
  struct Node;

  static Expression parse(const std::string& text,
                          const std::map<std::string, double>& constants = {});

  double operator()(double v) const;
  const std::string& text() const { return text_; }

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

}  // namespace speclab

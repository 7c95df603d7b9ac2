#include "speclab/expression.hpp"

#include <cctype>
#include <cmath>
#include <vector>

#include "speclab/common.hpp"

namespace speclab {

struct Expression::Node {
  enum class Kind { Number, Variable, Unary, Binary, Call } kind;
  double value = 0.0;
  char op = 0;
  std::string fn;
  std::shared_ptr<const Node> lhs, rhs;

  double eval(double v) const {
    switch (kind) {
      case Kind::Number:
        return value;
      case Kind::Variable:
        return v;
      case Kind::Unary:
        return -lhs->eval(v);
      case Kind::Binary: {
        const double a = lhs->eval(v);
        const double b = rhs->eval(v);
        switch (op) {
          case '+': return a + b;
          case '-': return a - b;
          case '*': return a * b;
          case '/': return a / b;
          default: return std::pow(a, b);
        }
      }
      case Kind::Call: {
        const double a = lhs->eval(v);
        if (fn == "sin") return std::sin(a);
        if (fn == "cos") return std::cos(a);
        if (fn == "exp") return std::exp(a);
        if (fn == "sqrt") return std::sqrt(a);
        if (fn == "log") return std::log(a);
        return std::abs(a);
      }
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

bool is_function(const std::string& name) {
  return name == "sin" || name == "cos" || name == "exp" || name == "sqrt" ||
         name == "log" || name == "abs";
}

class Parser {
 public:
  Parser(const std::string& text, const std::map<std::string, double>& constants)
      : s_(text), constants_(constants) {}

  NodePtr run() {
    NodePtr n = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw InvalidInput("malformed expression \"" + s_ + "\": " + why);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static NodePtr binary(char op, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Expression::Node>();
    n->kind = Kind::Binary;
    n->op = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
  }

  NodePtr expr() {
    NodePtr n = term();
    for (;;) {
      if (eat('+')) n = binary('+', n, term());
      else if (eat('-')) n = binary('-', n, term());
      else return n;
    }
  }

  NodePtr term() {
    NodePtr n = unary();
    for (;;) {
      if (eat('*')) n = binary('*', n, unary());
      else if (eat('/')) n = binary('/', n, unary());
      else return n;
    }
  }

  NodePtr unary() {
    if (eat('-')) {
      auto n = std::make_shared<Expression::Node>();
      n->kind = Kind::Unary;
      n->lhs = unary();
      return n;
    }
    if (eat('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (eat('^')) return binary('^', base, unary());
    return base;
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr n = expr();
      if (!eat(')')) fail("missing ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(s_.substr(pos_), &used);
      } catch (const std::exception&) {
        fail("bad number");
      }
      pos_ += used;
      auto n = std::make_shared<Expression::Node>();
      n->kind = Kind::Number;
      n->value = v;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      auto n = std::make_shared<Expression::Node>();
      if (name == "x" || name == "t" || name == "s") {
        n->kind = Kind::Variable;
        return n;
      }
      if (name == "pi") {
        n->kind = Kind::Number;
        n->value = kPi;
        return n;
      }
      if (auto it = constants_.find(name); it != constants_.end()) {
        n->kind = Kind::Number;
        n->value = it->second;
        return n;
      }
      if (!is_function(name)) fail("unknown identifier '" + name + "'");
      n->kind = Kind::Call;
      n->fn = name;
      if (eat('(')) {
        n->lhs = expr();
        if (!eat(')')) fail("missing ')' after " + name);
      } else {
        auto var = std::make_shared<Expression::Node>();
        var->kind = Kind::Variable;
        n->lhs = var;
      }
      return n;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string s_;
  const std::map<std::string, double>& constants_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& text,
                             const std::map<std::string, double>& constants) {
  Expression e;
  e.text_ = text;
  e.root_ = Parser(text, constants).run();
  return e;
}

double Expression::operator()(double v) const { return root_->eval(v); }

}  // namespace speclab

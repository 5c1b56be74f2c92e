#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "relfix/core.hpp"

namespace relfix {

// --------------------------------------------------------------------------
// A small total arithmetic expression language over variables x1..xm.
// Precedence: ^ (right-assoc) > unary minus > * / > + -. Functions:
// min, max (binary), abs, sqrt, exp, sin, cos (unary). No conditionals,
// no recursion, doubles throughout.
// --------------------------------------------------------------------------

struct ParseError : Error {
  ParseError(std::size_t pos, const std::string& expected)
      : Error("parse error at offset " + std::to_string(pos) + ": expected " +
              expected),
        position(pos),
        expectation(expected) {}
  std::size_t position;
  std::string expectation;
};

struct UnknownIdentifier : ParseError {
  UnknownIdentifier(std::size_t pos, const std::string& name)
      : ParseError(pos, "known identifier (got '" + name + "')") {}
};

struct VariableOutOfRange : ParseError {
  VariableOutOfRange(std::size_t pos, const std::string& name, int dimension)
      : ParseError(pos, "variable index within 1.." +
                            std::to_string(dimension) + " (got '" + name +
                            "')") {}
};

enum class ExprFunc { Min, Max, Abs, Sqrt, Exp, Sin, Cos };

inline const char* expr_func_name(ExprFunc f) {
  switch (f) {
    case ExprFunc::Min:
      return "min";
    case ExprFunc::Max:
      return "max";
    case ExprFunc::Abs:
      return "abs";
    case ExprFunc::Sqrt:
      return "sqrt";
    case ExprFunc::Exp:
      return "exp";
    case ExprFunc::Sin:
      return "sin";
    case ExprFunc::Cos:
      return "cos";
  }
  return "?";
}

inline int expr_func_arity(ExprFunc f) {
  return (f == ExprFunc::Min || f == ExprFunc::Max) ? 2 : 1;
}

struct ExprNode {
  enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Call };
  Kind kind = Kind::Number;
  double number = 0.0;
  int var = 0;  // 1-based
  ExprFunc func = ExprFunc::Abs;
  int a = -1, b = -1;  // child node indices
};

// Value-semantic AST: nodes in an arena, root index last by construction.
struct ExprAst {
  std::vector<ExprNode> nodes;
  int root = -1;
  int dimension = 0;
  std::string source;

  bool empty() const { return root < 0; }
};

namespace detail {

inline bool expr_equal(const ExprAst& x, int i, const ExprAst& y, int j) {
  const ExprNode& a = x.nodes[i];
  const ExprNode& b = y.nodes[j];
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprNode::Kind::Number:
      return a.number == b.number;
    case ExprNode::Kind::Var:
      return a.var == b.var;
    case ExprNode::Kind::Neg:
      return expr_equal(x, a.a, y, b.a);
    case ExprNode::Kind::Call:
      if (a.func != b.func) return false;
      if (!expr_equal(x, a.a, y, b.a)) return false;
      return expr_func_arity(a.func) == 1 || expr_equal(x, a.b, y, b.b);
    default:
      return expr_equal(x, a.a, y, b.a) && expr_equal(x, a.b, y, b.b);
  }
}

class ExprParser {
 public:
  ExprParser(std::string_view text, int dimension)
      : text_(text), dim_(dimension) {}

  ExprAst parse() {
    ExprAst ast;
    ast.dimension = dim_;
    ast.source = std::string(text_);
    out_ = &ast;
    ast.root = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(pos_, "end of input");
    return ast;
  }

 private:
  int add(ExprNode node) {
    out_->nodes.push_back(node);
    return static_cast<int>(out_->nodes.size()) - 1;
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  int parse_sum() {
    int lhs = parse_term();
    for (;;) {
      if (eat('+')) {
        int rhs = parse_term();
        lhs = add({ExprNode::Kind::Add, 0, 0, ExprFunc::Abs, lhs, rhs});
      } else if (eat('-')) {
        int rhs = parse_term();
        lhs = add({ExprNode::Kind::Sub, 0, 0, ExprFunc::Abs, lhs, rhs});
      } else {
        return lhs;
      }
    }
  }

  int parse_term() {
    int lhs = parse_unary();
    for (;;) {
      if (eat('*')) {
        int rhs = parse_unary();
        lhs = add({ExprNode::Kind::Mul, 0, 0, ExprFunc::Abs, lhs, rhs});
      } else if (eat('/')) {
        int rhs = parse_unary();
        lhs = add({ExprNode::Kind::Div, 0, 0, ExprFunc::Abs, lhs, rhs});
      } else {
        return lhs;
      }
    }
  }

  int parse_unary() {
    if (eat('-')) {
      int inner = parse_unary();
      return add({ExprNode::Kind::Neg, 0, 0, ExprFunc::Abs, inner, -1});
    }
    return parse_power();
  }

  // '^' binds tighter than unary minus and associates right; a signed
  // exponent re-enters unary.
  int parse_power() {
    int base = parse_primary();
    if (eat('^')) {
      int exp = parse_unary();
      return add({ExprNode::Kind::Pow, 0, 0, ExprFunc::Abs, base, exp});
    }
    return base;
  }

  int parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "operand");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      int inner = parse_sum();
      skip_ws();
      if (!eat(')')) throw ParseError(pos_, "')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return parse_identifier();
    throw ParseError(pos_, "operand");
  }

  int parse_number() {
    const std::size_t start = pos_;
    bool digits = false;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
      digits = true;
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        digits = true;
      }
    }
    if (!digits) throw ParseError(start, "number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-'))
        ++pos_;
      if (pos_ < text_.size() &&
          std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_])))
          ++pos_;
      } else {
        pos_ = mark;  // 'e' belongs to something else; not our exponent
      }
    }
    const std::string slice(text_.substr(start, pos_ - start));
    const double value = std::strtod(slice.c_str(), nullptr);
    return add({ExprNode::Kind::Number, value, 0, ExprFunc::Abs, -1, -1});
  }

  int parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      ++pos_;
    const std::string name(text_.substr(start, pos_ - start));

    if (name.size() >= 2 && name[0] == 'x' &&
        std::all_of(name.begin() + 1, name.end(), [](char ch) {
          return std::isdigit(static_cast<unsigned char>(ch));
        })) {
      const long idx = std::strtol(name.c_str() + 1, nullptr, 10);
      if (idx < 1 || idx > dim_) throw VariableOutOfRange(start, name, dim_);
      return add({ExprNode::Kind::Var, 0, static_cast<int>(idx),
                  ExprFunc::Abs, -1, -1});
    }

    ExprFunc func;
    if (name == "min")
      func = ExprFunc::Min;
    else if (name == "max")
      func = ExprFunc::Max;
    else if (name == "abs")
      func = ExprFunc::Abs;
    else if (name == "sqrt")
      func = ExprFunc::Sqrt;
    else if (name == "exp")
      func = ExprFunc::Exp;
    else if (name == "sin")
      func = ExprFunc::Sin;
    else if (name == "cos")
      func = ExprFunc::Cos;
    else
      throw UnknownIdentifier(start, name);

    if (!eat('(')) throw ParseError(pos_, "'(' after function name");
    std::vector<int> args;
    args.push_back(parse_sum());
    while (eat(',')) args.push_back(parse_sum());
    if (!eat(')')) throw ParseError(pos_, "')'");
    if (static_cast<int>(args.size()) != expr_func_arity(func))
      throw ParseError(start, name + " with " +
                                  std::to_string(expr_func_arity(func)) +
                                  " argument(s)");
    return add({ExprNode::Kind::Call, 0, 0, func, args[0],
                args.size() > 1 ? args[1] : -1});
  }

  std::string_view text_;
  int dim_;
  std::size_t pos_ = 0;
  ExprAst* out_ = nullptr;
};

inline void expr_print(const ExprAst& ast, int idx, std::string& out) {
  const ExprNode& node = ast.nodes[idx];
  switch (node.kind) {
    case ExprNode::Kind::Number:
      out += format_double(node.number);
      break;
    case ExprNode::Kind::Var:
      out += "x" + std::to_string(node.var);
      break;
    case ExprNode::Kind::Neg:
      out += "(-";
      expr_print(ast, node.a, out);
      out += ")";
      break;
    case ExprNode::Kind::Call:
      out += expr_func_name(node.func);
      out += "(";
      expr_print(ast, node.a, out);
      if (expr_func_arity(node.func) == 2) {
        out += ",";
        expr_print(ast, node.b, out);
      }
      out += ")";
      break;
    default: {
      char op = '+';
      if (node.kind == ExprNode::Kind::Sub) op = '-';
      if (node.kind == ExprNode::Kind::Mul) op = '*';
      if (node.kind == ExprNode::Kind::Div) op = '/';
      if (node.kind == ExprNode::Kind::Pow) op = '^';
      out += "(";
      expr_print(ast, node.a, out);
      out += op;
      expr_print(ast, node.b, out);
      out += ")";
      break;
    }
  }
}

inline double expr_eval(const ExprAst& ast, int idx, const Vec& point) {
  const ExprNode& node = ast.nodes[idx];
  switch (node.kind) {
    case ExprNode::Kind::Number:
      return node.number;
    case ExprNode::Kind::Var:
      return point[static_cast<std::size_t>(node.var - 1)];
    case ExprNode::Kind::Neg:
      return -expr_eval(ast, node.a, point);
    case ExprNode::Kind::Call: {
      const double a = expr_eval(ast, node.a, point);
      double v = 0.0;
      switch (node.func) {
        case ExprFunc::Min:
          v = std::min(a, expr_eval(ast, node.b, point));
          break;
        case ExprFunc::Max:
          v = std::max(a, expr_eval(ast, node.b, point));
          break;
        case ExprFunc::Abs:
          v = std::fabs(a);
          break;
        case ExprFunc::Sqrt:
          if (a < 0.0) throw MapEvalError("sqrt of negative value");
          v = std::sqrt(a);
          break;
        case ExprFunc::Exp:
          v = std::exp(a);
          break;
        case ExprFunc::Sin:
          v = std::sin(a);
          break;
        case ExprFunc::Cos:
          v = std::cos(a);
          break;
      }
      if (!std::isfinite(v)) throw MapEvalError("non-finite function result");
      return v;
    }
    default: {
      const double a = expr_eval(ast, node.a, point);
      const double b = expr_eval(ast, node.b, point);
      double v = 0.0;
      switch (node.kind) {
        case ExprNode::Kind::Add:
          v = a + b;
          break;
        case ExprNode::Kind::Sub:
          v = a - b;
          break;
        case ExprNode::Kind::Mul:
          v = a * b;
          break;
        case ExprNode::Kind::Div:
          if (b == 0.0) throw MapEvalError("division by zero");
          v = a / b;
          break;
        case ExprNode::Kind::Pow:
          v = std::pow(a, b);
          break;
        default:
          break;
      }
      if (!std::isfinite(v)) throw MapEvalError("non-finite result");
      return v;
    }
  }
}

}  // namespace detail

inline ExprAst parse_expr(const std::string& text, int dimension) {
  if (dimension < 1) throw InvalidInput("expression dimension must be >= 1");
  return detail::ExprParser(text, dimension).parse();
}

// Canonical fully-parenthesized form; parse(to_string(ast)) == ast.
inline std::string to_string(const ExprAst& ast) {
  std::string out;
  detail::expr_print(ast, ast.root, out);
  return out;
}

inline bool operator==(const ExprAst& a, const ExprAst& b) {
  if (a.dimension != b.dimension) return false;
  if (a.empty() || b.empty()) return a.empty() == b.empty();
  return detail::expr_equal(a, a.root, b, b.root);
}

inline double eval_expr(const ExprAst& ast, const Vec& point) {
  if (static_cast<int>(point.size()) != ast.dimension)
    throw InvalidInput("point dimension does not match expression");
  return detail::expr_eval(ast, ast.root, point);
}

// --------------------------------------------------------------------------
// RealMap: one expression per output component, all over x1..xm.
// --------------------------------------------------------------------------

struct RealMap {
  int dimension = 0;
  std::vector<ExprAst> components;

  static RealMap parse(const std::vector<std::string>& exprs, int dimension) {
    if (exprs.empty()) throw InvalidInput("real map needs components");
    if (static_cast<int>(exprs.size()) != dimension)
      throw InvalidInput("component count does not match dimension");
    RealMap m;
    m.dimension = dimension;
    for (const auto& e : exprs) m.components.push_back(parse_expr(e, dimension));
    return m;
  }

  std::vector<std::string> sources() const {
    std::vector<std::string> out;
    for (const auto& c : components) out.push_back(c.source);
    return out;
  }
};

inline Vec eval_map(const RealMap& map, const Vec& point) {
  if (static_cast<int>(point.size()) != map.dimension)
    throw InvalidInput("point dimension does not match map");
  Vec out(map.components.size(), 0.0);
  for (std::size_t c = 0; c < map.components.size(); ++c) {
    try {
      out[c] = eval_expr(map.components[c], point);
    } catch (const MapEvalError& e) {
      throw MapEvalError(std::string(e.what()) + " in component " +
                             std::to_string(c + 1),
                         static_cast<int>(c));
    }
  }
  return out;
}

// --------------------------------------------------------------------------
// Axis-aligned box for sampling-based checks.
// --------------------------------------------------------------------------

struct Box {
  Vec lo, hi;

  std::size_t dim() const { return lo.size(); }

  void check() const {
    if (lo.empty() || lo.size() != hi.size())
      throw InvalidInput("box bounds malformed");
    for (std::size_t i = 0; i < lo.size(); ++i) {
      if (!std::isfinite(lo[i]) || !std::isfinite(hi[i]) || lo[i] > hi[i])
        throw InvalidInput("box bounds malformed");
    }
  }

  Vec sample(CounterRng& rng) const {
    Vec p(dim());
    for (std::size_t i = 0; i < dim(); ++i) p[i] = rng.next_in(lo[i], hi[i]);
    return p;
  }
};

// Sampled lower bound on the Lipschitz constant over the box.
inline double lipschitz_probe(const RealMap& map, const Box& box,
                              std::size_t samples, std::uint64_t seed) {
  box.check();
  if (box.dim() != static_cast<std::size_t>(map.dimension))
    throw InvalidInput("box dimension does not match map");
  if (samples < 2) throw InvalidInput("lipschitz_probe needs samples >= 2");
  CounterRng rng(seed);
  double best = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Vec x = box.sample(rng);
    const Vec y = box.sample(rng);
    const double dxy = vec_dist(x, y);
    if (dxy == 0.0) continue;
    const double dfxy = vec_dist(eval_map(map, x), eval_map(map, y));
    best = std::max(best, dfxy / dxy);
  }
  return best;
}

}  // namespace relfix

#pragma once

#include "ptrop/core.hpp"

#include <cmath>
#include <functional>
#include <memory>
#include <sstream>

namespace ptrop {

// Scalar expression tree over +, -, *, /, exp, log, pow and coordinates
// y0..y{n-1}; parsed from parenthesized prefix notation, e.g.
//   (+ (exp y0) (exp y1))
//   (* 0.5 (+ (pow y0 2) (pow y1 2)))
struct Expr {
  enum Kind { Const, Var, Add, Sub, Mul, Div, Exp, Log, Pow, Neg } kind;
  double value = 0;    // Const
  size_t var = 0;      // Var
  double exponent = 0; // Pow
  std::vector<std::shared_ptr<Expr>> args;

  double eval(const std::vector<double>& y) const {
    switch (kind) {
      case Const: return value;
      case Var: return y.at(var);
      case Add: {
        double s = 0;
        for (const auto& a : args) s += a->eval(y);
        return s;
      }
      case Sub: return args[0]->eval(y) - args[1]->eval(y);
      case Mul: {
        double s = 1;
        for (const auto& a : args) s *= a->eval(y);
        return s;
      }
      case Div: return args[0]->eval(y) / args[1]->eval(y);
      case Exp: return std::exp(args[0]->eval(y));
      case Log: return std::log(args[0]->eval(y));
      case Pow: return std::pow(args[0]->eval(y), exponent);
      case Neg: return -args[0]->eval(y);
    }
    return 0;
  }
};

using ExprPtr = std::shared_ptr<Expr>;

namespace detail {

inline void expr_tokens(const std::string& s, std::vector<std::string>& out) {
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == ')') {
      if (!cur.empty()) out.push_back(cur), cur.clear();
      out.push_back(std::string(1, c));
    } else if (isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(cur), cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
}

inline ExprPtr parse_expr_at(const std::vector<std::string>& t, size_t& i) {
  PTROP_CHECK(i < t.size(), "unexpected end of expression");
  const std::string& tok = t[i];
  if (tok == "(") {
    ++i;
    PTROP_CHECK(i < t.size(), "unexpected end of expression");
    std::string op = t[i++];
    auto node = std::make_shared<Expr>();
    std::vector<ExprPtr> args;
    auto read_args = [&]() {
      while (i < t.size() && t[i] != ")") args.push_back(parse_expr_at(t, i));
      PTROP_CHECK(i < t.size() && t[i] == ")", "missing ')'");
      ++i;
    };
    if (op == "+") node->kind = Expr::Add;
    else if (op == "-") node->kind = Expr::Sub;
    else if (op == "*") node->kind = Expr::Mul;
    else if (op == "/") node->kind = Expr::Div;
    else if (op == "exp") node->kind = Expr::Exp;
    else if (op == "log") node->kind = Expr::Log;
    else if (op == "pow") node->kind = Expr::Pow;
    else throw error("unknown operator: " + op);
    read_args();
    if (node->kind == Expr::Pow) {
      PTROP_CHECK(args.size() == 2 && args[1]->kind == Expr::Const, "pow wants (pow <expr> <number>)");
      node->exponent = args[1]->value;
      args.pop_back();
    }
    if (node->kind == Expr::Sub && args.size() == 1) node->kind = Expr::Neg;
    if (node->kind == Expr::Sub || node->kind == Expr::Div)
      PTROP_CHECK(args.size() == 2, "binary operator arity");
    if (node->kind == Expr::Exp || node->kind == Expr::Log || node->kind == Expr::Neg ||
        node->kind == Expr::Pow)
      PTROP_CHECK(args.size() == 1, "unary operator arity");
    node->args = std::move(args);
    return node;
  }
  ++i;
  if (tok.size() > 1 && tok[0] == 'y' && isdigit(static_cast<unsigned char>(tok[1]))) {
    auto node = std::make_shared<Expr>();
    node->kind = Expr::Var;
    node->var = std::stoul(tok.substr(1));
    return node;
  }
  auto node = std::make_shared<Expr>();
  node->kind = Expr::Const;
  try {
    size_t used = 0;
    node->value = std::stod(tok, &used);
    PTROP_CHECK(used == tok.size(), "bad number: " + tok);
  } catch (const std::invalid_argument&) {
    throw error("bad token in expression: " + tok);
  }
  return node;
}

}  // namespace detail

inline ExprPtr parse_expr(const std::string& s) {
  std::vector<std::string> t;
  detail::expr_tokens(s, t);
  size_t i = 0;
  ExprPtr e = detail::parse_expr_at(t, i);
  PTROP_CHECK(i == t.size(), "trailing tokens in expression");
  return e;
}

}  // namespace ptrop

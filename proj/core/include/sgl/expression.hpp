#pragma once

// Arithmetic expressions in the parameters u1..um, compiled to a small stack
// program and evaluated on doubles or nested duals, and the declarative
// immersion config built on them.
//
// Grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' unary)?          exponent must be constant
//   primary := number | name | func '(' expr ')' | '(' expr ')'
//   func    := sin | cos | sinh | cosh | exp
//   name    := u<k> (1-based) | pi | a declared constant
// '×', '÷' and '−' are accepted for '*', '/' and '-'.

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "sgl/catalog.hpp"
#include "sgl/errors.hpp"

namespace sgl {

/// Malformed expression or config; carries a line and column when known.
class ParseError : public UsageError {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class Expression {
 public:
  enum class Op { constant, param, add, sub, mul, div, neg, pow, sin, cos, sinh, cosh, exp };
  struct Instr {
    Op op;
    double value = 0.0;  // constant value or exponent
    int index = 0;       // parameter index (0-based)
  };

  Expression() = default;

  /// Parses `text` over `params` parameters. Names in `constants` resolve to
  /// their values. Throws ParseError with the 1-based column.
  static Expression parse(const std::string& text, int params,
                          const std::map<std::string, double>& constants = {});

  const std::string& text() const { return text_; }
  int params() const { return params_; }
  bool is_constant() const;
  const std::vector<Instr>& program() const { return prog_; }

  template <class T>
  T eval(const Vec<T>& u) const;

  double operator()(const VecX& u) const { return eval<double>(u); }

 private:
  std::string text_;
  int params_ = 0;
  std::vector<Instr> prog_;
};

template <class T>
T Expression::eval(const Vec<T>& u) const {
  using std::sin, std::cos, std::sinh, std::cosh, std::exp, std::pow;
  if (u.size() != params_) throw StructuralError("Expression: parameter count mismatch");
  std::vector<T> st;
  st.reserve(prog_.size());
  auto pop = [&st] {
    T v = st.back();
    st.pop_back();
    return v;
  };
  for (const Instr& in : prog_) {
    switch (in.op) {
      case Op::constant: st.push_back(T(in.value)); break;
      case Op::param: st.push_back(u(in.index)); break;
      case Op::neg: st.back() = -st.back(); break;
      case Op::sin: st.back() = sin(st.back()); break;
      case Op::cos: st.back() = cos(st.back()); break;
      case Op::sinh: st.back() = sinh(st.back()); break;
      case Op::cosh: st.back() = cosh(st.back()); break;
      case Op::exp: st.back() = exp(st.back()); break;
      case Op::pow: {
        const double p = in.value;
        const T a = st.back();
        if (p == std::floor(p) && std::abs(p) <= 64) {
          T r(1.0);
          for (int k = 0; k < static_cast<int>(std::abs(p)); ++k) r = r * a;
          st.back() = p < 0 ? T(1.0) / r : r;
        } else {
          st.back() = pow(a, p);
        }
        break;
      }
      default: {
        const T b = pop();
        T& a = st.back();
        if (in.op == Op::add) a = a + b;
        else if (in.op == Op::sub) a = a - b;
        else if (in.op == Op::mul) a = a * b;
        else a = a / b;
      }
    }
  }
  return st.back();
}

/// Parsed immersion config:
///   name <id>                       optional
///   ambient <n> <q> <lambda>
///   params <m>
///   box <lo> <hi>                   optional, default -1 1
///   const <name> = <expr>           optional, constant expressions
///   tol <check_id> <value>          optional per-check tolerance
///   component_<k> = <expr>          k = 1..2n+1, all required
/// '#' starts a comment.
struct ImmersionConfig {
  std::string name = "config";
  int n = 0;
  int q = 0;
  double lambda = 0.3;
  int m = 0;
  double box_lo = -1.0;
  double box_hi = 1.0;
  std::map<std::string, double> constants;
  std::map<std::string, double> tol_overrides;
  std::vector<Expression> components;
};

ImmersionConfig parse_config(const std::string& text);

/// Reads and parses a config file. Throws IoError when it cannot be read.
ImmersionConfig load_config(const std::string& path);

/// Catalog entry from a config; no expectations are asserted.
CatalogEntry build_config_entry(const ImmersionConfig& cfg);

}  // namespace sgl

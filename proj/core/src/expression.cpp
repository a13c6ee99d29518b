#include "sgl/expression.hpp"

#include <cctype>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace sgl {

ParseError::ParseError(const std::string& what, int line, int column)
    : UsageError(what), line_(line), column_(column) {}

namespace {

/// Replaces the accepted Unicode operators by their ASCII forms and records,
/// for each output byte, the 1-based column in the original text.
std::string normalize(const std::string& in, std::vector<int>& column) {
  static const std::pair<std::string, char> subs[] = {{"×", '*'}, {"÷", '/'}, {"−", '-'}};
  std::string out;
  int col = 1;
  for (std::size_t i = 0; i < in.size();) {
    bool hit = false;
    for (const auto& [from, to] : subs)
      if (in.compare(i, from.size(), from) == 0) {
        out += to;
        column.push_back(col);
        i += from.size();
        hit = true;
        break;
      }
    if (!hit) {
      out += in[i];
      column.push_back(col);
      ++i;
    }
    ++col;
  }
  column.push_back(col);
  return out;
}

class Parser {
 public:
  using Op = Expression::Op;

  Parser(const std::string& text, int params, const std::map<std::string, double>& constants)
      : s_(normalize(text, col_)), params_(params), constants_(constants) {}

  std::vector<Expression::Instr> run() {
    skip();
    if (pos_ == s_.size()) fail("empty expression");
    expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return std::move(prog_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    const int c = col_[std::min(pos_, col_.size() - 1)];
    throw ParseError(msg + " at column " + std::to_string(c), 0, c);
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
  void emit(Op op, double v = 0.0, int idx = 0) { prog_.push_back({op, v, idx}); }

  void expr() {
    term();
    for (;;) {
      if (eat('+')) { term(); emit(Op::add); }
      else if (eat('-')) { term(); emit(Op::sub); }
      else return;
    }
  }
  void term() {
    unary();
    for (;;) {
      if (eat('*')) { unary(); emit(Op::mul); }
      else if (eat('/')) { unary(); emit(Op::div); }
      else return;
    }
  }
  void unary() {
    if (eat('-')) { unary(); emit(Op::neg); return; }
    if (eat('+')) { unary(); return; }
    power();
  }
  void power() {
    primary();
    if (!eat('^')) return;
    skip();
    const std::size_t start = prog_.size(), at = pos_;
    unary();
    std::vector<Expression::Instr> ex(prog_.begin() + static_cast<long>(start), prog_.end());
    prog_.resize(start);
    for (const auto& in : ex)
      if (in.op == Op::param) {
        pos_ = at;
        fail("exponent must not depend on parameters");
      }
    const double p = constant_value(ex);
    emit(Op::pow, p);
  }
  static double constant_value(const std::vector<Expression::Instr>& ex) {
    std::vector<double> st;
    for (const auto& in : ex) {
      auto top = [&st] { return st.back(); };
      switch (in.op) {
        case Op::constant: st.push_back(in.value); break;
        case Op::neg: st.back() = -top(); break;
        case Op::sin: st.back() = std::sin(top()); break;
        case Op::cos: st.back() = std::cos(top()); break;
        case Op::sinh: st.back() = std::sinh(top()); break;
        case Op::cosh: st.back() = std::cosh(top()); break;
        case Op::exp: st.back() = std::exp(top()); break;
        case Op::pow: st.back() = std::pow(top(), in.value); break;
        default: {
          const double b = st.back();
          st.pop_back();
          double& a = st.back();
          if (in.op == Op::add) a += b;
          else if (in.op == Op::sub) a -= b;
          else if (in.op == Op::mul) a *= b;
          else a /= b;
        }
      }
    }
    return st.back();
  }
  void primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (eat('(')) {
      expr();
      if (!eat(')')) fail("expected ')'");
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      emit(Op::constant, v);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      static const std::map<std::string, Op> funcs = {
          {"sin", Op::sin}, {"cos", Op::cos}, {"sinh", Op::sinh}, {"cosh", Op::cosh}, {"exp", Op::exp}};
      if (auto f = funcs.find(name); f != funcs.end()) {
        if (!eat('(')) fail("expected '(' after " + name);
        expr();
        if (!eat(')')) fail("expected ')'");
        emit(f->second);
        return;
      }
      if (name == "pi") {
        emit(Op::constant, std::numbers::pi);
        return;
      }
      if (auto k = constants_.find(name); k != constants_.end()) {
        emit(Op::constant, k->second);
        return;
      }
      if (name.size() > 1 && name[0] == 'u' &&
          name.find_first_not_of("0123456789", 1) == std::string::npos) {
        const int idx = std::stoi(name.substr(1));
        if (idx < 1 || idx > params_) {
          pos_ = start;
          fail("parameter " + name + " out of range u1..u" + std::to_string(params_));
        }
        emit(Op::param, 0.0, idx - 1);
        return;
      }
      pos_ = start;
      fail("unknown name '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::vector<int> col_;  // declared first: normalize() fills it while s_ is built
  std::string s_;
  std::size_t pos_ = 0;
  int params_;
  const std::map<std::string, double>& constants_;
  std::vector<Expression::Instr> prog_;
};

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Expression Expression::parse(const std::string& text, int params,
                             const std::map<std::string, double>& constants) {
  if (params < 0) throw UsageError("Expression::parse: negative parameter count");
  Expression e;
  e.text_ = text;
  e.params_ = params;
  e.prog_ = Parser(text, params, constants).run();
  return e;
}

bool Expression::is_constant() const {
  for (const auto& in : prog_)
    if (in.op == Op::param) return false;
  return true;
}

ImmersionConfig parse_config(const std::string& text) {
  ImmersionConfig cfg;
  std::map<int, std::pair<std::string, int>> comps;  // k -> (expression text, line)
  bool have_ambient = false, have_params = false;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  auto fail = [&line](const std::string& msg) -> void {
    const std::string where = line > 0 ? "config line " + std::to_string(line) + ": " : "config: ";
    throw ParseError(where + msg, line, 0);
  };
  // Constants are resolved in order, so they are parsed immediately; component
  // expressions wait until `params` is known.
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw.substr(0, raw.find('#'));
    s = trim(s);
    if (s.empty()) continue;
    std::istringstream ls(s);
    std::string key;
    ls >> key;
    if (key == "name") {
      ls >> cfg.name;
      if (cfg.name.empty()) fail("missing name");
    } else if (key == "ambient") {
      if (!(ls >> cfg.n >> cfg.q >> cfg.lambda)) fail("expected 'ambient n q lambda'");
      if (cfg.n < 1 || cfg.q < 0 || 2 * cfg.q >= 2 * cfg.n + 1) fail("need n >= 1 and 0 <= 2q < 2n+1");
      have_ambient = true;
    } else if (key == "params") {
      if (!(ls >> cfg.m) || cfg.m < 1) fail("expected 'params m' with m >= 1");
      have_params = true;
    } else if (key == "box") {
      if (!(ls >> cfg.box_lo >> cfg.box_hi) || !(cfg.box_lo < cfg.box_hi))
        fail("expected 'box lo hi' with lo < hi");
    } else if (key == "tol") {
      std::string id;
      double v = 0.0;
      if (!(ls >> id >> v) || !(v > 0.0)) fail("expected 'tol check_id value' with value > 0");
      cfg.tol_overrides[id] = v;
    } else if (key == "const") {
      const auto eq = s.find('=');
      if (eq == std::string::npos) fail("expected 'const name = expr'");
      const std::string name = trim(s.substr(5, eq - 5));
      if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) fail("bad constant name");
      try {
        const Expression e = Expression::parse(trim(s.substr(eq + 1)), 0, cfg.constants);
        cfg.constants[name] = e(VecX(0));
      } catch (const ParseError& err) {
        fail(err.what());
      }
    } else if (key.rfind("component_", 0) == 0) {
      const auto eq = s.find('=');
      const std::string idx = trim(s.substr(10, (eq == std::string::npos ? s.size() : eq) - 10));
      if (eq == std::string::npos || idx.empty() ||
          idx.find_first_not_of("0123456789") != std::string::npos)
        fail("expected 'component_k = expr'");
      const int k = std::stoi(idx);
      if (comps.count(k)) fail("component_" + idx + " given twice");
      comps[k] = {trim(s.substr(eq + 1)), line};
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  line = 0;
  if (!have_ambient) fail("missing 'ambient n q lambda'");
  if (!have_params) fail("missing 'params m'");
  const int d = 2 * cfg.n + 1;
  for (const auto& [k, v] : comps) {
    line = v.second;
    if (k < 1 || k > d) fail("component index out of range 1.." + std::to_string(d));
  }
  for (int k = 1; k <= d; ++k) {
    line = 0;
    auto it = comps.find(k);
    if (it == comps.end()) fail("missing component_" + std::to_string(k));
    line = it->second.second;
    try {
      cfg.components.push_back(Expression::parse(it->second.first, cfg.m, cfg.constants));
    } catch (const ParseError& err) {
      fail(err.what());
    }
  }
  return cfg;
}

ImmersionConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

CatalogEntry build_config_entry(const ImmersionConfig& cfg) {
  CatalogEntry e;
  e.name = cfg.name;
  e.description = "config immersion into R^" + std::to_string(2 * cfg.n + 1);
  e.ambient = build_ambient(cfg.n, cfg.q, cfg.lambda);
  e.immersion.name = cfg.name;
  e.immersion.box = Box{VecX::Constant(cfg.m, cfg.box_lo), VecX::Constant(cfg.m, cfg.box_hi)};
  const auto comps = cfg.components;
  const int d = static_cast<int>(comps.size());
  e.immersion.map = SmoothMap(cfg.m, d, [comps, d](const auto& u) {
    using T = typename std::decay_t<decltype(u)>::Scalar;
    const Vec<T> uu = u;
    Vec<T> x(d);
    for (int k = 0; k < d; ++k) x(k) = comps[k].template eval<T>(uu);
    return x;
  });
  return e;
}

}  // namespace sgl

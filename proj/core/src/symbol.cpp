#include "radspec/symbol.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <system_error>

#include "radspec/errors.hpp"

namespace radspec {

namespace expr {

ExprPtr number(double v) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Number;
  n->value = v;
  return n;
}

ExprPtr var() {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Var;
  return n;
}

ExprPtr binary(Op op, ExprPtr l, ExprPtr r) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}

ExprPtr unary(Op op, ExprPtr child) {
  auto n = std::make_shared<ExprNode>();
  n->op = op;
  n->left = std::move(child);
  return n;
}

ExprPtr power(ExprPtr base, double exponent) {
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Pow;
  n->value = exponent;
  n->left = std::move(base);
  return n;
}

ExprPtr chi(double lo, double hi) {
  if (!(lo >= 0.0) || !(lo < hi)) throw DomainError("chi(a,b) requires 0 <= a < b");
  auto n = std::make_shared<ExprNode>();
  n->op = Op::Chi;
  n->lo = lo;
  n->hi = hi;
  return n;
}

}  // namespace expr

// ---------------------------------------------------------------------------
// Parser

namespace {

bool is_ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  ExprPtr parse() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("empty symbol", pos_);
    ExprPtr e = parse_expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected character '") + s_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= s_.size()) throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = expr::binary(Op::Add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = expr::binary(Op::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = expr::binary(Op::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = expr::binary(Op::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_unary() {
    if (accept('-')) return expr::unary(Op::Neg, parse_unary());
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_atom();
    if (accept('^')) return expr::power(base, parse_signed_number());
    return base;
  }

  double parse_signed_number() {
    skip_ws();
    bool negative = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      negative = s_[pos_] == '-';
      ++pos_;
    }
    const double v = parse_number();
    return negative ? -v : v;
  }

  double parse_number() {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t p = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (p < s_.size() && s_[p] >= '0' && s_[p] <= '9') {
        ++p;
        ++n;
      }
      return n;
    };
    std::size_t n = digits();
    if (p < s_.size() && s_[p] == '.') {
      ++p;
      n += digits();
    }
    if (n == 0) throw ParseError("expected a number", start);
    if (p < s_.size() && (s_[p] == 'e' || s_[p] == 'E')) {
      std::size_t q = p + 1;
      if (q < s_.size() && (s_[q] == '+' || s_[q] == '-')) ++q;
      if (q < s_.size() && s_[q] >= '0' && s_[q] <= '9') {
        p = q;
        digits();
      }
    }
    double v = 0.0;
    const auto res = std::from_chars(s_.data() + start, s_.data() + p, v);
    if (res.ec != std::errc() || res.ptr != s_.data() + p) throw ParseError("malformed number", start);
    if (!std::isfinite(v)) throw ParseError("number out of range", start);
    pos_ = p;
    return v;
  }

  ExprPtr parse_atom() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = parse_expr();
      expect(')');
      return e;
    }
    if ((c >= '0' && c <= '9') || c == '.') return expr::number(parse_number());
    if (is_ident_char(c)) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && is_ident_char(s_[pos_])) ++pos_;
      const std::string_view id = s_.substr(start, pos_ - start);
      if (id == "r") return expr::var();
      if (id == "chi") {
        expect('(');
        skip_ws();
        const std::size_t arg_pos = pos_;
        const double a = parse_signed_number();
        expect(',');
        const double b = parse_signed_number();
        expect(')');
        if (!(a >= 0.0) || !(a < b)) throw ParseError("chi(a,b) requires 0 <= a < b", arg_pos);
        return expr::chi(a, b);
      }
      Op op;
      if (id == "exp") {
        op = Op::Exp;
      } else if (id == "sin") {
        op = Op::Sin;
      } else if (id == "cos") {
        op = Op::Cos;
      } else if (id == "abs") {
        op = Op::Abs;
      } else if (id == "pos") {
        op = Op::PositivePart;
      } else if (id == "neg") {
        op = Op::NegativePart;
      } else {
        throw ParseError("unknown identifier '" + std::string(id) + "'", start);
      }
      expect('(');
      ExprPtr arg = parse_expr();
      expect(')');
      return expr::unary(op, arg);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printer

int precedence(const ExprNode& n) {
  switch (n.op) {
    case Op::Add:
    case Op::Sub:
      return 1;
    case Op::Mul:
    case Op::Div:
      return 2;
    case Op::Neg:
      return 3;
    case Op::Pow:
      return 4;
    case Op::Number:
      return n.value < 0 || std::signbit(n.value) ? 0 : 5;
    default:
      return 5;
  }
}

void append_number(std::string& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

void print(const ExprNode& n, int min_prec, std::string& out) {
  const bool paren = precedence(n) < min_prec;
  if (paren) out += '(';
  switch (n.op) {
    case Op::Number:
      append_number(out, n.value);
      break;
    case Op::Var:
      out += 'r';
      break;
    case Op::Add:
    case Op::Sub:
      print(*n.left, 1, out);
      out += n.op == Op::Add ? '+' : '-';
      print(*n.right, 2, out);
      break;
    case Op::Mul:
    case Op::Div:
      print(*n.left, 2, out);
      out += n.op == Op::Mul ? '*' : '/';
      print(*n.right, 3, out);
      break;
    case Op::Neg:
      out += '-';
      print(*n.left, 3, out);
      break;
    case Op::Pow:
      print(*n.left, 5, out);
      out += '^';
      append_number(out, n.value);
      break;
    case Op::Chi:
      out += "chi(";
      append_number(out, n.lo);
      out += ',';
      append_number(out, n.hi);
      out += ')';
      break;
    case Op::Exp:
    case Op::Sin:
    case Op::Cos:
    case Op::Abs:
    case Op::PositivePart:
    case Op::NegativePart: {
      static constexpr const char* kNames[] = {"exp", "sin", "cos", "abs", "pos", "neg"};
      const int idx = n.op == Op::Exp ? 0
                      : n.op == Op::Sin ? 1
                      : n.op == Op::Cos ? 2
                      : n.op == Op::Abs ? 3
                      : n.op == Op::PositivePart ? 4
                                                  : 5;
      out += kNames[idx];
      out += '(';
      print(*n.left, 0, out);
      out += ')';
      break;
    }
  }
  if (paren) out += ')';
}

// ---------------------------------------------------------------------------
// Evaluation kernels shared by the compiled program.

inline double pow_linear(double x, double p) {
  if (x < 0 && std::floor(p) != p) return std::numeric_limits<double>::quiet_NaN();
  return std::pow(x, p);
}

inline LogReal pow_log(const LogReal& x, double p) {
  if (x.is_zero()) {
    if (p > 0) return LogReal::zero();
    if (p == 0) return LogReal::one();
    return LogReal::from_log(1, std::numeric_limits<double>::infinity());
  }
  if (x.sign() < 0 && std::floor(p) != p) return LogReal::zero();
  return x.pow(p);
}

inline LogReal div_log(const LogReal& a, const LogReal& b) {
  if (b.is_zero()) return LogReal::from_log(a.sign() == 0 ? 1 : a.sign(), std::numeric_limits<double>::infinity());
  return a / b;
}

}  // namespace

RadialSymbol parse_symbol(std::string_view text) { return RadialSymbol(Parser(text).parse()); }

std::string to_text(const ExprPtr& e) {
  std::string out;
  print(*e, 0, out);
  return out;
}

RadialSymbol::RadialSymbol() : RadialSymbol(expr::number(0.0)) {}

RadialSymbol::RadialSymbol(ExprPtr root) : root_(std::move(root)) {
  if (!root_) throw DomainError("RadialSymbol: null expression");
  text_ = to_text(root_);

  std::size_t depth = 0;
  auto emit = [&](auto&& self, const ExprNode& n) -> void {
    switch (n.op) {
      case Op::Number:
        program_.push_back({n.op, n.value, 0.0});
        ++depth;
        break;
      case Op::Var:
        program_.push_back({n.op, 0.0, 0.0});
        ++depth;
        break;
      case Op::Chi:
        program_.push_back({n.op, n.lo, n.hi});
        breakpoints_.push_back(n.lo);
        breakpoints_.push_back(n.hi);
        ++depth;
        break;
      case Op::Add:
      case Op::Sub:
      case Op::Mul:
      case Op::Div:
        self(self, *n.left);
        self(self, *n.right);
        program_.push_back({n.op, 0.0, 0.0});
        --depth;
        break;
      case Op::Pow:
        self(self, *n.left);
        program_.push_back({n.op, n.value, 0.0});
        break;
      case Op::PositivePart:
      case Op::NegativePart:
      case Op::Abs:
        has_clamps_ = true;
        [[fallthrough]];
      default:
        self(self, *n.left);
        program_.push_back({n.op, 0.0, 0.0});
        break;
    }
    stack_depth_ = std::max(stack_depth_, depth);
  };
  emit(emit, *root_);

  std::sort(breakpoints_.begin(), breakpoints_.end());
  breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()), breakpoints_.end());
}

double RadialSymbol::operator()(double r) const noexcept {
  constexpr std::size_t kInline = 32;
  double inline_stack[kInline] = {};
  std::vector<double> heap;
  double* st = inline_stack;
  if (stack_depth_ > kInline) {
    heap.resize(stack_depth_);
    st = heap.data();
  }
  std::size_t sp = 0;
  for (const Instr& in : program_) {
    switch (in.op) {
      case Op::Number:
        st[sp++] = in.a;
        break;
      case Op::Var:
        st[sp++] = r;
        break;
      case Op::Chi:
        st[sp++] = (r >= in.a && r <= in.b) ? 1.0 : 0.0;
        break;
      case Op::Add:
        --sp;
        st[sp - 1] += st[sp];
        break;
      case Op::Sub:
        --sp;
        st[sp - 1] -= st[sp];
        break;
      case Op::Mul:
        --sp;
        st[sp - 1] *= st[sp];
        break;
      case Op::Div:
        --sp;
        st[sp - 1] /= st[sp];
        break;
      case Op::Pow:
        st[sp - 1] = pow_linear(st[sp - 1], in.a);
        break;
      case Op::Neg:
        st[sp - 1] = -st[sp - 1];
        break;
      case Op::Exp:
        st[sp - 1] = std::exp(st[sp - 1]);
        break;
      case Op::Sin:
        st[sp - 1] = std::sin(st[sp - 1]);
        break;
      case Op::Cos:
        st[sp - 1] = std::cos(st[sp - 1]);
        break;
      case Op::PositivePart:
        st[sp - 1] = st[sp - 1] > 0 ? st[sp - 1] : 0.0;
        break;
      case Op::NegativePart:
        st[sp - 1] = st[sp - 1] < 0 ? -st[sp - 1] : 0.0;
        break;
      case Op::Abs:
        st[sp - 1] = std::fabs(st[sp - 1]);
        break;
    }
  }
  return st[0];
}

LogReal RadialSymbol::evaluate_log(double r) const noexcept {
  constexpr std::size_t kInline = 32;
  LogReal inline_stack[kInline];
  std::vector<LogReal> heap;
  LogReal* st = inline_stack;
  if (stack_depth_ > kInline) {
    heap.resize(stack_depth_);
    st = heap.data();
  }
  std::size_t sp = 0;
  for (const Instr& in : program_) {
    switch (in.op) {
      case Op::Number:
        st[sp++] = LogReal(in.a);
        break;
      case Op::Var:
        st[sp++] = LogReal(r);
        break;
      case Op::Chi:
        st[sp++] = (r >= in.a && r <= in.b) ? LogReal::one() : LogReal::zero();
        break;
      case Op::Add:
        --sp;
        st[sp - 1] += st[sp];
        break;
      case Op::Sub:
        --sp;
        st[sp - 1] -= st[sp];
        break;
      case Op::Mul:
        --sp;
        st[sp - 1] *= st[sp];
        break;
      case Op::Div:
        --sp;
        st[sp - 1] = div_log(st[sp - 1], st[sp]);
        break;
      case Op::Pow:
        st[sp - 1] = pow_log(st[sp - 1], in.a);
        break;
      case Op::Neg:
        st[sp - 1] = -st[sp - 1];
        break;
      case Op::Exp:
        st[sp - 1] = LogReal::exp(st[sp - 1].to_double());
        break;
      case Op::Sin:
        st[sp - 1] = LogReal(std::sin(st[sp - 1].to_double()));
        break;
      case Op::Cos:
        st[sp - 1] = LogReal(std::cos(st[sp - 1].to_double()));
        break;
      case Op::PositivePart:
        if (st[sp - 1].sign() < 0) st[sp - 1] = LogReal::zero();
        break;
      case Op::NegativePart:
        st[sp - 1] = st[sp - 1].sign() < 0 ? -st[sp - 1] : LogReal::zero();
        break;
      case Op::Abs:
        st[sp - 1] = st[sp - 1].abs();
        break;
    }
  }
  return st[0];
}

RadialSymbol constant_symbol(double c) {
  if (c < 0) return RadialSymbol(expr::unary(Op::Neg, expr::number(-c)));
  return RadialSymbol(expr::number(c));
}

RadialSymbol scaled(const RadialSymbol& v, double c) {
  ExprPtr factor = c < 0 ? expr::unary(Op::Neg, expr::number(-c)) : expr::number(c);
  return RadialSymbol(expr::binary(Op::Mul, factor, v.root()));
}

RadialSymbol sum(const RadialSymbol& a, const RadialSymbol& b) {
  return RadialSymbol(expr::binary(Op::Add, a.root(), b.root()));
}

RadialSymbol difference(const RadialSymbol& a, const RadialSymbol& b) {
  return RadialSymbol(expr::binary(Op::Sub, a.root(), b.root()));
}

SignDecomposition decompose_signs(const RadialSymbol& v) {
  return {RadialSymbol(expr::unary(Op::PositivePart, v.root())),
          RadialSymbol(expr::unary(Op::NegativePart, v.root())),
          RadialSymbol(expr::unary(Op::Abs, v.root()))};
}

DecayClass DecayClass::stretched(double p) {
  if (!(p > 0)) throw DomainError("StretchedExp requires p > 0");
  return {Tag::StretchedExp, p};
}

std::string to_string(DecayClass::Tag tag) {
  switch (tag) {
    case DecayClass::Tag::CompactSupport:
      return "CompactSupport";
    case DecayClass::Tag::RapidDecay:
      return "RapidDecay";
    case DecayClass::Tag::StretchedExp:
      return "StretchedExp";
    case DecayClass::Tag::Unknown:
      break;
  }
  return "Unknown";
}

}  // namespace radspec

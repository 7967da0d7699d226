#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "radspec/logreal.hpp"

namespace radspec {

/// Node kinds of the radial-symbol expression tree.
enum class Op : std::uint8_t {
  Number,
  Var,
  Add,
  Sub,
  Mul,
  Div,
  Pow,           // left ^ value
  Neg,
  Exp,
  Sin,
  Cos,
  Chi,           // indicator of the closed interval [lo, hi]
  PositivePart,  // max(child, 0)
  NegativePart,  // max(-child, 0)
  Abs,
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  Op op = Op::Number;
  double value = 0.0;  // literal for Number, exponent for Pow
  double lo = 0.0;     // Chi interval
  double hi = 0.0;
  ExprPtr left;
  ExprPtr right;
};

namespace expr {
ExprPtr number(double v);
ExprPtr var();
ExprPtr binary(Op op, ExprPtr l, ExprPtr r);
ExprPtr unary(Op op, ExprPtr child);
ExprPtr power(ExprPtr base, double exponent);
ExprPtr chi(double lo, double hi);
}  // namespace expr

/// A bounded radial function V(r), r >= 0, given by an immutable expression tree.
///
/// Construction compiles the tree into a postfix program so repeated
/// evaluation inside quadrature loops does not chase pointers. Values are
/// safe to share between threads.
class RadialSymbol {
 public:
  /// Identically zero symbol.
  RadialSymbol();
  explicit RadialSymbol(ExprPtr root);

  /// V(r). Total on r >= 0 for bounded symbols; deterministic.
  double operator()(double r) const noexcept;
  /// V(r) in log scale; factors such as exp(-r^8) do not underflow.
  LogReal evaluate_log(double r) const noexcept;

  const std::string& text() const noexcept { return text_; }
  const ExprPtr& root() const noexcept { return root_; }

  /// Sorted, deduplicated endpoints of every indicator piece.
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }

  /// Points in (lo, hi) where the symbol is continuous but not smooth:
  /// zeros of the argument of every |.|, max(.,0) wrapper.
  std::vector<double> kinks(double lo, double hi) const;

  bool has_kinks() const noexcept { return has_clamps_; }

 private:
  struct Instr {
    Op op;
    double a;
    double b;
  };

  ExprPtr root_;
  std::string text_;
  std::vector<Instr> program_;
  std::vector<double> breakpoints_;
  std::size_t stack_depth_ = 0;
  bool has_clamps_ = false;
};

/// Parses the symbol language:
///
///   expr   := term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*
///   unary  := ('-'|'+') unary | power
///   power  := atom ('^' signed-number)?
///   atom   := number | 'r' | func '(' expr ')' | 'chi' '(' number ',' number ')' | '(' expr ')'
///   func   := exp | sin | cos | abs | pos | neg
///
/// `pos` and `neg` are the positive and negative parts max(x,0) and max(-x,0).
/// Throws ParseError with the byte offset of the offending token.
RadialSymbol parse_symbol(std::string_view text);

/// Canonical text of a tree; parse_symbol(to_text(e)) rebuilds an identical tree.
std::string to_text(const ExprPtr& e);

inline double evaluate(const RadialSymbol& v, double r) { return v(r); }

RadialSymbol constant_symbol(double c);
RadialSymbol scaled(const RadialSymbol& v, double c);
RadialSymbol sum(const RadialSymbol& a, const RadialSymbol& b);
RadialSymbol difference(const RadialSymbol& a, const RadialSymbol& b);

struct SignDecomposition {
  RadialSymbol plus;   // max(V, 0)
  RadialSymbol minus;  // max(-V, 0)
  RadialSymbol abs;    // |V|
};

SignDecomposition decompose_signs(const RadialSymbol& v);

/// Exact support radius: the smallest b with V = 0 on (b, inf) and |V| carrying mass up to b.
struct SupportRadius {
  enum class Kind { Finite, Infinite, Unknown };
  Kind kind = Kind::Unknown;
  double value = 0.0;

  bool finite() const noexcept { return kind == Kind::Finite; }
};

SupportRadius exact_support_radius(const RadialSymbol& v);

/// Tail behaviour of a symbol at infinity.
struct DecayClass {
  enum class Tag { CompactSupport, RapidDecay, StretchedExp, Unknown };
  Tag tag = Tag::Unknown;
  /// Exact support radius for CompactSupport, exponent p of exp(-c r^{2p}) for StretchedExp.
  double parameter = 0.0;

  static DecayClass compact(double b) { return {Tag::CompactSupport, b}; }
  static DecayClass rapid() { return {Tag::RapidDecay, 0.0}; }
  static DecayClass stretched(double p);
  static DecayClass unknown() { return {}; }
};

DecayClass classify_decay(const RadialSymbol& v);

std::string to_string(DecayClass::Tag tag);

/// Largest |V| over `samples` equispaced points of [lo, hi] plus every breakpoint neighbourhood.
/// Boundedness is assumed throughout the library; this is the documented sampling check.
double sampled_sup_abs(const RadialSymbol& v, double lo, double hi, int samples = 4096);

}  // namespace radspec

#pragma once

#include <complex>
#include <memory>
#include <string>

#include "forge/errors.hpp"

namespace forge {

using cplx = std::complex<double>;

// Closed-form holomorphic expression on a punctured (possibly slit) disk.
// Node set: constant, z, sum, product, negation, reciprocal, integer power,
// real power z^mu (principal branch), exp, principal log.
// Immutable; share freely across threads.
class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class NodeKind {
    Constant,
    Var,       // the coordinate z
    Add,
    Mul,
    Neg,
    Recip,
    IntPow,    // base^k, k integer (may be negative)
    RealPow,   // principal base^mu, mu real non-integer allowed
    Exp,
    Log,       // principal branch
};

class Expr {
public:
    NodeKind kind;
    cplx value{};        // Constant
    ExprPtr a, b;        // children (b used by Add/Mul)
    int ipow = 0;        // IntPow exponent
    double rpow = 0.0;   // RealPow exponent

    explicit Expr(NodeKind k) : kind(k) {}
};

// Node factories (with constant folding and unit/zero simplification).
ExprPtr constant(cplx c);
ExprPtr var_z();
ExprPtr add(ExprPtr a, ExprPtr b);
ExprPtr sub(ExprPtr a, ExprPtr b);
ExprPtr mul(ExprPtr a, ExprPtr b);
ExprPtr neg(ExprPtr a);
ExprPtr recip(ExprPtr a);
ExprPtr div(ExprPtr a, ExprPtr b);
ExprPtr ipow(ExprPtr a, int k);
ExprPtr rpow(ExprPtr a, double mu);
ExprPtr expe(ExprPtr a);
ExprPtr loge(ExprPtr a);

// Evaluate at z. Throws DomainError at z = 0 for puncture-sensitive
// expressions, at poles and at log(0).
cplx eval(const ExprPtr& e, cplx z);

// Symbolic complex derivative. Total: every node kind is closed under d/dz.
ExprPtr differentiate(const ExprPtr& e);

// True when the expression evaluates to the same constant everywhere.
bool is_constant(const ExprPtr& e, cplx* out = nullptr);

// Syntactic probes used by the contour machinery.
bool contains_log(const ExprPtr& e);
bool contains_fractional_pow(const ExprPtr& e);
bool mentions_z(const ExprPtr& e);

// Infix rendering; parse(to_string(e)) reproduces the expression's values.
std::string to_string(const ExprPtr& e);

// Parse the infix grammar: literals `z`, `i`, decimal numbers (suffix `i`
// for imaginary), functions exp(...), log(...), pow(e, mu), operators
// + - * / and ^ with an integer exponent. Throws ConfigError carrying the
// 1-based column of the offending token.
ExprPtr parse_expr(const std::string& text);

}  // namespace forge

#include "forge/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <vector>

namespace forge {

namespace {

std::shared_ptr<Expr> make(NodeKind k) { return std::make_shared<Expr>(k); }

bool is_const(const ExprPtr& e) { return e->kind == NodeKind::Constant; }
bool is_const_val(const ExprPtr& e, cplx v) {
    return is_const(e) && e->value == v;
}

bool near_integer(double x, long long* k) {
    double r = std::round(x);
    if (std::abs(x - r) < 1e-12 && std::abs(r) < 1e9) {
        *k = static_cast<long long>(r);
        return true;
    }
    return false;
}

cplx int_pow(cplx w, long long k) {
    if (k < 0) return 1.0 / int_pow(w, -k);
    cplx acc{1.0, 0.0};
    cplx base = w;
    while (k > 0) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

}  // namespace

ExprPtr constant(cplx c) {
    auto e = make(NodeKind::Constant);
    e->value = c;
    return e;
}

ExprPtr var_z() {
    static const ExprPtr z = make(NodeKind::Var);
    return z;
}

ExprPtr add(ExprPtr a, ExprPtr b) {
    if (is_const(a) && is_const(b)) return constant(a->value + b->value);
    if (is_const_val(a, {0, 0})) return b;
    if (is_const_val(b, {0, 0})) return a;
    auto e = make(NodeKind::Add);
    e->a = std::move(a);
    e->b = std::move(b);
    return e;
}

ExprPtr sub(ExprPtr a, ExprPtr b) { return add(std::move(a), neg(std::move(b))); }

ExprPtr mul(ExprPtr a, ExprPtr b) {
    if (is_const(a) && is_const(b)) return constant(a->value * b->value);
    if (is_const_val(a, {0, 0}) || is_const_val(b, {0, 0})) return constant({0, 0});
    if (is_const_val(a, {1, 0})) return b;
    if (is_const_val(b, {1, 0})) return a;
    auto e = make(NodeKind::Mul);
    e->a = std::move(a);
    e->b = std::move(b);
    return e;
}

ExprPtr neg(ExprPtr a) {
    if (is_const(a)) return constant(-a->value);
    if (a->kind == NodeKind::Neg) return a->a;
    auto e = make(NodeKind::Neg);
    e->a = std::move(a);
    return e;
}

ExprPtr recip(ExprPtr a) {
    if (is_const(a) && a->value != cplx{0, 0}) return constant(1.0 / a->value);
    if (a->kind == NodeKind::Recip) return a->a;
    auto e = make(NodeKind::Recip);
    e->a = std::move(a);
    return e;
}

ExprPtr div(ExprPtr a, ExprPtr b) { return mul(std::move(a), recip(std::move(b))); }

ExprPtr ipow(ExprPtr a, int k) {
    if (k == 0) return constant({1, 0});
    if (k == 1) return a;
    if (is_const(a) && (a->value != cplx{0, 0} || k > 0))
        return constant(int_pow(a->value, k));
    auto e = make(NodeKind::IntPow);
    e->a = std::move(a);
    e->ipow = k;
    return e;
}

ExprPtr rpow(ExprPtr a, double mu) {
    long long k;
    if (near_integer(mu, &k) && std::abs(k) < 1000)
        return ipow(std::move(a), static_cast<int>(k));
    auto e = make(NodeKind::RealPow);
    e->a = std::move(a);
    e->rpow = mu;
    return e;
}

ExprPtr expe(ExprPtr a) {
    if (is_const(a)) return constant(std::exp(a->value));
    auto e = make(NodeKind::Exp);
    e->a = std::move(a);
    return e;
}

ExprPtr loge(ExprPtr a) {
    auto e = make(NodeKind::Log);
    e->a = std::move(a);
    return e;
}

cplx eval(const ExprPtr& e, cplx z) {
    switch (e->kind) {
        case NodeKind::Constant:
            return e->value;
        case NodeKind::Var:
            return z;
        case NodeKind::Add:
            return eval(e->a, z) + eval(e->b, z);
        case NodeKind::Mul:
            return eval(e->a, z) * eval(e->b, z);
        case NodeKind::Neg:
            return -eval(e->a, z);
        case NodeKind::Recip: {
            cplx w = eval(e->a, z);
            if (w == cplx{0, 0}) throw DomainError("reciprocal of zero");
            return 1.0 / w;
        }
        case NodeKind::IntPow: {
            cplx w = eval(e->a, z);
            if (w == cplx{0, 0}) {
                if (e->ipow > 0) return {0, 0};
                throw DomainError("pole: 0 raised to negative power");
            }
            return int_pow(w, e->ipow);
        }
        case NodeKind::RealPow: {
            cplx w = eval(e->a, z);
            if (w == cplx{0, 0}) {
                if (e->rpow > 0) return {0, 0};
                throw DomainError("real power of zero");
            }
            return std::exp(e->rpow * std::log(w));
        }
        case NodeKind::Exp:
            return std::exp(eval(e->a, z));
        case NodeKind::Log: {
            cplx w = eval(e->a, z);
            if (w == cplx{0, 0}) throw DomainError("log of zero");
            return std::log(w);
        }
    }
    throw Error("corrupt expression node");
}

ExprPtr differentiate(const ExprPtr& e) {
    switch (e->kind) {
        case NodeKind::Constant:
            return constant({0, 0});
        case NodeKind::Var:
            return constant({1, 0});
        case NodeKind::Add:
            return add(differentiate(e->a), differentiate(e->b));
        case NodeKind::Mul:
            return add(mul(differentiate(e->a), e->b), mul(e->a, differentiate(e->b)));
        case NodeKind::Neg:
            return neg(differentiate(e->a));
        case NodeKind::Recip:
            return neg(div(differentiate(e->a), ipow(e->a, 2)));
        case NodeKind::IntPow:
            return mul(constant({static_cast<double>(e->ipow), 0}),
                       mul(ipow(e->a, e->ipow - 1), differentiate(e->a)));
        case NodeKind::RealPow:
            return mul(constant({e->rpow, 0}),
                       mul(rpow(e->a, e->rpow - 1.0), differentiate(e->a)));
        case NodeKind::Exp:
            return mul(expe(e->a), differentiate(e->a));
        case NodeKind::Log:
            return div(differentiate(e->a), e->a);
    }
    throw Error("corrupt expression node");
}

bool mentions_z(const ExprPtr& e) {
    if (e->kind == NodeKind::Var) return true;
    if (e->a && mentions_z(e->a)) return true;
    if (e->b && mentions_z(e->b)) return true;
    return false;
}

bool is_constant(const ExprPtr& e, cplx* out) {
    if (mentions_z(e)) return false;
    try {
        cplx v = eval(e, cplx{0.7, 0.3});
        if (out) *out = v;
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

bool contains_log(const ExprPtr& e) {
    if (e->kind == NodeKind::Log && mentions_z(e)) return true;
    if (e->a && contains_log(e->a)) return true;
    if (e->b && contains_log(e->b)) return true;
    return false;
}

bool contains_fractional_pow(const ExprPtr& e) {
    if (e->kind == NodeKind::RealPow && mentions_z(e)) return true;
    if (e->a && contains_fractional_pow(e->a)) return true;
    if (e->b && contains_fractional_pow(e->b)) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string fmt_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_complex(cplx c) {
    if (c.imag() == 0.0) return fmt_real(c.real());
    if (c.real() == 0.0) return fmt_real(c.imag()) + "i";
    std::string s = "(" + fmt_real(c.real());
    if (c.imag() >= 0.0)
        s += "+" + fmt_real(c.imag()) + "i";
    else
        s += "-" + fmt_real(-c.imag()) + "i";
    return s + ")";
}

// precedence: 1 add, 2 mul, 3 unary, 4 power/atom
int prec(const ExprPtr& e) {
    switch (e->kind) {
        case NodeKind::Add: return 1;
        case NodeKind::Mul: return 2;
        case NodeKind::Neg: return 3;
        case NodeKind::Recip: return 2;
        case NodeKind::IntPow: return 4;
        default: return 5;
    }
}

void print(const ExprPtr& e, std::string& out, int parent_prec) {
    int p = prec(e);
    bool paren = p < parent_prec;
    if (paren) out += "(";
    switch (e->kind) {
        case NodeKind::Constant:
            out += fmt_complex(e->value);
            break;
        case NodeKind::Var:
            out += "z";
            break;
        case NodeKind::Add:
            print(e->a, out, 1);
            if (e->b->kind == NodeKind::Neg) {
                out += " - ";
                print(e->b->a, out, 2);
            } else {
                out += " + ";
                print(e->b, out, 2);
            }
            break;
        case NodeKind::Mul:
            print(e->a, out, 2);
            out += "*";
            print(e->b, out, 3);
            break;
        case NodeKind::Neg:
            out += "-";
            print(e->a, out, 3);
            break;
        case NodeKind::Recip:
            out += "1/";
            print(e->a, out, 5);
            break;
        case NodeKind::IntPow:
            print(e->a, out, 5);
            out += "^";
            out += std::to_string(e->ipow);
            break;
        case NodeKind::RealPow:
            out += "pow(";
            print(e->a, out, 0);
            out += ", ";
            out += fmt_real(e->rpow);
            out += ")";
            break;
        case NodeKind::Exp:
            out += "exp(";
            print(e->a, out, 0);
            out += ")";
            break;
        case NodeKind::Log:
            out += "log(";
            print(e->a, out, 0);
            out += ")";
            break;
    }
    if (paren) out += ")";
}

}  // namespace

std::string to_string(const ExprPtr& e) {
    std::string s;
    print(e, s, 0);
    return s;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class TokKind { Num, ImagNum, Ident, Op, LParen, RParen, Comma, End };

struct Tok {
    TokKind kind;
    double num = 0.0;
    std::string text;
    char op = 0;
    int col = 0;
};

struct Lexer {
    const std::string& s;
    size_t pos = 0;

    explicit Lexer(const std::string& str) : s(str) {}

    Tok next() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        Tok t;
        t.col = static_cast<int>(pos) + 1;
        if (pos >= s.size()) {
            t.kind = TokKind::End;
            return t;
        }
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t start = pos;
            while (pos < s.size() &&
                   (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.'))
                ++pos;
            if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
                size_t save = pos;
                ++pos;
                if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
                if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
                    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
                        ++pos;
                } else {
                    pos = save;
                }
            }
            t.num = std::stod(s.substr(start, pos - start));
            if (pos < s.size() && s[pos] == 'i' &&
                (pos + 1 >= s.size() ||
                 !std::isalnum(static_cast<unsigned char>(s[pos + 1])))) {
                ++pos;
                t.kind = TokKind::ImagNum;
            } else {
                t.kind = TokKind::Num;
            }
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
            t.kind = TokKind::Ident;
            t.text = s.substr(start, pos - start);
            return t;
        }
        ++pos;
        switch (c) {
            case '(': t.kind = TokKind::LParen; return t;
            case ')': t.kind = TokKind::RParen; return t;
            case ',': t.kind = TokKind::Comma; return t;
            case '+': case '-': case '*': case '/': case '^':
                t.kind = TokKind::Op;
                t.op = c;
                return t;
            default:
                throw ConfigError(std::string("unexpected character '") + c + "'", 0, t.col);
        }
    }
};

struct Parser {
    Lexer lex;
    Tok cur;

    explicit Parser(const std::string& s) : lex(s) { cur = lex.next(); }

    void advance() { cur = lex.next(); }

    [[noreturn]] void fail(const std::string& what) {
        throw ConfigError("parse error at column " + std::to_string(cur.col) + ": " + what,
                          0, cur.col);
    }

    ExprPtr parse() {
        ExprPtr e = expr();
        if (cur.kind != TokKind::End) fail("trailing input");
        return e;
    }

    ExprPtr expr() {
        ExprPtr e = term();
        while (cur.kind == TokKind::Op && (cur.op == '+' || cur.op == '-')) {
            char op = cur.op;
            advance();
            ExprPtr r = term();
            e = (op == '+') ? add(e, r) : sub(e, r);
        }
        return e;
    }

    ExprPtr term() {
        ExprPtr e = unary();
        while (cur.kind == TokKind::Op && (cur.op == '*' || cur.op == '/')) {
            char op = cur.op;
            advance();
            ExprPtr r = unary();
            e = (op == '*') ? mul(e, r) : div(e, r);
        }
        return e;
    }

    ExprPtr unary() {
        if (cur.kind == TokKind::Op && cur.op == '-') {
            advance();
            return neg(unary());
        }
        if (cur.kind == TokKind::Op && cur.op == '+') {
            advance();
            return unary();
        }
        return postfix();
    }

    ExprPtr postfix() {
        ExprPtr e = primary();
        while (cur.kind == TokKind::Op && cur.op == '^') {
            advance();
            e = ipow(e, integer_exponent());
        }
        return e;
    }

    int integer_exponent() {
        bool negv = false;
        bool paren = false;
        if (cur.kind == TokKind::LParen) {
            paren = true;
            advance();
        }
        if (cur.kind == TokKind::Op && cur.op == '-') {
            negv = true;
            advance();
        }
        if (cur.kind != TokKind::Num || cur.num != std::floor(cur.num))
            fail("integer exponent expected after '^'");
        int k = static_cast<int>(cur.num);
        advance();
        if (paren) {
            if (cur.kind != TokKind::RParen) fail("')' expected");
            advance();
        }
        return negv ? -k : k;
    }

    ExprPtr primary() {
        switch (cur.kind) {
            case TokKind::Num: {
                double v = cur.num;
                advance();
                return constant({v, 0});
            }
            case TokKind::ImagNum: {
                double v = cur.num;
                advance();
                return constant({0, v});
            }
            case TokKind::Ident: {
                std::string name = cur.text;
                advance();
                if (name == "z") return var_z();
                if (name == "i") return constant({0, 1});
                if (name == "exp" || name == "log" || name == "pow") {
                    if (cur.kind != TokKind::LParen) fail("'(' expected after " + name);
                    advance();
                    ExprPtr arg = expr();
                    if (name == "pow") {
                        if (cur.kind != TokKind::Comma) fail("',' expected in pow");
                        advance();
                        bool negv = false;
                        if (cur.kind == TokKind::Op && cur.op == '-') {
                            negv = true;
                            advance();
                        }
                        if (cur.kind != TokKind::Num) fail("real exponent expected in pow");
                        double mu = negv ? -cur.num : cur.num;
                        advance();
                        if (cur.kind != TokKind::RParen) fail("')' expected");
                        advance();
                        return rpow(arg, mu);
                    }
                    if (cur.kind != TokKind::RParen) fail("')' expected");
                    advance();
                    return name == "exp" ? expe(arg) : loge(arg);
                }
                fail("unknown identifier '" + name + "'");
            }
            case TokKind::LParen: {
                advance();
                ExprPtr e = expr();
                if (cur.kind != TokKind::RParen) fail("')' expected");
                advance();
                return e;
            }
            default:
                fail("value expected");
        }
    }
};

}  // namespace

ExprPtr parse_expr(const std::string& text) {
    Parser p(text);
    return p.parse();
}

}  // namespace forge

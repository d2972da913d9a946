#pragma once

#include <functional>
#include <memory>
#include <set>
#include <string>
#include <utility>

#include "singan/rational.hpp"

namespace singan {

// Expression tree for map rules. Immutable, shared subtrees allowed.
struct Ast;
using AstPtr = std::shared_ptr<const Ast>;

struct Ast {
    enum class Kind { Num, X, Y, Param, Add, Sub, Mul, Div, Neg, Pow };
    Kind kind;
    Rational num;        // Num
    std::string param;   // Param
    AstPtr a, b;         // operands (Neg/Pow use only a)
    long exp = 0;        // Pow
};

inline AstPtr ast_num(Rational v) {
    auto n = std::make_shared<Ast>();
    n->kind = Ast::Kind::Num;
    n->num = std::move(v);
    return n;
}
inline AstPtr ast_num(long v) { return ast_num(Rational(v)); }
inline AstPtr ast_x() {
    auto n = std::make_shared<Ast>();
    n->kind = Ast::Kind::X;
    return n;
}
inline AstPtr ast_y() {
    auto n = std::make_shared<Ast>();
    n->kind = Ast::Kind::Y;
    return n;
}
inline AstPtr ast_param(std::string name) {
    auto n = std::make_shared<Ast>();
    n->kind = Ast::Kind::Param;
    n->param = std::move(name);
    return n;
}
inline AstPtr ast_bin(Ast::Kind k, AstPtr lhs, AstPtr rhs) {
    auto n = std::make_shared<Ast>();
    n->kind = k;
    n->a = std::move(lhs);
    n->b = std::move(rhs);
    return n;
}
inline AstPtr ast_add(AstPtr a, AstPtr b) { return ast_bin(Ast::Kind::Add, std::move(a), std::move(b)); }
inline AstPtr ast_sub(AstPtr a, AstPtr b) { return ast_bin(Ast::Kind::Sub, std::move(a), std::move(b)); }
inline AstPtr ast_mul(AstPtr a, AstPtr b) { return ast_bin(Ast::Kind::Mul, std::move(a), std::move(b)); }
inline AstPtr ast_div(AstPtr a, AstPtr b) { return ast_bin(Ast::Kind::Div, std::move(a), std::move(b)); }
inline AstPtr ast_neg(AstPtr a) {
    auto n = std::make_shared<Ast>();
    n->kind = Ast::Kind::Neg;
    n->a = std::move(a);
    return n;
}
inline AstPtr ast_pow(AstPtr base, long e) {
    auto n = std::make_shared<Ast>();
    n->kind = Ast::Kind::Pow;
    n->a = std::move(base);
    n->exp = e;
    return n;
}

// Evaluate into any value type V supporting field operators and
// pow_value(V, long). `param` maps a name to a V; `lit` builds a V from a
// literal (exact zeros and truncation windows are the caller's business).
template <class V, class ParamFn, class LitFn>
V eval_ast(const AstPtr& e, const V& x, const V& y, ParamFn&& param, LitFn&& lit) {
    switch (e->kind) {
        case Ast::Kind::Num: return lit(e->num);
        case Ast::Kind::X: return x;
        case Ast::Kind::Y: return y;
        case Ast::Kind::Param: return param(e->param);
        case Ast::Kind::Add: return eval_ast(e->a, x, y, param, lit) + eval_ast(e->b, x, y, param, lit);
        case Ast::Kind::Sub: return eval_ast(e->a, x, y, param, lit) - eval_ast(e->b, x, y, param, lit);
        case Ast::Kind::Mul: return eval_ast(e->a, x, y, param, lit) * eval_ast(e->b, x, y, param, lit);
        case Ast::Kind::Div: return eval_ast(e->a, x, y, param, lit) / eval_ast(e->b, x, y, param, lit);
        case Ast::Kind::Neg: return -eval_ast(e->a, x, y, param, lit);
        case Ast::Kind::Pow: return pow_value(eval_ast(e->a, x, y, param, lit), e->exp);
    }
    throw DomainError("corrupt expression node");
}

inline bool ast_depends_on(const AstPtr& e, Ast::Kind var) {
    if (!e) return false;
    if (e->kind == var) return true;
    switch (e->kind) {
        case Ast::Kind::Add:
        case Ast::Kind::Sub:
        case Ast::Kind::Mul:
        case Ast::Kind::Div: return ast_depends_on(e->a, var) || ast_depends_on(e->b, var);
        case Ast::Kind::Neg:
        case Ast::Kind::Pow: return ast_depends_on(e->a, var);
        default: return false;
    }
}

inline void collect_params(const AstPtr& e, std::set<std::string>& out) {
    if (!e) return;
    if (e->kind == Ast::Kind::Param) out.insert(e->param);
    collect_params(e->a, out);
    collect_params(e->b, out);
}

namespace detail {
// precedence levels used by the printer: 0 add, 1 mul, 2 unary, 3 pow/atom
inline int ast_prec(const Ast& e) {
    switch (e.kind) {
        case Ast::Kind::Add:
        case Ast::Kind::Sub: return 0;
        case Ast::Kind::Mul:
        case Ast::Kind::Div: return 1;
        case Ast::Kind::Neg: return 2;
        case Ast::Kind::Pow: return 3;
        default: return 4;
    }
}
}  // namespace detail

// Print with the variable names used by the surrounding rule (x,y for
// scalar rules, X,Y for pair rules).
inline std::string to_string(const AstPtr& e, const std::string& xname = "x",
                             const std::string& yname = "y") {
    auto wrap = [&](const AstPtr& sub, int min_prec) {
        std::string s = to_string(sub, xname, yname);
        if (detail::ast_prec(*sub) < min_prec) return "(" + s + ")";
        // negative literals read like unary minus
        if (sub->kind == Ast::Kind::Num && sign(sub->num) < 0 && min_prec > 0) return "(" + s + ")";
        return s;
    };
    switch (e->kind) {
        case Ast::Kind::Num: return to_string(e->num);
        case Ast::Kind::X: return xname;
        case Ast::Kind::Y: return yname;
        case Ast::Kind::Param: return e->param;
        case Ast::Kind::Add: return wrap(e->a, 0) + " + " + wrap(e->b, 0);
        case Ast::Kind::Sub: return wrap(e->a, 0) + " - " + wrap(e->b, 1);
        case Ast::Kind::Mul: return wrap(e->a, 1) + "*" + wrap(e->b, 1);
        case Ast::Kind::Div: return wrap(e->a, 1) + "/" + wrap(e->b, 2);
        case Ast::Kind::Neg: return "-" + wrap(e->a, 2);
        case Ast::Kind::Pow: return wrap(e->a, 4) + "^" + (e->exp < 0 ? "(" + std::to_string(e->exp) + ")"
                                                                      : std::to_string(e->exp));
    }
    throw DomainError("corrupt expression node");
}

// Fold an expression with no variables/parameters to its rational value.
// Returns nullopt if it contains a variable or parameter; throws DomainError
// on division by zero inside a constant subtree.
inline std::optional<Rational> ast_fold_constant(const AstPtr& e) {
    switch (e->kind) {
        case Ast::Kind::Num: return e->num;
        case Ast::Kind::X:
        case Ast::Kind::Y:
        case Ast::Kind::Param: return std::nullopt;
        case Ast::Kind::Neg: {
            auto a = ast_fold_constant(e->a);
            if (!a) return std::nullopt;
            return -*a;
        }
        case Ast::Kind::Pow: {
            auto a = ast_fold_constant(e->a);
            if (!a) return std::nullopt;
            return pow_value(*a, e->exp);
        }
        default: {
            auto a = ast_fold_constant(e->a);
            auto b = ast_fold_constant(e->b);
            if (!a || !b) return std::nullopt;
            switch (e->kind) {
                case Ast::Kind::Add: return *a + *b;
                case Ast::Kind::Sub: return *a - *b;
                case Ast::Kind::Mul: return *a * *b;
                case Ast::Kind::Div:
                    if (is_zero(*b)) throw DomainError("division by zero in constant expression");
                    return *a / *b;
                default: return std::nullopt;
            }
        }
    }
}

// Substitute constants for a subset of parameters (used to pin constant
// parameter sequences before symbolic work).
inline AstPtr ast_substitute_params(const AstPtr& e,
                                    const std::function<std::optional<Rational>(const std::string&)>& val) {
    switch (e->kind) {
        case Ast::Kind::Num:
        case Ast::Kind::X:
        case Ast::Kind::Y: return e;
        case Ast::Kind::Param: {
            auto v = val(e->param);
            return v ? ast_num(*v) : e;
        }
        case Ast::Kind::Neg: return ast_neg(ast_substitute_params(e->a, val));
        case Ast::Kind::Pow: return ast_pow(ast_substitute_params(e->a, val), e->exp);
        default:
            return ast_bin(e->kind, ast_substitute_params(e->a, val), ast_substitute_params(e->b, val));
    }
}

}  // namespace singan

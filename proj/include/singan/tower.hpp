#pragma once

#include <vector>

#include "singan/ast.hpp"
#include "singan/poly.hpp"
#include "singan/ratfunc.hpp"
#include "singan/rational.hpp"

// Nested rational-function fields used for symbolic work on map rules.
// Convention: symbolic parameters sit innermost, then x, then y outermost,
// so an element of F3 can represent a rational expression in (p, x, y).

namespace singan {

using F0 = Rational;
using F1 = RatFunc<F0>;
using F2 = RatFunc<F1>;
using F3 = RatFunc<F2>;
using F4 = RatFunc<F3>;

// Number of RatFunc layers below K (Rational -> 0, F1 -> 1, ...).
template <class K>
struct TowerLevelT;
template <>
struct TowerLevelT<Rational> {
    static constexpr int value = 0;
};
template <class K>
struct TowerLevelT<RatFunc<K>> {
    static constexpr int value = TowerLevelT<K>::value + 1;
};

template <class K>
inline K embed_rational(const Rational& q) {
    if constexpr (std::is_same_v<K, Rational>) {
        return q;
    } else {
        using Inner = typename K::coeff_type;
        return K(Poly<Inner>(embed_rational<Inner>(q)));
    }
}

// Lifts a value from a lower tower level into K by constant embedding.
template <class K, class From>
inline K embed_up(const From& v) {
    if constexpr (std::is_same_v<K, From>) {
        return v;
    } else {
        using Inner = typename K::coeff_type;
        return K(Poly<Inner>(embed_up<Inner>(v)));
    }
}

// The variable of tower level `lvl` (0 = innermost), embedded into K.
template <class K>
inline K tower_var(int lvl) {
    if constexpr (std::is_same_v<K, Rational>) {
        (void)lvl;
        throw DomainError("tower_var: no variables at the rational level");
    } else {
        using Inner = typename K::coeff_type;
        if (lvl == TowerLevelT<Inner>::value) return K::var();
        return embed_up<K>(tower_var<Inner>(lvl));
    }
}

// Sign of a constant tower value (0 for non-constants).
inline int sign_of_rational_tower(const Rational& q) { return sign(q); }
template <class K>
int sign_of_rational_tower(const RatFunc<K>& f) {
    return f.is_constant() ? sign_of_rational_tower(f.constant_value()) : 0;
}

// Conversion back to an expression tree. `vars[l]` is the AST node standing
// for the variable of tower level l.
inline AstPtr tower_to_ast(const Rational& q, const std::vector<AstPtr>&) { return ast_num(q); }

template <class K>
AstPtr tower_to_ast(const RatFunc<K>& f, const std::vector<AstPtr>& vars) {
    const AstPtr& vr = vars.at(static_cast<size_t>(TowerLevelT<K>::value));
    auto poly_ast = [&](const Poly<K>& p) -> AstPtr {
        AstPtr acc;
        for (int i = p.degree(); i >= 0; --i) {
            K c = p.coeff(i);
            if (is_zero(c)) continue;
            // pull a leading minus into the surrounding sum
            bool neg = false;
            if constexpr (std::is_same_v<K, Rational>) {
                if (sign(c) < 0) { neg = true; c = -c; }
            } else {
                if (c.is_constant() && sign_of_rational_tower(c.constant_value()) < 0) {
                    neg = true;
                    c = -c;
                }
            }
            AstPtr term;
            if (i == 0) {
                term = tower_to_ast(c, vars);
            } else {
                AstPtr v = i == 1 ? vr : ast_pow(vr, i);
                bool unit = false;
                if constexpr (std::is_same_v<K, Rational>) unit = is_one(c);
                else unit = (c == K(1));
                term = unit ? v : ast_mul(tower_to_ast(c, vars), v);
            }
            // a minus sign surfacing from a deeper level joins the sum
            if (term->kind == Ast::Kind::Neg) {
                neg = !neg;
                term = term->a;
            } else if (term->kind == Ast::Kind::Mul && term->a->kind == Ast::Kind::Neg) {
                neg = !neg;
                term = ast_mul(term->a->a, term->b);
            }
            if (!acc)
                acc = neg ? ast_neg(term) : term;
            else
                acc = neg ? ast_sub(acc, term) : ast_add(acc, term);
        }
        return acc ? acc : ast_num(0);
    };
    AstPtr n = poly_ast(f.num());
    if (f.den().degree() == 0 && f.den().coeff(0) == K(1)) return n;
    return ast_div(n, poly_ast(f.den()));
}

}  // namespace singan

#include "singan/map_model.hpp"

#include <random>

#include "singan/errors.hpp"

namespace singan {

namespace {

// Rational arithmetic with checked division, so pole hits surface as
// exceptions instead of GMP aborts.
struct Q {
    Rational v;
    friend Q operator+(const Q& a, const Q& b) { return {a.v + b.v}; }
    friend Q operator-(const Q& a, const Q& b) { return {a.v - b.v}; }
    friend Q operator*(const Q& a, const Q& b) { return {a.v * b.v}; }
    friend Q operator-(const Q& a) { return {-a.v}; }
    friend Q operator/(const Q& a, const Q& b) {
        if (is_zero(b.v)) throw DomainError("division by zero");
        return {a.v / b.v};
    }
    friend Q pow_value(const Q& a, long e) { return {pow_value(a.v, e)}; }
};

template <class Kp>
struct TowerCtx {
    using Kx = RatFunc<Kp>;
    using T = RatFunc<Kx>;

    std::vector<std::string> names;
    T xv, yv;

    explicit TowerCtx(std::vector<std::string> n)
        : names(std::move(n)), xv(embed_up<T>(Kx::var())), yv(T::var()) {}

    T param(const std::string& nm) const {
        for (size_t i = 0; i < names.size(); ++i)
            if (names[i] == nm) return embed_up<T>(tower_var<Kp>(static_cast<int>(i)));
        throw DomainError("undeclared parameter '" + nm + "'");
    }
    static T lit(const Rational& q) { return embed_rational<T>(q); }

    T eval(const AstPtr& e, const T& x, const T& y) const {
        return eval_ast<T>(
            e, x, y, [this](const std::string& nm) { return param(nm); },
            [](const Rational& q) { return lit(q); });
    }
    T eval(const AstPtr& e) const { return eval(e, xv, yv); }

    // AST nodes for the tower variables, innermost first: params..., x, y.
    std::vector<AstPtr> var_asts() const {
        std::vector<AstPtr> vars;
        for (const auto& nm : names) vars.push_back(ast_param(nm));
        vars.push_back(ast_x());
        vars.push_back(ast_y());
        return vars;
    }
};

bool ast_is_zero_num(const AstPtr& e) { return e->kind == Ast::Kind::Num && is_zero(e->num); }
bool ast_is_one_num(const AstPtr& e) { return e->kind == Ast::Kind::Num && is_one(e->num); }

AstPtr mk_mul(const AstPtr& a, const AstPtr& b) {
    if (ast_is_zero_num(a) || ast_is_zero_num(b)) return ast_num(0);
    if (ast_is_one_num(a)) return b;
    if (ast_is_one_num(b)) return a;
    return ast_mul(a, b);
}
AstPtr mk_sub(const AstPtr& a, const AstPtr& b) {
    if (ast_is_zero_num(b)) return a;
    if (ast_is_zero_num(a)) return ast_neg(b);
    return ast_sub(a, b);
}

template <class Kp>
AstPtr auto_invert_impl(const AstPtr& fwd, const std::vector<std::string>& names) {
    TowerCtx<Kp> ctx(names);
    using Kx = typename TowerCtx<Kp>::Kx;

    typename TowerCtx<Kp>::T f = ctx.eval(fwd);
    if (f.num().degree() > 1 || f.den().degree() > 1)
        throw NotMobius("forward rule is not homographic in x_{n-1}");
    Kx A = f.num().coeff(0), B = f.num().coeff(1);
    Kx C = f.den().coeff(0), D = f.den().coeff(1);
    if (A * D - B * C == Kx(0)) throw NotMobius("forward rule does not depend on x_{n-1}");

    // Clear the common denominator in x so the rule prints as a plain
    // fraction of polynomials in (params, x, w).
    Poly<Kp> L = A.den();
    for (const Poly<Kp>& dn : {B.den(), C.den(), D.den()}) L = L * (dn / poly_gcd(L, dn));
    Kx lc{Poly<Kp>(L)};
    A = A * lc, B = B * lc, C = C * lc, D = D * lc;

    // w = (A + B y)/(C + D y)  =>  y = (C w - A)/(B - D w), with w in the
    // backward rule's second slot.
    std::vector<AstPtr> vars = ctx.var_asts();
    vars.pop_back();  // coefficients live below the y level
    AstPtr w0 = ast_y();
    if (D.is_zero_value()) {
        // y = (C/B) w - A/B, no division by w needed
        Kx c2 = C / B, a2 = A / B;
        if (sign_of_rational_tower(c2) < 0)
            return mk_sub(tower_to_ast(-a2, vars), mk_mul(tower_to_ast(-c2, vars), w0));
        return mk_sub(mk_mul(tower_to_ast(c2, vars), w0), tower_to_ast(a2, vars));
    }
    AstPtr a = tower_to_ast(A, vars), b = tower_to_ast(B, vars);
    AstPtr c = tower_to_ast(C, vars), d = tower_to_ast(D, vars);
    AstPtr num = mk_sub(mk_mul(c, w0), a);
    AstPtr den = mk_sub(b, mk_mul(d, w0));
    // cancel matching leading minus signs
    if (num->kind == Ast::Kind::Neg && den->kind == Ast::Kind::Neg) {
        num = num->a;
        den = den->a;
    }
    if (ast_is_one_num(den)) return num;
    return ast_div(num, den);
}

template <class R, class Fn>
R dispatch_tower(size_t nparams, Fn&& fn) {
    switch (nparams) {
        case 0: return fn(static_cast<Rational*>(nullptr));
        case 1: return fn(static_cast<F1*>(nullptr));
        case 2: return fn(static_cast<F2*>(nullptr));
        default:
            throw UnsupportedMap("at most two symbolic parameters are supported here");
    }
}

std::vector<std::string> sorted_names(const std::vector<std::string>& names) {
    auto r = names;
    std::sort(r.begin(), r.end());
    return r;
}

AstPtr ast_swap_xy(const AstPtr& e) {
    switch (e->kind) {
        case Ast::Kind::X: return ast_y();
        case Ast::Kind::Y: return ast_x();
        case Ast::Kind::Add:
        case Ast::Kind::Sub:
        case Ast::Kind::Mul:
        case Ast::Kind::Div: return ast_bin(e->kind, ast_swap_xy(e->a), ast_swap_xy(e->b));
        case Ast::Kind::Neg: return ast_neg(ast_swap_xy(e->a));
        case Ast::Kind::Pow: return ast_pow(ast_swap_xy(e->a), e->exp);
        default: return e;
    }
}

}  // namespace

AstPtr auto_invert(const AstPtr& fwd, const std::vector<std::string>& param_names) {
    auto names = sorted_names(param_names);
    return dispatch_tower<AstPtr>(names.size(), [&](auto* tag) {
        using Kp = std::remove_pointer_t<decltype(tag)>;
        return auto_invert_impl<Kp>(fwd, names);
    });
}

void ensure_backward(MapInstance& m) {
    if (m.has_backward()) return;
    if (!m.is_scalar()) throw DomainError("pair map '" + m.name + "' lacks a backward rule");
    std::vector<std::string> names;
    for (const auto& [k, s] : m.params) names.push_back(k);
    m.bwd_x = auto_invert(m.fwd_x, names);
}

std::function<Rational(const std::string&, long)> rational_params(const MapInstance& m,
                                                                  long anchor) {
    auto params = m.params;
    return [params, anchor](const std::string& name, long n) -> Rational {
        auto it = params.find(name);
        if (it == params.end()) throw DomainError("undeclared parameter '" + name + "'");
        return param_value(it->second, anchor + n);
    };
}

AstPtr conjugate_scalar(const AstPtr& fwd, const AstPtr& phi,
                        const std::vector<std::string>& param_names) {
    if (ast_depends_on(phi, Ast::Kind::Y))
        throw UnsupportedMap("scalar change of variables must be a rule in x alone");
    auto names = sorted_names(param_names);
    return dispatch_tower<AstPtr>(names.size(), [&](auto* tag) {
        using Kp = std::remove_pointer_t<decltype(tag)>;
        TowerCtx<Kp> ctx(names);
        using T = typename TowerCtx<Kp>::T;
        auto phi_at = [&](const T& arg) { return ctx.eval(phi, arg, arg); };
        if (!(phi_at(phi_at(ctx.xv)) == ctx.xv))
            throw UnsupportedMap("change of variables is not an involution");
        T g = phi_at(ctx.eval(fwd, phi_at(ctx.xv), phi_at(ctx.yv)));
        return tower_to_ast(g, ctx.var_asts());
    });
}

bool ratfunc_equal(const AstPtr& a, const AstPtr& b,
                   const std::vector<std::string>& param_names) {
    auto names = sorted_names(param_names);
    return dispatch_tower<bool>(names.size(), [&](auto* tag) {
        using Kp = std::remove_pointer_t<decltype(tag)>;
        TowerCtx<Kp> ctx(names);
        return ctx.eval(a) == ctx.eval(b);
    });
}

MapInstance pairify(const MapInstance& m) {
    if (!m.is_scalar()) return m;
    MapInstance p = m;
    ensure_backward(p);
    MapInstance r;
    r.name = m.name + "-pair";
    r.kind = MapKind::Pair;
    r.params = m.params;
    // state (X, Y) = (x_{n-1}, x_n)
    r.fwd_x = ast_y();
    r.fwd_y = ast_swap_xy(p.fwd_x);  // x_{n+1} = fwd(x = Y, y = X)
    r.bwd_x = p.bwd_x;               // x_{n-2} = bwd(x = X, y = Y), uses a_{n-1}
    r.bwd_y = ast_x();
    return r;
}

MapInstance conjugate_map(const MapInstance& m, const std::pair<AstPtr, AstPtr>& T,
                          const std::pair<AstPtr, AstPtr>& T_inv) {
    MapInstance base = m.is_scalar() ? pairify(m) : m;
    std::vector<std::string> names;
    for (const auto& [k, s] : base.params) names.push_back(k);

    auto conj_rule = [&](const AstPtr& rx, const AstPtr& ry) -> std::pair<AstPtr, AstPtr> {
        return dispatch_tower<std::pair<AstPtr, AstPtr>>(names.size(), [&](auto* tag) {
            using Kp = std::remove_pointer_t<decltype(tag)>;
            TowerCtx<Kp> ctx(names);
            using Tw = typename TowerCtx<Kp>::T;
            Tw u0 = ctx.eval(T_inv.first), u1 = ctx.eval(T_inv.second);
            if (!(ctx.eval(T.first, u0, u1) == ctx.xv && ctx.eval(T.second, u0, u1) == ctx.yv))
                throw UnsupportedMap("transform pair does not invert to the identity");
            Tw px = ctx.eval(rx, u0, u1), py = ctx.eval(ry, u0, u1);
            Tw gx = ctx.eval(T.first, px, py), gy = ctx.eval(T.second, px, py);
            auto vars = ctx.var_asts();
            return std::make_pair(tower_to_ast(gx, vars), tower_to_ast(gy, vars));
        });
    };

    MapInstance r;
    r.name = base.name + "-conj";
    r.kind = MapKind::Pair;
    r.params = base.params;
    std::tie(r.fwd_x, r.fwd_y) = conj_rule(base.fwd_x, base.fwd_y);
    if (base.has_backward()) std::tie(r.bwd_x, r.bwd_y) = conj_rule(base.bwd_x, base.bwd_y);
    return r;
}

bool check_conjugacy(const MapInstance& m, const MapInstance& m2,
                     const std::pair<AstPtr, AstPtr>& T, const ConjugacyOptions& opt) {
    MapInstance a = m.is_scalar() ? pairify(m) : m;
    MapInstance b = m2.is_scalar() ? pairify(m2) : m2;

    std::mt19937_64 rng(opt.seed * 0x9e3779b97f4a7c15ULL + 0x42ULL);
    auto draw = [&] { return Q{Rational(static_cast<long>(rng() % 20001) - 10000)}; };
    auto lit = [](const Rational& q) { return Q{q}; };
    auto pa = rational_params(a, 0);
    auto pb = rational_params(b, 0);
    ParamFn<Q> pfa = [&](const std::string& nm, long n) { return Q{pa(nm, n)}; };
    ParamFn<Q> pfb = [&](const std::string& nm, long n) { return Q{pb(nm, n)}; };
    const bool autonomous = a.autonomous() && b.autonomous();

    auto evalT = [&](const State<Q>& s, long n) -> State<Q> {
        auto pf = [&](const std::string& nm) { return pfa(nm, n); };
        return {eval_ast<Q>(T.first, s.a, s.b, pf, lit),
                eval_ast<Q>(T.second, s.a, s.b, pf, lit)};
    };

    size_t ok = 0, attempts = 0;
    const size_t max_attempts = opt.states * 100 + 1000;
    while (ok < opt.states && attempts < max_attempts) {
        ++attempts;
        long n = autonomous
                     ? 0
                     : opt.n_lo + static_cast<long>(rng() % static_cast<uint64_t>(
                                                              opt.n_hi - opt.n_lo + 1));
        State<Q> s{draw(), draw()};
        try {
            State<Q> lhs = evalT(step_forward<Q>(a, s, n, pfa, lit), n);
            State<Q> rhs = step_forward<Q>(b, evalT(s, n), n, pfb, lit);
            if (!(lhs.a.v == rhs.a.v && lhs.b.v == rhs.b.v)) return false;
            ++ok;
        } catch (const DomainError&) {
            // pole; resample
        }
    }
    return ok == opt.states;
}

}  // namespace singan

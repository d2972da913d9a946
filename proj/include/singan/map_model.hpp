#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "singan/ast.hpp"
#include "singan/param_seq.hpp"
#include "singan/rational.hpp"
#include "singan/tower.hpp"

namespace singan {

enum class MapKind { Scalar, Pair };

// A second-order mapping, either as a scalar rule
//   x_{n+1} = fwd(x = x_n, y = x_{n-1}; a_n)
// with backward rule
//   x_{n-1} = bwd(x = x_n, y = x_{n+1}; a_n)
// or as a pair rule (X_{n+1}, Y_{n+1}) = (fwd_x, fwd_y)(X_n, Y_n; a_n) whose
// backward rule maps (X_n, Y_n; a_{n-1}) back one step.
struct MapInstance {
    std::string name;
    MapKind kind = MapKind::Scalar;
    AstPtr fwd_x;  // scalar rule, or first pair component
    AstPtr fwd_y;  // second pair component (pair only)
    AstPtr bwd_x;
    AstPtr bwd_y;
    std::map<std::string, ParamSeq> params;

    bool is_scalar() const { return kind == MapKind::Scalar; }
    bool has_backward() const { return static_cast<bool>(bwd_x); }
    bool autonomous() const {
        for (const auto& [k, s] : params)
            if (!s.is_constant()) return false;
        return true;
    }
};

// Derives the backward rule of a scalar map by solving w = fwd(x, y) for y;
// the forward rule must be homographic (Moebius) in y. Parameters are kept
// symbolic so the result is valid at every index; at most two are supported.
AstPtr auto_invert(const AstPtr& fwd, const std::vector<std::string>& param_names);

// Fills in m.bwd_x for scalar maps lacking one. Throws NotMobius when the
// forward rule is not invertible in x_{n-1}.
void ensure_backward(MapInstance& m);

// --- stepping ---------------------------------------------------------------

// Scalar state (x_{n-1}, x_n); pair state (X_n, Y_n).
template <class V>
struct State {
    V a, b;
};

// param(name, index) -> V; index already includes any anchor offset.
template <class V>
using ParamFn = std::function<V(const std::string&, long)>;

template <class V>
State<V> step_forward(const MapInstance& m, const State<V>& s, long n, const ParamFn<V>& param,
                      const std::function<V(const Rational&)>& lit) {
    auto pf = [&](const std::string& name) { return param(name, n); };
    if (m.is_scalar()) {
        // s = (x_{n-1}, x_n) -> (x_n, x_{n+1})
        V next = eval_ast<V>(m.fwd_x, s.b, s.a, pf, lit);
        return {s.b, std::move(next)};
    }
    V nx = eval_ast<V>(m.fwd_x, s.a, s.b, pf, lit);
    V ny = eval_ast<V>(m.fwd_y, s.a, s.b, pf, lit);
    return {std::move(nx), std::move(ny)};
}

template <class V>
State<V> step_backward(const MapInstance& m, const State<V>& s, long n, const ParamFn<V>& param,
                       const std::function<V(const Rational&)>& lit) {
    if (!m.has_backward()) throw DomainError("map has no backward rule");
    if (m.is_scalar()) {
        // s = (x_{n-1}, x_n) at time n -> (x_{n-2}, x_{n-1}); uses a_{n-1}
        auto pf = [&](const std::string& name) { return param(name, n - 1); };
        V prev = eval_ast<V>(m.bwd_x, s.a, s.b, pf, lit);
        return {std::move(prev), s.a};
    }
    // pair state at time n -> time n-1; uses a_{n-1}
    auto pf = [&](const std::string& name) { return param(name, n - 1); };
    V px = eval_ast<V>(m.bwd_x, s.a, s.b, pf, lit);
    V py = eval_ast<V>(m.bwd_y, s.a, s.b, pf, lit);
    return {std::move(px), std::move(py)};
}

// Rational-valued parameter resolver backed by the declared sequences.
// `anchor` shifts all indices (probing a singularity at n0 = anchor).
std::function<Rational(const std::string&, long)> rational_params(const MapInstance& m,
                                                                  long anchor = 0);

// --- conjugation ------------------------------------------------------------

// Scalar change of variables x = phi(u) with phi an involution: returns the
// forward rule of the conjugated scalar map, fully reduced. Throws
// UnsupportedMap if phi is not an involution.
AstPtr conjugate_scalar(const AstPtr& fwd, const AstPtr& phi,
                        const std::vector<std::string>& param_names);

// True when the two expressions are equal as reduced rational functions of
// (params, x, y).
bool ratfunc_equal(const AstPtr& a, const AstPtr& b, const std::vector<std::string>& param_names);

// General conjugation T o m o T^{-1} for pair maps (and scalars via
// pairify). T and T_inv are component pairs in (X, Y); the composition is
// verified to satisfy T(T_inv) = id. Result is always a pair map.
MapInstance conjugate_map(const MapInstance& m, const std::pair<AstPtr, AstPtr>& T,
                          const std::pair<AstPtr, AstPtr>& T_inv);

// View of a scalar map as a pair map on consecutive states (x_{n-1}, x_n).
MapInstance pairify(const MapInstance& m);

struct ConjugacyOptions {
    size_t states = 100;
    uint64_t seed = 0;
    long n_lo = -4, n_hi = 5;  // time indices exercised for non-autonomous maps
};

// Exact check of T(m_n(s)) == m2_n(T(s)) on random rational states,
// resampling when an evaluation hits a pole.
bool check_conjugacy(const MapInstance& m, const MapInstance& m2,
                     const std::pair<AstPtr, AstPtr>& T, const ConjugacyOptions& opt = {});

}  // namespace singan

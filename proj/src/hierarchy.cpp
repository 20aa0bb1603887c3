#include "nckdv/hierarchy.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

namespace nckdv {

PsiDO lax_operator(const Truncation& trunc) {
    PsiDO l = PsiDO::monomial(2, DiffPoly2::constant(Scalar(1)), trunc);
    l.add_term(0, scale(shift_eps(DiffPoly2::var(0, 0), -2), Scalar(2)));
    return l;
}

Truncation default_truncation(int n) {
    return Truncation{-(2 * n + 3), 2 * n + 2};
}

DiffPoly2 flow(int n, const Truncation& trunc, bool classical) {
    if (n < 1) throw std::invalid_argument("flow: n must be >= 1");
    PsiDO l = lax_operator(trunc);
    PsiDO b = sqrt_op(l, classical);
    // Only the nonnegative orders of L^{n+1/2} feed the positive part, so the
    // composition floor is raised to zero; every order >= 0 is still complete.
    PsiDO l_half = compose(power(l, n, classical), b, classical, 0);  // L^{n+1/2}
    PsiDO c = commutator(positive_part(l_half), l, classical);
    for (const auto& [order, coeff] : c.coeffs) {
        if (order != 0 && !coeff.is_zero()) {
            throw CommutatorNotOrderZero("flow " + std::to_string(n) +
                                         ": commutator has order " + std::to_string(order));
        }
    }
    // dL/dt_n = 2 eps^{-2} dx(P_n), so P_n integrates eps^{2n+2}/(2 (2n+1)!!)
    // times the order-0 commutator coefficient.
    Rational norm = Rational(1, 2) / odd_double_factorial_q(n);
    DiffPoly2 rhs = scale(shift_eps(c.coeff(0), 2 * n + 2), Scalar(norm));
    DiffPoly2 p = x_integrate(rhs);
    p = truncate(p, Caps{trunc.eps_max, -1});
    if (p.min_eps().value_or(0) < 0) {
        throw std::logic_error("flow: Laurent eps leaked into an exported flow");
    }
    return p;
}

DiffPoly2 flow(int n) { return flow(n, default_truncation(n)); }

DiffPoly2 classical_flow(int n, const Truncation& trunc) {
    return flow(n, trunc, true);
}

DiffPoly2 classical_flow(int n) {
    return classical_flow(n, default_truncation(n));
}

DiffPoly2 dispersionless_flow(int n, const Caps& caps) {
    if (n < 1) throw std::invalid_argument("dispersionless_flow: n must be >= 1");
    DiffPoly2 u = DiffPoly2::var(0, 0);
    DiffPoly2 p = u;
    for (int i = 1; i <= n; ++i) p = moyal(p, u, caps);
    return scale(p, Scalar(Rational(1) / factorial_q(n + 1)));
}

DiffPoly2 dispersionless_flow(int n) {
    return dispersionless_flow(n, Caps{2 * n + 2, 2 * n + 2});
}

bool check_flow_shape(int n, const DiffPoly2& p) {
    for (const auto& [m, c] : p.terms) {
        (void)c;
        int mu = m.mu_exp;
        int eps = m.eps_exp;
        if (mu < 0 || eps < mu || (eps - mu) % 2 != 0) return false;
        int g = (eps - mu) / 2;
        if (m.factor_count() != n + 1 - g) return false;
        if (m.sum_k1() != eps) return false;
        if (m.sum_k2() != mu) return false;
    }
    return true;
}

DiffPoly2 leading_flow_part(const DiffPoly2& p) {
    DiffPoly2 r;
    for (const auto& [m, c] : p.terms) {
        if (m.eps_exp == m.mu_exp) r.terms.emplace(m, c);
    }
    return r;
}

DiffPoly2 prolongation(const DiffPoly2& target, const DiffPoly2& q, const Caps& caps) {
    std::set<std::pair<int, int>> vars;
    for (const auto& [m, c] : target.terms) {
        (void)c;
        for (const auto& v : m.vars) vars.insert({v.k1, v.k2});
    }
    DiffPoly2 r;
    for (const auto& [k1, k2] : vars) {
        DiffPoly2 sensitivity = partial_u(target, k1, k2);
        if (sensitivity.is_zero()) continue;
        DiffPoly2 shifted = truncate(dy_pow(dx_pow(q, k1), k2), caps);
        r += mul(sensitivity, shifted, caps);
    }
    return r;
}

bool check_commutativity(int m, int n, const Truncation& trunc) {
    Caps caps{trunc.eps_max, trunc.mu_cap()};
    auto flow_at = [&](int k) {
        Truncation t = default_truncation(k);
        t.depth_floor = std::min(t.depth_floor, trunc.depth_floor);
        t.eps_max = std::max(t.eps_max, caps.eps_max);
        t.mu_max = std::max(t.mu_cap(), caps.mu_max);
        return truncate(flow(k, t), caps);
    };
    DiffPoly2 qm = dx(flow_at(m));
    DiffPoly2 qn = dx(flow_at(n));
    DiffPoly2 lhs = prolongation(qn, qm, caps);
    DiffPoly2 rhs = prolongation(qm, qn, caps);
    return (lhs - rhs).is_zero();
}

}  // namespace nckdv

#pragma once

#include <map>
#include <string>
#include <vector>

#include "nckdv/diffpoly.hpp"
#include "nckdv/errors.hpp"
#include "nckdv/scalar.hpp"
#include "nckdv/series.hpp"

namespace nckdv {

// One Fourier-mode jet variable v^mode_k (the k-th x-derivative of the
// mode-a component of u) raised to a positive power.
struct ModeVar {
    long mode = 0;
    int k = 0;
    int pow = 1;

    friend auto operator<=>(const ModeVar&, const ModeVar&) = default;
};

// eps^eps_exp * mu^mu_exp * prod v^mode_k^pow with vars sorted by
// (mode, k) and powers merged. Both exponents stay nonnegative on the mode
// side of the theory.
struct ModeMonomial {
    int eps_exp = 0;
    int mu_exp = 0;
    std::vector<ModeVar> vars;

    friend auto operator<=>(const ModeMonomial&, const ModeMonomial&) = default;

    int factor_count() const;
    long mode_sum() const;  // sum of modes over factors, counting powers
};

ModeMonomial normalize_mode_monomial(ModeMonomial m);

// Polynomial in the mode variables over Gaussian rationals. Fourier
// homogeneity is a structural invariant: every monomial's mode_sum equals
// total_mode (a constant term therefore needs total_mode == 0).
struct ModePoly {
    std::map<ModeMonomial, Scalar> terms;
    long total_mode = 0;

    static ModePoly zero(long total_mode);
    // v^mode_k itself.
    static ModePoly var(long mode, int k);
    static ModePoly constant(const Scalar& c);

    bool is_zero() const { return terms.empty(); }
    // Smallest mu_exp over monomials; -1 for the zero polynomial.
    int min_mu_or(int fallback) const;

    // Throws std::invalid_argument when the monomial's mode_sum breaks
    // homogeneity against total_mode.
    void add_term(const ModeMonomial& m, const Scalar& c);

    ModePoly operator-() const;
    ModePoly& operator+=(const ModePoly& o);  // requires equal total_mode
    ModePoly& operator-=(const ModePoly& o);

    bool operator==(const ModePoly& o) const {
        return total_mode == o.total_mode && terms == o.terms;
    }
};

ModePoly operator+(ModePoly p, const ModePoly& q);
ModePoly operator-(ModePoly p, const ModePoly& q);

ModePoly scale(const ModePoly& p, const Scalar& c);
// Plain product; total modes add. Caps filter monomials as in DiffPoly2.
ModePoly mul(const ModePoly& p, const ModePoly& q, const Caps& caps = {});
// Multiply by eps^d resp. mu^d, d >= 0.
ModePoly shift_eps(const ModePoly& p, int d);
ModePoly shift_mu(const ModePoly& p, int d);
// Total x-derivative: v^a_k goes to v^a_{k+1} by Leibniz.
ModePoly dx(const ModePoly& p);
ModePoly dx_pow(ModePoly p, int k);
ModePoly truncate(const ModePoly& p, const Caps& caps);

// Substitute u_{k1,k2} -> (i*a)^{k2} v^a_{k1}, assigning modes[j] to the
// j-th factor of each monomial in canonical factor order. Every monomial of
// f must have exactly modes.size() factors (counting powers); otherwise
// ModeArityMismatch. The result's total_mode is the sum of modes.
ModePoly mode_expand(const DiffPoly2& f, const std::vector<long>& modes);

// Sum of mode_expand over all assignments with total mode a and every
// factor mode in [-bound, bound], monomial by monomial (so mixed arities
// are fine). u-free monomials contribute only when a == 0.
ModePoly mode_expand_sum(const DiffPoly2& f, long a, long bound);

// The Moyal product pushed to fixed modes: with b1 = p.total_mode and
// b2 = q.total_mode,
//   p*q = sum_n (i eps mu)^n / 2^n sum_{k1+k2=n} ((-1)^{k2}/(k1!k2!))
//         (i b1)^{k2} dx^{k1}(p) * (i b2)^{k1} dx^{k2}(q).
// The order sum is bounded through caps.mu_max exactly as in moyal; with no
// mu cap it terminates only when both total modes are 0, otherwise
// UnboundedStarSum.
ModePoly mode_star(const ModePoly& p, const ModePoly& q, const Caps& caps = {},
                   int order_cap = -1);

// T(a, eps mu dx) = sum_h Q_h(a) (eps mu)^{2h} dx^{2h}, truncated to
// 2h <= eps_order. Transforms mode a of w into mode a of u.
ModePoly t_transform(long a, const ModePoly& p, int eps_order);

// {"total_mode":a,"monomials":[{"eps":e,"mu":m,"coeff":{"re":...,"im":...},
// "vars":[[mode,k,pow],...]}]} in map order.
std::string to_json(const ModePoly& p);

// Example: "v[2,0] - 1/8*eps^2*mu^2*v[2,2]" for mode variables v[mode,k].
std::string to_display(const ModePoly& p);

}  // namespace nckdv

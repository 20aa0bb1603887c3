#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nckdv/errors.hpp"
#include "nckdv/scalar.hpp"

namespace nckdv {

// One jet variable u_{k1,k2} raised to a positive power. k1 counts
// x-derivatives, k2 counts y-derivatives.
struct VarPow {
    int k1 = 0;
    int k2 = 0;
    int pow = 1;

    friend auto operator<=>(const VarPow&, const VarPow&) = default;
};

// A monomial eps^eps_exp * mu^mu_exp * prod u_{k1,k2}^pow. eps_exp may be
// negative (Laurent coefficients of pseudo-differential operators carry
// eps^{-2} per u); mu_exp is always >= 0. vars is kept sorted by (k1, k2)
// with powers merged, which makes the ordering canonical.
struct Monomial2 {
    int eps_exp = 0;
    int mu_exp = 0;
    std::vector<VarPow> vars;

    friend auto operator<=>(const Monomial2&, const Monomial2&) = default;

    int factor_count() const;  // total u-multiplicity, counting powers
    int sum_k1() const;        // sum of k1 over factors, counting powers
    int sum_k2() const;        // sum of k2 over factors, counting powers
    bool is_u_free() const { return vars.empty(); }
};

// Sort vars, merge duplicates, drop zero powers. Throws on negative powers.
Monomial2 normalize_monomial(Monomial2 m);

// Degree caps used as ring quotients. A value of -1 means unbounded. The
// mu cap is always a sound quotient (mu_exp never decreases under ring
// operations); the eps cap is a sound quotient only on inputs with
// nonnegative eps exponents, which is the caller's obligation.
struct Caps {
    int eps_max = -1;
    int mu_max = -1;

    bool keeps(const Monomial2& m) const {
        if (mu_max >= 0 && m.mu_exp > mu_max) return false;
        if (eps_max >= 0 && m.eps_exp > eps_max) return false;
        return true;
    }
};

// Polynomial in the jet variables u_{k1,k2} over Gaussian rationals, Laurent
// in eps, polynomial in mu. Canonical form: fully expanded, zero
// coefficients erased, monomials in lexicographic map order.
struct DiffPoly2 {
    std::map<Monomial2, Scalar> terms;

    static DiffPoly2 zero() { return {}; }
    static DiffPoly2 constant(const Scalar& c);
    // u_{k1,k2} itself.
    static DiffPoly2 var(int k1, int k2);
    static DiffPoly2 monomial(Monomial2 m, const Scalar& c);

    bool is_zero() const { return terms.empty(); }
    bool is_u_free() const;
    // Smallest mu_exp over monomials; nullopt for the zero polynomial.
    std::optional<int> min_mu() const;
    std::optional<int> min_eps() const;
    std::optional<int> max_eps() const;

    void add_term(const Monomial2& m, const Scalar& c);

    DiffPoly2 operator-() const;
    DiffPoly2& operator+=(const DiffPoly2& o);
    DiffPoly2& operator-=(const DiffPoly2& o);

    bool operator==(const DiffPoly2& o) const { return terms == o.terms; }
};

DiffPoly2 operator+(DiffPoly2 a, const DiffPoly2& b);
DiffPoly2 operator-(DiffPoly2 a, const DiffPoly2& b);

DiffPoly2 scale(const DiffPoly2& p, const Scalar& c);
DiffPoly2 mul(const DiffPoly2& a, const DiffPoly2& b, const Caps& caps = {});

// Multiply by eps^d (d of either sign).
DiffPoly2 shift_eps(const DiffPoly2& p, int d);
// Multiply by mu^d (d >= 0).
DiffPoly2 shift_mu(const DiffPoly2& p, int d);

// Total derivatives on the jet space: dx sends u_{k1,k2} to u_{k1+1,k2} and
// dy sends it to u_{k1,k2+1}; both kill eps and mu.
DiffPoly2 dx(const DiffPoly2& p);
DiffPoly2 dy(const DiffPoly2& p);
DiffPoly2 dx_pow(DiffPoly2 p, int k);
DiffPoly2 dy_pow(DiffPoly2 p, int k);

// Formal partial derivative with respect to the single variable u_{k1,k2}.
DiffPoly2 partial_u(const DiffPoly2& p, int k1, int k2);

// Keep only monomials allowed by caps (export filter).
DiffPoly2 truncate(const DiffPoly2& p, const Caps& caps);
// Keep only monomials with mu_exp == 0 (classical projection).
DiffPoly2 project_mu_zero(const DiffPoly2& p);
// Keep only monomials with eps_exp == 0 (dispersionless projection).
DiffPoly2 project_eps_zero(const DiffPoly2& p);

// Moyal star product
//   f*g = sum_n sum_{k1+k2=n} (-1)^{k2} (i eps mu)^n / (2^n k1! k2!)
//         (dx^{k1} dy^{k2} f)(dx^{k2} dy^{k1} g).
// The order sum is bounded by order_cap if given (order_cap >= 0), and by
// caps.mu_max - min_mu(f) - min_mu(g) when caps.mu_max is set, whichever is
// smaller. With neither bound the sum terminates only when a factor is
// u-free; otherwise UnboundedStarSum is thrown. At order 0 this is the
// ordinary product, so moyal with mu_max = 0 reproduces the commutative ring.
DiffPoly2 moyal(const DiffPoly2& f, const DiffPoly2& g, const Caps& caps = {},
                int order_cap = -1);

// Exact antiderivative under dx. Solves dx(q) = p by exact linear algebra
// class by class (classes are cut by eps_exp, mu_exp, factor count and the
// k1/k2 sums, which dx preserves except for shifting the k1 sum by one).
// Throws NotATotalDerivative when no preimage exists, in particular for any
// u-free monomial or any monomial with sum_k1 == 0.
DiffPoly2 x_integrate(const DiffPoly2& p);

// Canonical JSON: {"monomials":[{"eps":e,"mu":m,"coeff":{"re":"p/q",
// "im":"r/s"},"vars":[[k1,k2,pow],...]}]} in map order. Parsing accepts
// exactly this shape and re-normalizes.
std::string to_json(const DiffPoly2& p);
DiffPoly2 diffpoly_from_json(const std::string& text);

// Human-readable rendering, deterministic, used by the CLI text output.
// Example: "1/2*u[0,0]^2 + 1/12*eps^2*u[2,0]".
std::string to_display(const DiffPoly2& p);

}  // namespace nckdv

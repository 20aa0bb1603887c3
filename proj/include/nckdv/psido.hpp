#pragma once

#include <limits>
#include <map>

#include "nckdv/diffpoly.hpp"

namespace nckdv {

// Working window for Laurent-series operator arithmetic. Orders below
// depth_floor are discarded. eps_max is the export window for flows
// (monomials with eps_exp > eps_max are dropped from final results) and, by
// default, also the internal mu cap: coefficient arithmetic truncates at
// mu_exp <= mu cap, which is the sound quotient form of the eps window
// (mu exponents never decrease under ring operations, while eps exponents of
// Laurent coefficients do). mu_max overrides the cap when >= -1; the
// sentinel -2 means "follow eps_max". mu_max = 0 runs the star product at
// order zero, i.e. the commutative specialization, cheaply.
struct Truncation {
    int depth_floor = -3;
    int eps_max = 4;
    int mu_max = -2;

    int mu_cap() const { return mu_max == -2 ? eps_max : mu_max; }
    Caps ring_caps() const { return Caps{-1, mu_cap()}; }

    friend bool operator==(const Truncation&, const Truncation&) = default;
};

// Pseudo-differential operator sum_i a_i dx^i with DiffPoly2 coefficients,
// stored sparsely by order, carrying its truncation window.
struct PsiDO {
    std::map<int, DiffPoly2> coeffs;
    Truncation trunc;

    static PsiDO zero(const Truncation& t) { return PsiDO{{}, t}; }
    static PsiDO monomial(int order, DiffPoly2 coeff, const Truncation& t);

    bool is_zero() const { return coeffs.empty(); }
    int top_order() const;  // throws on the zero operator
    const DiffPoly2& coeff(int order) const;  // zero polynomial when absent

    // Adds c at the given order, dropping orders below the window floor.
    void add_term(int order, const DiffPoly2& c);

    PsiDO operator-() const;
    PsiDO& operator+=(const PsiDO& o);
    PsiDO& operator-=(const PsiDO& o);
    bool operator==(const PsiDO& o) const { return coeffs == o.coeffs && trunc == o.trunc; }
};

PsiDO operator+(PsiDO a, const PsiDO& b);
PsiDO operator-(PsiDO a, const PsiDO& b);

PsiDO scale(const PsiDO& a, const Scalar& c);

// Operator composition within the shared window:
//   (a dx^i) o (b dx^j) = sum_{k>=0} C(i,k) (a * dx^k b) dx^{i+j-k}
// with the generalized binomial C(i,k) (i may be negative), truncated at
// order >= depth_floor. The coefficient product * is the Moyal star, or the
// plain commutative product when classical is set (the classical hierarchy
// runs through this independent code path, not through a mu = 0
// substitution). Throws TruncationMismatch when the operands disagree.
// min_order raises the floor for this one product when the caller only
// needs the result from some order up (the composition touches no deeper
// coefficients then); the operator window itself is unchanged.
PsiDO compose(const PsiDO& a, const PsiDO& b, bool classical = false,
              int min_order = std::numeric_limits<int>::min());

PsiDO commutator(const PsiDO& a, const PsiDO& b, bool classical = false);

// Projection onto the differential part (orders >= 0).
PsiDO positive_part(const PsiDO& a);
// Complement within the window (orders < 0).
PsiDO negative_part(const PsiDO& a);

// Coefficients agree at every order > floor.
bool equal_above(const PsiDO& a, const PsiDO& b, int floor);

// Square root of a monic second-order operator A = dx^2 + (lower orders) by
// defect iteration: B starts at dx, and for m = 1 down to depth_floor + 1
// the order-m defect of A - B o B fixes the order m-1 coefficient of B, so
// that A = B o B holds at all orders > depth_floor. Throws NotMonicOrderTwo
// when a defect sits above the order being corrected (top order != 2 or a
// non-unit leading coefficient) or survives inside the window.
PsiDO sqrt_op(const PsiDO& a, bool classical = false);

// A composed with itself n times (n >= 1).
PsiDO power(const PsiDO& a, int n, bool classical = false);

// JSON of the form {"top_order":n,"coeffs":{"<order>":<DiffPoly2>},
// "trunc":{"depth":d,"eps_max":e,"mu_max":m}}.
std::string to_json(const PsiDO& a);
PsiDO psido_from_json(const std::string& text);

}  // namespace nckdv

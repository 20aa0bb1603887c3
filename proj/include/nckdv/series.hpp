#pragma once

#include <string>
#include <vector>

#include "nckdv/scalar.hpp"

namespace nckdv {

// Dense polynomial in one integer parameter a with exact rational
// coefficients; the coefficient ring of the parametric power series below.
// A plain rational constant is the degree-0 case.
struct APoly {
    std::vector<Rational> c;  // c[k] multiplies a^k; trailing zeros trimmed

    APoly() = default;
    explicit APoly(Rational constant);

    static APoly variable();  // the monomial a
    static APoly monomial(int k, Rational coeff);

    void trim();
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    Rational coeff(int k) const;
    Rational eval(const Rational& a) const;

    APoly operator-() const;
    APoly& operator+=(const APoly& o);
    APoly& operator-=(const APoly& o);
    bool operator==(const APoly& o) const { return c == o.c; }
};

APoly operator+(APoly x, const APoly& y);
APoly operator-(APoly x, const APoly& y);
APoly operator*(const APoly& x, const APoly& y);
APoly scale(const APoly& x, const Rational& r);

std::string to_display(const APoly& p);  // e.g. "-1/24 + 1/24*a^2"

// Truncated power series in one formal variable z. Coefficients are exact
// polynomials in the integer parameter a (degree 0 when the series is
// scalar). Index k holds the z^k coefficient; order() is the truncation
// order, and trailing entries are kept even when zero so the order stays
// visible.
struct PowerSeries1 {
    std::vector<APoly> c;

    static PowerSeries1 zero(int order) {
        return PowerSeries1{std::vector<APoly>(static_cast<std::size_t>(order) + 1)};
    }
    static PowerSeries1 one(int order);

    int order() const { return static_cast<int>(c.size()) - 1; }
    APoly coeff(int k) const;

    bool operator==(const PowerSeries1& o) const { return c == o.c; }
};

PowerSeries1 add(const PowerSeries1& x, const PowerSeries1& y);
PowerSeries1 sub(const PowerSeries1& x, const PowerSeries1& y);
PowerSeries1 mul(const PowerSeries1& x, const PowerSeries1& y);  // min order
// Multiplicative inverse to the same order; requires constant term exactly 1.
PowerSeries1 inverse(const PowerSeries1& x);

// S(z) = sum_k z^{2k} / (2^{2k} (2k+1)!) = 1 + z^2/24 + z^4/1920 + ...
PowerSeries1 series_S(int order);
// S(az): coefficient of z^{2k} is a^{2k} / (2^{2k} (2k+1)!).
PowerSeries1 series_S_scaled(int order);
// T(a,z) = S(z)/S(az) with polynomial-in-a coefficients; Q_g(a) is the
// z^{2g} coefficient.
PowerSeries1 series_T_param(int order);
// U(a,z) = S(az)/S(z), the reciprocal family; the z^{2j} coefficient is the
// one-point polynomial U_j(a).
PowerSeries1 series_U_param(int order);
// T at a concrete integer mode.
PowerSeries1 series_T(long a, int order);
// 1/S(iz) = 1 + sum_g b_g z^{2g}, real after i^2 = -1 folds in.
PowerSeries1 series_bg(int order);

// Q_h(a), the z^{2h} coefficient of T(a,z); Q_0 = 1, Q_1 = (1-a^2)/24.
APoly q_poly(int h);
// U_j(a), the z^{2j} coefficient of U(a,z); U_1 = (a^2-1)/24.
APoly u_poly(int j);

}  // namespace nckdv

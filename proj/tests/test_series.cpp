#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nckdv/series.hpp"

using namespace nckdv;

namespace {

// S(iz): the even coefficients of S pick up alternating signs.
PowerSeries1 series_S_at_iz(int order) {
    PowerSeries1 s = series_S(order);
    for (int k = 2; k <= order; k += 4) {
        s.c[static_cast<std::size_t>(k)] = -s.c[static_cast<std::size_t>(k)];
    }
    return s;
}

}  // namespace

TEST_CASE("parameter polynomials evaluate and render") {
    APoly a = APoly::variable();
    APoly p = a * a - APoly(Rational(1));
    CHECK(p.degree() == 2);
    CHECK(p.eval(3) == 8);
    CHECK(p.eval(Rational(1, 2)) == Rational(-3, 4));
    CHECK(to_display(p) == "-1 + a^2");
    CHECK(to_display(scale(p, Rational(1, 24))) == "-1/24 + 1/24*a^2");
    CHECK((p - p).is_zero());
}

TEST_CASE("sinh kernel series coefficients") {
    PowerSeries1 s = series_S(8);
    CHECK(s.coeff(0) == APoly(Rational(1)));
    CHECK(s.coeff(1).is_zero());
    CHECK(s.coeff(2) == APoly(Rational(1, 24)));
    CHECK(s.coeff(4) == APoly(Rational(1, 1920)));
    CHECK(s.coeff(6) == APoly(Rational(1, 322560)));
    CHECK(s.coeff(8) == APoly(Rational(1, 92897280)));
}

TEST_CASE("scaled kernel tracks powers of the parameter") {
    PowerSeries1 s = series_S_scaled(6);
    CHECK(s.coeff(0) == APoly(Rational(1)));
    CHECK(s.coeff(2) == APoly::monomial(2, Rational(1, 24)));
    CHECK(s.coeff(4) == APoly::monomial(4, Rational(1, 1920)));
    CHECK(s.coeff(6) == APoly::monomial(6, Rational(1, 322560)));
}

TEST_CASE("q polynomials of the ratio series") {
    CHECK(q_poly(0) == APoly(Rational(1)));
    APoly q1 = q_poly(1);
    CHECK(q1.coeff(0) == Rational(1, 24));
    CHECK(q1.coeff(1) == 0);
    CHECK(q1.coeff(2) == Rational(-1, 24));
    APoly q2 = q_poly(2);
    CHECK(q2.coeff(0) == Rational(1, 1920));
    CHECK(q2.coeff(2) == Rational(-1, 576));
    CHECK(q2.coeff(4) == Rational(7, 5760));
    CHECK(q_poly(1).eval(1) == 0);
    CHECK(q_poly(2).eval(1) == 0);
}

TEST_CASE("u polynomials of the reciprocal ratio") {
    APoly u1 = u_poly(1);
    CHECK(u1.coeff(0) == Rational(-1, 24));
    CHECK(u1.coeff(2) == Rational(1, 24));
    APoly u2 = u_poly(2);
    CHECK(u2.coeff(0) == Rational(7, 5760));
    CHECK(u2.coeff(2) == Rational(-1, 576));
    CHECK(u2.coeff(4) == Rational(1, 1920));
    CHECK(u_poly(0) == APoly(Rational(1)));
}

TEST_CASE("ratio series are mutually inverse") {
    int order = 12;
    PowerSeries1 t = series_T_param(order);
    PowerSeries1 u = series_U_param(order);
    CHECK(mul(t, u) == PowerSeries1::one(order));
    CHECK(t.coeff(2) == q_poly(1));
    CHECK(t.coeff(4) == q_poly(2));
    CHECK(u.coeff(2) == u_poly(1));
    CHECK(u.coeff(4) == u_poly(2));
}

TEST_CASE("series inverse against multiplication") {
    PowerSeries1 s = series_S(12);
    CHECK(mul(s, inverse(s)) == PowerSeries1::one(12));
    PowerSeries1 t = series_T(3, 10);
    CHECK(mul(t, inverse(t)) == PowerSeries1::one(10));
}

TEST_CASE("ratio series at unit parameter collapses") {
    CHECK(series_T(1, 10) == PowerSeries1::one(10));
    CHECK(series_T(-1, 10) == PowerSeries1::one(10));
}

TEST_CASE("b series inverts the kernel at imaginary argument") {
    PowerSeries1 b = series_bg(20);
    CHECK(b.coeff(0) == APoly(Rational(1)));
    CHECK(b.coeff(2) == APoly(Rational(1, 24)));
    CHECK(b.coeff(4) == APoly(Rational(7, 5760)));
    CHECK(mul(b, series_S_at_iz(20)) == PowerSeries1::one(20));
}

TEST_CASE("arithmetic helpers agree with hand sums") {
    PowerSeries1 x = series_S(6);
    PowerSeries1 y = series_bg(6);
    CHECK(sub(add(x, y), y) == x);
    CHECK(mul(x, PowerSeries1::one(6)) == x);
    CHECK(mul(PowerSeries1::zero(6), y) == PowerSeries1::zero(6));
}

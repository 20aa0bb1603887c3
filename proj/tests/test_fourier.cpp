#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "nckdv/fourier.hpp"
#include "nckdv/hierarchy.hpp"

using namespace nckdv;

namespace {

DiffPoly2 u(int k1, int k2) { return DiffPoly2::var(k1, k2); }

ModePoly v(long mode, int k) { return ModePoly::var(mode, k); }

}  // namespace

TEST_CASE("mode polynomials enforce fourier homogeneity") {
    ModePoly p = v(2, 0);
    CHECK(p.total_mode == 2);
    ModeMonomial wrong{0, 0, {{1, 0, 1}}};
    CHECK_THROWS_AS(p.add_term(wrong, Scalar(1)), std::invalid_argument);
    ModeMonomial right{0, 0, {{1, 0, 1}, {1, 1, 1}}};
    ModePoly q = ModePoly::zero(2);
    q.add_term(right, Scalar(1));
    CHECK(q.total_mode == 2);
    CHECK(mul(p, q).total_mode == 4);
}

TEST_CASE("single jet variable expands to one mode factor") {
    // u_{0,1} at mode 2: the y-derivative turns into a factor 2i.
    ModePoly m = mode_expand(u(0, 1), {2});
    CHECK(m == scale(v(2, 0), Scalar(Rational(0), Rational(2))));
    CHECK(to_display(m) == "(2*i)*v[2,0]");
    // x-derivatives keep their jet index.
    CHECK(mode_expand(u(3, 0), {-1}) == v(-1, 3));
}

TEST_CASE("factors take modes in canonical monomial order") {
    ModePoly got = mode_expand(mul(u(0, 0), u(1, 0)), {2, 3});
    CHECK(got == mul(v(2, 0), v(3, 1)));
    ModePoly sq = mode_expand(mul(u(0, 0), u(0, 0)), {1, 2});
    CHECK(sq == mul(v(1, 0), v(2, 0)));
}

TEST_CASE("arity mismatches are rejected") {
    CHECK_THROWS_AS(mode_expand(u(0, 0), {1, 2}), ModeArityMismatch);
    CHECK_THROWS_AS(mode_expand(mul(u(0, 0), u(0, 0)), {1}), ModeArityMismatch);
}

TEST_CASE("mode sums cover every assignment within the bound") {
    DiffPoly2 uu = mul(u(0, 0), u(0, 0));
    ModePoly s = mode_expand_sum(uu, 0, 1);
    ModePoly expect = mul(v(0, 0), v(0, 0));
    expect += mul(v(-1, 0), v(1, 0));
    expect += mul(v(1, 0), v(-1, 0));
    CHECK(s == expect);
    // Mixed arities work monomial by monomial; u-free needs total mode 0.
    DiffPoly2 mixed = uu + shift_eps(DiffPoly2::constant(Scalar(1)), 2);
    ModePoly s0 = mode_expand_sum(mixed, 0, 1);
    CHECK(s0 == expect + shift_eps(ModePoly::constant(Scalar(1)), 2));
    ModePoly s2 = mode_expand_sum(mixed, 2, 1);
    CHECK(s2 == mul(v(1, 0), v(1, 0)));
}

TEST_CASE("first flow at mu zero gives the expected mode equation") {
    DiffPoly2 rhs = dx(flow(1, Truncation{-5, 4, 0}));
    ModePoly got = mode_expand_sum(rhs, 1, 1);
    // The product rule doubles the one half of P_1 = u*u/2, leaving the
    // convolution sum with unit coefficient plus the dispersive tail.
    CHECK(truncate(got, Caps{0, 0}) == mul(v(0, 0), v(1, 1)) + mul(v(0, 1), v(1, 0)));
    CHECK(got == mul(v(0, 0), v(1, 1)) + mul(v(0, 1), v(1, 0))
              + scale(shift_eps(v(1, 3), 2), Scalar(Rational(1, 12))));
}

TEST_CASE("mode star matches the jet star after expansion") {
    Caps caps{6, 6};
    DiffPoly2 f = u(0, 0);
    DiffPoly2 g = u(1, 0);
    DiffPoly2 fg = moyal(f, g, caps);
    long bound = 2;
    for (long a : {0L, 1L, 2L, -1L}) {
        ModePoly lhs = mode_expand_sum(fg, a, bound);
        ModePoly rhs = ModePoly::zero(a);
        for (long b1 = -2 * bound; b1 <= 2 * bound; ++b1) {
            long b2 = a - b1;
            if (b2 < -2 * bound || b2 > 2 * bound) continue;
            ModePoly pf = mode_expand_sum(f, b1, bound);
            ModePoly pg = mode_expand_sum(g, b2, bound);
            if (pf.is_zero() || pg.is_zero()) continue;
            rhs += mode_star(pf, pg, caps);
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("mode star without a cap needs zero modes on both sides") {
    CHECK_THROWS_AS(mode_star(v(1, 0), v(-1, 0), Caps{}), UnboundedStarSum);
    ModePoly z = v(0, 0);
    CHECK(mode_star(z, z, Caps{}) == mul(z, z));
}

TEST_CASE("transform kernel acts diagonally in the mode") {
    ModePoly v0 = v(0, 0);
    CHECK(t_transform(0, v0, 2) ==
          v0 + scale(shift_mu(shift_eps(v(0, 2), 2), 2), Scalar(Rational(1, 24))));
    ModePoly v2 = v(2, 0);
    CHECK(t_transform(2, v2, 2) ==
          v2 - scale(shift_mu(shift_eps(v(2, 2), 2), 2), Scalar(Rational(1, 8))));
    // Unit parameter: the kernel collapses to the identity at any order.
    CHECK(t_transform(1, v2, 6) == v2);
    CHECK(t_transform(-1, v2, 6) == v2);
    // q_poly(1) at a = 3 is (1-9)/24 = -1/3.
    CHECK(t_transform(3, v(3, 0), 2) ==
          v(3, 0) - scale(shift_mu(shift_eps(v(3, 2), 2), 2), Scalar(Rational(1, 3))));
}

TEST_CASE("mode derivative obeys leibniz") {
    ModePoly p = mul(v(1, 0), v(2, 1));
    CHECK(dx(p) == mul(v(1, 1), v(2, 1)) + mul(v(1, 0), v(2, 2)));
    CHECK(dx_pow(v(0, 0), 3) == v(0, 3));
}

TEST_CASE("json and display renderings are stable") {
    ModePoly p = v(2, 0) - scale(shift_mu(shift_eps(v(2, 2), 2), 2), Scalar(Rational(1, 8)));
    CHECK(to_display(p) == "v[2,0] - 1/8*eps^2*mu^2*v[2,2]");
    CHECK(to_json(p) == to_json(t_transform(2, v(2, 0), 2)));
}

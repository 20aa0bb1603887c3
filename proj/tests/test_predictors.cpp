#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "nckdv/predictors.hpp"
#include "nckdv/series.hpp"

using namespace nckdv;

TEST_CASE("one psi values at anchor points") {
    CHECK(one_psi_pixton(1, 0, 0) == Scalar(Rational(1, 24)));
    CHECK(one_psi_pixton(1, 0, 5) == Scalar(Rational(1, 24)));
    CHECK(one_psi_pixton(2, 0, 0) == Scalar(Rational(1, 1152)));
    CHECK(one_psi_pixton(2, 1, 0) == Scalar(Rational(-1, 576)));
    CHECK(one_psi_pixton(2, 1, 1) == Scalar(0));
    CHECK(one_psi_pixton(2, 1, 2) == Scalar(Rational(1, 192)));
    CHECK(one_psi_pixton(2, 1, 3) == Scalar(Rational(1, 72)));
    CHECK(one_psi_pixton(1, 1, 2) == Scalar(Rational(1, 8)));
}

TEST_CASE("one psi polynomial in the mode parameter") {
    APoly p21 = one_psi_polynomial(2, 1);
    CHECK(p21.coeff(0) == Rational(-1, 576));
    CHECK(p21.coeff(1) == 0);
    CHECK(p21.coeff(2) == Rational(1, 576));
    CHECK(one_psi_polynomial(1, 1) == scale(u_poly(1), Rational(1)));
    CHECK(one_psi_polynomial(2, 0) == scale(u_poly(0), Rational(1, 1152)));
}

TEST_CASE("t coefficients extend to genus zero") {
    CHECK(t_jg(0, 0, 7) == Scalar(1));
    CHECK(t_jg(1, 1, 2) == Scalar(Rational(1, 8)));
    CHECK(t_jg(2, 2, 0) == Scalar(u_poly(2).eval(0)));
    CHECK_THROWS_AS(one_psi_pixton(0, 0, 0), std::domain_error);
    CHECK_THROWS_AS(t_jg(-1, 0, 0), std::domain_error);
    CHECK_THROWS_AS(t_jg(2, 3, 0), std::domain_error);
}

TEST_CASE("top weight values match the u polynomial family") {
    for (int g = 1; g <= 3; ++g) {
        for (long a = 0; a <= 3; ++a) {
            CHECK(bssz(g, a) == Scalar(u_poly(g).eval(a)));
            CHECK(bssz(g, a) == t_jg(g, g, a));
        }
    }
    CHECK(bssz(1, 2) == Scalar(Rational(1, 8)));
    CHECK_THROWS_AS(bssz(0, 1), std::domain_error);
}

TEST_CASE("psi intersection recursion at closed form anchors") {
    CHECK(dvv_intersection(0, {0, 0, 0}) == Scalar(1));
    CHECK(dvv_intersection(1, {1}) == Scalar(Rational(1, 24)));
    CHECK(dvv_intersection(2, {4}) == Scalar(Rational(1, 1152)));
    CHECK(dvv_intersection(2, {2, 3}) == Scalar(Rational(29, 5760)));
    CHECK(dvv_intersection(1, {0, 1, 2}) == Scalar(Rational(1, 12)));
    CHECK(dvv_intersection(1, {0, 2}) == Scalar(Rational(1, 24)));
    CHECK(dvv_intersection(3, {7}) == Scalar(Rational(1, 82944)));
    // Dimension mismatches vanish.
    CHECK(dvv_intersection(1, {0, 0, 2}) == Scalar(0));
    CHECK(dvv_intersection(0, {1, 0, 0}) == Scalar(0));
}

TEST_CASE("genus zero closed form") {
    // <tau_{d_1}...tau_{d_n}>_0 = (n-3)! / prod d_i! when sum d = n-3.
    const std::vector<std::vector<long>> tuples = {
        {0, 0, 0}, {1, 0, 0, 0}, {2, 0, 0, 0, 0}, {1, 1, 0, 0, 0},
        {3, 0, 0, 0, 0, 0}, {2, 1, 0, 0, 0, 0}, {1, 1, 1, 0, 0, 0}};
    for (const auto& d : tuples) {
        Rational expect = factorial_q(static_cast<long>(d.size()) - 3);
        for (long di : d) expect /= factorial_q(di);
        CHECK(dvv_intersection(0, d) == Scalar(expect));
    }
}

TEST_CASE("string identity holds for the recursion") {
    // Tuples one unit above their dimension, so prepending tau_0 lands on a
    // nonzero bracket.
    const std::vector<std::pair<int, std::vector<long>>> bases = {
        {0, {2, 0, 0, 0}}, {0, {1, 1, 0, 0}}, {1, {2}}, {1, {1, 2}},
        {1, {0, 3}},       {2, {5}},          {2, {2, 4}}};
    for (const auto& [g, d] : bases) {
        std::vector<long> with_zero = {0};
        with_zero.insert(with_zero.end(), d.begin(), d.end());
        Scalar lowered_sum(0);
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d[i] == 0) continue;
            std::vector<long> lowered = d;
            lowered[i] -= 1;
            lowered_sum += dvv_intersection(g, lowered);
        }
        CHECK(dvv_intersection(g, with_zero) == lowered_sum);
        CHECK(!lowered_sum.is_zero());
    }
}

TEST_CASE("dilaton identity holds for the recursion") {
    // Dimension-valid tuples, so prepending tau_1 scales by 2g-2+n.
    const std::vector<std::pair<int, std::vector<long>>> bases = {
        {0, {0, 0, 0}}, {0, {1, 0, 0, 0}}, {1, {1}}, {1, {0, 2}}, {2, {4}},
        {2, {2, 3}}};
    for (const auto& [g, d] : bases) {
        std::vector<long> with_one = {1};
        with_one.insert(with_one.end(), d.begin(), d.end());
        long euler = 2 * g - 2 + static_cast<long>(d.size());
        CHECK(dvv_intersection(g, with_one) ==
              Scalar(Rational(euler)) * dvv_intersection(g, d));
        CHECK(!dvv_intersection(g, d).is_zero());
    }
    CHECK(dvv_intersection(2, {1, 4}) == Scalar(Rational(1, 384)));
}

TEST_CASE("ratio check values and expectations") {
    CHECK(rjg_value(1, 0, 2) == Rational(1, 24));
    CHECK(rjg_value(0, 0, 3) == Rational(1));
    for (int g = 0; g <= 2; ++g) {
        for (int j = 0; j <= g; ++j) {
            for (long a = 0; a <= 3; ++a) {
                CHECK(check_rjg(g, j, a));
            }
        }
    }
}

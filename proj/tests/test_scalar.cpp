#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "nckdv/scalar.hpp"

using namespace nckdv;

TEST_CASE("rational parsing and rendering are canonical") {
    CHECK(rational_from_string("2/4") == Rational(1, 2));
    CHECK(rational_from_string("-3/6") == Rational(-1, 2));
    CHECK(rational_from_string("7") == Rational(7));
    CHECK(rational_to_string(Rational(1, 2)) == "1/2");
    CHECK(rational_to_string(Rational(-5)) == "-5");
    CHECK(rational_to_string(rational_from_string("10/5")) == "2");
}

TEST_CASE("factorials and double factorials") {
    CHECK(factorial_q(0) == 1);
    CHECK(factorial_q(5) == 120);
    CHECK(factorial_q(10) == 3628800);
    CHECK(odd_double_factorial_q(-1) == 1);
    CHECK(odd_double_factorial_q(0) == 1);
    CHECK(odd_double_factorial_q(1) == 3);
    CHECK(odd_double_factorial_q(2) == 15);
    CHECK(odd_double_factorial_q(3) == 105);
    CHECK(odd_double_factorial_q(4) == 945);
}

TEST_CASE("binomials, ordinary and generalized") {
    CHECK(binomial_q(5, 2) == 10);
    CHECK(binomial_q(5, 0) == 1);
    CHECK(binomial_q(3, 5) == 0);
    CHECK(generalized_binomial_q(4, 2) == 6);
    CHECK(generalized_binomial_q(4, 0) == 1);
    CHECK(generalized_binomial_q(4, 5) == 0);
    // C(-1,k) = (-1)^k and C(-2,2) = 3 from the falling factorial.
    CHECK(generalized_binomial_q(-1, 3) == -1);
    CHECK(generalized_binomial_q(-2, 2) == 3);
    CHECK(generalized_binomial_q(-3, 1) == -3);
}

TEST_CASE("integer powers") {
    CHECK(pow2_q(0) == 1);
    CHECK(pow2_q(3) == 8);
    CHECK(pow2_q(-2) == Rational(1, 4));
    CHECK(int_pow_q(-3, 3) == -27);
    CHECK(int_pow_q(5, 0) == 1);
    CHECK(int_pow_q(24, 2) == 576);
}

TEST_CASE("gaussian rational arithmetic") {
    Scalar i = Scalar::unit_i();
    CHECK(i * i == Scalar(-1));
    CHECK(Scalar::i_power(0) == Scalar(1));
    CHECK(Scalar::i_power(1) == i);
    CHECK(Scalar::i_power(2) == Scalar(-1));
    CHECK(Scalar::i_power(3) == -i);
    CHECK(Scalar::i_power(4) == Scalar(1));

    Scalar z(Rational(1), Rational(2));  // 1 + 2i
    Scalar w(Rational(3), Rational(-1));  // 3 - i
    CHECK(z * w == Scalar(Rational(5), Rational(5)));
    CHECK(z + w == Scalar(Rational(4), Rational(1)));
    CHECK(z - w == Scalar(Rational(-2), Rational(3)));
    CHECK(z * z.inverse() == Scalar(1));
    CHECK(z.inverse() == Scalar(Rational(1, 5), Rational(-2, 5)));
    CHECK(z / z == Scalar(1));
    CHECK(!z.is_real());
    CHECK(Scalar(Rational(7, 3)).is_real());
    CHECK_THROWS_AS(Scalar(0).inverse(), std::domain_error);
}

TEST_CASE("real-by-real products stay on the fast path with the same result") {
    Scalar a(Rational(3, 7));
    Scalar b(Rational(-14, 9));
    Scalar p = a * b;
    CHECK(p == Scalar(Rational(-2, 3)));
    CHECK(p.is_real());
}

TEST_CASE("field axioms on sample values") {
    const Scalar vals[] = {Scalar(Rational(1, 2)), Scalar(Rational(0), Rational(1)),
                           Scalar(Rational(-2, 3), Rational(1, 5)), Scalar(3)};
    for (const Scalar& a : vals) {
        for (const Scalar& b : vals) {
            CHECK(a * b == b * a);
            for (const Scalar& c : vals) {
                CHECK((a * b) * c == a * (b * c));
                CHECK(a * (b + c) == a * b + a * c);
            }
        }
    }
}

TEST_CASE("scalar rendering") {
    CHECK(scalar_to_string(Scalar(Rational(1, 2))) == "1/2");
    CHECK(scalar_to_string(Scalar(Rational(0), Rational(1))) == "1*i");
    CHECK(scalar_to_string(Scalar(Rational(0), Rational(-2, 3))) == "-2/3*i");
    CHECK(scalar_to_string(Scalar(Rational(1), Rational(1))) == "1+1*i");
    CHECK(scalar_to_string(Scalar(Rational(1, 2), Rational(-1, 3))) == "1/2-1/3*i");
    CHECK(scalar_to_string(Scalar(0)) == "0");
}

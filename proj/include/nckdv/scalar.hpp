#pragma once

#include <gmpxx.h>

#include <string>

namespace nckdv {

using Rational = mpq_class;

// Parse "p/q" or "p" (optional sign) into a canonical rational.
Rational rational_from_string(const std::string& s);

// Render in lowest terms as "p/q", or "p" when the denominator is 1.
std::string rational_to_string(const Rational& q);

// n! as a rational (n >= 0).
Rational factorial_q(long n);

// Odd double factorial (2n+1)!! for n >= -1, with (-1)!! = 1.
Rational odd_double_factorial_q(long n);

// Binomial coefficient over the integers, n >= 0 and arbitrary integer top is
// not needed here; both arguments are nonnegative with k <= n in callers, but
// k > n safely yields 0.
Rational binomial_q(long n, long k);

// Generalized binomial C(i, k) for integer i of either sign and k >= 0:
// i(i-1)...(i-k+1)/k!. Used for composing dx^i with i negative.
Rational generalized_binomial_q(long i, long k);

// 2^n for n of either sign.
Rational pow2_q(long n);

// base^exp for integer base of either sign and exp >= 0.
Rational int_pow_q(long base, long exp);

// Gaussian rational re + im*i with i^2 = -1, the coefficient field of the
// whole workbench. All arithmetic is exact.
struct Scalar {
    Rational re{0};
    Rational im{0};

    Scalar() = default;
    Scalar(long v) : re(v) {}  // NOLINT: implicit by design, mirrors mpq_class
    Scalar(Rational v) : re(std::move(v)) {}
    Scalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static Scalar unit_i() { return Scalar(Rational(0), Rational(1)); }

    // i^k for k >= 0, cycling through 1, i, -1, -i.
    static Scalar i_power(long k);

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    Scalar operator-() const { return Scalar(-re, -im); }
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);

    // Multiplicative inverse; throws std::domain_error on zero.
    Scalar inverse() const;

    bool operator==(const Scalar& o) const { return re == o.re && im == o.im; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
};

Scalar operator+(Scalar a, const Scalar& b);
Scalar operator-(Scalar a, const Scalar& b);
Scalar operator*(Scalar a, const Scalar& b);
Scalar operator/(const Scalar& a, const Scalar& b);

// "p/q" when real, "p/q+r/s*i" or "p/q-r/s*i" otherwise, "r/s*i" when purely
// imaginary. Deterministic, used by the JSON layer and CLI output.
std::string scalar_to_string(const Scalar& s);

}  // namespace nckdv

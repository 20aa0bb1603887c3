#include "nckdv/scalar.hpp"

#include <stdexcept>

namespace nckdv {

Rational rational_from_string(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) {
        throw std::invalid_argument("rational_from_string: bad literal '" + s + "'");
    }
    if (q.get_den() == 0) {
        throw std::invalid_argument("rational_from_string: zero denominator in '" + s + "'");
    }
    q.canonicalize();
    return q;
}

std::string rational_to_string(const Rational& q) {
    return q.get_str();
}

Rational factorial_q(long n) {
    if (n < 0) throw std::domain_error("factorial_q: negative argument");
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

Rational odd_double_factorial_q(long n) {
    if (n < -1) throw std::domain_error("odd_double_factorial_q: argument below -1");
    mpz_class f = 1;
    for (long k = 3; k <= 2 * n + 1; k += 2) f *= k;
    return Rational(f);
}

Rational binomial_q(long n, long k) {
    if (n < 0 || k < 0) throw std::domain_error("binomial_q: negative argument");
    if (k > n) return Rational(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
}

Rational generalized_binomial_q(long i, long k) {
    if (k < 0) throw std::domain_error("generalized_binomial_q: negative k");
    Rational num = 1;
    for (long j = 0; j < k; ++j) num *= Rational(i - j);
    return num / factorial_q(k);
}

Rational pow2_q(long n) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(n < 0 ? -n : n));
    if (n >= 0) return Rational(p);
    Rational q(1, p);
    q.canonicalize();
    return q;
}

Rational int_pow_q(long base, long exp) {
    if (exp < 0) throw std::domain_error("int_pow_q: negative exponent");
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(base < 0 ? -base : base),
                  static_cast<unsigned long>(exp));
    if (base < 0 && exp % 2 == 1) p = -p;
    return Rational(p);
}

Scalar Scalar::i_power(long k) {
    if (k < 0) throw std::domain_error("Scalar::i_power: negative exponent");
    switch (k % 4) {
        case 0: return Scalar(1);
        case 1: return unit_i();
        case 2: return Scalar(-1);
        default: return Scalar(Rational(0), Rational(-1));
    }
}

Scalar& Scalar::operator+=(const Scalar& o) {
    re += o.re;
    im += o.im;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (im == 0 && o.im == 0) {
        re *= o.re;
        return *this;
    }
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

Scalar Scalar::inverse() const {
    Rational n = re * re + im * im;
    if (n == 0) throw std::domain_error("Scalar::inverse: zero");
    return Scalar(re / n, -im / n);
}

Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

std::string scalar_to_string(const Scalar& s) {
    if (s.im == 0) return rational_to_string(s.re);
    std::string imag = rational_to_string(s.im) + "*i";
    if (s.re == 0) return imag;
    if (s.im > 0) return rational_to_string(s.re) + "+" + imag;
    return rational_to_string(s.re) + imag;  // im < 0 carries its own sign
}

}  // namespace nckdv

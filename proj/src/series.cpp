#include "nckdv/series.hpp"

#include <sstream>
#include <stdexcept>

namespace nckdv {

APoly::APoly(Rational constant) {
    if (constant != 0) c.push_back(std::move(constant));
}

APoly APoly::variable() { return monomial(1, Rational(1)); }

APoly APoly::monomial(int k, Rational coeff) {
    APoly p;
    if (coeff != 0) {
        p.c.assign(static_cast<std::size_t>(k) + 1, Rational(0));
        p.c.back() = std::move(coeff);
    }
    return p;
}

void APoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

Rational APoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c.size())) return Rational(0);
    return c[static_cast<std::size_t>(k)];
}

Rational APoly::eval(const Rational& a) const {
    Rational acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * a + *it;
    return acc;
}

APoly APoly::operator-() const {
    APoly r = *this;
    for (auto& x : r.c) x = -x;
    return r;
}

APoly& APoly::operator+=(const APoly& o) {
    if (c.size() < o.c.size()) c.resize(o.c.size(), Rational(0));
    for (std::size_t k = 0; k < o.c.size(); ++k) c[k] += o.c[k];
    trim();
    return *this;
}

APoly& APoly::operator-=(const APoly& o) {
    if (c.size() < o.c.size()) c.resize(o.c.size(), Rational(0));
    for (std::size_t k = 0; k < o.c.size(); ++k) c[k] -= o.c[k];
    trim();
    return *this;
}

APoly operator+(APoly x, const APoly& y) {
    x += y;
    return x;
}

APoly operator-(APoly x, const APoly& y) {
    x -= y;
    return x;
}

APoly operator*(const APoly& x, const APoly& y) {
    if (x.is_zero() || y.is_zero()) return APoly{};
    APoly r;
    r.c.assign(x.c.size() + y.c.size() - 1, Rational(0));
    for (std::size_t i = 0; i < x.c.size(); ++i) {
        if (x.c[i] == 0) continue;
        for (std::size_t j = 0; j < y.c.size(); ++j) r.c[i + j] += x.c[i] * y.c[j];
    }
    r.trim();
    return r;
}

APoly scale(const APoly& x, const Rational& r) {
    if (r == 0) return APoly{};
    APoly out = x;
    for (auto& v : out.c) v *= r;
    return out;
}

std::string to_display(const APoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < p.c.size(); ++k) {
        const Rational& v = p.c[k];
        if (v == 0) continue;
        Rational mag = v < 0 ? Rational(-v) : v;
        if (first) {
            if (v < 0) os << "-";
            first = false;
        } else {
            os << (v < 0 ? " - " : " + ");
        }
        if (k == 0) {
            os << rational_to_string(mag);
        } else {
            if (mag != 1) os << rational_to_string(mag) << "*";
            os << "a";
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

PowerSeries1 PowerSeries1::one(int order) {
    PowerSeries1 s = zero(order);
    s.c[0] = APoly(Rational(1));
    return s;
}

APoly PowerSeries1::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c.size())) return APoly{};
    return c[static_cast<std::size_t>(k)];
}

namespace {

int min_order(const PowerSeries1& x, const PowerSeries1& y) {
    return std::min(x.order(), y.order());
}

}  // namespace

PowerSeries1 add(const PowerSeries1& x, const PowerSeries1& y) {
    PowerSeries1 r = PowerSeries1::zero(min_order(x, y));
    for (int k = 0; k <= r.order(); ++k)
        r.c[static_cast<std::size_t>(k)] = x.coeff(k) + y.coeff(k);
    return r;
}

PowerSeries1 sub(const PowerSeries1& x, const PowerSeries1& y) {
    PowerSeries1 r = PowerSeries1::zero(min_order(x, y));
    for (int k = 0; k <= r.order(); ++k)
        r.c[static_cast<std::size_t>(k)] = x.coeff(k) - y.coeff(k);
    return r;
}

PowerSeries1 mul(const PowerSeries1& x, const PowerSeries1& y) {
    PowerSeries1 r = PowerSeries1::zero(min_order(x, y));
    for (int i = 0; i <= r.order(); ++i) {
        if (x.coeff(i).is_zero()) continue;
        for (int j = 0; i + j <= r.order(); ++j)
            r.c[static_cast<std::size_t>(i + j)] += x.coeff(i) * y.coeff(j);
    }
    return r;
}

PowerSeries1 inverse(const PowerSeries1& x) {
    if (!(x.coeff(0) == APoly(Rational(1))))
        throw std::domain_error("series inverse requires constant term 1");
    PowerSeries1 r = PowerSeries1::zero(x.order());
    r.c[0] = APoly(Rational(1));
    for (int k = 1; k <= x.order(); ++k) {
        APoly acc;
        for (int j = 1; j <= k; ++j) acc += x.coeff(j) * r.coeff(k - j);
        r.c[static_cast<std::size_t>(k)] = -acc;
    }
    return r;
}

PowerSeries1 series_S(int order) {
    PowerSeries1 s = PowerSeries1::zero(order);
    for (int k = 0; 2 * k <= order; ++k) {
        Rational v = Rational(1) / (pow2_q(2 * k) * factorial_q(2 * k + 1));
        s.c[static_cast<std::size_t>(2 * k)] = APoly(v);
    }
    return s;
}

PowerSeries1 series_S_scaled(int order) {
    PowerSeries1 s = PowerSeries1::zero(order);
    for (int k = 0; 2 * k <= order; ++k) {
        Rational v = Rational(1) / (pow2_q(2 * k) * factorial_q(2 * k + 1));
        s.c[static_cast<std::size_t>(2 * k)] = APoly::monomial(2 * k, v);
    }
    return s;
}

PowerSeries1 series_T_param(int order) {
    return mul(series_S(order), inverse(series_S_scaled(order)));
}

PowerSeries1 series_U_param(int order) {
    return mul(series_S_scaled(order), inverse(series_S(order)));
}

PowerSeries1 series_T(long a, int order) {
    PowerSeries1 t = series_T_param(order);
    PowerSeries1 r = PowerSeries1::zero(order);
    for (int k = 0; k <= order; ++k)
        r.c[static_cast<std::size_t>(k)] = APoly(t.coeff(k).eval(Rational(a)));
    return r;
}

PowerSeries1 series_bg(int order) {
    // S(iz) has z^{2k} coefficient i^{2k} s_k = (-1)^k s_k, already real.
    PowerSeries1 s = PowerSeries1::zero(order);
    for (int k = 0; 2 * k <= order; ++k) {
        Rational v = Rational(1) / (pow2_q(2 * k) * factorial_q(2 * k + 1));
        if (k % 2 == 1) v = -v;
        s.c[static_cast<std::size_t>(2 * k)] = APoly(v);
    }
    return inverse(s);
}

APoly q_poly(int h) {
    if (h < 0) throw std::domain_error("q_poly: negative index");
    return series_T_param(2 * h).coeff(2 * h);
}

APoly u_poly(int j) {
    if (j < 0) throw std::domain_error("u_poly: negative index");
    return series_U_param(2 * j).coeff(2 * j);
}

}  // namespace nckdv

#include "nckdv/predictors.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace nckdv {

namespace {

void require_range(int g, int j, int g_min, const char* who) {
    if (g < g_min || j < 0 || j > g) {
        throw std::domain_error(std::string(who) + ": indices out of range");
    }
}

// Shared closed form: U_j(a) / (24^{g-j} (g-j)!).
Rational closed_form(int g, int j, const Rational& a) {
    Rational numer = u_poly(j).eval(a);
    Rational denom = int_pow_q(24, g - j) * factorial_q(g - j);
    return numer / denom;
}

}  // namespace

Scalar one_psi_pixton(int g, int j, long a) {
    require_range(g, j, 1, "one_psi_pixton");
    return Scalar(closed_form(g, j, Rational(a)));
}

APoly one_psi_polynomial(int g, int j) {
    require_range(g, j, 1, "one_psi_polynomial");
    Rational denom = int_pow_q(24, g - j) * factorial_q(g - j);
    return scale(u_poly(j), Rational(1) / denom);
}

Scalar t_jg(int g, int j, long a) {
    require_range(g, j, 0, "t_jg");
    return Scalar(closed_form(g, j, Rational(a)));
}

Scalar bssz(int g, long a) {
    if (g < 1) throw std::domain_error("bssz: g must be positive");
    return Scalar(u_poly(g).eval(Rational(a)));
}

namespace {

using DvvKey = std::pair<int, std::vector<long>>;
std::map<DvvKey, Rational> dvv_memo;
std::mutex dvv_mutex;

Rational dvv_value(int g, std::vector<long> d) {
    if (g < 0) return 0;
    const int n = static_cast<int>(d.size());
    if (n == 0) return 0;
    long total = 0;
    for (long v : d) {
        if (v < 0) return 0;
        total += v;
    }
    if (2 * g - 2 + n <= 0) return 0;
    if (total != 3 * g - 3 + n) return 0;

    std::sort(d.begin(), d.end(), std::greater<>());
    if (g == 0 && n == 3) return 1;
    if (g == 1 && n == 1) return Rational(1, 24);

    DvvKey key{g, d};
    {
        std::lock_guard<std::mutex> lock(dvv_mutex);
        auto it = dvv_memo.find(key);
        if (it != dvv_memo.end()) return it->second;
    }

    Rational result(0);
    if (d.back() == 0) {
        // String equation: drop one tau_0, lower each remaining index.
        std::vector<long> rest(d.begin(), d.end() - 1);
        for (std::size_t i = 0; i < rest.size(); ++i) {
            if (rest[i] < 1) continue;
            std::vector<long> lowered = rest;
            lowered[i] -= 1;
            result += dvv_value(g, std::move(lowered));
        }
    } else {
        // DVV recursion on the largest index, written as tau_{k+1}.
        const long k = d.front() - 1;
        const std::vector<long> rest(d.begin() + 1, d.end());
        const auto r = rest.size();

        for (std::size_t i = 0; i < r; ++i) {
            std::vector<long> moved = rest;
            moved[i] += k;
            Rational w = odd_double_factorial_q(k + rest[i]) /
                         odd_double_factorial_q(rest[i] - 1);
            result += w * dvv_value(g, std::move(moved));
        }

        Rational quad(0);
        for (long x = 0; x + 1 <= k; ++x) {
            const long y = k - 1 - x;
            Rational w = odd_double_factorial_q(x) * odd_double_factorial_q(y);

            std::vector<long> joined = rest;
            joined.push_back(x);
            joined.push_back(y);
            quad += w * dvv_value(g - 1, std::move(joined));

            for (int g1 = 0; g1 <= g; ++g1) {
                for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
                    std::vector<long> left{x};
                    std::vector<long> right{y};
                    for (std::size_t i = 0; i < r; ++i) {
                        if (mask & (std::size_t{1} << i)) {
                            left.push_back(rest[i]);
                        } else {
                            right.push_back(rest[i]);
                        }
                    }
                    Rational lv = dvv_value(g1, std::move(left));
                    if (lv == 0) continue;
                    quad += w * lv * dvv_value(g - g1, std::move(right));
                }
            }
        }
        result += quad / 2;
        result /= odd_double_factorial_q(k + 1);
    }

    std::lock_guard<std::mutex> lock(dvv_mutex);
    dvv_memo.emplace(std::move(key), result);
    return result;
}

}  // namespace

Scalar dvv_intersection(int g, const std::vector<long>& d) {
    return Scalar(dvv_value(g, d));
}

Rational rjg_value(int g, int j, long a) {
    require_range(g, j, 0, "rjg_value");
    Rational sum(0);
    for (int h = 0; h <= j; ++h) {
        sum += closed_form(g - h, j - h, Rational(a)) * q_poly(h).eval(Rational(a));
    }
    return sum;
}

Rational rjg_value(int g, int j, long a, const IntersectionTable& table) {
    require_range(g, j, 0, "rjg_value");
    Rational sum(0);
    for (int h = 0; h <= j; ++h) {
        const int gp = g - h;
        const int jp = j - h;
        IntersectionKey key =
            make_key(gp, jp, {{a, 3 * gp - jp}, {-a, 0}, {0, 0}});
        const Scalar& t = table.value(key);
        if (!t.is_real()) throw std::logic_error("rjg_value: complex table entry");
        sum += t.re * q_poly(h).eval(Rational(a));
    }
    return sum;
}

namespace {

Rational rjg_expected(int g, int j) {
    if (j != 0) return 0;
    return Rational(1) / (int_pow_q(24, g) * factorial_q(g));
}

}  // namespace

bool check_rjg(int g, int j, long a) {
    return rjg_value(g, j, a) == rjg_expected(g, j);
}

bool check_rjg(int g, int j, long a, const IntersectionTable& table) {
    return rjg_value(g, j, a, table) == rjg_expected(g, j);
}

}  // namespace nckdv

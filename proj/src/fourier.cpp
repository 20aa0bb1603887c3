#include "nckdv/fourier.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"

namespace nckdv {

int ModeMonomial::factor_count() const {
    int n = 0;
    for (const auto& v : vars) n += v.pow;
    return n;
}

long ModeMonomial::mode_sum() const {
    long n = 0;
    for (const auto& v : vars) n += v.mode * v.pow;
    return n;
}

ModeMonomial normalize_mode_monomial(ModeMonomial m) {
    std::sort(m.vars.begin(), m.vars.end(), [](const ModeVar& a, const ModeVar& b) {
        return std::tie(a.mode, a.k) < std::tie(b.mode, b.k);
    });
    std::vector<ModeVar> merged;
    for (const auto& v : m.vars) {
        if (!merged.empty() && merged.back().mode == v.mode && merged.back().k == v.k) {
            merged.back().pow += v.pow;
        } else {
            merged.push_back(v);
        }
    }
    std::erase_if(merged, [](const ModeVar& v) { return v.pow == 0; });
    for (const auto& v : merged) {
        if (v.pow < 0) throw std::invalid_argument("normalize_mode_monomial: negative power");
    }
    m.vars = std::move(merged);
    return m;
}

ModePoly ModePoly::zero(long total_mode) {
    ModePoly p;
    p.total_mode = total_mode;
    return p;
}

ModePoly ModePoly::var(long mode, int k) {
    ModePoly p;
    p.total_mode = mode;
    ModeMonomial m;
    m.vars.push_back(ModeVar{mode, k, 1});
    p.add_term(m, Scalar(1));
    return p;
}

ModePoly ModePoly::constant(const Scalar& c) {
    ModePoly p;
    p.add_term(ModeMonomial{}, c);
    return p;
}

int ModePoly::min_mu_or(int fallback) const {
    int best = fallback;
    bool found = false;
    for (const auto& [m, c] : terms) {
        (void)c;
        if (!found || m.mu_exp < best) best = m.mu_exp;
        found = true;
    }
    return found ? best : fallback;
}

void ModePoly::add_term(const ModeMonomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    ModeMonomial key = normalize_mode_monomial(m);
    if (key.eps_exp < 0 || key.mu_exp < 0) {
        throw std::invalid_argument("ModePoly::add_term: negative eps or mu exponent");
    }
    if (key.mode_sum() != total_mode) {
        throw std::invalid_argument("ModePoly::add_term: monomial breaks Fourier homogeneity");
    }
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

ModePoly ModePoly::operator-() const {
    ModePoly r = *this;
    for (auto& [m, c] : r.terms) c = -c;
    return r;
}

namespace {

void require_same_mode(const ModePoly& a, const ModePoly& b, const char* site) {
    if (a.total_mode != b.total_mode) {
        throw std::invalid_argument(std::string(site) + ": total modes differ");
    }
}

}  // namespace

ModePoly& ModePoly::operator+=(const ModePoly& o) {
    require_same_mode(*this, o, "ModePoly::operator+=");
    for (const auto& [m, c] : o.terms) add_term(m, c);
    return *this;
}

ModePoly& ModePoly::operator-=(const ModePoly& o) {
    require_same_mode(*this, o, "ModePoly::operator-=");
    for (const auto& [m, c] : o.terms) add_term(m, -c);
    return *this;
}

ModePoly operator+(ModePoly p, const ModePoly& q) {
    p += q;
    return p;
}

ModePoly operator-(ModePoly p, const ModePoly& q) {
    p -= q;
    return p;
}

ModePoly scale(const ModePoly& p, const Scalar& c) {
    ModePoly r = ModePoly::zero(p.total_mode);
    if (c.is_zero()) return r;
    for (const auto& [m, v] : p.terms) r.terms.emplace(m, v * c);
    return r;
}

ModePoly mul(const ModePoly& p, const ModePoly& q, const Caps& caps) {
    ModePoly r = ModePoly::zero(p.total_mode + q.total_mode);
    for (const auto& [mp, cp] : p.terms) {
        for (const auto& [mq, cq] : q.terms) {
            ModeMonomial m;
            m.eps_exp = mp.eps_exp + mq.eps_exp;
            m.mu_exp = mp.mu_exp + mq.mu_exp;
            if (caps.mu_max >= 0 && m.mu_exp > caps.mu_max) continue;
            if (caps.eps_max >= 0 && m.eps_exp > caps.eps_max) continue;
            m.vars = mp.vars;
            m.vars.insert(m.vars.end(), mq.vars.begin(), mq.vars.end());
            r.add_term(m, cp * cq);
        }
    }
    return r;
}

ModePoly shift_eps(const ModePoly& p, int d) {
    if (d < 0) throw std::invalid_argument("shift_eps(ModePoly): negative shift");
    ModePoly r = ModePoly::zero(p.total_mode);
    for (const auto& [m, c] : p.terms) {
        ModeMonomial t = m;
        t.eps_exp += d;
        r.terms.emplace(std::move(t), c);
    }
    return r;
}

ModePoly shift_mu(const ModePoly& p, int d) {
    if (d < 0) throw std::invalid_argument("shift_mu(ModePoly): negative shift");
    ModePoly r = ModePoly::zero(p.total_mode);
    for (const auto& [m, c] : p.terms) {
        ModeMonomial t = m;
        t.mu_exp += d;
        r.terms.emplace(std::move(t), c);
    }
    return r;
}

ModePoly dx(const ModePoly& p) {
    ModePoly r = ModePoly::zero(p.total_mode);
    for (const auto& [m, c] : p.terms) {
        for (std::size_t i = 0; i < m.vars.size(); ++i) {
            ModeMonomial t = m;
            Scalar coeff = c * Scalar(static_cast<long>(m.vars[i].pow));
            t.vars[i].pow -= 1;
            t.vars.push_back(ModeVar{m.vars[i].mode, m.vars[i].k + 1, 1});
            r.add_term(t, coeff);
        }
    }
    return r;
}

ModePoly dx_pow(ModePoly p, int k) {
    if (k < 0) throw std::invalid_argument("dx_pow(ModePoly): negative power");
    for (int i = 0; i < k; ++i) p = dx(p);
    return p;
}

ModePoly truncate(const ModePoly& p, const Caps& caps) {
    ModePoly r = ModePoly::zero(p.total_mode);
    for (const auto& [m, c] : p.terms) {
        if (caps.mu_max >= 0 && m.mu_exp > caps.mu_max) continue;
        if (caps.eps_max >= 0 && m.eps_exp > caps.eps_max) continue;
        r.terms.emplace(m, c);
    }
    return r;
}

namespace {

// The factor list of m expanded with multiplicity, in canonical order.
std::vector<VarPow> expanded_factors(const Monomial2& m) {
    std::vector<VarPow> out;
    for (const auto& v : m.vars) {
        for (int i = 0; i < v.pow; ++i) out.push_back(VarPow{v.k1, v.k2, 1});
    }
    return out;
}

// Core substitution for one monomial and one mode tuple.
void expand_monomial_into(ModePoly& acc, const Monomial2& m, const Scalar& c,
                          const std::vector<VarPow>& factors, const std::vector<long>& modes) {
    ModeMonomial t;
    t.eps_exp = m.eps_exp;
    t.mu_exp = m.mu_exp;
    Scalar coeff = c;
    for (std::size_t j = 0; j < factors.size(); ++j) {
        const long a = modes[j];
        const int k2 = factors[j].k2;
        coeff *= Scalar::i_power(k2) * Scalar(int_pow_q(a, k2));
        if (coeff.is_zero()) return;
        t.vars.push_back(ModeVar{a, factors[j].k1, 1});
    }
    acc.add_term(t, coeff);
}

}  // namespace

ModePoly mode_expand(const DiffPoly2& f, const std::vector<long>& modes) {
    long total = 0;
    for (long a : modes) total += a;
    ModePoly r = ModePoly::zero(total);
    for (const auto& [m, c] : f.terms) {
        std::vector<VarPow> factors = expanded_factors(m);
        if (factors.size() != modes.size()) {
            throw ModeArityMismatch("mode_expand: monomial has " +
                                    std::to_string(factors.size()) + " factors but " +
                                    std::to_string(modes.size()) + " modes were given");
        }
        expand_monomial_into(r, m, c, factors, modes);
    }
    return r;
}

ModePoly mode_expand_sum(const DiffPoly2& f, long a, long bound) {
    if (bound < 0) throw std::invalid_argument("mode_expand_sum: negative bound");
    ModePoly r = ModePoly::zero(a);
    std::vector<long> modes;
    for (const auto& [m, c] : f.terms) {
        std::vector<VarPow> factors = expanded_factors(m);
        modes.assign(factors.size(), 0);
        // Depth-first enumeration of tuples with entries in [-bound, bound]
        // and total a.
        auto rec = [&](auto&& self, std::size_t pos, long remaining) -> void {
            if (pos == factors.size()) {
                if (remaining == 0) expand_monomial_into(r, m, c, factors, modes);
                return;
            }
            long slots_left = static_cast<long>(factors.size() - pos - 1);
            for (long b = -bound; b <= bound; ++b) {
                long rest = remaining - b;
                if (rest > slots_left * bound || rest < -slots_left * bound) continue;
                modes[pos] = b;
                self(self, pos + 1, rest);
            }
        };
        rec(rec, 0, a);
    }
    return r;
}

ModePoly mode_star(const ModePoly& p, const ModePoly& q, const Caps& caps, int order_cap) {
    ModePoly r = ModePoly::zero(p.total_mode + q.total_mode);
    if (p.is_zero() || q.is_zero()) return r;

    long bound = -1;
    if (order_cap >= 0) bound = order_cap;
    if (caps.mu_max >= 0) {
        long by_cap = caps.mu_max - p.min_mu_or(0) - q.min_mu_or(0);
        if (by_cap < 0) return r;
        bound = bound < 0 ? by_cap : std::min(bound, by_cap);
    }
    if (bound < 0) {
        if (p.total_mode == 0 && q.total_mode == 0) {
            bound = 0;
        } else {
            throw UnboundedStarSum("mode_star: order sum does not terminate without a cap");
        }
    }

    std::vector<ModePoly> p_der{p}, q_der{q};
    for (long k = 1; k <= bound; ++k) {
        p_der.push_back(dx(p_der.back()));
        q_der.push_back(dx(q_der.back()));
    }

    const long b1 = p.total_mode;
    const long b2 = q.total_mode;
    for (long n = 0; n <= bound; ++n) {
        Caps inner = caps;
        if (inner.mu_max >= 0) inner.mu_max -= static_cast<int>(n);
        if (inner.eps_max >= 0) inner.eps_max -= static_cast<int>(n);
        for (long k1 = 0; k1 <= n; ++k1) {
            long k2 = n - k1;
            // i^n from (i eps mu)^n, i^{k2} b1^{k2} from the p-side mode
            // derivative and i^{k1} b2^{k1} from the q-side one; i^{2n} =
            // (-1)^n keeps the scalar real.
            Rational mag = pow2_q(-n) / (factorial_q(k1) * factorial_q(k2));
            mag *= int_pow_q(b1, k2) * int_pow_q(b2, k1);
            if (k2 % 2 != 0) mag = -mag;
            if (n % 2 != 0) mag = -mag;
            if (mag == 0) continue;
            ModePoly prod = mul(p_der[static_cast<std::size_t>(k1)],
                                q_der[static_cast<std::size_t>(k2)], inner);
            if (prod.is_zero()) continue;
            r += scale(shift_mu(shift_eps(prod, static_cast<int>(n)), static_cast<int>(n)),
                       Scalar(mag));
        }
    }
    return truncate(r, caps);
}

ModePoly t_transform(long a, const ModePoly& p, int eps_order) {
    if (eps_order < 0) throw std::invalid_argument("t_transform: negative order");
    ModePoly r = ModePoly::zero(p.total_mode);
    ModePoly der = p;
    for (int h = 0; 2 * h <= eps_order; ++h) {
        if (h > 0) der = dx(dx(der));
        Rational qh = q_poly(h).eval(Rational(a));
        if (qh == 0) continue;
        r += scale(shift_mu(shift_eps(der, 2 * h), 2 * h), Scalar(qh));
    }
    return r;
}

std::string to_json(const ModePoly& p) {
    nlohmann::ordered_json out;
    out["total_mode"] = p.total_mode;
    out["monomials"] = nlohmann::ordered_json::array();
    for (const auto& [m, c] : p.terms) {
        nlohmann::ordered_json jm;
        jm["eps"] = m.eps_exp;
        jm["mu"] = m.mu_exp;
        jm["coeff"] = {{"re", rational_to_string(c.re)}, {"im", rational_to_string(c.im)}};
        auto vars = nlohmann::ordered_json::array();
        for (const auto& v : m.vars) vars.push_back({v.mode, v.k, v.pow});
        jm["vars"] = std::move(vars);
        out["monomials"].push_back(std::move(jm));
    }
    return out.dump();
}

std::string to_display(const ModePoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms) {
        Scalar coeff = c;
        if (first) {
            first = false;
        } else if (coeff.is_real() && coeff.re < 0) {
            os << " - ";
            coeff = -coeff;
        } else {
            os << " + ";
        }
        std::vector<std::string> parts;
        bool unit = coeff == Scalar(1);
        if (!unit || (m.eps_exp == 0 && m.mu_exp == 0 && m.vars.empty())) {
            if (coeff.is_real()) {
                parts.push_back(rational_to_string(coeff.re));
            } else {
                parts.push_back("(" + scalar_to_string(coeff) + ")");
            }
        }
        auto power = [](const std::string& base, int e) {
            return e == 1 ? base : base + "^" + std::to_string(e);
        };
        if (m.eps_exp != 0) parts.push_back(power("eps", m.eps_exp));
        if (m.mu_exp != 0) parts.push_back(power("mu", m.mu_exp));
        for (const auto& v : m.vars) {
            std::string base =
                "v[" + std::to_string(v.mode) + "," + std::to_string(v.k) + "]";
            parts.push_back(power(base, v.pow));
        }
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) os << "*";
            os << parts[i];
        }
    }
    return os.str();
}

}  // namespace nckdv

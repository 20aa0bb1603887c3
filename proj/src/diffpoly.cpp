#include "nckdv/diffpoly.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace nckdv {

int Monomial2::factor_count() const {
    int n = 0;
    for (const auto& v : vars) n += v.pow;
    return n;
}

int Monomial2::sum_k1() const {
    int n = 0;
    for (const auto& v : vars) n += v.k1 * v.pow;
    return n;
}

int Monomial2::sum_k2() const {
    int n = 0;
    for (const auto& v : vars) n += v.k2 * v.pow;
    return n;
}

Monomial2 normalize_monomial(Monomial2 m) {
    std::sort(m.vars.begin(), m.vars.end(),
              [](const VarPow& a, const VarPow& b) {
                  return std::tie(a.k1, a.k2) < std::tie(b.k1, b.k2);
              });
    std::vector<VarPow> merged;
    for (const auto& v : m.vars) {
        if (!merged.empty() && merged.back().k1 == v.k1 && merged.back().k2 == v.k2) {
            merged.back().pow += v.pow;
        } else {
            merged.push_back(v);
        }
    }
    std::erase_if(merged, [](const VarPow& v) { return v.pow == 0; });
    for (const auto& v : merged) {
        if (v.pow < 0) throw std::invalid_argument("normalize_monomial: negative power");
        if (v.k1 < 0 || v.k2 < 0) throw std::invalid_argument("normalize_monomial: negative index");
    }
    m.vars = std::move(merged);
    return m;
}

DiffPoly2 DiffPoly2::constant(const Scalar& c) {
    DiffPoly2 p;
    p.add_term(Monomial2{}, c);
    return p;
}

DiffPoly2 DiffPoly2::var(int k1, int k2) {
    DiffPoly2 p;
    p.add_term(Monomial2{0, 0, {VarPow{k1, k2, 1}}}, Scalar(1));
    return p;
}

DiffPoly2 DiffPoly2::monomial(Monomial2 m, const Scalar& c) {
    DiffPoly2 p;
    p.add_term(std::move(m), c);
    return p;
}

bool DiffPoly2::is_u_free() const {
    for (const auto& [m, c] : terms) {
        if (!m.is_u_free()) return false;
    }
    return true;
}

std::optional<int> DiffPoly2::min_mu() const {
    std::optional<int> r;
    for (const auto& [m, c] : terms) {
        if (!r || m.mu_exp < *r) r = m.mu_exp;
    }
    return r;
}

std::optional<int> DiffPoly2::min_eps() const {
    std::optional<int> r;
    for (const auto& [m, c] : terms) {
        if (!r || m.eps_exp < *r) r = m.eps_exp;
    }
    return r;
}

std::optional<int> DiffPoly2::max_eps() const {
    std::optional<int> r;
    for (const auto& [m, c] : terms) {
        if (!r || m.eps_exp > *r) r = m.eps_exp;
    }
    return r;
}

void DiffPoly2::add_term(const Monomial2& m, const Scalar& c) {
    if (c.is_zero()) return;
    Monomial2 key = normalize_monomial(m);
    auto it = terms.find(key);
    if (it == terms.end()) {
        terms.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

DiffPoly2 DiffPoly2::operator-() const {
    DiffPoly2 r;
    for (const auto& [m, c] : terms) r.terms.emplace(m, -c);
    return r;
}

DiffPoly2& DiffPoly2::operator+=(const DiffPoly2& o) {
    for (const auto& [m, c] : o.terms) {
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    return *this;
}

DiffPoly2& DiffPoly2::operator-=(const DiffPoly2& o) {
    for (const auto& [m, c] : o.terms) {
        auto it = terms.find(m);
        if (it == terms.end()) {
            terms.emplace(m, -c);
        } else {
            it->second -= c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    return *this;
}

DiffPoly2 operator+(DiffPoly2 a, const DiffPoly2& b) { return a += b; }
DiffPoly2 operator-(DiffPoly2 a, const DiffPoly2& b) { return a -= b; }

DiffPoly2 scale(const DiffPoly2& p, const Scalar& c) {
    DiffPoly2 r;
    if (c.is_zero()) return r;
    for (const auto& [m, coef] : p.terms) r.terms.emplace(m, coef * c);
    return r;
}

namespace {

std::vector<VarPow> merge_vars(const std::vector<VarPow>& a, const std::vector<VarPow>& b) {
    std::vector<VarPow> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        auto ka = std::tie(a[i].k1, a[i].k2);
        auto kb = std::tie(b[j].k1, b[j].k2);
        if (ka < kb) {
            out.push_back(a[i++]);
        } else if (kb < ka) {
            out.push_back(b[j++]);
        } else {
            out.push_back(VarPow{a[i].k1, a[i].k2, a[i].pow + b[j].pow});
            ++i;
            ++j;
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return out;
}

}  // namespace

DiffPoly2 mul(const DiffPoly2& a, const DiffPoly2& b, const Caps& caps) {
    DiffPoly2 r;
    for (const auto& [ma, ca] : a.terms) {
        for (const auto& [mb, cb] : b.terms) {
            int mu = ma.mu_exp + mb.mu_exp;
            if (caps.mu_max >= 0 && mu > caps.mu_max) continue;
            int eps = ma.eps_exp + mb.eps_exp;
            if (caps.eps_max >= 0 && eps > caps.eps_max) continue;
            Monomial2 m{eps, mu, merge_vars(ma.vars, mb.vars)};
            auto it = r.terms.find(m);
            if (it == r.terms.end()) {
                r.terms.emplace(std::move(m), ca * cb);
            } else {
                it->second += ca * cb;
                if (it->second.is_zero()) r.terms.erase(it);
            }
        }
    }
    return r;
}

DiffPoly2 shift_eps(const DiffPoly2& p, int d) {
    DiffPoly2 r;
    for (const auto& [m, c] : p.terms) {
        Monomial2 s = m;
        s.eps_exp += d;
        r.terms.emplace(std::move(s), c);
    }
    return r;
}

DiffPoly2 shift_mu(const DiffPoly2& p, int d) {
    DiffPoly2 r;
    for (const auto& [m, c] : p.terms) {
        Monomial2 s = m;
        s.mu_exp += d;
        if (s.mu_exp < 0) throw std::invalid_argument("shift_mu: negative mu exponent");
        r.terms.emplace(std::move(s), c);
    }
    return r;
}

namespace {

// Derivative of a single normalized monomial under raising one var index
// (k1 or k2 selected by on_k1).
void monomial_total_derivative(const Monomial2& m, const Scalar& c, bool on_k1, DiffPoly2& out) {
    for (std::size_t i = 0; i < m.vars.size(); ++i) {
        Monomial2 t = m;
        const VarPow v = t.vars[i];
        t.vars[i].pow -= 1;
        VarPow raised = on_k1 ? VarPow{v.k1 + 1, v.k2, 1} : VarPow{v.k1, v.k2 + 1, 1};
        t.vars.push_back(raised);
        out.add_term(t, c * Scalar(Rational(v.pow)));
    }
}

}  // namespace

DiffPoly2 dx(const DiffPoly2& p) {
    DiffPoly2 r;
    for (const auto& [m, c] : p.terms) monomial_total_derivative(m, c, true, r);
    return r;
}

DiffPoly2 dy(const DiffPoly2& p) {
    DiffPoly2 r;
    for (const auto& [m, c] : p.terms) monomial_total_derivative(m, c, false, r);
    return r;
}

DiffPoly2 dx_pow(DiffPoly2 p, int k) {
    for (int i = 0; i < k; ++i) p = dx(p);
    return p;
}

DiffPoly2 dy_pow(DiffPoly2 p, int k) {
    for (int i = 0; i < k; ++i) p = dy(p);
    return p;
}

DiffPoly2 partial_u(const DiffPoly2& p, int k1, int k2) {
    DiffPoly2 r;
    for (const auto& [m, c] : p.terms) {
        for (std::size_t i = 0; i < m.vars.size(); ++i) {
            if (m.vars[i].k1 != k1 || m.vars[i].k2 != k2) continue;
            Monomial2 t = m;
            t.vars[i].pow -= 1;
            r.add_term(t, c * Scalar(Rational(m.vars[i].pow)));
        }
    }
    return r;
}

DiffPoly2 truncate(const DiffPoly2& p, const Caps& caps) {
    DiffPoly2 r;
    for (const auto& [m, c] : p.terms) {
        if (caps.keeps(m)) r.terms.emplace(m, c);
    }
    return r;
}

DiffPoly2 project_mu_zero(const DiffPoly2& p) {
    DiffPoly2 r;
    for (const auto& [m, c] : p.terms) {
        if (m.mu_exp == 0) r.terms.emplace(m, c);
    }
    return r;
}

DiffPoly2 project_eps_zero(const DiffPoly2& p) {
    DiffPoly2 r;
    for (const auto& [m, c] : p.terms) {
        if (m.eps_exp == 0) r.terms.emplace(m, c);
    }
    return r;
}

DiffPoly2 moyal(const DiffPoly2& f, const DiffPoly2& g, const Caps& caps, int order_cap) {
    if (f.is_zero() || g.is_zero()) return {};
    long bound = order_cap >= 0 ? order_cap : -1;
    if (caps.mu_max >= 0) {
        long by_cap = caps.mu_max - *f.min_mu() - *g.min_mu();
        if (by_cap < 0) return {};
        if (bound < 0 || by_cap < bound) bound = by_cap;
    }
    if (bound < 0) {
        if (f.is_u_free() || g.is_u_free()) {
            bound = 0;  // every higher order differentiates the u-free factor away
        } else {
            throw UnboundedStarSum(
                "moyal: both factors depend on u and no order cap or mu cap bounds the sum");
        }
    }

    // f_der[a][b] = dx^a dy^b f, likewise for g, built incrementally.
    std::vector<std::vector<DiffPoly2>> f_der(bound + 1), g_der(bound + 1);
    f_der[0].push_back(f);
    g_der[0].push_back(g);
    for (long a = 1; a <= bound; ++a) {
        f_der[a].push_back(dx(f_der[a - 1][0]));
        g_der[a].push_back(dx(g_der[a - 1][0]));
    }
    for (long a = 0; a <= bound; ++a) {
        for (long b = 1; a + b <= bound; ++b) {
            f_der[a].push_back(dy(f_der[a][b - 1]));
            g_der[a].push_back(dy(g_der[a][b - 1]));
        }
    }

    DiffPoly2 result;
    for (long n = 0; n <= bound; ++n) {
        Caps inner = caps;
        if (inner.mu_max >= 0) inner.mu_max -= static_cast<int>(n);
        if (inner.eps_max >= 0) inner.eps_max -= static_cast<int>(n);
        for (long k1 = 0; k1 <= n; ++k1) {
            long k2 = n - k1;
            Rational mag = pow2_q(-n) / (factorial_q(k1) * factorial_q(k2));
            if (k2 % 2 != 0) mag = -mag;
            Scalar coeff = Scalar::i_power(n) * Scalar(mag);
            DiffPoly2 prod = mul(f_der[k1][k2], g_der[k2][k1], inner);
            if (prod.is_zero()) continue;
            result += scale(shift_mu(shift_eps(prod, static_cast<int>(n)), static_cast<int>(n)),
                            coeff);
        }
    }
    return truncate(result, caps);
}

namespace {

using ClassKey = std::tuple<int, int, int, int, int>;  // eps, mu, factors, sum_k1, sum_k2

ClassKey class_of(const Monomial2& m) {
    return {m.eps_exp, m.mu_exp, m.factor_count(), m.sum_k1(), m.sum_k2()};
}

// All monomials reachable from m by replacing one u_{k1,k2} factor with
// u_{k1-1,k2} (preimages of m's support under the raising move of dx).
std::vector<Monomial2> lowerings(const Monomial2& m) {
    std::vector<Monomial2> out;
    for (std::size_t i = 0; i < m.vars.size(); ++i) {
        if (m.vars[i].k1 == 0) continue;
        Monomial2 t = m;
        t.vars[i].pow -= 1;
        t.vars.push_back(VarPow{m.vars[i].k1 - 1, m.vars[i].k2, 1});
        out.push_back(normalize_monomial(t));
    }
    return out;
}

std::vector<Monomial2> raisings(const Monomial2& m) {
    std::vector<Monomial2> out;
    for (std::size_t i = 0; i < m.vars.size(); ++i) {
        Monomial2 t = m;
        t.vars[i].pow -= 1;
        t.vars.push_back(VarPow{m.vars[i].k1 + 1, m.vars[i].k2, 1});
        out.push_back(normalize_monomial(t));
    }
    return out;
}

// Exact solve of A x = b over the Gaussian rationals; A is dense row-major.
// Returns x with free variables set to zero; nullopt when inconsistent.
std::optional<std::vector<Scalar>> solve_linear(std::vector<std::vector<Scalar>> a,
                                                std::vector<Scalar> b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && a[sel][c].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(a[sel], a[r]);
        std::swap(b[sel], b[r]);
        Scalar inv = a[r][c].inverse();
        for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            Scalar factor = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= factor * a[r][j];
            b[i] -= factor * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i) {
        if (!b[i].is_zero()) return std::nullopt;
    }
    std::vector<Scalar> x(cols, Scalar(0));
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
    return x;
}

}  // namespace

DiffPoly2 x_integrate(const DiffPoly2& p) {
    std::map<ClassKey, std::map<Monomial2, Scalar>> classes;
    for (const auto& [m, c] : p.terms) {
        if (m.is_u_free()) {
            throw NotATotalDerivative("x_integrate: u-free monomial has no antiderivative");
        }
        if (m.sum_k1() == 0) {
            throw NotATotalDerivative("x_integrate: monomial without x-derivatives (sum_k1 == 0)");
        }
        classes[class_of(m)].emplace(m, c);
    }

    DiffPoly2 q;
    for (const auto& [key, rhs] : classes) {
        // Closure of the class component seeded by the right-hand side:
        // alternate lowering (candidate antiderivative monomials) and raising
        // (their dx images) until both sides stabilize.
        std::set<Monomial2> image, cand;
        std::queue<Monomial2> fresh_image;
        for (const auto& [m, c] : rhs) {
            if (image.insert(m).second) fresh_image.push(m);
        }
        while (!fresh_image.empty()) {
            Monomial2 m = fresh_image.front();
            fresh_image.pop();
            for (const auto& lower : lowerings(m)) {
                if (!cand.insert(lower).second) continue;
                for (const auto& raise : raisings(lower)) {
                    if (image.insert(raise).second) fresh_image.push(raise);
                }
            }
        }

        std::vector<Monomial2> cols(cand.begin(), cand.end());
        std::vector<Monomial2> row_keys(image.begin(), image.end());
        std::map<Monomial2, std::size_t> row_index;
        for (std::size_t i = 0; i < row_keys.size(); ++i) row_index.emplace(row_keys[i], i);

        std::vector<std::vector<Scalar>> a(row_keys.size(),
                                           std::vector<Scalar>(cols.size(), Scalar(0)));
        for (std::size_t j = 0; j < cols.size(); ++j) {
            DiffPoly2 image_j = dx(DiffPoly2::monomial(cols[j], Scalar(1)));
            for (const auto& [m, c] : image_j.terms) {
                a[row_index.at(m)][j] += c;
            }
        }
        std::vector<Scalar> b(row_keys.size(), Scalar(0));
        for (const auto& [m, c] : rhs) b[row_index.at(m)] = c;

        auto x = solve_linear(std::move(a), std::move(b));
        if (!x) {
            throw NotATotalDerivative("x_integrate: class " + std::to_string(std::get<2>(key)) +
                                      " factors, sum_k1 " + std::to_string(std::get<3>(key)) +
                                      " is not in the image of d/dx");
        }
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (!(*x)[j].is_zero()) q.add_term(cols[j], (*x)[j]);
        }
    }

    if (!(dx(q) - p).is_zero()) {
        throw std::logic_error("x_integrate: internal check failed");
    }
    return q;
}

std::string to_json(const DiffPoly2& p) {
    nlohmann::ordered_json out;
    out["monomials"] = nlohmann::ordered_json::array();
    for (const auto& [m, c] : p.terms) {
        nlohmann::ordered_json jm;
        jm["eps"] = m.eps_exp;
        jm["mu"] = m.mu_exp;
        jm["coeff"] = {{"re", rational_to_string(c.re)}, {"im", rational_to_string(c.im)}};
        auto vars = nlohmann::ordered_json::array();
        for (const auto& v : m.vars) vars.push_back({v.k1, v.k2, v.pow});
        jm["vars"] = std::move(vars);
        out["monomials"].push_back(std::move(jm));
    }
    return out.dump();
}

DiffPoly2 diffpoly_from_json(const std::string& text) {
    nlohmann::json in = nlohmann::json::parse(text);
    if (!in.is_object() || !in.contains("monomials") || !in["monomials"].is_array()) {
        throw std::invalid_argument("diffpoly_from_json: expected {\"monomials\": [...]}");
    }
    DiffPoly2 p;
    for (const auto& jm : in["monomials"]) {
        Monomial2 m;
        m.eps_exp = jm.at("eps").get<int>();
        m.mu_exp = jm.at("mu").get<int>();
        for (const auto& jv : jm.at("vars")) {
            if (!jv.is_array() || jv.size() != 3) {
                throw std::invalid_argument("diffpoly_from_json: var entries are [k1,k2,pow]");
            }
            m.vars.push_back(VarPow{jv[0].get<int>(), jv[1].get<int>(), jv[2].get<int>()});
        }
        Scalar c(rational_from_string(jm.at("coeff").at("re").get<std::string>()),
                 rational_from_string(jm.at("coeff").at("im").get<std::string>()));
        p.add_term(m, c);
    }
    return p;
}

std::string to_display(const DiffPoly2& p) {
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
                "u[" + std::to_string(v.k1) + "," + std::to_string(v.k2) + "]";
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

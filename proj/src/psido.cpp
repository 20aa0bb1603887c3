#include "nckdv/psido.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace nckdv {

namespace {

void require_same_trunc(const PsiDO& a, const PsiDO& b) {
    if (!(a.trunc == b.trunc)) {
        throw TruncationMismatch("psido operands carry different truncation windows");
    }
}

// Lazily grown table of dx^alpha dy^beta derivatives of a base polynomial.
// Composition revisits the same derivative with many binomial weights, so
// each one is computed once and shared.
class DerivativeTable {
  public:
    explicit DerivativeTable(const DiffPoly2& base) { dx_chain_.push_back(base); }

    const DiffPoly2& at(int alpha, int beta) {
        auto a = static_cast<std::size_t>(alpha);
        auto b = static_cast<std::size_t>(beta);
        while (dx_chain_.size() <= a) dx_chain_.push_back(dx(dx_chain_.back()));
        if (beta == 0) return dx_chain_[a];
        if (dy_chains_.size() <= a) dy_chains_.resize(a + 1);
        auto& chain = dy_chains_[a];
        while (chain.size() < b) {
            chain.push_back(dy(chain.empty() ? dx_chain_[a] : chain.back()));
        }
        return chain[b - 1];
    }

  private:
    std::vector<DiffPoly2> dx_chain_;
    std::vector<std::vector<DiffPoly2>> dy_chains_;
};

}  // namespace

PsiDO PsiDO::monomial(int order, DiffPoly2 coeff, const Truncation& t) {
    PsiDO a{{}, t};
    a.add_term(order, coeff);
    return a;
}

int PsiDO::top_order() const {
    if (coeffs.empty()) throw std::logic_error("PsiDO::top_order: zero operator");
    return coeffs.rbegin()->first;
}

const DiffPoly2& PsiDO::coeff(int order) const {
    static const DiffPoly2 zero_poly{};
    auto it = coeffs.find(order);
    return it == coeffs.end() ? zero_poly : it->second;
}

void PsiDO::add_term(int order, const DiffPoly2& c) {
    if (order < trunc.depth_floor || c.is_zero()) return;
    auto it = coeffs.find(order);
    if (it == coeffs.end()) {
        coeffs.emplace(order, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) coeffs.erase(it);
    }
}

PsiDO PsiDO::operator-() const {
    PsiDO r{{}, trunc};
    for (const auto& [k, c] : coeffs) r.coeffs.emplace(k, -c);
    return r;
}

PsiDO& PsiDO::operator+=(const PsiDO& o) {
    require_same_trunc(*this, o);
    for (const auto& [k, c] : o.coeffs) add_term(k, c);
    return *this;
}

PsiDO& PsiDO::operator-=(const PsiDO& o) {
    require_same_trunc(*this, o);
    for (const auto& [k, c] : o.coeffs) add_term(k, -c);
    return *this;
}

PsiDO operator+(PsiDO a, const PsiDO& b) { return a += b; }
PsiDO operator-(PsiDO a, const PsiDO& b) { return a -= b; }

PsiDO scale(const PsiDO& a, const Scalar& c) {
    PsiDO r{{}, a.trunc};
    if (c.is_zero()) return r;
    for (const auto& [k, p] : a.coeffs) r.coeffs.emplace(k, scale(p, c));
    return r;
}

PsiDO compose(const PsiDO& a, const PsiDO& b, bool classical, int min_order) {
    require_same_trunc(a, b);
    PsiDO r{{}, a.trunc};
    const int floor = std::max(a.trunc.depth_floor, min_order);
    const int mu_cap = a.trunc.mu_cap();

    std::map<int, DerivativeTable> a_tables;
    std::map<int, DerivativeTable> b_tables;
    for (const auto& [i, ca] : a.coeffs) a_tables.emplace(i, DerivativeTable(ca));
    for (const auto& [j, cb] : b.coeffs) b_tables.emplace(j, DerivativeTable(cb));

    for (const auto& [i, ca] : a.coeffs) {
        DerivativeTable& fa = a_tables.at(i);
        for (const auto& [j, cb] : b.coeffs) {
            DerivativeTable& fb = b_tables.at(j);

            // Order cap of the star product for this coefficient pair, from
            // the mu quotient; 0 when one factor cannot survive the
            // derivatives of a higher order.
            int star_bound = 0;
            if (!classical) {
                if (mu_cap >= 0) {
                    star_bound = mu_cap - *ca.min_mu() - *cb.min_mu();
                    if (star_bound < 0) continue;
                } else if (!ca.is_u_free() && !cb.is_u_free()) {
                    throw UnboundedStarSum(
                        "compose: both coefficients depend on u and no mu cap bounds the star");
                }
            }

            for (int k = 0; i + j - k >= floor; ++k) {
                if (i >= 0 && k > i) break;  // binomial vanishes from here on
                Rational binom = generalized_binomial_q(i, k);
                if (binom == 0) continue;
                for (int n = 0; n <= star_bound; ++n) {
                    Caps inner{-1, mu_cap >= 0 ? mu_cap - n : -1};
                    for (int k1 = 0; k1 <= n; ++k1) {
                        const int k2 = n - k1;
                        Rational mag = binom * pow2_q(-n) / (factorial_q(k1) * factorial_q(k2));
                        if (k2 % 2 != 0) mag = -mag;
                        Scalar coeff = Scalar::i_power(n) * Scalar(mag);
                        DiffPoly2 prod = mul(fa.at(k1, k2), fb.at(k2 + k, k1), inner);
                        if (prod.is_zero()) continue;
                        r.add_term(i + j - k, scale(shift_mu(shift_eps(prod, n), n), coeff));
                    }
                }
            }
        }
    }
    return r;
}

PsiDO commutator(const PsiDO& a, const PsiDO& b, bool classical) {
    return compose(a, b, classical) - compose(b, a, classical);
}

PsiDO positive_part(const PsiDO& a) {
    PsiDO r{{}, a.trunc};
    for (const auto& [k, c] : a.coeffs) {
        if (k >= 0) r.coeffs.emplace(k, c);
    }
    return r;
}

PsiDO negative_part(const PsiDO& a) {
    PsiDO r{{}, a.trunc};
    for (const auto& [k, c] : a.coeffs) {
        if (k < 0) r.coeffs.emplace(k, c);
    }
    return r;
}

bool equal_above(const PsiDO& a, const PsiDO& b, int floor) {
    for (const auto& [k, c] : a.coeffs) {
        if (k > floor && !(c - b.coeff(k)).is_zero()) return false;
    }
    for (const auto& [k, c] : b.coeffs) {
        if (k > floor && !(c - a.coeff(k)).is_zero()) return false;
    }
    return true;
}

PsiDO sqrt_op(const PsiDO& a, bool classical) {
    PsiDO b = PsiDO::monomial(1, DiffPoly2::constant(Scalar(1)), a.trunc);
    const int floor = a.trunc.depth_floor;
    const Scalar half(Rational(1, 2));
    // The defect a - b*b is kept current across corrections: appending delta
    // to b lowers it by b*delta + delta*b + delta*delta, which is exact order
    // by order because compose covers every order above the shared floor.
    PsiDO defect = a - compose(b, b, classical);
    for (int m = 1; m > floor && !defect.is_zero(); --m) {
        if (defect.top_order() > m) {
            throw NotMonicOrderTwo("sqrt_op: defect of order " +
                                   std::to_string(defect.top_order()) +
                                   " above correction order " + std::to_string(m));
        }
        const DiffPoly2& cm = defect.coeff(m);
        if (cm.is_zero()) continue;
        PsiDO delta = PsiDO::monomial(m - 1, scale(cm, half), a.trunc);
        defect -= compose(b, delta, classical) + compose(delta, b, classical) +
                  compose(delta, delta, classical);
        b += delta;
    }
    if (!defect.is_zero() && defect.top_order() > floor) {
        throw NotMonicOrderTwo("sqrt_op: residual defect inside the truncation window");
    }
    return b;
}

PsiDO power(const PsiDO& a, int n, bool classical) {
    if (n < 1) throw std::invalid_argument("power: exponent must be >= 1");
    PsiDO r = a;
    for (int i = 1; i < n; ++i) r = compose(r, a, classical);
    return r;
}

std::string to_json(const PsiDO& a) {
    nlohmann::ordered_json out;
    out["top_order"] = a.coeffs.empty() ? 0 : a.top_order();
    auto coeffs = nlohmann::ordered_json::object();
    // Descending order, leading coefficient first.
    for (auto it = a.coeffs.rbegin(); it != a.coeffs.rend(); ++it) {
        coeffs[std::to_string(it->first)] = nlohmann::ordered_json::parse(to_json(it->second));
    }
    out["coeffs"] = std::move(coeffs);
    out["trunc"] = {{"depth", a.trunc.depth_floor},
                    {"eps_max", a.trunc.eps_max},
                    {"mu_max", a.trunc.mu_max}};
    return out.dump();
}

PsiDO psido_from_json(const std::string& text) {
    nlohmann::json in = nlohmann::json::parse(text);
    Truncation t{in.at("trunc").at("depth").get<int>(), in.at("trunc").at("eps_max").get<int>(),
                 in.at("trunc").at("mu_max").get<int>()};
    PsiDO a{{}, t};
    for (const auto& [key, value] : in.at("coeffs").items()) {
        a.add_term(std::stoi(key), diffpoly_from_json(value.dump()));
    }
    return a;
}

}  // namespace nckdv

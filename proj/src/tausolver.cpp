#include "nckdv/tausolver.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"

#include "nckdv/hierarchy.hpp"

namespace nckdv {

long IntersectionKey::mode_sum() const {
    long s = 0;
    for (const auto& [a, d] : pairs) {
        (void)d;
        s += a;
    }
    return s;
}

int IntersectionKey::psi_sum() const {
    int s = 0;
    for (const auto& [a, d] : pairs) {
        (void)a;
        s += d;
    }
    return s;
}

IntersectionKey make_key(int g, int j, std::vector<std::pair<long, int>> pairs) {
    std::sort(pairs.begin(), pairs.end());
    return IntersectionKey{g, j, std::move(pairs)};
}

bool key_valid(const IntersectionKey& key) {
    if (key.g < 0 || key.j < 0 || key.j > key.g) return false;
    const int n = key.n();
    if (2 * key.g - 2 + n <= 0) return false;
    if (key.mode_sum() != 0) return false;
    for (const auto& [a, d] : key.pairs) {
        (void)a;
        if (d < 0) return false;
    }
    return key.psi_sum() == 3 * key.g - 3 + n - key.j;
}

bool IntersectionTable::contains(const IntersectionKey& key) const {
    return entries.find(key) != entries.end();
}

const Scalar& IntersectionTable::value(const IntersectionKey& key) const {
    auto it = entries.find(key);
    if (it == entries.end()) {
        throw std::out_of_range("IntersectionTable: missing entry " + key_to_string(key));
    }
    return it->second.value;
}

void IntersectionTable::set(const IntersectionKey& key, Scalar v, Provenance prov) {
    entries[key] = TableEntry{std::move(v), prov};
}

std::string key_to_string(const IntersectionKey& key) {
    std::ostringstream os;
    os << "<";
    bool first = true;
    for (const auto& [a, d] : key.pairs) {
        if (!first) os << " ";
        first = false;
        os << "tau_" << d << "(" << a << ")";
    }
    os << ">_{g=" << key.g << ",j=" << key.j << "}";
    return os.str();
}

void seed(IntersectionTable& table, long mode_bound) {
    if (mode_bound < 0) throw std::invalid_argument("seed: negative mode bound");
    for (long a1 = -mode_bound; a1 <= mode_bound; ++a1) {
        for (long a2 = a1; a2 <= mode_bound; ++a2) {
            long a3 = -a1 - a2;
            if (a3 < a2 || a3 > mode_bound) continue;
            IntersectionKey key = make_key(0, 0, {{a1, 0}, {a2, 0}, {a3, 0}});
            table.set(key, Scalar(1), Provenance::seed);
        }
    }
}

namespace {

bool is_seed_key(const IntersectionKey& key) {
    return key.g == 0 && key.j == 0 && key.n() == 3 && key.psi_sum() == 0;
}

// Removes one copy of the given pair; the caller guarantees presence.
std::vector<std::pair<long, int>> remove_one(const std::vector<std::pair<long, int>>& pairs,
                                             const std::pair<long, int>& victim) {
    std::vector<std::pair<long, int>> out;
    bool removed = false;
    for (const auto& p : pairs) {
        if (!removed && p == victim) {
            removed = true;
            continue;
        }
        out.push_back(p);
    }
    return out;
}

}  // namespace

bool string_applies(const IntersectionKey& key) {
    for (const auto& p : key.pairs) {
        if (p == std::pair<long, int>{0, 0}) return true;
    }
    return false;
}

Equation string_relation(const IntersectionKey& key) {
    if (!string_applies(key)) {
        throw std::invalid_argument("string_relation: key has no tau_0(0) insertion");
    }
    Equation eq;
    eq.source = "string";
    eq.level_g = key.g;
    eq.level_n = key.n();
    eq.terms.push_back(ProductTerm{Rational(1), {key}});

    std::vector<std::pair<long, int>> rest = remove_one(key.pairs, {0, 0});
    for (std::size_t i = 0; i < rest.size(); ++i) {
        if (rest[i].second < 1) continue;
        std::vector<std::pair<long, int>> lowered = rest;
        lowered[i].second -= 1;
        IntersectionKey desc = make_key(key.g, key.j, std::move(lowered));
        if (!key_valid(desc)) continue;
        eq.terms.push_back(ProductTerm{Rational(-1), {desc}});
    }

    // Quadratic correction: two psi-free insertions at genus 0 come from the
    // t^alpha t^-alpha term of the string equation.
    if (key.g == 0 && key.j == 0 && rest.size() == 2 && rest[0].second == 0 &&
        rest[1].second == 0) {
        eq.constant -= 1;
    }
    // Constant correction at (g,j) = (1,1).
    if (key.g == 1 && key.j == 1 && rest.empty()) {
        eq.constant += Rational(1, 24);
    }
    return eq;
}

bool dilaton_applies(const IntersectionKey& key) {
    for (const auto& p : key.pairs) {
        if (p == std::pair<long, int>{0, 1}) return true;
    }
    return false;
}

Equation dilaton_relation(const IntersectionKey& key) {
    if (!dilaton_applies(key)) {
        throw std::invalid_argument("dilaton_relation: key has no tau_1(0) insertion");
    }
    Equation eq;
    eq.source = "dilaton";
    eq.level_g = key.g;
    eq.level_n = key.n();
    eq.terms.push_back(ProductTerm{Rational(1), {key}});

    std::vector<std::pair<long, int>> rest = remove_one(key.pairs, {0, 1});
    IntersectionKey reduced = make_key(key.g, key.j, rest);
    if (key_valid(reduced)) {
        Rational factor(2 * key.g - 2 + static_cast<long>(rest.size()));
        eq.terms.push_back(ProductTerm{-factor, {reduced}});
    }
    if (key.g == 1 && key.j == 0 && rest.empty()) {
        eq.constant -= Rational(1, 24);
    }
    return eq;
}

namespace {

struct FlowMonomial {
    Rational coeff;
    int eps = 0;
    int mu = 0;
    std::vector<std::pair<int, int>> ks;  // expanded (k1, k2) per u-factor
};

std::vector<FlowMonomial> flow_monomials(const DiffPoly2& dx_pm) {
    std::vector<FlowMonomial> out;
    for (const auto& [m, c] : dx_pm.terms) {
        if (!c.is_real()) {
            throw std::logic_error("flow_relations: flow has a complex coefficient");
        }
        if (m.eps_exp < 0 || m.eps_exp % 2 != 0 || m.mu_exp % 2 != 0) {
            throw std::logic_error("flow_relations: flow breaks the even grading");
        }
        FlowMonomial fm;
        fm.coeff = c.re;
        fm.eps = m.eps_exp;
        fm.mu = m.mu_exp;
        for (const auto& v : m.vars) {
            for (int i = 0; i < v.pow; ++i) fm.ks.emplace_back(v.k1, v.k2);
        }
        out.push_back(std::move(fm));
    }
    return out;
}

// All nonnegative integer compositions of total into parts slots.
std::vector<std::vector<int>> compositions(int total, int parts) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(parts), 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == parts) {
            if (left == 0) out.push_back(cur);
            return;
        }
        if (pos == parts - 1) {
            cur[static_cast<std::size_t>(pos)] = left;
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, left - v);
        }
    };
    if (parts == 0) {
        if (total == 0) out.push_back({});
        return out;
    }
    rec(rec, 0, total);
    return out;
}

// One flow equation for a fixed insertion background.
Equation flow_equation(const std::vector<FlowMonomial>& monomials, int m, int big_g, int big_j,
                       const std::vector<std::pair<long, int>>& background) {
    Equation eq;
    eq.source = "flow " + std::to_string(m);
    eq.level_g = big_g;
    eq.level_n = 3 + static_cast<int>(background.size());

    long a = 0;
    for (const auto& [b, d] : background) {
        (void)d;
        a += b;
    }

    // Left side: the t-transform stack on mode a of the flow target.
    for (int h = 0; h <= std::min(big_g, big_j); ++h) {
        std::vector<std::pair<long, int>> pairs;
        for (int i = 0; i < 2 * h + 1; ++i) pairs.emplace_back(0, 0);
        pairs.emplace_back(-a, 0);
        pairs.emplace_back(0, m);
        for (const auto& p : background) pairs.push_back(p);
        IntersectionKey key = make_key(big_g - h, big_j - h, std::move(pairs));
        if (!key_valid(key)) continue;
        Rational qh = q_poly(h).eval(Rational(a));
        if (qh == 0) continue;
        eq.terms.push_back(ProductTerm{qh, {key}});
    }

    // Right side, negated: mode-expanded, t-transformed x-derivative of the
    // flow polynomial, coefficient by coefficient.
    for (const auto& fm : monomials) {
        if (fm.eps > 2 * big_g || fm.mu > 2 * big_j) continue;
        const int budget_e = (2 * big_g - fm.eps) / 2;
        const int budget_m = (2 * big_j - fm.mu) / 2;
        const int r_count = static_cast<int>(fm.ks.size());
        if (r_count == 0) {
            throw std::logic_error("flow_relations: u-free flow monomial");
        }

        // Assign each background insertion to a factor.
        std::vector<int> assign(background.size(), 0);
        auto assignments = [&](auto&& self, std::size_t pos) -> void {
            if (pos < background.size()) {
                for (int r = 0; r < r_count; ++r) {
                    assign[pos] = r;
                    self(self, pos + 1);
                }
                return;
            }

            std::vector<std::vector<std::pair<long, int>>> groups(
                static_cast<std::size_t>(r_count));
            std::vector<long> modes(static_cast<std::size_t>(r_count), 0);
            for (std::size_t i = 0; i < background.size(); ++i) {
                groups[static_cast<std::size_t>(assign[i])].push_back(background[i]);
                modes[static_cast<std::size_t>(assign[i])] += background[i].first;
            }

            Rational mode_coeff = fm.coeff;
            if ((fm.mu / 2) % 2 != 0) mode_coeff = -mode_coeff;  // i^mu folds real
            for (int r = 0; r < r_count; ++r) {
                const int k2 = fm.ks[static_cast<std::size_t>(r)].second;
                mode_coeff *= int_pow_q(modes[static_cast<std::size_t>(r)], k2);
                if (mode_coeff == 0) return;
            }

            // Distribute the eps and mu budgets: per factor pick h_r (the
            // t-transform order), g_r and j_r <= g_r with
            // sum(h+g) = budget_e and sum(h+j) = budget_m.
            std::vector<IntersectionKey> factors(static_cast<std::size_t>(r_count));
            Rational q_prod(1);
            auto banks = [&](auto&& inner, int r, int left_e, int left_m,
                             const Rational& acc) -> void {
                if (r == r_count) {
                    if (left_e != 0 || left_m != 0) return;
                    eq.terms.push_back(ProductTerm{-acc, factors});
                    return;
                }
                const auto ridx = static_cast<std::size_t>(r);
                const int k1 = fm.ks[ridx].first;
                const long br = modes[ridx];
                for (int h = 0; h <= std::min(left_e, left_m); ++h) {
                    Rational qh = q_poly(h).eval(Rational(br));
                    if (qh == 0) continue;
                    for (int gr = 0; gr + h <= left_e; ++gr) {
                        for (int jr = 0; jr <= gr && jr + h <= left_m; ++jr) {
                            std::vector<std::pair<long, int>> pairs;
                            for (int i = 0; i < k1 + 2 * h + 1; ++i) pairs.emplace_back(0, 0);
                            pairs.emplace_back(-br, 0);
                            for (const auto& p : groups[ridx]) pairs.push_back(p);
                            IntersectionKey key = make_key(gr, jr, std::move(pairs));
                            if (!key_valid(key)) continue;
                            factors[ridx] = std::move(key);
                            inner(inner, r + 1, left_e - h - gr, left_m - h - jr, acc * qh);
                        }
                    }
                }
            };
            banks(banks, 0, budget_e, budget_m, mode_coeff);
        };
        assignments(assignments, 0);
    }
    return eq;
}

}  // namespace

std::vector<Equation> flow_relations(const DiffPoly2& dx_pm, int m, int big_g, int big_j,
                                     const std::vector<std::vector<long>>& backgrounds) {
    if (m < 1) throw std::invalid_argument("flow_relations: flow index must be positive");
    if (big_j < 0 || big_j > big_g) {
        throw std::invalid_argument("flow_relations: need 0 <= big_j <= big_g");
    }
    const std::vector<FlowMonomial> monomials = flow_monomials(dx_pm);

    std::vector<Equation> out;
    if (3 * big_g - big_j == m) {
        out.push_back(flow_equation(monomials, m, big_g, big_j, {}));
    }
    for (const auto& modes : backgrounds) {
        const int k = static_cast<int>(modes.size());
        if (k == 0) continue;  // the empty background is handled above
        const int d_total = 3 * big_g - big_j + k - m;
        if (d_total < 0) continue;
        for (const auto& split : compositions(d_total, k)) {
            std::vector<std::pair<long, int>> background;
            for (int i = 0; i < k; ++i) {
                background.emplace_back(modes[static_cast<std::size_t>(i)],
                                        split[static_cast<std::size_t>(i)]);
            }
            out.push_back(flow_equation(monomials, m, big_g, big_j, background));
        }
    }
    return out;
}

namespace {

struct ReducedEquation {
    Rational constant{0};
    std::map<IntersectionKey, Rational> linear;
    bool multi_unknown = false;
};

ReducedEquation reduce(const Equation& eq, const std::map<IntersectionKey, Rational>& knowns) {
    ReducedEquation red;
    red.constant = eq.constant;
    for (const auto& term : eq.terms) {
        Rational coeff = term.coeff;
        const IntersectionKey* unknown = nullptr;
        for (const auto& key : term.factors) {
            auto it = knowns.find(key);
            if (it != knowns.end()) {
                coeff *= it->second;
                if (coeff == 0) break;
            } else if (unknown == nullptr) {
                unknown = &key;
            } else {
                red.multi_unknown = true;
                return red;
            }
        }
        if (coeff == 0) continue;
        if (unknown == nullptr) {
            red.constant += coeff;
        } else {
            Rational& slot = red.linear[*unknown];
            slot += coeff;
            if (slot == 0) red.linear.erase(*unknown);
        }
    }
    return red;
}

std::string equation_summary(const Equation& eq) {
    std::ostringstream os;
    os << eq.source << " equation at (g=" << eq.level_g << ", n=" << eq.level_n << ")";
    if (!eq.terms.empty()) {
        os << " anchored at " << key_to_string(eq.terms.front().factors.front());
    }
    return os.str();
}

}  // namespace

SolveResult solve(int g_max, int n_max, long mode_bound, int m_max) {
    if (g_max < 0 || n_max < 1 || mode_bound < 0 || m_max < 1) {
        throw std::invalid_argument("solve: bounds out of range");
    }

    // Flow polynomials, deep enough in mu for every big_j <= g_max.
    std::vector<DiffPoly2> dx_flows(static_cast<std::size_t>(m_max) + 1);
    for (int m = 1; m <= m_max; ++m) {
        Truncation trunc{-(2 * m + 3), 2 * g_max, 2 * g_max};
        dx_flows[static_cast<std::size_t>(m)] = dx(flow(m, trunc));
    }

    // Equations and the key universe.
    std::vector<Equation> equations;
    std::set<IntersectionKey> universe;
    std::queue<IntersectionKey> fresh;
    auto note_key = [&](const IntersectionKey& key) {
        if (universe.insert(key).second) fresh.push(key);
    };

    // Reported window: every valid key within the requested bounds.
    for (int g = 0; g <= g_max; ++g) {
        for (int j = 0; j <= g; ++j) {
            for (int n = 1; n <= n_max; ++n) {
                if (2 * g - 2 + n <= 0) continue;
                const int d_need = 3 * g - 3 + n - j;
                if (d_need < 0) continue;
                std::vector<std::pair<long, int>> pairs(static_cast<std::size_t>(n));
                auto rec = [&](auto&& self, int pos, long mode_sum, int d_left) -> void {
                    if (pos == n) {
                        if (mode_sum != 0 || d_left != 0) return;
                        IntersectionKey key = make_key(g, j, pairs);
                        if (key_valid(key)) note_key(key);
                        return;
                    }
                    for (long a = -mode_bound; a <= mode_bound; ++a) {
                        for (int d = 0; d <= d_left; ++d) {
                            pairs[static_cast<std::size_t>(pos)] = {a, d};
                            self(self, pos + 1, mode_sum + a, d_left - d);
                        }
                    }
                };
                rec(rec, 0, 0, d_need);
            }
        }
    }

    // Flow equations for every admissible target.
    std::vector<std::vector<long>> backgrounds;
    for (long b = -mode_bound; b <= mode_bound; ++b) backgrounds.push_back({b});
    for (int m = 1; m <= m_max; ++m) {
        for (int g = 0; g <= g_max; ++g) {
            for (int j = 0; j <= g; ++j) {
                auto eqs = flow_relations(dx_flows[static_cast<std::size_t>(m)], m, g, j,
                                          backgrounds);
                for (auto& eq : eqs) {
                    for (const auto& term : eq.terms) {
                        for (const auto& key : term.factors) note_key(key);
                    }
                    equations.push_back(std::move(eq));
                }
            }
        }
    }

    // Descent closure: string and dilaton equations for every reachable key.
    while (!fresh.empty()) {
        IntersectionKey key = fresh.front();
        fresh.pop();
        if (string_applies(key)) {
            Equation eq = string_relation(key);
            for (const auto& term : eq.terms) {
                for (const auto& k : term.factors) note_key(k);
            }
            equations.push_back(std::move(eq));
        }
        if (dilaton_applies(key)) {
            Equation eq = dilaton_relation(key);
            for (const auto& term : eq.terms) {
                for (const auto& k : term.factors) note_key(k);
            }
            equations.push_back(std::move(eq));
        }
    }

    // Known values, primed with the genus-0 three-point seeds.
    std::map<IntersectionKey, Rational> knowns;
    std::set<IntersectionKey> seeded;
    for (const auto& key : universe) {
        if (is_seed_key(key)) {
            knowns.emplace(key, Rational(1));
            seeded.insert(key);
        }
    }

    auto learn = [&](const IntersectionKey& key, const Rational& v, const Equation& eq) {
        auto it = knowns.find(key);
        if (it == knowns.end()) {
            knowns.emplace(key, v);
            return true;
        }
        if (it->second != v) {
            throw InconsistentSystem("solve: " + equation_summary(eq) + " forces " +
                                     key_to_string(key) + " = " + rational_to_string(v) +
                                     " against established " + rational_to_string(it->second));
        }
        return false;
    };

    std::vector<bool> resolved(equations.size(), false);
    std::vector<bool> determining(equations.size(), false);
    bool progress = true;
    while (progress) {
        progress = false;
        std::vector<std::pair<std::size_t, ReducedEquation>> pending;
        for (std::size_t i = 0; i < equations.size(); ++i) {
            if (resolved[i]) continue;
            ReducedEquation red = reduce(equations[i], knowns);
            if (red.multi_unknown) continue;
            if (red.linear.empty()) {
                if (red.constant != 0) {
                    throw InconsistentSystem("solve: " + equation_summary(equations[i]) +
                                             " reduces to " +
                                             rational_to_string(red.constant) + " = 0");
                }
                resolved[i] = true;
                continue;
            }
            if (red.linear.size() == 1) {
                const auto& [key, coeff] = *red.linear.begin();
                if (learn(key, -red.constant / coeff, equations[i])) {
                    determining[i] = true;
                }
                resolved[i] = true;
                progress = true;
                continue;
            }
            pending.emplace_back(i, std::move(red));
        }

        if (!progress && !pending.empty()) {
            // Exact elimination over the still-coupled linear rows; any row
            // that pivots down to a single coefficient determines a key.
            std::set<IntersectionKey> columns;
            for (const auto& [i, red] : pending) {
                for (const auto& [key, c] : red.linear) {
                    (void)c;
                    columns.insert(key);
                }
            }
            std::vector<IntersectionKey> cols(columns.begin(), columns.end());
            std::map<IntersectionKey, std::size_t> col_index;
            for (std::size_t c = 0; c < cols.size(); ++c) col_index.emplace(cols[c], c);

            std::vector<std::vector<Rational>> rows;
            std::vector<Rational> rhs;
            std::vector<std::size_t> origin;
            for (const auto& [i, red] : pending) {
                std::vector<Rational> row(cols.size(), Rational(0));
                for (const auto& [key, c] : red.linear) row[col_index.at(key)] = c;
                rows.push_back(std::move(row));
                rhs.push_back(-red.constant);
                origin.push_back(i);
            }

            std::size_t rank_row = 0;
            for (std::size_t c = 0; c < cols.size() && rank_row < rows.size(); ++c) {
                std::size_t sel = rank_row;
                while (sel < rows.size() && rows[sel][c] == 0) ++sel;
                if (sel == rows.size()) continue;
                std::swap(rows[sel], rows[rank_row]);
                std::swap(rhs[sel], rhs[rank_row]);
                std::swap(origin[sel], origin[rank_row]);
                Rational inv = Rational(1) / rows[rank_row][c];
                for (auto& v : rows[rank_row]) v *= inv;
                rhs[rank_row] *= inv;
                for (std::size_t r = 0; r < rows.size(); ++r) {
                    if (r == rank_row || rows[r][c] == 0) continue;
                    Rational f = rows[r][c];
                    for (std::size_t cc = 0; cc < cols.size(); ++cc) {
                        rows[r][cc] -= f * rows[rank_row][cc];
                    }
                    rhs[r] -= f * rhs[rank_row];
                }
                ++rank_row;
            }

            for (std::size_t r = 0; r < rows.size(); ++r) {
                std::size_t nonzero = 0;
                std::size_t col = 0;
                for (std::size_t c = 0; c < cols.size(); ++c) {
                    if (rows[r][c] != 0) {
                        ++nonzero;
                        col = c;
                    }
                }
                if (nonzero == 0) {
                    if (rhs[r] != 0) {
                        throw InconsistentSystem(
                            "solve: contradictory combination involving " +
                            equation_summary(equations[origin[r]]));
                    }
                    continue;
                }
                if (nonzero == 1) {
                    if (learn(cols[col], rhs[r] / rows[r][col], equations[origin[r]])) {
                        progress = true;
                    }
                }
            }
        }
    }

    // Final verification sweep: every fully known equation must balance.
    ConsistencyReport report;
    report.equations = static_cast<long>(equations.size());
    std::map<std::pair<int, int>, LevelReport> levels;
    auto level_of = [&](int g, int n) -> LevelReport& {
        auto [it, inserted] = levels.try_emplace({g, n});
        if (inserted) {
            it->second.g = g;
            it->second.n = n;
        }
        return it->second;
    };
    std::set<IntersectionKey> checked_keys;
    for (std::size_t i = 0; i < equations.size(); ++i) {
        ReducedEquation red = reduce(equations[i], knowns);
        LevelReport& lv = level_of(equations[i].level_g, equations[i].level_n);
        if (red.multi_unknown || !red.linear.empty()) continue;  // open equation
        if (red.constant != 0) {
            lv.inconsistent += 1;
            report.inconsistent += 1;
            throw InconsistentSystem("solve: verification failed for " +
                                     equation_summary(equations[i]) + ": residue " +
                                     rational_to_string(red.constant));
        }
        if (!determining[i]) {
            lv.redundant_consistent += 1;
            report.redundant_consistent += 1;
            for (const auto& term : equations[i].terms) {
                for (const auto& key : term.factors) checked_keys.insert(key);
            }
        }
    }

    for (const auto& key : universe) {
        LevelReport& lv = level_of(key.g, key.n());
        if (seeded.count(key) != 0) continue;
        lv.unknowns += 1;
        if (knowns.count(key) != 0) {
            lv.determined += 1;
        } else {
            lv.undetermined += 1;
            report.undetermined.push_back(key);
        }
    }
    for (auto& [gn, lv] : levels) {
        (void)gn;
        report.levels.push_back(lv);
    }
    std::sort(report.levels.begin(), report.levels.end(),
              [](const LevelReport& a, const LevelReport& b) {
                  return std::tuple(3 * a.g + a.n, a.g) < std::tuple(3 * b.g + b.n, b.g);
              });

    // Reported table: the requested window only.
    SolveResult result;
    result.report = std::move(report);
    for (const auto& [key, value] : knowns) {
        if (key.g > g_max || key.n() > n_max) continue;
        bool in_window = true;
        for (const auto& [a, d] : key.pairs) {
            (void)d;
            if (a < -mode_bound || a > mode_bound) in_window = false;
        }
        if (!in_window) continue;
        Provenance prov = Provenance::solved;
        if (seeded.count(key) != 0) {
            prov = Provenance::seed;
        } else if (checked_keys.count(key) != 0) {
            prov = Provenance::checked;
        }
        result.table.set(key, Scalar(value), prov);
    }
    return result;
}

APoly polynomial_fit(const IntersectionTable& table, int g, int j, const std::vector<int>& d,
                     const std::vector<long>& samples) {
    if (d.size() < 2) {
        throw std::invalid_argument("polynomial_fit: need at least two marked points");
    }
    if (samples.empty()) throw std::invalid_argument("polynomial_fit: no samples");

    auto value_at = [&](long a) {
        std::vector<std::pair<long, int>> pairs;
        pairs.emplace_back(a, d[0]);
        pairs.emplace_back(-a, d[1]);
        for (std::size_t i = 2; i < d.size(); ++i) pairs.emplace_back(0, d[i]);
        const Scalar& v = table.value(make_key(g, j, std::move(pairs)));
        if (!v.is_real()) throw std::logic_error("polynomial_fit: complex table value");
        return v.re;
    };

    const std::size_t degree_nodes =
        std::min(samples.size(), static_cast<std::size_t>(2 * j + 1));
    // Vandermonde interpolation on the leading nodes.
    std::vector<std::vector<Rational>> m(degree_nodes,
                                         std::vector<Rational>(degree_nodes, Rational(0)));
    std::vector<Rational> rhs(degree_nodes);
    for (std::size_t r = 0; r < degree_nodes; ++r) {
        Rational p(1);
        for (std::size_t c = 0; c < degree_nodes; ++c) {
            m[r][c] = p;
            p *= Rational(samples[r]);
        }
        rhs[r] = value_at(samples[r]);
    }
    for (std::size_t c = 0; c < degree_nodes; ++c) {
        std::size_t sel = c;
        while (sel < degree_nodes && m[sel][c] == 0) ++sel;
        if (sel == degree_nodes) {
            throw std::invalid_argument("polynomial_fit: repeated sample points");
        }
        std::swap(m[sel], m[c]);
        std::swap(rhs[sel], rhs[c]);
        Rational inv = Rational(1) / m[c][c];
        for (auto& v : m[c]) v *= inv;
        rhs[c] *= inv;
        for (std::size_t r = 0; r < degree_nodes; ++r) {
            if (r == c || m[r][c] == 0) continue;
            Rational f = m[r][c];
            for (std::size_t cc = 0; cc < degree_nodes; ++cc) m[r][cc] -= f * m[c][cc];
            rhs[r] -= f * rhs[c];
        }
    }
    APoly fit;
    fit.c = rhs;
    fit.trim();

    for (std::size_t i = degree_nodes; i < samples.size(); ++i) {
        Rational predicted = fit.eval(Rational(samples[i]));
        Rational actual = value_at(samples[i]);
        if (predicted != actual) {
            throw FitValidationFailed("polynomial_fit: validation at a = " +
                                      std::to_string(samples[i]) + " expected " +
                                      rational_to_string(predicted) + " but table holds " +
                                      rational_to_string(actual));
        }
    }
    return fit;
}

namespace {

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::seed: return "seed";
        case Provenance::solved: return "solved";
        default: return "checked";
    }
}

nlohmann::ordered_json key_json(const IntersectionKey& key) {
    nlohmann::ordered_json out;
    out["g"] = key.g;
    out["j"] = key.j;
    auto a = nlohmann::ordered_json::array();
    auto d = nlohmann::ordered_json::array();
    for (const auto& [mode, psi] : key.pairs) {
        a.push_back(mode);
        d.push_back(psi);
    }
    out["A"] = std::move(a);
    out["D"] = std::move(d);
    return out;
}

}  // namespace

std::string table_to_json(const IntersectionTable& table) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& [key, entry] : table.entries) {
        nlohmann::ordered_json jk = key_json(key);
        if (!entry.value.is_real()) {
            throw std::logic_error("table_to_json: complex table value");
        }
        jk["value"] = rational_to_string(entry.value.re);
        jk["provenance"] = provenance_name(entry.prov);
        out.push_back(std::move(jk));
    }
    return out.dump();
}

std::string report_to_json(const ConsistencyReport& report) {
    nlohmann::ordered_json out;
    out["equations"] = report.equations;
    out["redundant_consistent"] = report.redundant_consistent;
    out["inconsistent"] = report.inconsistent;
    out["levels"] = nlohmann::ordered_json::array();
    for (const auto& lv : report.levels) {
        nlohmann::ordered_json jl;
        jl["g"] = lv.g;
        jl["n"] = lv.n;
        jl["unknowns"] = lv.unknowns;
        jl["determined"] = lv.determined;
        jl["redundant_consistent"] = lv.redundant_consistent;
        jl["inconsistent"] = lv.inconsistent;
        jl["undetermined"] = lv.undetermined;
        out["levels"].push_back(std::move(jl));
    }
    out["undetermined"] = nlohmann::ordered_json::array();
    for (const auto& key : report.undetermined) {
        out["undetermined"].push_back(key_json(key));
    }
    return out.dump();
}

}  // namespace nckdv

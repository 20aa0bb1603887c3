#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "nckdv/errors.hpp"
#include "nckdv/hierarchy.hpp"
#include "nckdv/predictors.hpp"
#include "nckdv/tausolver.hpp"

using namespace nckdv;

namespace {

// constant + sum of terms, with invalid keys reading as zero.
Scalar eval_equation(const Equation& eq, const IntersectionTable& table) {
    Scalar total{eq.constant};
    for (const auto& term : eq.terms) {
        Scalar prod{term.coeff};
        for (const auto& key : term.factors) {
            if (!key_valid(key)) {
                prod = Scalar(0);
                break;
            }
            prod *= table.value(key);
        }
        total += prod;
    }
    return total;
}

}  // namespace

TEST_CASE("keys sort their insertions and expose sums") {
    IntersectionKey key = make_key(1, 1, {{2, 1}, {-2, 0}});
    CHECK(key.pairs == std::vector<std::pair<long, int>>{{-2, 0}, {2, 1}});
    CHECK(key.n() == 2);
    CHECK(key.mode_sum() == 0);
    CHECK(key.psi_sum() == 1);
    CHECK(key_to_string(key) == "<tau_0(-2) tau_1(2)>_{g=1,j=1}");
}

TEST_CASE("key validity encodes stability, balance and degree") {
    CHECK(key_valid(make_key(0, 0, {{0, 0}, {1, 0}, {-1, 0}})));
    CHECK(key_valid(make_key(1, 1, {{0, 0}})));
    CHECK(key_valid(make_key(1, 0, {{0, 1}})));
    CHECK(key_valid(make_key(2, 2, {{3, 3}, {-3, 0}})));
    // Unstable signature.
    CHECK_FALSE(key_valid(make_key(0, 0, {{1, 0}, {-1, 0}})));
    // Unbalanced modes.
    CHECK_FALSE(key_valid(make_key(1, 1, {{1, 0}})));
    // Negative psi power.
    CHECK_FALSE(key_valid(make_key(1, 0, {{1, -1}, {-1, 3}})));
    // Degree constraint sum(d) = 3g-3+n-j.
    CHECK_FALSE(key_valid(make_key(1, 1, {{0, 1}})));
    CHECK_FALSE(key_valid(make_key(2, 3, {{0, 2}})));
}

TEST_CASE("table storage and readable missing-key errors") {
    IntersectionTable table;
    IntersectionKey key = make_key(1, 1, {{0, 0}});
    CHECK_FALSE(table.contains(key));
    CHECK_THROWS_AS(table.value(key), std::out_of_range);
    table.set(key, Scalar(Rational(-1, 24)), Provenance::solved);
    CHECK(table.contains(key));
    CHECK(table.value(key) == Scalar(Rational(-1, 24)));
}

TEST_CASE("seeding inserts the balanced three point classical values") {
    IntersectionTable small;
    seed(small, 0);
    CHECK(small.entries.size() == 1);
    CHECK(small.value(make_key(0, 0, {{0, 0}, {0, 0}, {0, 0}})) == Scalar(1));

    IntersectionTable table;
    seed(table, 2);
    CHECK(table.entries.size() == 5);
    for (const auto& [key, entry] : table.entries) {
        CHECK(key.g == 0);
        CHECK(key.psi_sum() == 0);
        CHECK(key.mode_sum() == 0);
        CHECK(entry.value == Scalar(1));
        CHECK(entry.prov == Provenance::seed);
    }
    CHECK(table.contains(make_key(0, 0, {{-2, 0}, {1, 0}, {1, 0}})));
}

TEST_CASE("string and dilaton relations at hand checked keys") {
    IntersectionKey one_point = make_key(1, 1, {{0, 0}});
    IntersectionKey two_point = make_key(1, 1, {{0, 0}, {0, 1}});
    CHECK(string_applies(one_point));
    CHECK(dilaton_applies(two_point));
    CHECK_FALSE(string_applies(make_key(1, 1, {{1, 0}, {-1, 1}})));
    CHECK_FALSE(dilaton_applies(one_point));
    CHECK_THROWS_AS(string_relation(make_key(1, 0, {{1, 1}, {-1, 1}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(dilaton_relation(one_point), std::invalid_argument);

    // <tau_0(0)>_{1,1} is pinned by the constant correction alone.
    Equation str = string_relation(one_point);
    CHECK(str.source == "string");
    CHECK(str.terms.size() == 1);
    CHECK(str.constant == Rational(1, 24));

    // The genus zero three point seed is pinned by the quadratic correction.
    Equation seed_eq = string_relation(make_key(0, 0, {{0, 0}, {1, 0}, {-1, 0}}));
    CHECK(seed_eq.constant == Rational(-1));
    CHECK(seed_eq.terms.size() == 1);

    // <tau_1(0)>_{1,0} = 1/24 via the dilaton constant.
    Equation dil = dilaton_relation(make_key(1, 0, {{0, 1}}));
    CHECK(dil.source == "dilaton");
    CHECK(dil.terms.size() == 1);
    CHECK(dil.constant == Rational(-1, 24));

    IntersectionTable table;
    table.set(one_point, Scalar(Rational(-1, 24)), Provenance::solved);
    table.set(two_point, Scalar(Rational(-1, 24)), Provenance::solved);
    CHECK(eval_equation(str, table) == Scalar(0));
    CHECK(eval_equation(string_relation(two_point), table) == Scalar(0));
    CHECK(eval_equation(dilaton_relation(two_point), table) == Scalar(0));
}

TEST_CASE("flow relation counts follow the background degree budget") {
    DiffPoly2 q = dx(flow(1, Truncation{-5, 0, 0}));
    CHECK(flow_relations(q, 1, 0, 0, {{0}}).size() == 1);
    CHECK(flow_relations(q, 1, 0, 0, {{1, -1}}).size() == 2);
    CHECK(flow_relations(q, 1, 0, 0, {}).empty());
    for (const auto& eq : flow_relations(q, 1, 0, 0, {{0}, {1, -1}})) {
        CHECK(eq.source == "flow 1");
        CHECK_FALSE(eq.terms.empty());
    }
    CHECK_THROWS_AS(flow_relations(q, 0, 0, 0, {}), std::invalid_argument);
    CHECK_THROWS_AS(flow_relations(q, 1, 0, 1, {}), std::invalid_argument);
}

TEST_CASE("solver reproduces the known genus one values") {
    SolveResult r = solve(1, 2, 2, 2);
    CHECK(r.report.inconsistent == 0);
    CHECK(r.report.equations > 0);

    CHECK(r.table.value(make_key(1, 1, {{0, 0}})) == Scalar(Rational(-1, 24)));
    CHECK(r.table.value(make_key(1, 1, {{0, 0}, {0, 1}})) == Scalar(Rational(-1, 24)));
    CHECK(r.table.value(make_key(1, 1, {{1, 1}, {-1, 0}})) == Scalar(0));
    CHECK(r.table.value(make_key(1, 1, {{2, 1}, {-2, 0}})) == Scalar(Rational(1, 8)));

    // Every mu-free entry agrees with the psi intersection recursion.
    int swept = 0;
    for (const auto& [key, entry] : r.table.entries) {
        if (key.j != 0) continue;
        std::vector<long> d;
        for (const auto& [a, dd] : key.pairs) d.push_back(dd);
        CHECK(entry.value == dvv_intersection(key.g, d));
        ++swept;
    }
    CHECK(swept >= 5);

    // Undetermined keys are valid, in range and absent from the table.
    for (const auto& key : r.report.undetermined) {
        CHECK(key_valid(key));
        CHECK_FALSE(r.table.contains(key));
    }
    CHECK(std::find(r.report.undetermined.begin(), r.report.undetermined.end(),
                    make_key(1, 0, {{1, 1}, {-1, 1}})) != r.report.undetermined.end());

    // Levels are reported in increasing complexity order.
    CHECK(std::is_sorted(r.report.levels.begin(), r.report.levels.end(),
                         [](const LevelReport& x, const LevelReport& y) {
                             return std::pair(3 * x.g + x.n, x.g) <
                                    std::pair(3 * y.g + y.n, y.g);
                         }));
}

TEST_CASE("enlarging the universe preserves solved values") {
    SolveResult narrow = solve(1, 2, 1, 1);
    SolveResult wide = solve(1, 2, 2, 2);
    CHECK(narrow.report.inconsistent == 0);
    CHECK_FALSE(narrow.table.entries.empty());
    for (const auto& [key, entry] : narrow.table.entries) {
        REQUIRE(wide.table.contains(key));
        CHECK(wide.table.value(key) == entry.value);
    }
}

TEST_CASE("polynomial fit recovers the one psi family") {
    SolveResult r = solve(1, 2, 3, 2);
    APoly fit = polynomial_fit(r.table, 1, 1, {1, 0}, {0, 1, 2, 3});
    CHECK(fit == u_poly(1));
    CHECK(to_display(fit) == "-1/24 + 1/24*a^2");
    CHECK(fit.eval(5) == Rational(1));
}

TEST_CASE("polynomial fit validates the spare samples") {
    IntersectionTable table;
    auto key_at = [](long a) { return make_key(1, 1, {{a, 1}, {-a, 0}}); };
    table.set(key_at(0), Scalar(Rational(-1, 24)), Provenance::solved);
    table.set(key_at(1), Scalar(0), Provenance::solved);
    table.set(key_at(2), Scalar(Rational(1, 8)), Provenance::solved);
    CHECK(polynomial_fit(table, 1, 1, {1, 0}, {0, 1, 2}) == u_poly(1));

    CHECK_THROWS_AS(polynomial_fit(table, 1, 1, {1, 0}, {0, 1, 2, 3}),
                    std::out_of_range);
    table.set(key_at(3), Scalar(Rational(1, 2)), Provenance::solved);
    CHECK_THROWS_AS(polynomial_fit(table, 1, 1, {1, 0}, {0, 1, 2, 3}),
                    FitValidationFailed);
}

TEST_CASE("json dumps parse and carry the table shape") {
    SolveResult r = solve(1, 2, 1, 1);
    nlohmann::json jt = nlohmann::json::parse(table_to_json(r.table));
    REQUIRE(jt.is_array());
    CHECK(jt.size() == r.table.entries.size());
    for (const auto& row : jt) {
        CHECK(row.contains("g"));
        CHECK(row.contains("j"));
        CHECK(row.contains("A"));
        CHECK(row.contains("D"));
        CHECK(row.contains("value"));
        CHECK(row.contains("provenance"));
    }
    nlohmann::json jr = nlohmann::json::parse(report_to_json(r.report));
    CHECK(jr["inconsistent"] == 0);
    CHECK(jr["equations"].get<long>() == r.report.equations);
    CHECK(jr["levels"].is_array());
    CHECK(jr["undetermined"].is_array());
}

#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nckdv/diffpoly.hpp"
#include "nckdv/errors.hpp"
#include "nckdv/scalar.hpp"
#include "nckdv/series.hpp"

namespace nckdv {

// Index of one generating-series coefficient: the integral of 2^{-j} times
// the degree-2j Pixton class against psi powers, over the moduli space of
// genus-g curves with one marked point per (mode, psi-power) pair.
struct IntersectionKey {
    int g = 0;
    int j = 0;
    std::vector<std::pair<long, int>> pairs;  // (mode a_i, psi power d_i), sorted

    friend auto operator<=>(const IntersectionKey&, const IntersectionKey&) = default;

    int n() const { return static_cast<int>(pairs.size()); }
    long mode_sum() const;
    int psi_sum() const;
};

// Sorts the pairs into canonical order.
IntersectionKey make_key(int g, int j, std::vector<std::pair<long, int>> pairs);

// Stability 2g-2+n > 0, 0 <= j <= g, zero mode sum, nonnegative psi powers
// and the degree constraint sum(d) = 3g-3+n-j. Keys failing any of these
// index a vanishing coefficient and are never stored.
bool key_valid(const IntersectionKey& key);

enum class Provenance { seed, solved, checked };

struct TableEntry {
    Scalar value;
    Provenance prov = Provenance::solved;
};

struct IntersectionTable {
    std::map<IntersectionKey, TableEntry> entries;

    bool contains(const IntersectionKey& key) const;
    // Throws std::out_of_range with a readable key description when missing.
    const Scalar& value(const IntersectionKey& key) const;
    void set(const IntersectionKey& key, Scalar v, Provenance prov);
};

// One product of table values with a rational coefficient.
struct ProductTerm {
    Rational coeff;
    std::vector<IntersectionKey> factors;
};

// constant + sum of terms = 0. Flow equations are multilinear in the table
// values; string and dilaton equations are linear.
struct Equation {
    std::string source;  // "string" | "dilaton" | "flow m"
    Rational constant{0};
    std::vector<ProductTerm> terms;
    int level_g = 0;  // level attribution for the report
    int level_n = 0;
};

struct LevelReport {
    int g = 0;
    int n = 0;
    long unknowns = 0;
    long determined = 0;  // rank actually realized at this level
    long redundant_consistent = 0;
    long inconsistent = 0;
    long undetermined = 0;
};

struct ConsistencyReport {
    std::vector<LevelReport> levels;  // increasing 3g+n, ties by g
    std::vector<IntersectionKey> undetermined;
    long equations = 0;
    long redundant_consistent = 0;
    long inconsistent = 0;
};

struct SolveResult {
    IntersectionTable table;
    ConsistencyReport report;
};

// Inserts every genus-0 three-point seed with all psi powers zero and
// |modes| <= mode_bound: value 1.
void seed(IntersectionTable& table, long mode_bound);

// String equation solved for the key, which must contain a (0,0) insertion:
// the key minus that insertion descends by lowering each positive psi power,
// plus the genus-0 quadratic correction and the (1,1) constant.
Equation string_relation(const IntersectionKey& key);
bool string_applies(const IntersectionKey& key);

// Dilaton equation for a key containing a (0,1) insertion: scaling by
// 2g-2+n of the reduced key plus the (1,0) constant 1/24.
Equation dilaton_relation(const IntersectionKey& key);
bool dilaton_applies(const IntersectionKey& key);

// Flow equations at target genus big_g and mu-weight big_j for the m-th
// flow. dx_pm is the x-derivative of the m-th flow polynomial, computed
// within caps covering eps <= 2*big_g and mu <= 2*big_j. backgrounds lists
// the extra insertion mode tuples; psi powers on the background are pinned
// by the degree constraint and enumerated where ambiguous. The empty
// background applies exactly when m = 3*big_g - big_j and is included
// automatically.
std::vector<Equation> flow_relations(const DiffPoly2& dx_pm, int m, int big_g, int big_j,
                                     const std::vector<std::vector<long>>& backgrounds);

// Assembles seeds, flow equations for all m <= m_max and string/dilaton
// descents, then solves the whole system to a fixpoint by exact linear
// algebra. Throws InconsistentSystem on any contradiction. The returned
// table is restricted to g <= g_max, n <= n_max, |modes| <= mode_bound;
// the report covers the full internal universe.
SolveResult solve(int g_max, int n_max, long mode_bound, int m_max);

// Interpolates table values for keys with modes (a, -a, 0, ...) and the
// given psi powers through the first 2j+1 sample points, then validates the
// remaining samples exactly. Throws FitValidationFailed on mismatch and
// std::out_of_range on missing table entries.
APoly polynomial_fit(const IntersectionTable& table, int g, int j, const std::vector<int>& d,
                     const std::vector<long>& samples);

// "<tau_d1(a1)...tau_dn(an)>_{g,j}" rendering for messages and reports.
std::string key_to_string(const IntersectionKey& key);

// [{"g":...,"j":...,"A":[...],"D":[...],"value":"p/q","provenance":"..."}]
// in canonical key order.
std::string table_to_json(const IntersectionTable& table);
std::string report_to_json(const ConsistencyReport& report);

}  // namespace nckdv

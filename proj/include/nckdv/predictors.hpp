#pragma once

#include <vector>

#include "nckdv/scalar.hpp"
#include "nckdv/series.hpp"
#include "nckdv/tausolver.hpp"

namespace nckdv {

// Predicted one-point integral of the normalized degree-2j Pixton class
// against psi_1^{3g-1-j} on the two-point genus-g space with modes (a, -a):
// the coefficient of mu^{2j} z^{3g-1-j} in (1/z)(S(a mu z)/S(mu z)
// e^{z^3/24} - 1). Requires g >= 1 and 0 <= j <= g, else std::domain_error.
// j = 0 recovers the classical one-point value 1/(24^g g!).
Scalar one_psi_pixton(int g, int j, long a);

// The same prediction for fixed (g, j) as an exact polynomial in the mode a.
APoly one_psi_polynomial(int g, int j);

// Three-point form T^j_g(a): the predicted integral against psi_1^{3g-j}
// with modes (a, -a, 0). Same closed form, but g = j = 0 is admissible and
// equals 1. Requires g >= 0 and 0 <= j <= g.
Scalar t_jg(int g, int j, long a);

// Coefficient of mu^{2g} in S(a mu)/S(mu) - 1, the predicted psi_1^{2g-1}
// integral over the double-ramification cycle with modes (a, -a). g >= 1.
Scalar bssz(int g, long a);

// Witten-Kontsevich correlator <tau_{d_1} ... tau_{d_n}>_g by the DVV
// recursion, memoized and safe for concurrent callers. Returns 0 outside
// the stable range or off the dimension constraint sum(d) = 3g-3+n.
Scalar dvv_intersection(int g, const std::vector<long>& d);

// R^j_g(a) = sum_{h=0}^{j} T^{j-h}_{g-h}(a) Q_h(a), from the closed form or
// from solved three-point table entries. The identity under test says this
// equals 1/(24^g g!) for j = 0 and vanishes for j > 0.
Rational rjg_value(int g, int j, long a);
Rational rjg_value(int g, int j, long a, const IntersectionTable& table);
bool check_rjg(int g, int j, long a);
bool check_rjg(int g, int j, long a, const IntersectionTable& table);

}  // namespace nckdv

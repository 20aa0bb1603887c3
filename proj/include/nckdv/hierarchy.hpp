#pragma once

#include "nckdv/psido.hpp"

namespace nckdv {

// Lax operator L = dx^2 + 2 eps^{-2} u of the noncommutative KdV hierarchy.
PsiDO lax_operator(const Truncation& trunc);

// Window wide enough to derive flow n: the square root is needed down to
// order -(2n+1), kept with a buffer of 2, and the published flow terms close
// at eps degree 2n+2.
Truncation default_truncation(int n);

// Hamiltonian density P_n of the n-th flow, u_{t_n} = dx(P_n), derived from
//   dL/dt_n = (eps^{2n} / (2n+1)!!) [ (L^{n+1/2})_+ , L ].
// The commutator must be purely order 0 (CommutatorNotOrderZero otherwise);
// the order-0 coefficient is rescaled by eps^2/2 against the 2 eps^{-2}
// in front of u in L, integrated in x exactly, and exported with the window
// eps_exp <= trunc.eps_max. classical = true runs the same derivation over
// the commutative coefficient product.
DiffPoly2 flow(int n, const Truncation& trunc, bool classical = false);
DiffPoly2 flow(int n);  // default_truncation(n), Moyal product

// Classical hierarchy density through the commutative-product code path.
DiffPoly2 classical_flow(int n, const Truncation& trunc);
DiffPoly2 classical_flow(int n);

// u^{*(n+1)}/(n+1)! with left-nested star powers under the given caps; the
// leading (g = 0) part of flow(n). Star powers of u do not terminate, so the
// caps must bound the mu exponent.
DiffPoly2 dispersionless_flow(int n, const Caps& caps);
DiffPoly2 dispersionless_flow(int n);  // caps {2n+2, 2n+2}

// Every flow monomial satisfies, for some g >= 0 and m >= 0:
// factor count n+1-g, eps_exp = 2g+m, mu_exp = m, sum_k1 = eps_exp,
// sum_k2 = mu_exp (so the degree is (0,0) throughout). Returns false as soon
// as one monomial violates this.
bool check_flow_shape(int n, const DiffPoly2& p);

// The eps_exp == mu_exp part of a flow (its g = 0 layer).
DiffPoly2 leading_flow_part(const DiffPoly2& p);

// Derivative of target along the evolutionary vector field with
// characteristic q: sum over jet variables of
// partial_u(target, k1, k2) * dx^{k1} dy^{k2} (q), truncated by caps.
DiffPoly2 prolongation(const DiffPoly2& target, const DiffPoly2& q, const Caps& caps);

// Exact commutativity of flows m and n on the quotient ring cut by
// Caps{trunc.eps_max, trunc.mu_cap()}: X_m(dx P_n) == X_n(dx P_m) with both
// sides reduced modulo the caps. Flows are derived internally at a window
// wide enough for the requested quotient; trunc.depth_floor deepens the
// derivation window when below the per-flow default.
bool check_commutativity(int m, int n, const Truncation& trunc);

}  // namespace nckdv

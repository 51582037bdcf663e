#pragma once

#include "flatconn/matrix.hpp"

namespace flatconn {

// The univariate linear system dg/dt = -g * b for a square series matrix
// b(t) in one variable.
struct OdeProblem {
    SeriesMatrix b;

    explicit OdeProblem(SeriesMatrix coefficient);

    int rank() const { return b.rows(); }
    int prec() const { return b.prec(); }
};

// Exact power-series solution with g(0) = I, by the coefficient recurrence
//   g_{k+1} = -1/(k+1) * sum_{i+j=k} g_i * b_j.
SeriesMatrix solve_matrix_ode(const OdeProblem& p);

// The closed-form candidate g = exp(-int b dt).  Correct when the
// coefficient matrices of b pairwise commute; wrong in general.
SeriesMatrix exp_method(const OdeProblem& p);

// dg/dt + g * b, the defect of a candidate solution (zero at precision
// prec - 1 iff g solves the system).
SeriesMatrix residual(const SeriesMatrix& g, const OdeProblem& p);

// True iff all coefficient matrices of b commute pairwise (the condition
// under which exp_method is exact).
bool commuting_family_check(const OdeProblem& p);

// Finite product approximation with K nodes at t*k/K:
//   g_K = (I - (t/K) b(t*1/K)) (I - (t/K) b(t*2/K)) ... (I - (t/K) b(t)),
// earliest node leftmost.  Coefficientwise, g_K -> solve_matrix_ode as
// K -> infinity.
SeriesMatrix riemann_product(const OdeProblem& p, int nodes);

// Bjork's rank-2 system b(t) = a1 + 2t*a2 with a1 = [[0,1],[0,0]],
// a2 = [[1,0],[0,0]]; its coefficients do not commute, and exp_method
// fails on it at order 2.
OdeProblem bjork_counterexample(int prec);

}  // namespace flatconn

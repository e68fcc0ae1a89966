#pragma once

#include <vector>

#include "thresholdlab/rational.hpp"

namespace tlab {

// min c.x  s.t.  A x >= b, x >= 0   (dense, tiny instances only)
struct LpProblem {
    std::vector<std::vector<double>> a; // m rows of n coefficients
    std::vector<double> b;              // m
    std::vector<double> c;              // n
};

struct LpSolution {
    bool feasible = false;
    double value = 0;
    std::vector<double> x;
    bool used_exact_fallback = false;
};

// Two-phase bounded dense simplex with Bland's anti-cycling rule. The double
// solve is re-validated at 1e-9 (feasibility, nonnegativity, objective
// consistency); on failure the instance is re-solved in exact rational
// arithmetic. Throws lp_numerical_failure only if the exact path also fails
// its own validation.
LpSolution solve_lp(const LpProblem& lp);

// Exact solve, exposed for cross-checking the floating path in tests.
struct LpSolutionExact {
    bool feasible = false;
    Rational value;
    std::vector<Rational> x;
};
LpSolutionExact solve_lp_exact(const LpProblem& lp);

} // namespace tlab

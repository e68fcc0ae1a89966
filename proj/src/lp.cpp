#include "thresholdlab/lp.hpp"

#include <cmath>
#include <cstddef>

#include "thresholdlab/error.hpp"

namespace tlab {

namespace {

template <typename S>
struct ScalarOps;

template <>
struct ScalarOps<double> {
    static constexpr double PIVOT_EPS = 1e-11;
    static bool is_neg(double x) { return x < -PIVOT_EPS; }
    static bool is_pos(double x) { return x > PIVOT_EPS; }
    static double from_double(double x) { return x; }
    static double to_double(double x) { return x; }
};

template <>
struct ScalarOps<Rational> {
    static bool is_neg(const Rational& x) { return x.sign() < 0; }
    static bool is_pos(const Rational& x) { return x.sign() > 0; }
    static Rational from_double(double x) { return Rational::from_double_exact(x); }
    static double to_double(const Rational& x) { return x.to_double(); }
};

// Dense two-phase simplex, Bland's rule (lowest eligible index enters;
// ratio ties leave by lowest basis index), which terminates without cycling.
template <typename S>
class Simplex {
public:
    using Ops = ScalarOps<S>;

    Simplex(const LpProblem& lp)
        : m_(lp.a.size()), n_(lp.c.size()), cols_(n_ + 2 * m_), tab_(m_ + 1, std::vector<S>(cols_ + 1, S(0))) {
        // columns: [0,n) structural x, [n, n+m) surplus, [n+m, n+2m) artificial
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) tab_[i][j] = Ops::from_double(lp.a[i][j]);
            tab_[i][n_ + i] = S(-1);
            tab_[i][n_ + m_ + i] = S(1);
            tab_[i][cols_] = Ops::from_double(lp.b[i]); // b >= 0 required
        }
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) basis_[i] = n_ + m_ + i;
    }

    bool solve(const LpProblem& lp) {
        // phase 1: minimise sum of artificials
        auto& obj = tab_[m_];
        for (std::size_t j = 0; j <= cols_; ++j) obj[j] = S(0);
        for (std::size_t j = n_ + m_; j < n_ + 2 * m_; ++j) obj[j] = S(1);
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j <= cols_; ++j) obj[j] -= tab_[i][j];
        pivot_loop(n_ + 2 * m_);
        // phase-1 objective value is -obj[rhs]
        S w = -obj[cols_];
        if (Ops::is_pos(w)) return false; // infeasible

        // drive any artificial still basic at zero out of the basis
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_ + m_) continue;
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < n_ + m_; ++j) {
                if (Ops::is_pos(tab_[i][j]) || Ops::is_neg(tab_[i][j])) {
                    enter = j;
                    break;
                }
            }
            if (enter < cols_) pivot(i, enter);
            // a fully zero row is redundant; leave the artificial in place,
            // it stays at value zero and never re-enters
        }

        // phase 2: true objective over structural columns only
        for (std::size_t j = 0; j <= cols_; ++j) obj[j] = S(0);
        for (std::size_t j = 0; j < n_; ++j) obj[j] = Ops::from_double(lp.c[j]);
        for (std::size_t i = 0; i < m_; ++i) {
            std::size_t bj = basis_[i];
            if (bj < n_ && (Ops::is_pos(obj[bj]) || Ops::is_neg(obj[bj]))) {
                S coef = obj[bj];
                for (std::size_t j = 0; j <= cols_; ++j) obj[j] -= coef * tab_[i][j];
            }
        }
        pivot_loop(n_ + m_); // artificials excluded from entering
        return true;
    }

    S objective() const { return -tab_[m_][cols_]; }

    std::vector<S> solution() const {
        std::vector<S> x(n_, S(0));
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_) x[basis_[i]] = tab_[i][cols_];
        return x;
    }

private:
    void pivot(std::size_t row, std::size_t col) {
        S inv = tab_[row][col];
        for (std::size_t j = 0; j <= cols_; ++j) tab_[row][j] /= inv;
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == row) continue;
            S f = tab_[i][col];
            if (!Ops::is_pos(f) && !Ops::is_neg(f)) continue;
            for (std::size_t j = 0; j <= cols_; ++j) tab_[i][j] -= f * tab_[row][j];
        }
        basis_[row] = col;
    }

    void pivot_loop(std::size_t enter_limit) {
        const auto& obj = tab_[m_];
        while (true) {
            // Bland: lowest index with negative reduced cost
            std::size_t enter = enter_limit;
            for (std::size_t j = 0; j < enter_limit; ++j) {
                if (Ops::is_neg(obj[j])) {
                    enter = j;
                    break;
                }
            }
            if (enter == enter_limit) return; // optimal
            // ratio test; ties resolved by lowest basis index
            std::size_t leave = m_;
            for (std::size_t i = 0; i < m_; ++i) {
                if (!Ops::is_pos(tab_[i][enter])) continue;
                if (leave == m_) {
                    leave = i;
                    continue;
                }
                S lhs = tab_[i][cols_] * tab_[leave][enter];
                S rhs = tab_[leave][cols_] * tab_[i][enter];
                if (lhs < rhs || (!(rhs < lhs) && basis_[i] < basis_[leave])) leave = i;
            }
            if (leave == m_)
                fail(errc::lp_numerical_failure, "simplex: unbounded direction in bounded LP");
            pivot(leave, enter);
        }
    }

    std::size_t m_, n_, cols_;
    std::vector<std::vector<S>> tab_;
    std::vector<std::size_t> basis_;
};

bool validate(const LpProblem& lp, const std::vector<double>& x, double value, double tol) {
    for (double xi : x)
        if (!(xi >= -tol)) return false;
    for (std::size_t i = 0; i < lp.a.size(); ++i) {
        double dot = 0;
        for (std::size_t j = 0; j < lp.c.size(); ++j) dot += lp.a[i][j] * x[j];
        if (!(dot >= lp.b[i] - tol)) return false;
    }
    double obj = 0;
    for (std::size_t j = 0; j < lp.c.size(); ++j) obj += lp.c[j] * x[j];
    return std::abs(obj - value) <= tol * (1.0 + std::abs(value));
}

void check_inputs(const LpProblem& lp) {
    for (const auto& row : lp.a)
        if (row.size() != lp.c.size())
            fail(errc::invalid_argument, "lp: ragged constraint matrix");
    if (lp.b.size() != lp.a.size()) fail(errc::invalid_argument, "lp: |b| != rows");
    for (double bi : lp.b)
        if (bi < 0) fail(errc::invalid_argument, "lp: b must be nonnegative in this form");
}

} // namespace

LpSolutionExact solve_lp_exact(const LpProblem& lp) {
    check_inputs(lp);
    Simplex<Rational> s(lp);
    LpSolutionExact out;
    out.feasible = s.solve(lp);
    if (!out.feasible) return out;
    out.value = s.objective();
    out.x = s.solution();
    return out;
}

LpSolution solve_lp(const LpProblem& lp) {
    check_inputs(lp);
    constexpr double TOL = 1e-9;
    LpSolution out;
    {
        Simplex<double> s(lp);
        if (s.solve(lp)) {
            out.feasible = true;
            out.value = s.objective();
            out.x = s.solution();
            if (validate(lp, out.x, out.value, TOL)) return out;
        } else {
            out.feasible = false;
            // fall through: let the exact path confirm infeasibility
        }
    }
    auto exact = solve_lp_exact(lp);
    LpSolution fallback;
    fallback.used_exact_fallback = true;
    fallback.feasible = exact.feasible;
    if (!exact.feasible) return fallback;
    fallback.value = exact.value.to_double();
    fallback.x.reserve(exact.x.size());
    for (const auto& xi : exact.x) fallback.x.push_back(xi.to_double());
    if (!validate(lp, fallback.x, fallback.value, 1e-6))
        fail(errc::lp_numerical_failure, "exact fallback failed validation");
    return fallback;
}

} // namespace tlab

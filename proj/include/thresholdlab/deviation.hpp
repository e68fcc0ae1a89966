#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "thresholdlab/graph.hpp"

namespace tlab {

struct WeightedFamily {
    std::vector<Graph> members;
    std::vector<double> weights; // a(H) >= 0, parallel to members

    static WeightedFamily make(std::vector<Graph> members, std::vector<double> weights);
};

enum class BoundKind {
    probability, // a tail bound; vacuous once it reaches 1
    moment,      // an exponential-moment bound; always informative
};

struct DeviationReport {
    std::string check;
    std::uint64_t trials = 0;
    std::uint64_t event_count = 0;
    double estimate = 0;
    double half_width = 0;
    double paper_bound = 0;
    BoundKind bound_kind = BoundKind::probability;
    bool vacuous = false;  // probability bound >= 1; assertion suppressed
    bool asserted = false; // the 3-sigma comparison was performed
    bool pass = true;      // asserted comparison held (true when vacuous)
    std::uint64_t seed = 0;
    int n = 0;
    int m = 0;
    double p = 0;
    std::vector<double> per_trial; // per-trial statistic, trial order
};

// E[exp(ZX/(5pn))] <= exp(pm/n) for bipartite H: X = e(H[U]) with U a
// p-biased vertex subset, Z = [|U| <= 5pn]. Estimated in log-space.
DeviationReport moment_check(const Graph& h, double p, std::uint64_t trials, std::uint64_t seed);

// P(e(H, hat(D)) >= m/16 and max out-degree <= 5pn-1) <= exp(-m/(5 sqrt n))
// for bipartite H and D a directed G(n,p), p <= n^{-1/2}/20.
DeviationReport tail_check_directed(const Graph& h, double p, std::uint64_t trials,
                                    std::uint64_t seed);

struct TailOptions {
    bool degree_filter = true; // false: diagnostic Y-component only
};

// P(e(H, Gamma^2) >= 3m/4 and Delta(Gamma) < 2pn) <= 15 exp(-m/(10 sqrt n))
// for Gamma ~ G(n,p), p <= n^{-1/2}/20.
DeviationReport tail_check_undirected(const Graph& h, double p, std::uint64_t trials,
                                      std::uint64_t seed, TailOptions opts = {});

struct HittingRun {
    std::uint8_t z = 0; // Delta(Gamma) >= 2pn
    std::vector<std::uint8_t> x; // per H: no H-good edge in Gamma
    std::vector<std::uint8_t> y; // per H: e(H, Gamma^2) >= 3 e(H)/4
    std::vector<std::uint8_t> hit; // per H: G shares an edge with H
};

struct HittingReport {
    std::uint64_t runs = 0;
    std::uint64_t z_count = 0;
    std::vector<std::uint64_t> hit_count; // per H
    std::vector<std::uint64_t> x_count;
    std::vector<std::uint64_t> y_count;
    std::uint64_t all_hit_runs = 0;
    std::uint64_t implication_violations = 0;   // good edge present but H missed
    std::uint64_t decomposition_violations = 0; // union-bound structure broken
    std::vector<HittingRun> per_run;
};

// Per run: Gamma ~ G(n,p), G a random maximal triangle-free subgraph;
// records X_H, Y_H, Z and the hit indicator for each H, checking the
// deterministic implication and the union-bound decomposition.
HittingReport hitting_experiment(const std::vector<Graph>& family, int n, double p,
                                 std::uint64_t runs, std::uint64_t seed);

struct FractionalHittingReport {
    std::uint64_t runs = 0;
    double mean_missed = 0;
    double min_missed = 0;
    double max_missed = 0;
    std::uint64_t runs_below_one = 0;
    double fraction_below_one = 0;
    std::vector<double> per_run;
};

// Missed weight sum_{H : G cap H = empty} a(H) per run.
FractionalHittingReport fractional_hitting(const WeightedFamily& wfamily, int n, double p,
                                           std::uint64_t runs, std::uint64_t seed);

// min(epsilon/4, gamma)/5
double delta_budget(double epsilon, double gamma);

struct ConditionReport {
    double log_sum = 0;
    double sum = 0;
    bool satisfied = false; // sum < 1/2, compared in log-domain
};

ConditionReport family_condition_check(const std::vector<Graph>& family, double delta, int n);
ConditionReport family_condition_check(const WeightedFamily& wfamily, double delta, int n);
// The all-cliques-of-size-k family on [n], evaluated symbolically:
// log C(n,k) - delta*C(k,2)/sqrt(n). Empty (log_sum = -inf) when k > n.
ConditionReport clique_family_condition(int n, int k, double delta);

} // namespace tlab

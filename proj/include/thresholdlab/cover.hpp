#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "thresholdlab/graph.hpp"

namespace tlab {

// A family of graphs on [n] sharing a common non-edge count m, candidate
// cover of the triangle-free graphs.
struct CoverFamily {
    int n = 0;
    int m = 0; // common non-edge count; members have C(n,2) - m edges
    std::vector<Graph> members;

    // strict: every member must have exactly C(n,2) - m edges;
    // relaxed (non-paper): at least that many
    static CoverFamily make(int n, int m, std::vector<Graph> members, bool relaxed = false);

    // the range on which f(m,n) is defined: covers must be able to contain
    // extremal triangle-free graphs with floor(n^2/4) edges
    bool m_in_f_range() const { return m >= 0 && m <= edge_count_complete(n) - (n * n) / 4; }
};

// {K_n - E(K_n[B]) : |B| = k}; C(n,k) members, each with C(k,2) non-edges.
CoverFamily ramsey_clique_cover(int n, int k);

struct CoverValidity {
    bool valid = false;
    std::uint64_t graphs_checked = 0;
    std::uint64_t triangle_free_count = 0;
    std::optional<std::uint64_t> witness; // least uncovered triangle-free edge mask
};

// Every triangle-free graph on [n] is a subgraph of some member (enumerates
// all 2^{C(n,2)} graphs; n <= 7). Work is split by mask range across the
// worker pool; the reported witness is the least one regardless of threads.
CoverValidity cover_validity_exhaustive(const CoverFamily& cover);

// Exact maximum independent set size; branch-and-bound, n <= 40.
int independence_number(const Graph& g);

struct AlphaCoverCheck {
    bool exhaustive = false;
    bool valid = false;          // meaningful when exhaustive or a counterexample exists
    bool counterexample_found = false;
    bool inconclusive = false;   // sampled mode, nothing found
    std::uint64_t trials = 0;
    std::optional<Graph> counterexample;
};

// The clique cover at (n,k) is valid iff every triangle-free graph on [n]
// has an independent set of size k. Exhaustive for n <= 7; sampled mode
// searches random maximal triangle-free graphs for a counterexample.
AlphaCoverCheck clique_cover_validity_exhaustive(int n, int k);
AlphaCoverCheck clique_cover_validity_sampled(int n, int k, std::uint64_t trials,
                                              std::uint64_t seed);

// log(2 * cover_size) / m, natural log; values above 1 are vacuous.
double q_upper_bound(int m, int n, std::uint64_t cover_size);

// One spanning tree per connected component: depth-first from least-vertex
// roots, neighbours in ascending order.
Graph spanning_forest(const Graph& g);

struct BipartiteLbReport {
    std::uint64_t trials = 0;
    std::uint64_t contained_count = 0;
    double estimate = 0;
    double half_width = 0;
    double bound = 0; // 2^{-e(T)}, T a spanning forest of H^c
    int forest_edges = 0;
    bool pass = false; // estimate <= bound + 3 sigma
    std::vector<std::uint8_t> per_trial; // containment indicators, trial order
};

// P(random complete bipartite G is a subgraph of H) against the spanning
// forest bound on H^c.
BipartiteLbReport bipartite_lower_bound_experiment(const Graph& h, std::uint64_t trials,
                                                   std::uint64_t seed);

} // namespace tlab

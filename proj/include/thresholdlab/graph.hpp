#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thresholdlab/bitset.hpp"
#include "thresholdlab/rng.hpp"
#include "thresholdlab/subset.hpp"

namespace tlab {

inline int edge_count_complete(int n) { return n * (n - 1) / 2; }

// Canonical edge index: {u,v} with u < v gets u*n - u(u+1)/2 + (v-u-1)
// (row-major upper triangle). Shared by every module that views graphs on
// [n] as subsets of E(K_n).
inline int edge_index(int n, int u, int v) {
    if (u > v) std::swap(u, v);
    return u * n - u * (u + 1) / 2 + (v - u - 1);
}

std::pair<int, int> edge_endpoints(int n, int index);

// Simple undirected graph on [n], adjacency bitsets, cached edge count.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : n_(n), adj_(n, Bitset(n)) {}

    int vertex_count() const { return n_; }
    int edge_count() const { return edge_count_; }

    bool has_edge(int u, int v) const { return u != v && adj_[u].test(v); }

    void add_edge(int u, int v) {
        if (u == v) fail(errc::invalid_argument, "add_edge: self-loops are not allowed");
        if (adj_[u].test(v)) return;
        adj_[u].set(v);
        adj_[v].set(u);
        ++edge_count_;
    }

    void remove_edge(int u, int v) {
        if (u == v || !adj_[u].test(v)) return;
        adj_[u].reset(v);
        adj_[v].reset(u);
        --edge_count_;
    }

    const Bitset& neighbours(int u) const { return adj_[u]; }

    int degree(int u) const { return adj_[u].count(); }

    int max_degree() const {
        int d = 0;
        for (int u = 0; u < n_; ++u) d = std::max(d, degree(u));
        return d;
    }

    std::vector<std::pair<int, int>> edges() const;

    // lossless bridge to the SubsetMask view over E(K_n)
    static Graph from_edge_mask(int n, const SubsetMask& mask);
    SubsetMask to_edge_mask() const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.adj_ == b.adj_;
    }

private:
    int n_ = 0;
    std::vector<Bitset> adj_;
    int edge_count_ = 0;
};

// An edge set of K_n, bridging graph-kit and family-core.
struct EdgeSet {
    int n = 0;
    SubsetMask mask; // over E(K_n), canonical edge index

    explicit EdgeSet(int n_) : n(n_), mask(edge_count_complete(n_)) {}
    EdgeSet(int n_, SubsetMask m) : n(n_), mask(std::move(m)) {}

    int count() const { return mask.count(); }
    Graph to_graph() const { return Graph::from_edge_mask(n, mask); }
    static EdgeSet from_graph(const Graph& g) { return EdgeSet(g.vertex_count(), g.to_edge_mask()); }
};

bool is_triangle_free(const Graph& g);

// Gamma^2: pairs of vertices with a common neighbour (and only those pairs;
// the square need not contain E(Gamma) itself).
Graph square(const Graph& g);

// |E(H) ∩ E(Gamma^2)|, without materialising the square.
int count_closed(const Graph& h, const Graph& gamma);

// true iff G and H share at least one edge.
bool share_edge(const Graph& g, const Graph& h);

// Greedy insertion over an explicit edge order (indices into gamma.edges()).
Graph maximal_triangle_free_ordered(const Graph& gamma, const std::vector<int>& order);

// Seed-determined uniform permutation of E(Gamma), then greedy insertion.
Graph maximal_triangle_free(const Graph& gamma, std::uint64_t seed);

bool is_maximal_triangle_free_subgraph(const Graph& g, const Graph& gamma);

// Gamma-edges of H lying outside (Gamma \ H)^2, as an edge set of K_n.
EdgeSet h_good_edges(const Graph& h, const Graph& gamma);

// e(H \ (Gamma\H)^2): the candidate count for the two-stage exposure step
// (goodness is defined for all of E(H); presence in Gamma is separate).
int h_good_candidate_count(const Graph& h, const Graph& gamma);

// Visits every maximal triangle-free subgraph of gamma (edge-subset
// backtracking with triangle and justification pruning). Returns the number
// visited; the callback may be empty.
std::uint64_t enumerate_maximal_triangle_free(const Graph& gamma,
                                              const std::function<void(const Graph&)>& visit);

struct HittingCheckReport {
    bool has_good_edge = false;
    std::uint64_t subgraphs_checked = 0;
    std::uint64_t violations = 0;
    bool exhaustive = false;
    std::optional<Graph> counterexample;
};

// If Gamma contains an H-good edge, every maximal triangle-free subgraph of
// Gamma must intersect H. Exhaustive for n <= 7, sampled otherwise.
HittingCheckReport goodness_implies_hitting_check(const Graph& h, const Graph& gamma,
                                                  std::uint64_t sample_trials = 0,
                                                  std::uint64_t seed = 0);

// --- common test shapes -----------------------------------------------

Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);
// star with `leaves` edges out of vertex 0, on `n` vertices
Graph star_graph(int n, int leaves);
// perfect-style matching: edges {2i, 2i+1}, i < pairs
Graph matching_graph(int n, int pairs);
Graph petersen_graph();
// the 8-vertex Moebius-Kantor/Wagner graph V8: C_8 plus the four diameters
Graph wagner_graph();
// m distinct edges across the fixed bipartition [0,n/2) | [n/2,n)
Graph random_bipartite_graph(int n, int m, std::uint64_t seed);
Graph random_graph_with_edges(int n, int m, std::uint64_t seed);

bool is_bipartite(const Graph& g, std::vector<int>* side = nullptr);

// --- plain-text and JSON-free serialisation helpers --------------------

// "n\nu v\nu v\n..." with whitespace-insensitive parsing
std::string graph_to_text(const Graph& g);
Graph graph_from_text(const std::string& text);

} // namespace tlab

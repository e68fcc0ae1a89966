#pragma once

#include <cstdint>
#include <vector>

#include "thresholdlab/graph.hpp"

namespace tlab {

// Directed graph on [n]; antiparallel pairs may coexist, self-loops only
// when constructed with loops_allowed.
class Digraph {
public:
    Digraph() = default;
    Digraph(int n, bool loops_allowed) : n_(n), loops_(loops_allowed), out_(n, Bitset(n)) {}

    int vertex_count() const { return n_; }
    bool loops_allowed() const { return loops_; }

    bool has_arc(int u, int v) const { return out_[u].test(v); }

    void add_arc(int u, int v) {
        if (u == v && !loops_)
            fail(errc::invalid_argument, "add_arc: self-loop on a loop-free digraph");
        if (out_[u].test(v)) return;
        out_[u].set(v);
        ++arc_count_;
    }

    int arc_count() const { return arc_count_; }
    const Bitset& out(int u) const { return out_[u]; }
    int out_degree(int u) const { return out_[u].count(); }

    int max_out_degree() const {
        int d = 0;
        for (int u = 0; u < n_; ++u) d = std::max(d, out_degree(u));
        return d;
    }

    std::vector<std::pair<int, int>> arcs() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(arc_count_);
        for (int u = 0; u < n_; ++u)
            out_[u].for_each([&](int v) { out.emplace_back(u, v); });
        return out;
    }

    friend bool operator==(const Digraph& a, const Digraph& b) {
        return a.n_ == b.n_ && a.loops_ == b.loops_ && a.out_ == b.out_;
    }

private:
    int n_ = 0;
    bool loops_ = false;
    std::vector<Bitset> out_;
    int arc_count_ = 0;
};

// G(n,p): each edge of K_n present independently with probability p. The
// draw for edge e uses stream position edge_index(e), so samples are
// reproducible and order-invariant.
Graph sample_gnp(int n, double p, std::uint64_t seed);

// Directed G(n,p): arc (u,v) uses stream position u*n+v. The loop positions
// are indexed either way, so removing the loops of a loops=true sample gives
// exactly the loops=false sample of the same seed.
Digraph sample_digraph(int n, double p, std::uint64_t seed, bool loops);

Digraph remove_loops(const Digraph& d);

// Pairs of distinct vertices with a common in-neighbour; equivalently the
// union over v of all pairs of distinct vertices inside out(v). A self-loop
// contributes pairs {v,w} for w in out(v), never an edge at a single vertex.
Graph hat(const Digraph& d);

struct CoupledSample {
    Graph gamma;
    Digraph d;
    double p = 0;
    double p_prime = 0;
};

// Exact coupling of Gamma ~ G(n,p) with D ~ directed G(n,p'),
// 2p' - p'^2 = p: D is sampled first and Gamma is its undirection, so
// uv in Gamma iff at least one of the arcs (u,v),(v,u) is in D.
CoupledSample couple(int n, double p, std::uint64_t seed);

struct CaptureClass {
    int multiplicity = 0; // common-neighbour count of the square edge
    std::uint64_t observations = 0;
    std::uint64_t captured = 0;
    double frequency = 0;
    double std_error = 0;
};

struct CaptureReport {
    std::uint64_t trials = 0;
    std::vector<CaptureClass> classes; // ascending multiplicity, observed only
    double min_frequency = 1.0;
    bool pass = false; // every class frequency >= 1/4 - 4 sigma
};

// For each coupled sample and each edge of Gamma^2, records whether the edge
// lies in hat(D), aggregated by common-neighbour multiplicity.
CaptureReport conditional_square_capture(int n, double p, std::uint64_t seed,
                                         std::uint64_t trials);

struct CouplingGofReport {
    std::uint64_t samples = 0;
    // arc states per unordered pair: none / uv only / vu only / both
    std::uint64_t state_counts[4] = {0, 0, 0, 0};
    double chi2_states = 0;
    double p_value_states = 1;
    double chi2_edge = 0;
    double p_value_edge = 1;
    bool max_degree_ok = true; // Delta(D) <= Delta(Gamma) in every sample
};

// Chi-square goodness-of-fit of the coupled pair against the product law.
CouplingGofReport coupling_goodness_of_fit(int n, double p, std::uint64_t samples,
                                           std::uint64_t seed);

} // namespace tlab

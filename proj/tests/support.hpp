#pragma once

// shared helpers for the test suites: brute-force oracles kept deliberately
// independent of the library's implementation paths

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "thresholdlab/family.hpp"
#include "thresholdlab/graph.hpp"

namespace tsup {

using namespace tlab;

// All down-closed families over a ground set of size n, each encoded as a
// 2^n-bit mask (bit s = set s is a member). Counts must match the Dedekind
// numbers: 20 for n = 3, 168 for n = 4.
inline std::vector<std::uint32_t> all_downset_masks(int n) {
    const int sets = 1 << n;
    std::vector<std::uint32_t> out;
    for (std::uint64_t fm = 0; fm < (std::uint64_t(1) << sets); ++fm) {
        bool ok = true;
        for (int s = 0; s < sets && ok; ++s) {
            if (!((fm >> s) & 1)) continue;
            for (int i = 0; i < n && ok; ++i)
                if ((s >> i) & 1) ok = ((fm >> (s & ~(1 << i))) & 1) != 0;
        }
        if (ok) out.push_back(std::uint32_t(fm));
    }
    return out;
}

inline bool family_mask_trivial(std::uint32_t fm, int n) {
    const std::uint32_t full = (1u << (1 << n)) - 1;
    return fm == 0 || fm == full;
}

inline MonotoneFamily family_from_mask(std::uint32_t fm, int n, Direction dir) {
    std::vector<SubsetMask> members;
    for (int s = 0; s < (1 << n); ++s)
        if ((fm >> s) & 1) members.emplace_back(n, std::uint64_t(s));
    return MonotoneFamily::from_members(GroundSet{n, ""}, dir, std::move(members));
}

// reflect a down-set mask to the complementary up-set {X\S : S in F}
inline std::uint32_t reflect_mask(std::uint32_t fm, int n) {
    const int sets = 1 << n;
    std::uint32_t out = 0;
    for (int s = 0; s < sets; ++s)
        if ((fm >> s) & 1) out |= 1u << ((sets - 1) ^ s);
    return out;
}

// direct mu computation, one term per member, no grouping
inline double oracle_mu(const MonotoneFamily& f, double p) {
    const int n = f.ground().size;
    double sum = 0;
    SubsetMask s(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        s.set_packed(mask);
        if (f.member(s))
            sum += std::pow(p, std::popcount(mask)) * std::pow(1 - p, n - std::popcount(mask));
    }
    return sum;
}

// exhaustive maximum independent set by subset scan (n <= 20)
inline int oracle_alpha(const Graph& g) {
    const int n = g.vertex_count();
    int best = 0;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        bool indep = true;
        for (int u = 0; u < n && indep; ++u) {
            if (!((s >> u) & 1)) continue;
            for (int v = u + 1; v < n && indep; ++v)
                if (((s >> v) & 1) && g.has_edge(u, v)) indep = false;
        }
        if (indep) best = std::max(best, std::popcount(s));
    }
    return best;
}

// brute-force enumeration of maximal triangle-free subgraphs (m <= 20)
inline std::vector<Graph> oracle_maximal_tf_subgraphs(const Graph& gamma) {
    auto edges = gamma.edges();
    const int m = int(edges.size());
    std::vector<Graph> out;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        Graph g(gamma.vertex_count());
        for (int i = 0; i < m; ++i)
            if ((mask >> i) & 1) g.add_edge(edges[i].first, edges[i].second);
        if (!is_triangle_free(g)) continue;
        bool maximal = true;
        for (int i = 0; i < m && maximal; ++i) {
            if ((mask >> i) & 1) continue;
            auto [u, v] = edges[i];
            if (!g.neighbours(u).intersects(g.neighbours(v))) maximal = false;
        }
        if (maximal) out.push_back(std::move(g));
    }
    return out;
}

// number of triangles, by triple enumeration
inline int oracle_triangle_count(const Graph& g) {
    int c = 0;
    const int n = g.vertex_count();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int d = b + 1; d < n; ++d)
                if (g.has_edge(a, b) && g.has_edge(a, d) && g.has_edge(b, d)) ++c;
    return c;
}

} // namespace tsup

#include "thresholdlab/cover.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "thresholdlab/parallel.hpp"
#include "thresholdlab/rng.hpp"
#include "thresholdlab/stats.hpp"

namespace tlab {

CoverFamily CoverFamily::make(int n, int m, std::vector<Graph> members, bool relaxed) {
    const int want = edge_count_complete(n) - m;
    for (const auto& g : members) {
        if (g.vertex_count() != n)
            fail(errc::invalid_argument, "cover member does not live on [n]");
        if (relaxed ? g.edge_count() < want : g.edge_count() != want)
            fail(errc::invalid_argument,
                 "cover member has " + std::to_string(g.edge_count()) + " edges, expected " +
                     (relaxed ? ">= " : "") + std::to_string(want));
    }
    return CoverFamily{n, m, std::move(members)};
}

CoverFamily ramsey_clique_cover(int n, int k) {
    if (k < 2 || k > n) fail(errc::invalid_argument, "ramsey_clique_cover: need 2 <= k <= n");
    std::vector<Graph> members;
    // enumerate k-subsets B of [n] in lexicographic order
    std::vector<int> b(k);
    for (int i = 0; i < k; ++i) b[i] = i;
    while (true) {
        Graph g = complete_graph(n);
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) g.remove_edge(b[i], b[j]);
        members.push_back(std::move(g));
        int i = k - 1;
        while (i >= 0 && b[i] == n - k + i) --i;
        if (i < 0) break;
        ++b[i];
        for (int j = i + 1; j < k; ++j) b[j] = b[j - 1] + 1;
    }
    return CoverFamily::make(n, k * (k - 1) / 2, std::move(members));
}

namespace {

// all triangles of K_n as edge-index masks (n <= 7 => masks fit in uint64)
std::vector<std::uint64_t> triangle_masks(int n) {
    std::vector<std::uint64_t> out;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                out.push_back((std::uint64_t(1) << edge_index(n, a, b)) |
                              (std::uint64_t(1) << edge_index(n, a, c)) |
                              (std::uint64_t(1) << edge_index(n, b, c)));
    return out;
}

} // namespace

CoverValidity cover_validity_exhaustive(const CoverFamily& cover) {
    const int n = cover.n;
    if (n > 7) fail(errc::ground_set_too_large, "cover_validity_exhaustive: n <= 7 required");
    const int ne = edge_count_complete(n);
    const std::uint64_t total = std::uint64_t(1) << ne;
    const auto triangles = triangle_masks(n);
    std::vector<std::uint64_t> member_masks;
    member_masks.reserve(cover.members.size());
    for (const auto& g : cover.members) member_masks.push_back(g.to_edge_mask().packed());

    const std::uint64_t NOTHING = ~std::uint64_t(0);
    const std::uint64_t blocks = 256;
    const std::uint64_t block = (total + blocks - 1) / blocks;
    std::vector<std::uint64_t> tf_counts(blocks, 0), witnesses(blocks, NOTHING);

    parallel_trials(blocks, [&](std::uint64_t bi) {
        std::uint64_t lo = bi * block, hi = std::min(total, lo + block);
        for (std::uint64_t mask = lo; mask < hi; ++mask) {
            bool tf = true;
            for (std::uint64_t t : triangles)
                if ((mask & t) == t) {
                    tf = false;
                    break;
                }
            if (!tf) continue;
            tf_counts[bi]++;
            bool covered = false;
            for (std::uint64_t h : member_masks)
                if ((mask & ~h) == 0) {
                    covered = true;
                    break;
                }
            if (!covered && witnesses[bi] == NOTHING) witnesses[bi] = mask;
        }
    });

    CoverValidity out;
    out.graphs_checked = total;
    std::uint64_t least = NOTHING;
    for (std::uint64_t bi = 0; bi < blocks; ++bi) {
        out.triangle_free_count += tf_counts[bi];
        if (witnesses[bi] != NOTHING && witnesses[bi] < least) least = witnesses[bi];
    }
    out.valid = least == NOTHING;
    if (!out.valid) out.witness = least;
    return out;
}

namespace {

struct MisSearch {
    std::vector<std::uint64_t> adj;
    int best = 0;

    void rec(std::uint64_t cand, int size) {
        if (size + std::popcount(cand) <= best) return;
        if (!cand) {
            best = std::max(best, size);
            return;
        }
        // branch on the max-degree vertex inside the candidate set
        int v = -1, vd = -1;
        std::uint64_t scan = cand;
        while (scan) {
            int u = std::countr_zero(scan);
            scan &= scan - 1;
            int d = std::popcount(adj[u] & cand);
            if (d > vd) {
                vd = d;
                v = u;
            }
        }
        std::uint64_t bit = std::uint64_t(1) << v;
        rec(cand & ~(adj[v] | bit), size + 1);
        if (vd > 0) rec(cand & ~bit, size); // isolated vertices are always taken
    }
};

} // namespace

int independence_number(const Graph& g) {
    const int n = g.vertex_count();
    if (n > 40) fail(errc::too_large, "independence_number: n <= 40 required");
    MisSearch s;
    s.adj.assign(n, 0);
    for (auto [u, v] : g.edges()) {
        s.adj[u] |= std::uint64_t(1) << v;
        s.adj[v] |= std::uint64_t(1) << u;
    }
    // greedy seed: repeatedly take a minimum-degree vertex
    {
        std::uint64_t cand = n == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1;
        int size = 0;
        while (cand) {
            int v = -1, vd = n + 1;
            std::uint64_t scan = cand;
            while (scan) {
                int u = std::countr_zero(scan);
                scan &= scan - 1;
                int d = std::popcount(s.adj[u] & cand);
                if (d < vd) {
                    vd = d;
                    v = u;
                }
            }
            cand &= ~(s.adj[v] | (std::uint64_t(1) << v));
            ++size;
        }
        s.best = size;
    }
    s.rec(n == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1, 0);
    return s.best;
}

AlphaCoverCheck clique_cover_validity_exhaustive(int n, int k) {
    if (n > 7) fail(errc::ground_set_too_large, "clique_cover_validity: exhaustive needs n <= 7");
    const int ne = edge_count_complete(n);
    const std::uint64_t total = std::uint64_t(1) << ne;
    const auto triangles = triangle_masks(n);
    AlphaCoverCheck out;
    out.exhaustive = true;
    out.valid = true;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        bool tf = true;
        for (std::uint64_t t : triangles)
            if ((mask & t) == t) {
                tf = false;
                break;
            }
        if (!tf) continue;
        Graph g = Graph::from_edge_mask(n, SubsetMask(ne, mask));
        if (independence_number(g) < k) {
            out.valid = false;
            out.counterexample_found = true;
            out.counterexample = g;
            break;
        }
    }
    return out;
}

AlphaCoverCheck clique_cover_validity_sampled(int n, int k, std::uint64_t trials,
                                              std::uint64_t seed) {
    AlphaCoverCheck out;
    out.trials = trials;
    const Graph host = complete_graph(n);
    for (std::uint64_t t = 0; t < trials; ++t) {
        Graph g = maximal_triangle_free(host, Rng::substream_seed(seed, t));
        if (independence_number(g) < k) {
            out.valid = false;
            out.counterexample_found = true;
            out.counterexample = g;
            return out;
        }
    }
    out.inconclusive = true;
    return out;
}

double q_upper_bound(int m, int n, std::uint64_t cover_size) {
    if (m < 1) fail(errc::invalid_argument, "q_upper_bound: m >= 1 required");
    if (cover_size < 1) fail(errc::invalid_argument, "q_upper_bound: cover_size >= 1 required");
    (void)n; // part of the interface for reporting; the bound only uses m and the size
    return std::log(2.0 * double(cover_size)) / double(m);
}

Graph spanning_forest(const Graph& g) {
    const int n = g.vertex_count();
    Graph forest(n);
    std::vector<bool> seen(n, false);
    std::vector<int> stack;
    for (int root = 0; root < n; ++root) {
        if (seen[root]) continue;
        seen[root] = true;
        stack.push_back(root);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            g.neighbours(u).for_each([&](int v) {
                if (!seen[v]) {
                    seen[v] = true;
                    forest.add_edge(u, v);
                    stack.push_back(v);
                }
            });
        }
    }
    return forest;
}

BipartiteLbReport bipartite_lower_bound_experiment(const Graph& h, std::uint64_t trials,
                                                   std::uint64_t seed) {
    if (trials < 1) fail(errc::invalid_argument, "bipartite_lb: trials must be >= 1");
    const int n = h.vertex_count();
    if (n > 64) fail(errc::too_large, "bipartite_lb: n <= 64 required");
    Graph hc(n); // complement
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!h.has_edge(u, v)) hc.add_edge(u, v);
    const auto hc_edges = hc.edges();

    BipartiteLbReport rep;
    rep.trials = trials;
    Graph forest = spanning_forest(hc);
    rep.forest_edges = forest.edge_count();
    rep.bound = std::exp2(-double(rep.forest_edges));

    rep.per_trial.assign(trials, 0);
    auto& hit = rep.per_trial;
    parallel_trials(trials, [&](std::uint64_t t) {
        Rng rng = Rng::substream(seed, t);
        std::uint64_t sides = 0;
        for (int i = 0; i < n; ++i)
            if (rng.bernoulli(0.5)) sides |= std::uint64_t(1) << i;
        // G subgraph of H iff no complement edge crosses the bipartition
        bool contained = true;
        for (auto [u, v] : hc_edges) {
            if (((sides >> u) & 1) != ((sides >> v) & 1)) {
                contained = false;
                break;
            }
        }
        hit[t] = contained;
    });
    for (std::uint64_t t = 0; t < trials; ++t) rep.contained_count += hit[t];
    rep.estimate = double(rep.contained_count) / double(trials);
    rep.half_width = proportion_half_width(rep.estimate, trials);
    rep.pass = rep.estimate <= rep.bound + 3.0 * rep.half_width;
    return rep;
}

} // namespace tlab

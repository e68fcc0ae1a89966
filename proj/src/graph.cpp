#include "thresholdlab/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

namespace tlab {

std::pair<int, int> edge_endpoints(int n, int index) {
    int u = 0;
    int row = n - 1; // edges in row u
    int idx = index;
    while (idx >= row) {
        idx -= row;
        ++u;
        --row;
    }
    return {u, u + 1 + idx};
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count_);
    for (int u = 0; u < n_; ++u)
        adj_[u].for_each([&](int v) {
            if (v > u) out.emplace_back(u, v);
        });
    return out;
}

Graph Graph::from_edge_mask(int n, const SubsetMask& mask) {
    Graph g(n);
    // ascending bit order means ascending row u; walk the rows in step
    int u = 0, row_end = n - 1;
    mask.bits().for_each([&](int idx) {
        while (idx >= row_end) {
            ++u;
            row_end += n - 1 - u;
        }
        int v = u + 1 + (idx - (row_end - (n - 1 - u)));
        g.add_edge(u, v);
    });
    return g;
}

SubsetMask Graph::to_edge_mask() const {
    SubsetMask m(edge_count_complete(n_));
    for (int u = 0; u < n_; ++u)
        adj_[u].for_each([&](int v) {
            if (v > u) m.set(edge_index(n_, u, v));
        });
    return m;
}

bool is_triangle_free(const Graph& g) {
    const int n = g.vertex_count();
    for (int u = 0; u < n; ++u) {
        bool bad = false;
        g.neighbours(u).for_each([&](int v) {
            if (v > u && !bad && g.neighbours(u).intersects(g.neighbours(v))) bad = true;
        });
        if (bad) return false;
    }
    return true;
}

Graph square(const Graph& g) {
    const int n = g.vertex_count();
    Graph sq(n);
    for (int u = 0; u < n; ++u)
        for (int w = u + 1; w < n; ++w)
            if (g.neighbours(u).intersects(g.neighbours(w))) sq.add_edge(u, w);
    return sq;
}

int count_closed(const Graph& h, const Graph& gamma) {
    int c = 0;
    for (auto [u, v] : h.edges())
        if (gamma.neighbours(u).intersects(gamma.neighbours(v))) ++c;
    return c;
}

bool share_edge(const Graph& g, const Graph& h) {
    const int n = g.vertex_count();
    for (int u = 0; u < n; ++u)
        if (g.neighbours(u).intersects(h.neighbours(u))) return true;
    return false;
}

Graph maximal_triangle_free_ordered(const Graph& gamma, const std::vector<int>& order) {
    auto es = gamma.edges();
    if (order.size() != es.size())
        fail(errc::invalid_argument, "maximal_triangle_free_ordered: order must permute E(Gamma)");
    Graph g(gamma.vertex_count());
    for (int i : order) {
        auto [u, v] = es[i];
        if (!g.neighbours(u).intersects(g.neighbours(v))) g.add_edge(u, v);
    }
    return g;
}

Graph maximal_triangle_free(const Graph& gamma, std::uint64_t seed) {
    std::vector<int> order(gamma.edge_count());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(Rng::substream_seed(seed, 0x3A11));
    rng.shuffle(order);
    return maximal_triangle_free_ordered(gamma, order);
}

bool is_maximal_triangle_free_subgraph(const Graph& g, const Graph& gamma) {
    if (!is_triangle_free(g)) return false;
    for (auto [u, v] : g.edges())
        if (!gamma.has_edge(u, v)) return false;
    for (auto [u, v] : gamma.edges()) {
        if (g.has_edge(u, v)) continue;
        if (!g.neighbours(u).intersects(g.neighbours(v))) return false; // addable edge
    }
    return true;
}

EdgeSet h_good_edges(const Graph& h, const Graph& gamma) {
    if (h.vertex_count() != gamma.vertex_count())
        fail(errc::invalid_argument, "h_good_edges: vertex counts differ");
    const int n = h.vertex_count();
    Graph rest(n); // Gamma \ H
    for (auto [u, v] : gamma.edges())
        if (!h.has_edge(u, v)) rest.add_edge(u, v);
    EdgeSet good(n);
    for (auto [u, v] : h.edges()) {
        if (!gamma.has_edge(u, v)) continue;
        if (!rest.neighbours(u).intersects(rest.neighbours(v)))
            good.mask.set(edge_index(n, u, v));
    }
    return good;
}

int h_good_candidate_count(const Graph& h, const Graph& gamma) {
    const int n = h.vertex_count();
    Graph rest(n);
    for (auto [u, v] : gamma.edges())
        if (!h.has_edge(u, v)) rest.add_edge(u, v);
    int c = 0;
    for (auto [u, v] : h.edges())
        if (!rest.neighbours(u).intersects(rest.neighbours(v))) ++c;
    return c;
}

namespace {

struct MtfEnumerator {
    std::vector<std::pair<int, int>> edges;
    // per edge position: partner edge-position pairs completing a triangle
    std::vector<std::vector<std::pair<int, int>>> partners;
    const std::function<void(const Graph&)>* visit = nullptr;
    const Graph* gamma = nullptr;
    std::uint64_t found = 0;

    bool include_ok(std::uint32_t included, int e) const {
        for (auto [a, b] : partners[e]) {
            if (((included >> a) & 1) && ((included >> b) & 1)) return false;
        }
        return true;
    }

    bool excludable(std::uint32_t excluded, int e) const {
        // e must remain justifiable: some partner pair with neither side excluded
        for (auto [a, b] : partners[e]) {
            if (!((excluded >> a) & 1) && !((excluded >> b) & 1)) return true;
        }
        return false;
    }

    bool justified(std::uint32_t included, int e) const {
        for (auto [a, b] : partners[e]) {
            if (((included >> a) & 1) && ((included >> b) & 1)) return true;
        }
        return false;
    }

    void emit(std::uint32_t included) {
        ++found;
        if (!visit || !*visit) return;
        Graph g(gamma->vertex_count());
        for (std::size_t i = 0; i < edges.size(); ++i)
            if ((included >> i) & 1) g.add_edge(edges[i].first, edges[i].second);
        (*visit)(g);
    }

    void rec(int pos, std::uint32_t included, std::uint32_t excluded) {
        if (pos == int(edges.size())) {
            for (std::size_t e = 0; e < edges.size(); ++e)
                if (((excluded >> e) & 1) && !justified(included, int(e))) return;
            emit(included);
            return;
        }
        if (include_ok(included, pos))
            rec(pos + 1, included | (1u << pos), excluded);
        if (excludable(excluded | 0u, pos))
            rec(pos + 1, included, excluded | (1u << pos));
    }
};

} // namespace

std::uint64_t enumerate_maximal_triangle_free(const Graph& gamma,
                                              const std::function<void(const Graph&)>& visit) {
    const int m = gamma.edge_count();
    if (m > 31) fail(errc::too_large, "enumerate_maximal_triangle_free: more than 31 edges");
    MtfEnumerator en;
    en.edges = gamma.edges();
    en.gamma = &gamma;
    en.visit = &visit;
    en.partners.resize(m);
    const int n = gamma.vertex_count();
    std::vector<std::vector<int>> pos(n, std::vector<int>(n, -1));
    for (int i = 0; i < m; ++i) pos[en.edges[i].first][en.edges[i].second] = i;
    auto at = [&](int a, int b) { return a < b ? pos[a][b] : pos[b][a]; };
    for (int i = 0; i < m; ++i) {
        auto [u, v] = en.edges[i];
        Bitset common = gamma.neighbours(u) & gamma.neighbours(v);
        common.for_each([&](int w) { en.partners[i].emplace_back(at(u, w), at(v, w)); });
    }
    if (m == 0) {
        en.emit(0);
        return en.found;
    }
    en.rec(0, 0, 0);
    return en.found;
}

HittingCheckReport goodness_implies_hitting_check(const Graph& h, const Graph& gamma,
                                                  std::uint64_t sample_trials,
                                                  std::uint64_t seed) {
    HittingCheckReport rep;
    rep.has_good_edge = h_good_edges(h, gamma).mask.bits().any();
    if (!rep.has_good_edge) return rep;
    if (gamma.vertex_count() <= 7 && sample_trials == 0) {
        rep.exhaustive = true;
        rep.subgraphs_checked = enumerate_maximal_triangle_free(gamma, [&](const Graph& g) {
            if (!share_edge(g, h)) {
                ++rep.violations;
                if (!rep.counterexample) rep.counterexample = g;
            }
        });
    } else {
        std::uint64_t trials = sample_trials ? sample_trials : 1000;
        for (std::uint64_t t = 0; t < trials; ++t) {
            Graph g = maximal_triangle_free(gamma, Rng::substream_seed(seed, t));
            ++rep.subgraphs_checked;
            if (!share_edge(g, h)) {
                ++rep.violations;
                if (!rep.counterexample) rep.counterexample = g;
            }
        }
    }
    return rep;
}

Graph complete_graph(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph cycle_graph(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u) g.add_edge(u, (u + 1) % n);
    return g;
}

Graph path_graph(int n) {
    Graph g(n);
    for (int u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
    return g;
}

Graph star_graph(int n, int leaves) {
    if (leaves >= n) fail(errc::invalid_argument, "star_graph: too many leaves");
    Graph g(n);
    for (int v = 1; v <= leaves; ++v) g.add_edge(0, v);
    return g;
}

Graph matching_graph(int n, int pairs) {
    if (2 * pairs > n) fail(errc::invalid_argument, "matching_graph: too many pairs");
    Graph g(n);
    for (int i = 0; i < pairs; ++i) g.add_edge(2 * i, 2 * i + 1);
    return g;
}

Graph petersen_graph() {
    Graph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);        // outer C_5
        g.add_edge(5 + i, 5 + (i + 2) % 5); // inner pentagram
        g.add_edge(i, 5 + i);              // spokes
    }
    return g;
}

Graph wagner_graph() {
    Graph g(8);
    for (int i = 0; i < 8; ++i) g.add_edge(i, (i + 1) % 8);
    for (int i = 0; i < 4; ++i) g.add_edge(i, i + 4);
    return g;
}

Graph random_bipartite_graph(int n, int m, std::uint64_t seed) {
    int left = n / 2;
    std::vector<std::pair<int, int>> cross;
    for (int u = 0; u < left; ++u)
        for (int v = left; v < n; ++v) cross.emplace_back(u, v);
    if (m > int(cross.size()))
        fail(errc::invalid_argument, "random_bipartite_graph: m exceeds cross pairs");
    Rng rng(Rng::substream_seed(seed, 0xB1B));
    rng.shuffle(cross);
    Graph g(n);
    for (int i = 0; i < m; ++i) g.add_edge(cross[i].first, cross[i].second);
    return g;
}

Graph random_graph_with_edges(int n, int m, std::uint64_t seed) {
    if (m > edge_count_complete(n))
        fail(errc::invalid_argument, "random_graph_with_edges: m exceeds C(n,2)");
    std::vector<int> idx(edge_count_complete(n));
    std::iota(idx.begin(), idx.end(), 0);
    Rng rng(Rng::substream_seed(seed, 0xED6E));
    rng.shuffle(idx);
    Graph g(n);
    for (int i = 0; i < m; ++i) {
        auto [u, v] = edge_endpoints(n, idx[i]);
        g.add_edge(u, v);
    }
    return g;
}

bool is_bipartite(const Graph& g, std::vector<int>* side) {
    const int n = g.vertex_count();
    std::vector<int> colour(n, -1);
    for (int s = 0; s < n; ++s) {
        if (colour[s] != -1) continue;
        colour[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            bool odd = false;
            g.neighbours(u).for_each([&](int v) {
                if (colour[v] == -1) {
                    colour[v] = 1 - colour[u];
                    q.push(v);
                } else if (colour[v] == colour[u]) {
                    odd = true;
                }
            });
            if (odd) return false;
        }
    }
    if (side) *side = std::move(colour);
    return true;
}

std::string graph_to_text(const Graph& g) {
    std::ostringstream os;
    os << g.vertex_count() << "\n";
    for (auto [u, v] : g.edges()) os << u << " " << v << "\n";
    return os.str();
}

Graph graph_from_text(const std::string& text) {
    std::istringstream is(text);
    int n;
    if (!(is >> n) || n < 0) fail(errc::config_invalid, "graph text: bad vertex count");
    Graph g(n);
    int u, v;
    while (is >> u) {
        if (!(is >> v)) fail(errc::config_invalid, "graph text: dangling endpoint");
        if (u < 0 || v < 0 || u >= n || v >= n)
            fail(errc::config_invalid, "graph text: endpoint out of range");
        g.add_edge(u, v);
    }
    return g;
}

} // namespace tlab

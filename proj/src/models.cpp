#include "thresholdlab/models.hpp"

#include <atomic>
#include <cmath>

#include "thresholdlab/parallel.hpp"
#include "thresholdlab/stats.hpp"

namespace tlab {

Graph sample_gnp(int n, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) fail(errc::invalid_p, "sample_gnp: p must lie in [0,1]");
    Rng rng(seed);
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli_at(std::uint64_t(edge_index(n, u, v)), p)) g.add_edge(u, v);
    return g;
}

Digraph sample_digraph(int n, double p, std::uint64_t seed, bool loops) {
    if (!(p >= 0.0 && p <= 1.0)) fail(errc::invalid_p, "sample_digraph: p must lie in [0,1]");
    Rng rng(seed);
    Digraph d(n, loops);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (u == v && !loops) continue;
            if (rng.bernoulli_at(std::uint64_t(u) * n + v, p)) d.add_arc(u, v);
        }
    return d;
}

Digraph remove_loops(const Digraph& d) {
    const int n = d.vertex_count();
    Digraph out(n, false);
    for (auto [u, v] : d.arcs())
        if (u != v) out.add_arc(u, v);
    return out;
}

Graph hat(const Digraph& d) {
    const int n = d.vertex_count();
    Graph g(n);
    std::vector<int> members;
    for (int v = 0; v < n; ++v) {
        members.clear();
        d.out(v).for_each([&](int w) { members.push_back(w); });
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j)
                g.add_edge(members[i], members[j]);
    }
    return g;
}

CoupledSample couple(int n, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p < 1.0))
        fail(errc::invalid_p, "couple: requires 0 <= p < 1 (p = 1 degenerates the direction law)");
    CoupledSample out;
    out.p = p;
    // extended precision for p' = 1 - sqrt(1-p); 2p' - p'^2 = p must hold to 1e-12
    long double pl = 1.0L - std::sqrt(1.0L - (long double)p);
    out.p_prime = double(pl);
    if (std::abs(2.0 * out.p_prime - out.p_prime * out.p_prime - p) > 1e-12)
        fail(errc::invalid_p, "couple: p' failed the 2p'-p'^2 = p identity");
    out.d = sample_digraph(n, out.p_prime, seed, false);
    out.gamma = Graph(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (out.d.has_arc(u, v) || out.d.has_arc(v, u)) out.gamma.add_edge(u, v);
    return out;
}

CaptureReport conditional_square_capture(int n, double p, std::uint64_t seed,
                                         std::uint64_t trials) {
    CaptureReport rep;
    rep.trials = trials;
    // integer tallies commute, so atomics keep the parallel path deterministic
    std::vector<std::atomic<std::uint64_t>> obs(n), cap(n);
    for (int i = 0; i < n; ++i) {
        obs[i] = 0;
        cap[i] = 0;
    }
    parallel_trials(trials, [&](std::uint64_t t) {
        CoupledSample cs = couple(n, p, Rng::substream_seed(seed, t));
        Graph hd = hat(cs.d);
        for (int u = 0; u < n; ++u)
            for (int w = u + 1; w < n; ++w) {
                int mult = cs.gamma.neighbours(u).intersection_count(cs.gamma.neighbours(w));
                if (mult == 0) continue; // not an edge of Gamma^2
                obs[mult].fetch_add(1, std::memory_order_relaxed);
                if (hd.has_edge(u, w)) cap[mult].fetch_add(1, std::memory_order_relaxed);
            }
    });
    rep.pass = true;
    for (int m = 1; m < n; ++m) {
        std::uint64_t o = obs[m].load();
        if (!o) continue;
        CaptureClass c;
        c.multiplicity = m;
        c.observations = o;
        c.captured = cap[m].load();
        c.frequency = double(c.captured) / double(o);
        c.std_error = std::sqrt(c.frequency * (1.0 - c.frequency) / double(o));
        if (c.frequency < rep.min_frequency) rep.min_frequency = c.frequency;
        if (c.frequency < 0.25 - 4.0 * c.std_error) rep.pass = false;
        rep.classes.push_back(c);
    }
    return rep;
}

CouplingGofReport coupling_goodness_of_fit(int n, double p, std::uint64_t samples,
                                           std::uint64_t seed) {
    CouplingGofReport rep;
    rep.samples = samples;
    std::atomic<std::uint64_t> counts[4] = {0, 0, 0, 0};
    std::atomic<bool> degree_ok{true};
    parallel_trials(samples, [&](std::uint64_t t) {
        CoupledSample cs = couple(n, p, Rng::substream_seed(seed, t));
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                int state = (cs.d.has_arc(u, v) ? 1 : 0) | (cs.d.has_arc(v, u) ? 2 : 0);
                counts[state].fetch_add(1, std::memory_order_relaxed);
            }
        if (cs.d.max_out_degree() > cs.gamma.max_degree()) degree_ok.store(false);
    });
    rep.max_degree_ok = degree_ok.load();
    for (int s = 0; s < 4; ++s) rep.state_counts[s] = counts[s].load();

    long double pp = 1.0L - std::sqrt(1.0L - (long double)p);
    double q1 = double(pp * (1.0L - pp)); // single arc, one direction
    double probs[4] = {double((1.0L - pp) * (1.0L - pp)), q1, q1, double(pp * pp)};
    double total = double(samples) * edge_count_complete(n);
    rep.chi2_states = 0;
    for (int s = 0; s < 4; ++s) {
        double expected = total * probs[s];
        double diff = double(rep.state_counts[s]) - expected;
        rep.chi2_states += diff * diff / expected;
    }
    rep.p_value_states = chi2_sf(rep.chi2_states, 3);

    double edges = double(rep.state_counts[1] + rep.state_counts[2] + rep.state_counts[3]);
    double exp_edges = total * p;
    double diff = edges - exp_edges;
    rep.chi2_edge = diff * diff / exp_edges + diff * diff / (total - exp_edges);
    rep.p_value_edge = chi2_sf(rep.chi2_edge, 1);
    return rep;
}

} // namespace tlab

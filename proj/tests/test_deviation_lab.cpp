#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "thresholdlab/deviation.hpp"
#include "thresholdlab/models.hpp"
#include "thresholdlab/parallel.hpp"

using namespace tlab;
using namespace tsup;

TEST_CASE("moment_check: empty H gives estimate = bound = 1") {
    auto rep = moment_check(Graph(16), 0.1, 500, 1);
    CHECK(rep.estimate == doctest::Approx(1.0));
    CHECK(rep.paper_bound == doctest::Approx(1.0));
    CHECK(rep.pass);
    CHECK_FALSE(rep.vacuous); // a moment bound is never vacuous
}

TEST_CASE("moment_check: p = 1 single edge, exact hand value") {
    Graph h(2);
    h.add_edge(0, 1);
    auto rep = moment_check(h, 1.0, 200, 2);
    // |U| = 2 <= 5pn = 10, X = 1 always: estimate = e^{1/10}
    CHECK(rep.estimate == doctest::Approx(std::exp(0.1)).epsilon(1e-9));
    CHECK(rep.paper_bound == doctest::Approx(std::exp(0.5)).epsilon(1e-12));
    CHECK(rep.pass);
}

TEST_CASE("moment_check: C_4 at n = 64, p = 1/160") {
    Graph h(64);
    h.add_edge(0, 1);
    h.add_edge(1, 2);
    h.add_edge(2, 3);
    h.add_edge(3, 0);
    auto rep = moment_check(h, 1.0 / 160.0, 20000, 3);
    CHECK(rep.m == 4);
    CHECK(rep.paper_bound == doctest::Approx(std::exp((1.0 / 160.0) * 4.0 / 64.0)));
    CHECK(rep.pass);
    CHECK(rep.estimate >= 1.0);
}

TEST_CASE("moment_check rejects non-bipartite H and bad p") {
    CHECK_THROWS_AS(moment_check(complete_graph(3), 0.1, 10, 1), Error);
    Graph h(4);
    h.add_edge(0, 1);
    CHECK_THROWS_AS(moment_check(h, 0.0, 10, 1), Error);
}

TEST_CASE("moment_check is bit-deterministic across thread counts") {
    Graph h = random_bipartite_graph(32, 40, 5);
    set_worker_threads(1);
    auto a = moment_check(h, 0.05, 4000, 9);
    set_worker_threads(4);
    auto b = moment_check(h, 0.05, 4000, 9);
    set_worker_threads(1);
    CHECK(a.estimate == b.estimate);
    CHECK(a.half_width == b.half_width);
    CHECK(a.per_trial == b.per_trial);
}

TEST_CASE("tail_check_directed: m = 0 is vacuous and passes") {
    auto rep = tail_check_directed(Graph(64), 1.0 / 160.0, 100, 1);
    CHECK(rep.vacuous);
    CHECK_FALSE(rep.asserted);
    CHECK(rep.pass);
    CHECK(rep.paper_bound == doctest::Approx(1.0));
}

TEST_CASE("tail_check_directed: perfect matching at n = 64, p = 1/160") {
    auto rep = tail_check_directed(matching_graph(64, 32), 1.0 / 160.0, 20000, 7);
    CHECK(rep.paper_bound == doctest::Approx(std::exp(-32.0 / 40.0)).epsilon(1e-12));
    CHECK_FALSE(rep.vacuous);
    CHECK(rep.asserted);
    CHECK(rep.pass);
    CHECK(rep.estimate <= 1.0);
    CHECK(rep.estimate >= 0.0);
}

TEST_CASE("tail_check_directed: nested star chain is monotone under shared seeds") {
    const double p = 1.0 / 160.0;
    double prev = 2.0;
    for (int leaves : {16, 8, 4}) { // estimates read back in decreasing m
        auto rep = tail_check_directed(star_graph(64, leaves), p, 5000, 1234);
        CHECK(rep.estimate <= prev + 1e-12);
        prev = rep.estimate;
        CHECK(rep.pass);
    }
}

TEST_CASE("tail checks reject p above the n^{-1/2}/20 window") {
    CHECK_THROWS_AS(tail_check_directed(matching_graph(64, 16), 0.01, 10, 1), Error);
    CHECK_THROWS_AS(tail_check_undirected(matching_graph(64, 16), 0.01, 10, 1), Error);
    try {
        tail_check_undirected(matching_graph(64, 16), 0.01, 10, 1);
    } catch (const Error& e) {
        CHECK(e.code() == errc::p_too_large);
    }
}

TEST_CASE("tail_check_undirected: small m is vacuous and flagged") {
    auto rep = tail_check_undirected(matching_graph(64, 4), 1.0 / 160.0, 200, 5);
    CHECK(rep.paper_bound > 1.0);
    CHECK(rep.vacuous);
    CHECK_FALSE(rep.asserted);
    CHECK(rep.pass);
}

TEST_CASE("tail_check_undirected: K_8 embedded in n = 64") {
    Graph h(64);
    for (int u = 0; u < 8; ++u)
        for (int v = u + 1; v < 8; ++v) h.add_edge(u, v);
    auto rep = tail_check_undirected(h, 1.0 / 160.0, 5000, 6);
    CHECK(rep.m == 28);
    // the bound is vacuous here; the event frequency is still essentially zero
    CHECK(rep.vacuous);
    CHECK(rep.estimate <= 0.01);
    CHECK(rep.estimate <= rep.paper_bound);
}

TEST_CASE("tail_check_undirected: a non-vacuous case asserts and passes") {
    // n = 16, m = 112: bound = 15 exp(-112/40) < 1; p at the n^{-1/2}/20 limit
    Graph h = random_graph_with_edges(16, 112, 8);
    auto rep = tail_check_undirected(h, 1.0 / 80.0, 5000, 9);
    CHECK(rep.paper_bound < 1.0);
    CHECK_FALSE(rep.vacuous);
    CHECK(rep.asserted);
    CHECK(rep.pass);
}

TEST_CASE("Y-component frequency is monotone in p under coupled sampling") {
    // couple Gamma_{p/2} inside Gamma_p by thresholding shared uniforms
    const int n = 20;
    const double p = 1.0 / 90.0; // within the window for n = 20
    Graph h = random_graph_with_edges(n, 60, 10);
    const double thresh = 0.75 * h.edge_count();
    int lo_count = 0, hi_count = 0;
    for (std::uint64_t t = 0; t < 4000; ++t) {
        Rng rng = Rng::substream(777, t);
        Graph glo(n), ghi(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                double x = rng.next_double();
                if (x < p) ghi.add_edge(u, v);
                if (x < p / 2) glo.add_edge(u, v);
            }
        bool elo = count_closed(h, glo) >= thresh;
        bool ehi = count_closed(h, ghi) >= thresh;
        CHECK(elo <= ehi); // pointwise monotone, surely
        lo_count += elo;
        hi_count += ehi;
    }
    CHECK(lo_count <= hi_count);
}

TEST_CASE("diagnostic no-degree-filter mode is reported, not asserted") {
    auto rep = tail_check_undirected(matching_graph(16, 8), 0.01, 500, 4, TailOptions{false});
    CHECK(rep.check == "tail-undirected-y-only");
    CHECK_FALSE(rep.asserted);
}

TEST_CASE("hitting_experiment: K_n is hit whenever Gamma is nonempty") {
    auto rep = hitting_experiment({complete_graph(16)}, 16, 0.2, 300, 11);
    CHECK(rep.hit_count[0] == 300);
    CHECK(rep.implication_violations == 0);
    CHECK(rep.decomposition_violations == 0);
}

TEST_CASE("hitting_experiment: the empty graph is never hit") {
    auto rep = hitting_experiment({Graph(12)}, 12, 0.3, 50, 12);
    CHECK(rep.hit_count[0] == 0);
    CHECK(rep.implication_violations == 0); // empty H has no good edges
}

TEST_CASE("hitting_experiment: random family, implications always hold") {
    std::vector<Graph> family;
    for (std::uint64_t i = 0; i < 20; ++i)
        family.push_back(random_graph_with_edges(30, 120, Rng::substream_seed(900, i)));
    auto rep = hitting_experiment(family, 30, 0.08, 150, 13);
    CHECK(rep.implication_violations == 0);
    CHECK(rep.decomposition_violations == 0);
    CHECK(rep.runs == 150);
}

TEST_CASE("hitting_experiment at the reference scale: n = 100, m = 2000, 50 graphs") {
    std::vector<Graph> family;
    for (std::uint64_t i = 0; i < 50; ++i)
        family.push_back(random_graph_with_edges(100, 2000, Rng::substream_seed(777, i)));
    auto rep = hitting_experiment(family, 100, 0.1, 20, 14);
    CHECK(rep.implication_violations == 0);
    CHECK(rep.decomposition_violations == 0);
    // dense H against a dense host: every run hits every H here
    CHECK(rep.all_hit_runs == 20);
}

TEST_CASE("fractional_hitting: degenerate weights") {
    WeightedFamily zeros = WeightedFamily::make(
        {random_graph_with_edges(10, 20, 1), random_graph_with_edges(10, 15, 2)}, {0.0, 0.0});
    auto rep = fractional_hitting(zeros, 10, 0.2, 40, 3);
    CHECK(rep.runs_below_one == 40);
    CHECK(rep.max_missed == 0.0);

    WeightedFamily heavy = WeightedFamily::make({Graph(10)}, {2.0});
    auto rep2 = fractional_hitting(heavy, 10, 0.2, 40, 4);
    CHECK(rep2.min_missed == 2.0);
    CHECK(rep2.runs_below_one == 0);
    CHECK(rep2.fraction_below_one == 0.0);
}

TEST_CASE("fractional_hitting: weights scaled to the hypothesis give fraction near 1") {
    const int n = 24;
    const double delta = delta_budget(1.0 / 20.0, 1.0 / 10.0);
    std::vector<Graph> graphs;
    std::vector<double> weights;
    for (std::uint64_t i = 0; i < 20; ++i) {
        Graph h = random_graph_with_edges(n, 60, Rng::substream_seed(321, i));
        weights.push_back(std::exp(delta * h.edge_count() / std::sqrt(double(n))) / (4.0 * 20));
        graphs.push_back(std::move(h));
    }
    WeightedFamily wf = WeightedFamily::make(graphs, weights);
    // the hypothesis sum collapses to 20 * (1/80) = 1/4 < 1/2
    auto cond = family_condition_check(wf, delta, n);
    CHECK(cond.sum == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(cond.satisfied);
    auto rep = fractional_hitting(wf, n, 0.2, 200, 5);
    CHECK(rep.fraction_below_one >= 0.9);
}

TEST_CASE("delta_budget arithmetic") {
    CHECK(delta_budget(1.0 / 20.0, 1.0 / 10.0) == doctest::Approx(0.0025).epsilon(1e-12));
    CHECK(delta_budget(4.0, 1.0) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(delta_budget(0.4, 0.1) == doctest::Approx(0.02).epsilon(1e-12));
    CHECK_THROWS_AS(delta_budget(0.0, 1.0), Error);
}

TEST_CASE("family_condition_check: edge cases") {
    auto empty = family_condition_check(std::vector<Graph>{}, 0.01, 16);
    CHECK(empty.sum == 0.0);
    CHECK(empty.satisfied);

    auto lone = family_condition_check({Graph(16)}, 0.01, 16);
    CHECK(lone.sum == doctest::Approx(1.0));
    CHECK_FALSE(lone.satisfied);
}

TEST_CASE("clique_family_condition: the k > n family is empty, hence satisfied") {
    // n = 10^4, C = 40, delta = 1/400: k = ceil(C sqrt(n) ln n) = 36842 > n
    int k = int(std::ceil(40.0 * 100.0 * std::log(1e4)));
    CHECK(k == 36842);
    auto rep = clique_family_condition(10000, k, 0.0025);
    CHECK(std::isinf(rep.log_sum));
    CHECK(rep.log_sum < 0);
    CHECK(rep.sum == 0.0);
    CHECK(rep.satisfied);
}

TEST_CASE("clique_family_condition: nontrivial satisfied and unsatisfied cases") {
    // K_100 alone: log C(100,100) - 0.0025 * 4950 / 10 = -1.2375 < log(1/2)
    auto one = clique_family_condition(100, 100, 0.0025);
    CHECK(one.log_sum == doctest::Approx(-1.2375).epsilon(1e-9));
    CHECK(one.satisfied);
    // all C(100,5) cliques of size 5: enormous count, tiny exponent: unsatisfied
    auto many = clique_family_condition(100, 5, 0.0025);
    CHECK(many.log_sum > 0);
    CHECK_FALSE(many.satisfied);
    // the log-domain comparison handles astronomically large binomials
    auto big = clique_family_condition(10000, 5000, 0.0025);
    CHECK(std::isfinite(big.log_sum));
}

TEST_CASE("probability-kind reports keep estimate in [0,1] and vacuous <=> bound >= 1") {
    for (auto rep : {tail_check_directed(matching_graph(64, 16), 1.0 / 160.0, 300, 21),
                     tail_check_undirected(matching_graph(64, 16), 1.0 / 160.0, 300, 22)}) {
        CHECK(rep.estimate >= 0.0);
        CHECK(rep.estimate <= 1.0);
        CHECK(rep.vacuous == (rep.paper_bound >= 1.0));
    }
}

#include "thresholdlab/deviation.hpp"

#include <algorithm>
#include <cmath>

#include "thresholdlab/models.hpp"
#include "thresholdlab/parallel.hpp"
#include "thresholdlab/stats.hpp"

namespace tlab {

namespace {

void require_bipartite(const Graph& h, const char* op) {
    if (!is_bipartite(h)) fail(errc::not_bipartite, std::string(op) + ": H must be bipartite");
}

void require_p_small_enough(double p, int n, const char* op) {
    double limit = 1.0 / (20.0 * std::sqrt(double(n)));
    if (p > limit + 1e-15)
        fail(errc::p_too_large,
             std::string(op) + ": requires p <= n^{-1/2}/20 = " + std::to_string(limit));
}

int edges_within(const std::vector<std::pair<int, int>>& edges, const Bitset& u) {
    int c = 0;
    for (auto [a, b] : edges)
        if (u.test(a) && u.test(b)) ++c;
    return c;
}

// mean and 95% half-width of exp(x_t), reduced in trial order via log-sum-exp
void finish_exponential(DeviationReport& rep) {
    LogSumExp lse1, lse2;
    for (double x : rep.per_trial) {
        lse1.add(x);
        lse2.add(2.0 * x);
    }
    double mean = std::exp(lse1.log_mean());
    double second = std::exp(lse2.log_mean());
    rep.estimate = mean;
    rep.half_width = mean_half_width(second - mean * mean, rep.trials);
}

} // namespace

WeightedFamily WeightedFamily::make(std::vector<Graph> members, std::vector<double> weights) {
    if (members.size() != weights.size())
        fail(errc::invalid_argument, "weighted family: members/weights size mismatch");
    for (double w : weights)
        if (w < 0) fail(errc::invalid_argument, "weighted family: weights must be >= 0");
    for (std::size_t i = 1; i < members.size(); ++i)
        if (members[i].vertex_count() != members[0].vertex_count())
            fail(errc::invalid_argument, "weighted family: members must share vertex count");
    return WeightedFamily{std::move(members), std::move(weights)};
}

DeviationReport moment_check(const Graph& h, double p, std::uint64_t trials, std::uint64_t seed) {
    require_bipartite(h, "moment_check");
    if (!(p > 0.0 && p <= 1.0)) fail(errc::invalid_p, "moment_check: requires 0 < p <= 1");
    if (trials < 1) fail(errc::invalid_argument, "moment_check: trials must be >= 1");
    const int n = h.vertex_count();
    const int m = h.edge_count();
    const double cap = 5.0 * p * double(n);
    const auto edges = h.edges();

    DeviationReport rep;
    rep.check = "moment";
    rep.trials = trials;
    rep.seed = seed;
    rep.n = n;
    rep.m = m;
    rep.p = p;
    rep.bound_kind = BoundKind::moment;
    rep.paper_bound = std::exp(p * double(m) / double(n));
    rep.per_trial.assign(trials, 0.0);

    std::vector<std::uint8_t> z_flag(trials, 0);
    parallel_trials(trials, [&](std::uint64_t t) {
        Rng rng = Rng::substream(seed, t);
        Bitset u(n);
        for (int i = 0; i < n; ++i)
            if (rng.bernoulli(p)) u.set(i);
        bool z = u.count() <= cap;
        int x = edges_within(edges, u);
        z_flag[t] = z;
        rep.per_trial[t] = z ? double(x) / cap : 0.0;
    });
    for (std::uint64_t t = 0; t < trials; ++t) rep.event_count += z_flag[t];
    finish_exponential(rep);
    rep.vacuous = false; // a moment bound always constrains the estimate
    rep.asserted = true;
    rep.pass = rep.estimate <= rep.paper_bound + 3.0 * rep.half_width;
    return rep;
}

DeviationReport tail_check_directed(const Graph& h, double p, std::uint64_t trials,
                                    std::uint64_t seed) {
    require_bipartite(h, "tail_check_directed");
    const int n = h.vertex_count();
    require_p_small_enough(p, n, "tail_check_directed");
    if (trials < 1) fail(errc::invalid_argument, "tail_check_directed: trials must be >= 1");
    const int m = h.edge_count();
    const auto edges = h.edges();

    DeviationReport rep;
    rep.check = "tail-directed";
    rep.trials = trials;
    rep.seed = seed;
    rep.n = n;
    rep.m = m;
    rep.p = p;
    rep.bound_kind = BoundKind::probability;
    rep.paper_bound = std::exp(-double(m) / (5.0 * std::sqrt(double(n))));
    rep.per_trial.assign(trials, 0.0);

    parallel_trials(trials, [&](std::uint64_t t) {
        Digraph d = sample_digraph(n, p, Rng::substream_seed(seed, t), false);
        if (d.max_out_degree() > 5.0 * p * n - 1.0) return;
        Graph hd = hat(d);
        int hits = 0;
        for (auto [a, b] : edges)
            if (hd.has_edge(a, b)) ++hits;
        if (double(hits) >= double(m) / 16.0) rep.per_trial[t] = 1.0;
    });
    for (std::uint64_t t = 0; t < trials; ++t) rep.event_count += rep.per_trial[t] > 0;
    rep.estimate = double(rep.event_count) / double(trials);
    rep.half_width = proportion_half_width(rep.estimate, trials);
    rep.vacuous = rep.paper_bound >= 1.0;
    rep.asserted = !rep.vacuous;
    rep.pass = rep.vacuous || rep.estimate <= rep.paper_bound + 3.0 * rep.half_width;
    return rep;
}

DeviationReport tail_check_undirected(const Graph& h, double p, std::uint64_t trials,
                                      std::uint64_t seed, TailOptions opts) {
    const int n = h.vertex_count();
    require_p_small_enough(p, n, "tail_check_undirected");
    if (trials < 1) fail(errc::invalid_argument, "tail_check_undirected: trials must be >= 1");
    const int m = h.edge_count();

    DeviationReport rep;
    rep.check = opts.degree_filter ? "tail-undirected" : "tail-undirected-y-only";
    rep.trials = trials;
    rep.seed = seed;
    rep.n = n;
    rep.m = m;
    rep.p = p;
    rep.bound_kind = BoundKind::probability;
    rep.paper_bound = 15.0 * std::exp(-double(m) / (10.0 * std::sqrt(double(n))));
    rep.per_trial.assign(trials, 0.0);

    parallel_trials(trials, [&](std::uint64_t t) {
        Graph gamma = sample_gnp(n, p, Rng::substream_seed(seed, t));
        if (opts.degree_filter && !(gamma.max_degree() < 2.0 * p * n)) return;
        if (double(count_closed(h, gamma)) >= 0.75 * double(m)) rep.per_trial[t] = 1.0;
    });
    for (std::uint64_t t = 0; t < trials; ++t) rep.event_count += rep.per_trial[t] > 0;
    rep.estimate = double(rep.event_count) / double(trials);
    rep.half_width = proportion_half_width(rep.estimate, trials);
    rep.vacuous = rep.paper_bound >= 1.0;
    rep.asserted = !rep.vacuous && opts.degree_filter;
    rep.pass = !rep.asserted || rep.estimate <= rep.paper_bound + 3.0 * rep.half_width;
    return rep;
}

HittingReport hitting_experiment(const std::vector<Graph>& family, int n, double p,
                                 std::uint64_t runs, std::uint64_t seed) {
    for (const auto& h : family)
        if (h.vertex_count() != n)
            fail(errc::invalid_argument, "hitting_experiment: all H must live on [n]");
    HittingReport rep;
    rep.runs = runs;
    rep.hit_count.assign(family.size(), 0);
    rep.x_count.assign(family.size(), 0);
    rep.y_count.assign(family.size(), 0);
    rep.per_run.assign(runs, HittingRun{});

    parallel_trials(runs, [&](std::uint64_t r) {
        std::uint64_t run_seed = Rng::substream_seed(seed, r);
        Graph gamma = sample_gnp(n, p, Rng::substream_seed(run_seed, 0));
        Graph g = maximal_triangle_free(gamma, Rng::substream_seed(run_seed, 1));
        HittingRun& run = rep.per_run[r];
        run.z = gamma.max_degree() >= 2.0 * p * n;
        run.x.resize(family.size());
        run.y.resize(family.size());
        run.hit.resize(family.size());
        for (std::size_t i = 0; i < family.size(); ++i) {
            const Graph& h = family[i];
            bool good = h_good_edges(h, gamma).mask.bits().any();
            run.x[i] = !good;
            run.y[i] = double(count_closed(h, gamma)) >= 0.75 * double(h.edge_count());
            run.hit[i] = share_edge(g, h);
        }
    });

    for (std::uint64_t r = 0; r < runs; ++r) {
        const HittingRun& run = rep.per_run[r];
        rep.z_count += run.z;
        bool all_hit = true;
        bool any_y_without_z = false, any_x_without_y = false;
        for (std::size_t i = 0; i < family.size(); ++i) {
            rep.hit_count[i] += run.hit[i];
            rep.x_count[i] += run.x[i];
            rep.y_count[i] += run.y[i];
            if (!run.hit[i]) all_hit = false;
            if (!run.x[i] && !run.hit[i]) rep.implication_violations++;
            if (run.y[i] && !run.z) any_y_without_z = true;
            if (run.x[i] && !run.y[i]) any_x_without_y = true;
        }
        rep.all_hit_runs += all_hit;
        if (!all_hit && !(run.z || any_y_without_z || any_x_without_y))
            rep.decomposition_violations++;
    }
    return rep;
}

FractionalHittingReport fractional_hitting(const WeightedFamily& wfamily, int n, double p,
                                           std::uint64_t runs, std::uint64_t seed) {
    for (const auto& h : wfamily.members)
        if (h.vertex_count() != n)
            fail(errc::invalid_argument, "fractional_hitting: all H must live on [n]");
    FractionalHittingReport rep;
    rep.runs = runs;
    rep.per_run.assign(runs, 0.0);
    parallel_trials(runs, [&](std::uint64_t r) {
        std::uint64_t run_seed = Rng::substream_seed(seed, r);
        Graph gamma = sample_gnp(n, p, Rng::substream_seed(run_seed, 0));
        Graph g = maximal_triangle_free(gamma, Rng::substream_seed(run_seed, 1));
        KahanSum missed;
        for (std::size_t i = 0; i < wfamily.members.size(); ++i)
            if (!share_edge(g, wfamily.members[i])) missed.add(wfamily.weights[i]);
        rep.per_run[r] = missed.value();
    });
    rep.min_missed = runs ? rep.per_run[0] : 0;
    rep.max_missed = rep.min_missed;
    KahanSum total;
    for (double v : rep.per_run) {
        total.add(v);
        rep.min_missed = std::min(rep.min_missed, v);
        rep.max_missed = std::max(rep.max_missed, v);
        if (v < 1.0) rep.runs_below_one++;
    }
    rep.mean_missed = runs ? total.value() / double(runs) : 0;
    rep.fraction_below_one = runs ? double(rep.runs_below_one) / double(runs) : 0;
    return rep;
}

double delta_budget(double epsilon, double gamma) {
    if (!(epsilon > 0) || !(gamma > 0))
        fail(errc::invalid_argument, "delta_budget: epsilon and gamma must be positive");
    return std::min(epsilon / 4.0, gamma) / 5.0;
}

namespace {

ConditionReport condition_from_terms(const std::vector<double>& log_terms) {
    ConditionReport rep;
    LogSumExp lse;
    for (double t : log_terms) lse.add(t);
    rep.log_sum = lse.count() ? lse.value() : -std::numeric_limits<double>::infinity();
    rep.sum = std::exp(rep.log_sum);
    rep.satisfied = rep.log_sum < std::log(0.5);
    return rep;
}

} // namespace

ConditionReport family_condition_check(const std::vector<Graph>& family, double delta, int n) {
    if (!(delta > 0)) fail(errc::invalid_argument, "family_condition_check: delta must be > 0");
    std::vector<double> terms;
    terms.reserve(family.size());
    for (const auto& h : family)
        terms.push_back(-delta * double(h.edge_count()) / std::sqrt(double(n)));
    return condition_from_terms(terms);
}

ConditionReport family_condition_check(const WeightedFamily& wfamily, double delta, int n) {
    if (!(delta > 0)) fail(errc::invalid_argument, "family_condition_check: delta must be > 0");
    std::vector<double> terms;
    terms.reserve(wfamily.members.size());
    for (std::size_t i = 0; i < wfamily.members.size(); ++i) {
        if (wfamily.weights[i] <= 0) continue;
        terms.push_back(std::log(wfamily.weights[i]) -
                        delta * double(wfamily.members[i].edge_count()) / std::sqrt(double(n)));
    }
    return condition_from_terms(terms);
}

ConditionReport clique_family_condition(int n, int k, double delta) {
    if (!(delta > 0)) fail(errc::invalid_argument, "clique_family_condition: delta must be > 0");
    ConditionReport rep;
    double log_count = log_binomial(double(n), double(k));
    double edges = double(k) * double(k - 1) / 2.0;
    rep.log_sum = log_count - delta * edges / std::sqrt(double(n));
    rep.sum = std::exp(rep.log_sum);
    rep.satisfied = rep.log_sum < std::log(0.5);
    return rep;
}

} // namespace tlab

#include "thresholdlab/certificate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "thresholdlab/lp.hpp"
#include "thresholdlab/stats.hpp"

namespace tlab {

namespace {

double term_weight(int set_size, int ground_size, double p, Direction dir) {
    int k = dir == Direction::Up ? set_size : ground_size - set_size;
    if (k == 0) return 1.0;
    double base = dir == Direction::Up ? p : 1.0 - p;
    if (base <= 0.0) return 0.0;
    // log-space per term; log1p on the Down side keeps 1-p accurate
    double lb = dir == Direction::Up ? std::log(p) : std::log1p(-p);
    return std::exp(double(k) * lb);
}

void require_probability(double p, const char* op) {
    if (!(p >= 0.0 && p <= 1.0)) fail(errc::invalid_p, std::string(op) + ": p must lie in [0,1]");
}

std::vector<std::uint64_t> all_members_packed(const MonotoneFamily& family) {
    require_exact_ground(family.ground(), "member enumeration");
    if (family.enumeration()) return *family.enumeration();
    const int n = family.ground().size;
    std::vector<std::uint64_t> out;
    SubsetMask s(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        s.set_packed(mask);
        if (family.member(s)) out.push_back(mask);
    }
    return out;
}

} // namespace

Certificate Certificate::make(GroundSet ground, std::vector<SubsetMask> members) {
    for (const auto& m : members)
        if (m.ground_size() != ground.size)
            fail(errc::invalid_argument, "certificate member does not match ground size");
    std::sort(members.begin(), members.end(),
              [](const SubsetMask& a, const SubsetMask& b) { return a.packed() < b.packed(); });
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return Certificate{std::move(ground), std::move(members)};
}

double cert_cost(const Certificate& cert, double p, Direction dir) {
    require_probability(p, "cert_cost");
    KahanSum sum;
    for (const auto& t : cert.members)
        sum.add(term_weight(t.count(), cert.ground.size, p, dir));
    return sum.value();
}

bool covers(const Certificate& cert, const MonotoneFamily& family) {
    require_exact_ground(family.ground(), "covers");
    const int n = family.ground().size;
    const bool up = family.direction() == Direction::Up;
    std::vector<std::uint64_t> cert_masks;
    cert_masks.reserve(cert.members.size());
    for (const auto& m : cert.members) cert_masks.push_back(m.packed());
    SubsetMask s(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        s.set_packed(mask);
        if (!family.member(s)) continue;
        bool hit = false;
        for (std::uint64_t t : cert_masks) {
            if (up ? ((mask & t) == t) : ((mask & ~t) == 0)) {
                hit = true;
                break;
            }
        }
        if (!hit) return false;
    }
    return true;
}

SampledCoverCheck covers_sampled(const Certificate& cert, const MonotoneFamily& family,
                                 std::uint64_t trials, std::uint64_t seed) {
    SampledCoverCheck out;
    out.trials = trials;
    const int n = family.ground().size;
    const bool up = family.direction() == Direction::Up;
    for (std::uint64_t t = 0; t < trials && out.no_counterexample; ++t) {
        Rng rng = Rng::substream(seed, t);
        SubsetMask s = sample_biased_mask(n, 0.5, rng);
        if (!family.member(s)) continue;
        bool hit = false;
        for (const auto& m : cert.members) {
            if (up ? s.is_superset_of(m) : s.is_subset_of(m)) {
                hit = true;
                break;
            }
        }
        if (!hit) out.no_counterexample = false;
    }
    return out;
}

CertVerdict evaluate_certificate(const Certificate& cert, const MonotoneFamily& family, double p) {
    CertVerdict v;
    v.cost = cert_cost(cert, p, family.direction());
    v.covers = covers(cert, family);
    v.p_small = v.covers && v.cost <= 0.5;
    return v;
}

std::vector<std::uint64_t> maximal_members(const MonotoneFamily& family) {
    auto members = all_members_packed(family);
    const int n = family.ground().size;
    std::vector<std::uint64_t> out;
    for (std::uint64_t m : members) {
        bool maximal = true;
        for (int i = 0; i < n && maximal; ++i) {
            if ((m >> i) & 1) continue;
            if (std::binary_search(members.begin(), members.end(), m | (std::uint64_t(1) << i)))
                maximal = false;
        }
        if (maximal) out.push_back(m);
    }
    return out;
}

std::vector<std::uint64_t> minimal_members(const MonotoneFamily& family) {
    auto members = all_members_packed(family);
    const int n = family.ground().size;
    std::vector<std::uint64_t> out;
    for (std::uint64_t m : members) {
        bool minimal = true;
        for (int i = 0; i < n && minimal; ++i) {
            if (!((m >> i) & 1)) continue;
            if (std::binary_search(members.begin(), members.end(), m & ~(std::uint64_t(1) << i)))
                minimal = false;
        }
        if (minimal) out.push_back(m);
    }
    return out;
}

namespace {

struct CoverCandidate {
    std::uint64_t mask = 0;
    double weight = 0;
    std::uint32_t coverage = 0; // bit i: covers universe element i
};

struct CoverSearch {
    std::vector<CoverCandidate> cands;
    std::uint32_t full = 0;
    double best_cost = 0;
    std::vector<std::uint64_t> best_pick;
    std::vector<std::uint64_t> pick;

    void rec(std::uint32_t covered, double cost) {
        if (cost >= best_cost) return;
        if (covered == full) {
            best_cost = cost;
            best_pick = pick;
            return;
        }
        // lowest-index uncovered universe element
        int elem = std::countr_zero(~covered & full);
        for (const auto& c : cands) {
            if (!((c.coverage >> elem) & 1)) continue;
            pick.push_back(c.mask);
            rec(covered | c.coverage, cost + c.weight);
            pick.pop_back();
        }
    }
};

MinCover min_cover_at(const MonotoneFamily& family, double p,
                      const std::vector<std::uint64_t>& universe) {
    const int n = family.ground().size;
    const Direction dir = family.direction();
    const std::size_t k = universe.size();

    std::vector<CoverCandidate> cands;
    for (std::uint64_t t = 0; t < (std::uint64_t(1) << n); ++t) {
        CoverCandidate c;
        c.mask = t;
        c.weight = term_weight(std::popcount(t), n, p, dir);
        for (std::size_t i = 0; i < k; ++i) {
            bool cov = dir == Direction::Up ? ((universe[i] & t) == t) : ((universe[i] & ~t) == 0);
            if (cov) c.coverage |= std::uint32_t(1) << i;
        }
        if (c.coverage) cands.push_back(c);
    }
    // dominance pruning: sort by (weight, mask); a candidate is dominated by
    // an earlier one whose coverage is a superset at no greater cost
    std::sort(cands.begin(), cands.end(), [](const CoverCandidate& a, const CoverCandidate& b) {
        return a.weight != b.weight ? a.weight < b.weight : a.mask < b.mask;
    });
    std::vector<CoverCandidate> kept;
    for (const auto& c : cands) {
        bool dominated = false;
        for (const auto& d : kept) {
            if ((c.coverage & ~d.coverage) == 0) {
                dominated = true;
                break;
            }
        }
        if (!dominated) kept.push_back(c);
    }

    CoverSearch search;
    search.cands = std::move(kept);
    search.full = k == 32 ? ~std::uint32_t(0) : ((std::uint32_t(1) << k) - 1);
    // greedy warm start: repeatedly take the cheapest candidate covering the
    // lowest uncovered element, to seed the bound
    {
        std::uint32_t covered = 0;
        double cost = 0;
        std::vector<std::uint64_t> greedy;
        while (covered != search.full) {
            int elem = std::countr_zero(~covered & search.full);
            const CoverCandidate* pickc = nullptr;
            for (const auto& c : search.cands)
                if ((c.coverage >> elem) & 1) {
                    pickc = &c;
                    break;
                }
            covered |= pickc->coverage;
            cost += pickc->weight;
            greedy.push_back(pickc->mask);
        }
        search.best_cost = cost + 1e-15;
        search.best_pick = std::move(greedy);
    }
    search.rec(0, 0.0);

    MinCover out;
    out.cost = 0;
    std::vector<SubsetMask> members;
    KahanSum sum;
    for (std::uint64_t m : search.best_pick) {
        members.emplace_back(n, m);
        sum.add(term_weight(std::popcount(m), n, p, dir));
    }
    out.cost = sum.value();
    out.certificate = Certificate::make(family.ground(), std::move(members));
    return out;
}

} // namespace

MinCover min_cover_cost(const MonotoneFamily& family, double p) {
    require_probability(p, "min_cover_cost");
    if (family.ground().size > 4)
        fail(errc::ground_set_too_large, "min_cover_cost: exact cover search requires N <= 4");
    if (!family.nontrivial()) fail(errc::trivial_family, "min_cover_cost: trivial family");
    auto universe = family.direction() == Direction::Up ? minimal_members(family)
                                                        : maximal_members(family);
    return min_cover_at(family, p, universe);
}

QExactResult q_exact(const MonotoneFamily& family, double tol) {
    if (family.ground().size > 4)
        fail(errc::ground_set_too_large, "q_exact requires N <= 4");
    if (tol <= 0) fail(errc::invalid_argument, "q_exact: tol must be positive");
    if (!family.nontrivial()) fail(errc::trivial_family, "q_exact: trivial family");
    const bool up = family.direction() == Direction::Up;
    auto universe = up ? minimal_members(family) : maximal_members(family);

    auto cost_at = [&](double p) { return min_cover_at(family, p, universe).cost; };
    // the outer bisection relies on cost monotonicity in p; assert it at the
    // bracket endpoints rather than assuming
    double c0 = cost_at(0.0), c1 = cost_at(1.0);
    if (up ? c0 > c1 : c0 < c1)
        fail(errc::invalid_argument, "q_exact: cover cost is not monotone on [0,1]");

    QExactResult out;
    double lo = 0.0, hi = 1.0;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        bool small = cost_at(mid) <= 0.5;
        if (up)
            (small ? lo : hi) = mid; // q = largest p-small p
        else
            (small ? hi : lo) = mid; // q = smallest p-small p
    }
    out.bracket_lo = lo;
    out.bracket_hi = hi;
    out.p = 0.5 * (lo + hi);
    out.witness = min_cover_at(family, up ? lo : hi, universe).certificate;
    return out;
}

LpCoverResult lp_min_cover(const MonotoneFamily& family, std::span<const double> weights) {
    const int n = family.ground().size;
    if (n > 5) fail(errc::ground_set_too_large, "lp_min_cover requires N <= 5");
    if (!family.nontrivial()) fail(errc::trivial_family, "lp_min_cover: trivial family");
    const std::uint64_t nvars = std::uint64_t(1) << n;
    if (weights.size() != nvars)
        fail(errc::invalid_argument, "lp_min_cover: weights must have 2^N entries");
    for (double w : weights)
        if (w < 0) fail(errc::invalid_argument, "lp_min_cover: weights must be nonnegative");
    const bool up = family.direction() == Direction::Up;
    auto universe = up ? minimal_members(family) : maximal_members(family);

    LpProblem lp;
    lp.c.assign(weights.begin(), weights.end());
    lp.b.assign(universe.size(), 1.0);
    lp.a.assign(universe.size(), std::vector<double>(nvars, 0.0));
    for (std::size_t i = 0; i < universe.size(); ++i) {
        for (std::uint64_t t = 0; t < nvars; ++t) {
            bool covers_it = up ? ((universe[i] & t) == t) : ((universe[i] & ~t) == 0);
            if (covers_it) lp.a[i][t] = 1.0;
        }
    }
    auto sol = solve_lp(lp);
    if (!sol.feasible)
        fail(errc::lp_numerical_failure, "lp_min_cover: coverage LP reported infeasible");

    LpCoverResult out;
    out.value = sol.value;
    out.used_exact_fallback = sol.used_exact_fallback;
    out.g.ground = family.ground();
    for (std::uint64_t t = 0; t < nvars; ++t) {
        if (sol.x[t] > 0.0) {
            out.g.support.emplace_back(n, t);
            out.g.weight.push_back(sol.x[t]);
        }
    }
    return out;
}

QfExactResult qf_exact(const MonotoneFamily& family, double tol) {
    const int n = family.ground().size;
    if (n > 5) fail(errc::ground_set_too_large, "qf_exact requires N <= 5");
    if (tol <= 0) fail(errc::invalid_argument, "qf_exact: tol must be positive");
    if (!family.nontrivial()) fail(errc::trivial_family, "qf_exact: trivial family");
    const bool up = family.direction() == Direction::Up;
    const std::uint64_t nvars = std::uint64_t(1) << n;

    auto lp_value = [&](double p) {
        std::vector<double> w(nvars);
        for (std::uint64_t t = 0; t < nvars; ++t)
            w[t] = term_weight(std::popcount(t), n, p, family.direction());
        return lp_min_cover(family, w);
    };

    double v0 = lp_value(0.0).value, v1 = lp_value(1.0).value;
    if (up ? v0 > v1 : v0 < v1)
        fail(errc::invalid_argument, "qf_exact: LP optimum is not monotone on [0,1]");

    QfExactResult out;
    double lo = 0.0, hi = 1.0;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        bool small = lp_value(mid).value <= 0.5;
        if (up)
            (small ? lo : hi) = mid;
        else
            (small ? hi : lo) = mid;
    }
    out.bracket_lo = lo;
    out.bracket_hi = hi;
    out.p = 0.5 * (lo + hi);
    out.witness = lp_value(up ? lo : hi).g;
    return out;
}

SandwichReport verify_sandwich(const MonotoneFamily& family, double tol) {
    if (family.ground().size > 4)
        fail(errc::ground_set_too_large, "verify_sandwich requires N <= 4");
    SandwichReport rep;
    rep.direction = family.direction();
    rep.tol = tol;
    rep.p_c = threshold_exact(family, 1e-6);
    rep.q_f = qf_exact(family, 1e-6).p;
    rep.q = q_exact(family, 1e-6).p;
    if (family.direction() == Direction::Up)
        rep.pass = rep.q <= rep.q_f + tol && rep.q_f <= rep.p_c + tol;
    else
        rep.pass = rep.p_c <= rep.q_f + tol && rep.q_f <= rep.q + tol;
    return rep;
}

} // namespace tlab

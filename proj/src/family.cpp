#include "thresholdlab/family.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "thresholdlab/graph.hpp"
#include "thresholdlab/parallel.hpp"
#include "thresholdlab/stats.hpp"

namespace tlab {

namespace {

// Exhaustive one-step closure check; single-element moves suffice by induction.
void check_monotone_exhaustive(const GroundSet& g, Direction dir,
                               const MonotoneFamily::Member& member) {
    const int n = g.size;
    SubsetMask s(n), t(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        s.set_packed(mask);
        if (!member(s)) continue;
        if (dir == Direction::Up) {
            for (int i = 0; i < n; ++i) {
                if ((mask >> i) & 1) continue;
                t.set_packed(mask | (std::uint64_t(1) << i));
                if (!member(t))
                    fail(errc::not_monotone, "up-set member has a non-member superset");
            }
        } else {
            for (int i = 0; i < n; ++i) {
                if (!((mask >> i) & 1)) continue;
                t.set_packed(mask & ~(std::uint64_t(1) << i));
                if (!member(t))
                    fail(errc::not_monotone, "down-set member has a non-member subset");
            }
        }
    }
}

void check_monotone_sampled(const GroundSet& g, Direction dir,
                            const MonotoneFamily::Member& member, std::uint64_t seed) {
    const int n = g.size;
    Rng rng(Rng::substream_seed(seed, 0xC0FFEE));
    SubsetMask s(n), t(n);
    for (int trial = 0; trial < 10000; ++trial) {
        s.clear();
        t.clear();
        for (int i = 0; i < n; ++i) {
            bool in_s = rng.bernoulli(0.5);
            bool extra = rng.bernoulli(0.5);
            // t is a superset of s
            if (in_s) s.set(i);
            if (in_s || extra) t.set(i);
        }
        const SubsetMask& small = s;
        const SubsetMask& big = t;
        if (dir == Direction::Up) {
            if (member(small) && !member(big))
                fail(errc::not_monotone, "up-set member has a non-member superset (sampled)");
        } else {
            if (member(big) && !member(small))
                fail(errc::not_monotone, "down-set member has a non-member subset (sampled)");
        }
    }
}

} // namespace

MonotoneFamily MonotoneFamily::checked(GroundSet ground, Direction dir, Member member,
                                       std::uint64_t check_seed) {
    if (ground.size < 1) fail(errc::invalid_argument, "ground set must have N >= 1");
    if (ground.size <= 16)
        check_monotone_exhaustive(ground, dir, member);
    else
        check_monotone_sampled(ground, dir, member, check_seed);
    return MonotoneFamily(std::move(ground), dir, std::move(member));
}

MonotoneFamily MonotoneFamily::unchecked(GroundSet ground, Direction dir, Member member) {
    if (ground.size < 1) fail(errc::invalid_argument, "ground set must have N >= 1");
    return MonotoneFamily(std::move(ground), dir, std::move(member));
}

MonotoneFamily MonotoneFamily::from_members(GroundSet ground, Direction dir,
                                            std::vector<SubsetMask> members) {
    require_exact_ground(ground, "from_members");
    std::vector<std::uint64_t> packed;
    packed.reserve(members.size());
    for (const auto& m : members) {
        if (m.ground_size() != ground.size)
            fail(errc::invalid_argument, "member mask does not match ground size");
        packed.push_back(m.packed());
    }
    std::sort(packed.begin(), packed.end());
    packed.erase(std::unique(packed.begin(), packed.end()), packed.end());
    auto lookup = [packed](const SubsetMask& s) {
        return std::binary_search(packed.begin(), packed.end(), s.packed());
    };
    auto fam = checked(std::move(ground), dir, lookup);
    fam.enumeration_ = std::move(packed);
    return fam;
}

MonotoneFamily MonotoneFamily::from_generators(GroundSet ground, Direction dir,
                                               std::vector<SubsetMask> generators) {
    for (const auto& g : generators)
        if (g.ground_size() != ground.size)
            fail(errc::invalid_argument, "generator mask does not match ground size");
    auto member = [dir, generators](const SubsetMask& s) {
        for (const auto& g : generators) {
            if (dir == Direction::Up ? s.is_superset_of(g) : s.is_subset_of(g)) return true;
        }
        return false;
    };
    return unchecked(std::move(ground), dir, member);
}

MonotoneFamily MonotoneFamily::triangle_free(int n) {
    if (n < 2) fail(errc::invalid_argument, "triangle_free: need n >= 2");
    GroundSet g{edge_count_complete(n), "triangle-free graphs on [" + std::to_string(n) + "]"};
    auto member = [n](const SubsetMask& s) {
        return is_triangle_free(Graph::from_edge_mask(n, s));
    };
    return unchecked(std::move(g), Direction::Down, member);
}

bool MonotoneFamily::nontrivial() const {
    SubsetMask empty(ground_.size);
    SubsetMask full(ground_.size);
    for (int i = 0; i < ground_.size; ++i) full.set(i);
    bool has_empty = member_(empty);
    bool has_full = member_(full);
    if (direction_ == Direction::Up) {
        // nonempty iff X in F; proper iff {} not in F
        return has_full && !has_empty;
    }
    return has_empty && !has_full;
}

std::vector<std::uint64_t> size_profile(const MonotoneFamily& family) {
    require_exact_ground(family.ground(), "size_profile");
    const int n = family.ground().size;
    std::vector<std::uint64_t> counts(n + 1, 0);
    if (family.enumeration()) {
        for (std::uint64_t m : *family.enumeration()) counts[std::popcount(m)]++;
        return counts;
    }
    SubsetMask s(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        s.set_packed(mask);
        if (family.member(s)) counts[std::popcount(mask)]++;
    }
    return counts;
}

double mu_from_profile(const std::vector<std::uint64_t>& profile, int ground_size, double p) {
    if (p <= 0.0) return double(profile[0] != 0);
    if (p >= 1.0) return double(profile[ground_size] != 0);
    KahanSum sum;
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    for (int k = 0; k <= ground_size; ++k) {
        if (!profile[k]) continue;
        sum.add(double(profile[k]) * std::exp(k * lp + (ground_size - k) * lq));
    }
    double v = sum.value();
    return v < 0 ? 0 : (v > 1 ? 1 : v);
}

double mu_p_exact(const MonotoneFamily& family, double p) {
    if (p < 0 || p > 1) fail(errc::invalid_p, "mu_p_exact: p must lie in [0,1]");
    return mu_from_profile(size_profile(family), family.ground().size, p);
}

double threshold_exact(const MonotoneFamily& family, double tol) {
    require_exact_ground(family.ground(), "threshold_exact");
    if (tol <= 0) fail(errc::invalid_argument, "threshold_exact: tol must be positive");
    if (!family.nontrivial()) fail(errc::trivial_family, "threshold of {} or 2^X is undefined");
    const auto profile = size_profile(family);
    const int n = family.ground().size;
    const bool up = family.direction() == Direction::Up;
    double lo = 0.0, hi = 1.0;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        double mu = mu_from_profile(profile, n, mid);
        bool below = up ? (mu < 0.5) : (mu > 0.5);
        (below ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

SubsetMask sample_biased_mask(int ground_size, double p, Rng& rng) {
    SubsetMask s(ground_size);
    for (int i = 0; i < ground_size; ++i)
        if (rng.bernoulli(p)) s.set(i);
    return s;
}

MonteCarloEstimate mu_p_monte_carlo(const MonotoneFamily& family, double p,
                                    std::uint64_t trials, std::uint64_t seed) {
    if (p < 0 || p > 1) fail(errc::invalid_p, "mu_p_monte_carlo: p must lie in [0,1]");
    if (trials < 1) fail(errc::invalid_argument, "mu_p_monte_carlo: trials must be >= 1");
    const int n = family.ground().size;
    MonteCarloEstimate out;
    out.trials = trials;
    // degenerate p: the sample is deterministic, answer exactly
    if (p <= 0.0 || p >= 1.0) {
        SubsetMask s(n);
        if (p >= 1.0)
            for (int i = 0; i < n; ++i) s.set(i);
        bool in = family.member(s);
        out.estimate = in ? 1.0 : 0.0;
        out.per_trial.assign(trials, in ? 1 : 0);
        return out;
    }
    out.per_trial.assign(trials, 0);
    parallel_trials(trials, [&](std::uint64_t t) {
        Rng rng = Rng::substream(seed, t);
        SubsetMask s = sample_biased_mask(n, p, rng);
        out.per_trial[t] = family.member(s) ? 1 : 0;
    });
    std::uint64_t count = 0;
    for (std::uint64_t t = 0; t < trials; ++t) count += out.per_trial[t];
    out.estimate = double(count) / double(trials);
    out.half_width = proportion_half_width(out.estimate, trials);
    return out;
}

ThresholdMC threshold_monte_carlo(const MonotoneFamily& family, std::uint64_t trials_per_level,
                                  std::uint64_t seed, double tol) {
    if (trials_per_level < 1)
        fail(errc::invalid_argument, "threshold_monte_carlo: trials must be >= 1");
    if (tol <= 0) fail(errc::invalid_argument, "threshold_monte_carlo: tol must be positive");
    const bool up = family.direction() == Direction::Up;
    // sign test on the degenerate endpoints (evaluated exactly)
    const int n = family.ground().size;
    SubsetMask empty(n), full(n);
    for (int i = 0; i < n; ++i) full.set(i);
    double mu0 = family.member(empty) ? 1.0 : 0.0;
    double mu1 = family.member(full) ? 1.0 : 0.0;
    double want0 = up ? 0.0 : 1.0;
    if (mu0 != want0 || mu1 != 1.0 - want0)
        fail(errc::inconclusive,
             "initial bracket [0,1] fails the sign test; family looks trivial or mis-directed");

    ThresholdMC out;
    out.bracket_lo = 0.0;
    out.bracket_hi = 1.0;
    while (out.bracket_hi - out.bracket_lo > tol) {
        double mid = 0.5 * (out.bracket_lo + out.bracket_hi);
        auto est = mu_p_monte_carlo(family, mid, trials_per_level,
                                    Rng::substream_seed(seed, out.levels));
        out.levels++;
        out.mu_half_width = est.half_width;
        bool below = up ? (est.estimate < 0.5) : (est.estimate > 0.5);
        bool straddle = std::abs(est.estimate - 0.5) <= est.half_width;
        out.level_detail.push_back({mid, std::move(est)});
        if (straddle) {
            out.ci_straddle = true;
            break;
        }
        (below ? out.bracket_lo : out.bracket_hi) = mid;
    }
    out.p = 0.5 * (out.bracket_lo + out.bracket_hi);
    return out;
}

MonotoneFamily reflected_complement(const MonotoneFamily& family) {
    const int n = family.ground().size;
    GroundSet g{n, family.ground().label.empty() ? "" : family.ground().label + " (reflected complement)"};
    auto base = family; // copy keeps the predicate alive
    auto member = [base, n](const SubsetMask& s) {
        SubsetMask c(n);
        for (int i = 0; i < n; ++i)
            if (!s.test(i)) c.set(i);
        return !base.member(c);
    };
    return MonotoneFamily::unchecked(std::move(g), family.direction(), member);
}

} // namespace tlab

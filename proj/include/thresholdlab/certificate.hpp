#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "thresholdlab/family.hpp"

namespace tlab {

// A witness of p-smallness: F must lie inside the up/down closure of the
// members, and the weighted cost must come in at or below 1/2.
struct Certificate {
    GroundSet ground;
    std::vector<SubsetMask> members; // canonical: sorted by packed value, no duplicates

    static Certificate make(GroundSet ground, std::vector<SubsetMask> members);
};

struct FractionalCertificate {
    GroundSet ground;
    // parallel arrays, sorted by packed mask; zero weights dropped
    std::vector<SubsetMask> support;
    std::vector<double> weight;
};

struct CertVerdict {
    double cost = 0;
    bool covers = false;
    bool p_small = false; // covers && cost <= 1/2
};

// Up: sum p^|T|; Down: sum (1-p)^(N-|T|). Log-space terms, compensated sum.
double cert_cost(const Certificate& cert, double p, Direction dir);

// Exhaustive containment check (N <= 24): Down: every S in F is a subset of
// some member; Up: a superset.
bool covers(const Certificate& cert, const MonotoneFamily& family);

struct SampledCoverCheck {
    bool no_counterexample = true;
    std::uint64_t trials = 0;
    bool exhaustive = false;
};
// For ground sets too large to enumerate: p-biased sampling at 1/2.
SampledCoverCheck covers_sampled(const Certificate& cert, const MonotoneFamily& family,
                                 std::uint64_t trials, std::uint64_t seed);

CertVerdict evaluate_certificate(const Certificate& cert, const MonotoneFamily& family, double p);

// Minimum-cost covering certificate at a fixed p (exact branch-and-bound
// over all candidate subsets of X; N <= 4).
struct MinCover {
    double cost = 0;
    Certificate certificate;
};
MinCover min_cover_cost(const MonotoneFamily& family, double p);

struct ThresholdResult {
    double p = 0; // bracket midpoint
    double bracket_lo = 0;
    double bracket_hi = 1;
};

struct QExactResult : ThresholdResult {
    Certificate witness; // optimal cover at the p-small end of the bracket
};

// Expectation-threshold: smallest (Down) / largest (Up) p at which the family
// is p-small; outer bisection over the monotone cost, inner exact cover
// search. N <= 4.
QExactResult q_exact(const MonotoneFamily& family, double tol = 1e-6);

struct LpCoverResult {
    double value = 0;
    FractionalCertificate g;
    bool used_exact_fallback = false;
};

// Minimum of sum_T g(T) w(T) over fractional covers g >= 0 with unit
// coverage of every member; weights indexed by packed mask (size 2^N). N <= 5.
LpCoverResult lp_min_cover(const MonotoneFamily& family, std::span<const double> weights);

struct QfExactResult : ThresholdResult {
    FractionalCertificate witness;
};

// Fractional expectation-threshold via LP in the inner loop. N <= 5.
QfExactResult qf_exact(const MonotoneFamily& family, double tol = 1e-6);

struct SandwichReport {
    Direction direction = Direction::Down;
    double p_c = 0;
    double q_f = 0;
    double q = 0;
    bool pass = false;
    double tol = 1e-5;
};

// Checks p_c <= q_f <= q (Down) or q <= q_f <= p_c (Up) within tol. N <= 4.
SandwichReport verify_sandwich(const MonotoneFamily& family, double tol = 1e-5);

// Antichain views of the family, needed by the cover search. N <= 24 in
// principle, intended for tiny N.
std::vector<std::uint64_t> maximal_members(const MonotoneFamily& family);
std::vector<std::uint64_t> minimal_members(const MonotoneFamily& family);

} // namespace tlab

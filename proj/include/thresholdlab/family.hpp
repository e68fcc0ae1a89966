#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "thresholdlab/rng.hpp"
#include "thresholdlab/subset.hpp"

namespace tlab {

enum class Direction { Up, Down };

inline const char* direction_name(Direction d) { return d == Direction::Up ? "up" : "down"; }

// A monotone family over 2^X: a membership oracle plus its declared
// direction. Immutable after construction; the predicate must be pure.
class MonotoneFamily {
public:
    using Member = std::function<bool(const SubsetMask&)>;

    // Validates monotone consistency: exhaustively for N <= 16, by 10^4
    // sampled comparable pairs otherwise. Throws not_monotone.
    static MonotoneFamily checked(GroundSet ground, Direction dir, Member member,
                                  std::uint64_t check_seed = 0);

    // For families monotone by construction (closures, builtins).
    static MonotoneFamily unchecked(GroundSet ground, Direction dir, Member member);

    // Explicit member list; masks must all match the ground size. The list
    // itself is the family and is checked for monotone consistency.
    static MonotoneFamily from_members(GroundSet ground, Direction dir,
                                       std::vector<SubsetMask> members);

    // Up: supersets of some generator; Down: subsets of some generator.
    static MonotoneFamily from_generators(GroundSet ground, Direction dir,
                                          std::vector<SubsetMask> generators);

    // The down-set of triangle-free graphs on [n]; ground set E(K_n).
    static MonotoneFamily triangle_free(int n);

    const GroundSet& ground() const { return ground_; }
    Direction direction() const { return direction_; }
    bool member(const SubsetMask& s) const { return member_(s); }
    const std::optional<std::vector<std::uint64_t>>& enumeration() const { return enumeration_; }

    // F != {} and F != 2^X, decided from the empty and full sets alone.
    bool nontrivial() const;

private:
    MonotoneFamily(GroundSet g, Direction d, Member m)
        : ground_(std::move(g)), direction_(d), member_(std::move(m)) {}

    GroundSet ground_;
    Direction direction_;
    Member member_;
    std::optional<std::vector<std::uint64_t>> enumeration_; // sorted packed masks
};

// Member counts grouped by |S|; profile[k] = #{S in F : |S| = k}. N <= 24.
std::vector<std::uint64_t> size_profile(const MonotoneFamily& family);

double mu_from_profile(const std::vector<std::uint64_t>& profile, int ground_size, double p);

// mu_p(F) = sum over members of p^|S| (1-p)^(N-|S|), exact. N <= 24.
double mu_p_exact(const MonotoneFamily& family, double p);

// The unique p with mu_p(F) = 1/2, bisected to bracket width <= tol.
double threshold_exact(const MonotoneFamily& family, double tol = 1e-6);

struct MonteCarloEstimate {
    double estimate = 0;
    double half_width = 0; // 95% normal approximation
    std::uint64_t trials = 0;
    std::vector<std::uint8_t> per_trial; // membership indicators, trial order
};

MonteCarloEstimate mu_p_monte_carlo(const MonotoneFamily& family, double p,
                                    std::uint64_t trials, std::uint64_t seed);

struct ThresholdLevel {
    double p_probe = 0;
    MonteCarloEstimate estimate;
};

struct ThresholdMC {
    double p = 0;           // bracket midpoint
    double bracket_lo = 0;
    double bracket_hi = 1;
    double mu_half_width = 0; // half-width of the final level's estimate
    int levels = 0;
    bool ci_straddle = false; // stopped because the CI straddled 1/2
    std::vector<ThresholdLevel> level_detail;
};

// CI-aware bisection for p_c; refinement halts once the probe's confidence
// interval straddles 1/2 or the bracket reaches tol.
ThresholdMC threshold_monte_carlo(const MonotoneFamily& family, std::uint64_t trials_per_level,
                                  std::uint64_t seed, double tol = 1e-2);

// G = {S : X\S not in F}; satisfies p_c(G) = 1 - p_c(F). Note G has the
// same direction as F (it is the reflection of F's complement family).
MonotoneFamily reflected_complement(const MonotoneFamily& family);

// Per-trial p-biased sample of the ground set, from the trial substream.
SubsetMask sample_biased_mask(int ground_size, double p, Rng& rng);

} // namespace tlab

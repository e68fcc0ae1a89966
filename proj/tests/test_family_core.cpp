#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "thresholdlab/error.hpp"
#include "thresholdlab/parallel.hpp"

using namespace tlab;
using namespace tsup;

namespace {

MonotoneFamily singleton_upset(int n) {
    return MonotoneFamily::from_generators(GroundSet{n, ""}, Direction::Up,
                                           {SubsetMask(n, 1)});
}

// down-set {{}, {1}, {2}} on N = 2
MonotoneFamily two_singletons_down() {
    return MonotoneFamily::from_members(
        GroundSet{2, ""}, Direction::Down,
        {SubsetMask(2, 0b00), SubsetMask(2, 0b01), SubsetMask(2, 0b10)});
}

} // namespace

TEST_CASE("mu_p_exact: worked examples") {
    // up-set generated by a singleton: mu_p = p
    auto up = singleton_upset(3);
    CHECK(mu_p_exact(up, 0.3) == doctest::Approx(0.3).epsilon(1e-12));

    // T_3 at 1/2: everything except K_3
    auto t3 = MonotoneFamily::triangle_free(3);
    CHECK(t3.ground().size == 3);
    CHECK(mu_p_exact(t3, 0.5) == doctest::Approx(0.875).epsilon(1e-12));

    // single-member family {{}}: (1-p)^N
    auto just_empty = MonotoneFamily::from_members(GroundSet{3, ""}, Direction::Down,
                                                   {SubsetMask(3, 0)});
    CHECK(mu_p_exact(just_empty, 0.25) == doctest::Approx(std::pow(0.75, 3)).epsilon(1e-12));
}

TEST_CASE("mu_p_exact agrees with the one-term-per-member oracle") {
    auto t4 = MonotoneFamily::triangle_free(4);
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9})
        CHECK(mu_p_exact(t4, p) == doctest::Approx(oracle_mu(t4, p)).epsilon(1e-12));
    auto down = two_singletons_down();
    for (double p : {0.2, 0.8})
        CHECK(mu_p_exact(down, p) == doctest::Approx(oracle_mu(down, p)).epsilon(1e-12));
}

TEST_CASE("threshold_exact: analytic roots") {
    CHECK(threshold_exact(singleton_upset(3)) == doctest::Approx(0.5).epsilon(1e-5));
    // 1 - p^2 = 1/2
    CHECK(threshold_exact(two_singletons_down()) ==
          doctest::Approx(0.7071067811865476).epsilon(1e-5));
    // 1 - p^3 = 1/2
    CHECK(threshold_exact(MonotoneFamily::triangle_free(3)) ==
          doctest::Approx(0.7937005259840998).epsilon(1e-5));
}

TEST_CASE("threshold_exact rejects trivial families") {
    auto empty = MonotoneFamily::from_members(GroundSet{2, ""}, Direction::Down, {});
    CHECK_FALSE(empty.nontrivial());
    CHECK_THROWS_AS(threshold_exact(empty), Error);
    auto full = MonotoneFamily::from_generators(GroundSet{2, ""}, Direction::Up,
                                                {SubsetMask(2, 0)});
    CHECK_FALSE(full.nontrivial());
    CHECK_THROWS_AS(threshold_exact(full), Error);
}

TEST_CASE("monotone consistency is enforced at construction") {
    // {1} without its subset {} is not down-closed
    CHECK_THROWS_AS(MonotoneFamily::from_members(GroundSet{2, ""}, Direction::Down,
                                                 {SubsetMask(2, 0b01)}),
                    Error);
    // and the same list is fine as an up-set
    CHECK_NOTHROW(MonotoneFamily::from_members(
        GroundSet{2, ""}, Direction::Up, {SubsetMask(2, 0b01), SubsetMask(2, 0b11)}));
    // sampled check path (N > 16): a deliberately non-monotone predicate
    auto parity = [](const SubsetMask& s) { return s.count() % 2 == 0; };
    CHECK_THROWS_AS(MonotoneFamily::checked(GroundSet{20, ""}, Direction::Up, parity, 1),
                    Error);
}

TEST_CASE("ground sets above the exact limit are rejected for exact ops") {
    auto big = MonotoneFamily::triangle_free(8); // N = 28 > 24
    CHECK_THROWS_AS(mu_p_exact(big, 0.5), Error);
    CHECK_THROWS_AS(threshold_exact(big), Error);
}

TEST_CASE("all monotone families on N = 3, 4: counts and mu monotonicity") {
    for (int n : {3, 4}) {
        auto downs = all_downset_masks(n);
        CHECK(downs.size() == (n == 3 ? 20u : 168u)); // Dedekind numbers
        for (std::uint32_t fm : downs) {
            if (family_mask_trivial(fm, n)) continue;
            auto fam = family_from_mask(fm, n, Direction::Down);
            double prev = 1.1;
            for (double p : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
                double mu = mu_p_exact(fam, p);
                CHECK(mu <= prev + 1e-12); // decreasing for down-sets
                prev = mu;
            }
            // the reflected complement is monotone the same way and mirrors p_c
            auto refl = reflected_complement(fam);
            CHECK(threshold_exact(refl) ==
                  doctest::Approx(1.0 - threshold_exact(fam)).epsilon(1e-5));
        }
    }
}

TEST_CASE("up-direction mu is increasing (reflected families)") {
    for (std::uint32_t fm : all_downset_masks(3)) {
        if (family_mask_trivial(fm, 3)) continue;
        auto up = family_from_mask(reflect_mask(fm, 3), 3, Direction::Up);
        double prev = -0.1;
        for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            double mu = mu_p_exact(up, p);
            CHECK(mu >= prev - 1e-12);
            prev = mu;
        }
    }
}

TEST_CASE("mu_p_monte_carlo: degenerate p answered exactly") {
    auto t3 = MonotoneFamily::triangle_free(3);
    auto at0 = mu_p_monte_carlo(t3, 0.0, 50, 1);
    CHECK(at0.estimate == 1.0); // empty graph is triangle-free
    CHECK(at0.half_width == 0.0);
    auto at1 = mu_p_monte_carlo(t3, 1.0, 50, 1);
    CHECK(at1.estimate == 0.0); // K_3 is not
}

TEST_CASE("mu_p_monte_carlo: worked examples at 1e5 trials") {
    auto up = singleton_upset(3);
    auto est = mu_p_monte_carlo(up, 0.3, 100000, 42);
    CHECK(std::abs(est.estimate - 0.3) < 0.01);

    auto t3 = MonotoneFamily::triangle_free(3);
    auto est3 = mu_p_monte_carlo(t3, 0.5, 100000, 43);
    CHECK(std::abs(est3.estimate - 0.875) < 0.01);
}

TEST_CASE("mu_p_monte_carlo converges: 4-half-width coverage over 100 seeds") {
    auto t4 = MonotoneFamily::triangle_free(4); // N = 6
    double exact = mu_p_exact(t4, 0.4);
    int covered = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        auto est = mu_p_monte_carlo(t4, 0.4, 2000, 1000 + s);
        if (std::abs(est.estimate - exact) <= 4.0 * est.half_width) ++covered;
    }
    CHECK(covered >= 99);
}

TEST_CASE("mu_p_monte_carlo is deterministic across thread counts") {
    auto t5 = MonotoneFamily::triangle_free(5);
    set_worker_threads(1);
    auto a = mu_p_monte_carlo(t5, 0.3, 5000, 7);
    set_worker_threads(4);
    auto b = mu_p_monte_carlo(t5, 0.3, 5000, 7);
    set_worker_threads(1);
    CHECK(a.estimate == b.estimate);
    CHECK(a.per_trial == b.per_trial);
}

TEST_CASE("threshold_monte_carlo: worked examples") {
    auto up = singleton_upset(3);
    auto r = threshold_monte_carlo(up, 20000, 11, 0.01);
    CHECK(std::abs(r.p - 0.5) < 0.02);

    auto t3 = MonotoneFamily::triangle_free(3);
    auto r3 = threshold_monte_carlo(t3, 20000, 12, 0.01);
    CHECK(std::abs(r3.p - 0.7937) < 0.02);
}

TEST_CASE("threshold_monte_carlo on T_16, decreasing to T_32") {
    auto t16 = MonotoneFamily::triangle_free(16);
    auto r16 = threshold_monte_carlo(t16, 2000, 5, 0.01);
    CHECK(r16.p > 0.0);
    CHECK(r16.p < 1.0);
    auto t32 = MonotoneFamily::triangle_free(32);
    auto r32 = threshold_monte_carlo(t32, 2000, 5, 0.01);
    CHECK(r32.p < r16.p);
}

TEST_CASE("threshold_monte_carlo: sign test failure is Inconclusive") {
    // declared Down but the empty set is not a member
    auto bogus = MonotoneFamily::unchecked(GroundSet{30, ""}, Direction::Down,
                                           [](const SubsetMask& s) { return s.count() > 3; });
    CHECK_THROWS_AS(threshold_monte_carlo(bogus, 100, 1, 0.01), Error);
    try {
        threshold_monte_carlo(bogus, 100, 1, 0.01);
    } catch (const Error& e) {
        CHECK(e.code() == errc::inconclusive);
    }
}

TEST_CASE("bitstring round trip") {
    auto m = SubsetMask::from_bitstring("0110");
    CHECK(m.ground_size() == 4);
    CHECK(m.count() == 2);
    CHECK(m.test(1));
    CHECK(m.test(2));
    CHECK(m.to_bitstring() == "0110");
    CHECK_THROWS_AS(SubsetMask::from_bitstring("01x"), Error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "thresholdlab/bitset.hpp"
#include "thresholdlab/parallel.hpp"
#include "thresholdlab/rng.hpp"
#include "thresholdlab/stats.hpp"

using namespace tlab;

TEST_CASE("rng: random access equals the sequential stream") {
    Rng a(12345), b(12345);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.at(i));
}

TEST_CASE("rng: substreams are deterministic and distinct") {
    CHECK(Rng::substream_seed(7, 0) == Rng::substream_seed(7, 0));
    CHECK(Rng::substream_seed(7, 0) != Rng::substream_seed(7, 1));
    CHECK(Rng::substream_seed(7, 0) != Rng::substream_seed(8, 0));
    // adjacent substreams should not share early values
    Rng s0 = Rng::substream(7, 0), s1 = Rng::substream(7, 1);
    int same = 0;
    for (int i = 0; i < 64; ++i) same += s0.next() == s1.next();
    CHECK(same == 0);
}

TEST_CASE("rng: uniform01 lies in [0,1) and has the right mean") {
    Rng r(99);
    double sum = 0;
    for (int i = 0; i < 100000; ++i) {
        double u = r.next_double();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / 100000 - 0.5) < 0.005);
}

TEST_CASE("rng: bernoulli endpoints are exact") {
    Rng r(5);
    for (int i = 0; i < 1000; ++i) {
        CHECK_FALSE(r.bernoulli(0.0));
        CHECK(r.bernoulli(1.0));
    }
}

TEST_CASE("rng: shuffle is a permutation") {
    Rng r(17);
    std::vector<int> v{0, 1, 2, 3, 4, 5, 6, 7};
    r.shuffle(v);
    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});
}

TEST_CASE("kahan: survives catastrophic cancellation") {
    KahanSum s;
    s.add(1e16);
    s.add(1.0);
    s.add(-1e16);
    CHECK(s.value() == doctest::Approx(1.0));
}

TEST_CASE("log-sum-exp: matches direct computation and resists overflow") {
    LogSumExp l;
    l.add(0.0);
    l.add(0.0);
    CHECK(l.value() == doctest::Approx(std::log(2.0)));
    CHECK(l.log_mean() == doctest::Approx(0.0));

    LogSumExp big;
    big.add(1000.0);
    big.add(1000.0);
    big.add(999.0);
    double expect = 1000.0 + std::log(2.0 + std::exp(-1.0));
    CHECK(big.value() == doctest::Approx(expect));

    LogSumExp shuffled; // same values, different order
    shuffled.add(999.0);
    shuffled.add(1000.0);
    shuffled.add(1000.0);
    CHECK(shuffled.value() == doctest::Approx(expect));
}

TEST_CASE("chi2 survival function matches standard critical values") {
    CHECK(chi2_sf(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-6));
    CHECK(chi2_sf(5.991464547107979, 2) == doctest::Approx(0.05).epsilon(1e-6));
    CHECK(chi2_sf(7.814727903251179, 3) == doctest::Approx(0.05).epsilon(1e-6));
    CHECK(chi2_sf(9.487729036781154, 4) == doctest::Approx(0.05).epsilon(1e-6));
    CHECK(chi2_sf(0.0, 3) == doctest::Approx(1.0));
    CHECK(chi2_sf(1.0, 3) > chi2_sf(2.0, 3));
}

TEST_CASE("log_binomial") {
    CHECK(log_binomial(10, 3) == doctest::Approx(std::log(120.0)));
    CHECK(log_binomial(4, 0) == doctest::Approx(0.0));
    CHECK(std::isinf(log_binomial(4, 5)));
    CHECK(log_binomial(4, 5) < 0);
}

TEST_CASE("bitset: ops and iteration order") {
    Bitset b(130);
    b.set(0);
    b.set(64);
    b.set(129);
    CHECK(b.count() == 3);
    std::vector<int> seen;
    b.for_each([&](int i) { seen.push_back(i); });
    CHECK(seen == std::vector<int>{0, 64, 129});

    Bitset c(130);
    c.set(64);
    CHECK(c.is_subset_of(b));
    CHECK_FALSE(b.is_subset_of(c));
    CHECK(b.intersects(c));
    CHECK((b - c).count() == 2);
    CHECK((b & c).count() == 1);
    CHECK((b | c).count() == 3);
}

TEST_CASE("parallel_trials: every slot written once, any thread count") {
    std::vector<std::uint64_t> want(1000);
    for (std::uint64_t t = 0; t < 1000; ++t) want[t] = t * t;
    for (int threads : {1, 2, 8}) {
        set_worker_threads(threads);
        std::vector<std::uint64_t> got(1000, 0);
        parallel_trials(1000, [&](std::uint64_t t) { got[t] = t * t; });
        CHECK(got == want);
    }
    set_worker_threads(1);
}

TEST_CASE("proportion half width") {
    CHECK(proportion_half_width(0.5, 10000) == doctest::Approx(1.96 * 0.005));
    CHECK(proportion_half_width(0.0, 100) == doctest::Approx(0.0));
}

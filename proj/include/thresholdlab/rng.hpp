#pragma once

#include <cstdint>
#include <vector>

namespace tlab {

// Counter-based pseudorandom stream. The k-th output is a pure function of
// (seed, k): out(k) = mix64(seed + (k+1)*GOLDEN), where mix64 is the splitmix64
// finalizer. Sequential next() and random-access at(k) therefore see the same
// stream, which is what makes trial-parallel sampling order-invariant.
class Rng {
public:
    static constexpr std::uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL;

    static std::uint64_t mix64(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    // Substream seed for (master, index): both words are avalanched so that
    // neighbouring indices give unrelated streams.
    static std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
        return mix64(mix64(master ^ 0x6A09E667F3BCC909ULL) + index * GOLDEN);
    }

    explicit Rng(std::uint64_t seed) : seed_(seed) {}

    static Rng substream(std::uint64_t master, std::uint64_t index) {
        return Rng(substream_seed(master, index));
    }

    std::uint64_t at(std::uint64_t k) const { return mix64(seed_ + (k + 1) * GOLDEN); }

    std::uint64_t next() { return at(counter_++); }

    // [0,1), 53-bit resolution
    double next_double() { return double(next() >> 11) * 0x1.0p-53; }
    double double_at(std::uint64_t k) const { return double(at(k) >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }
    bool bernoulli_at(std::uint64_t k, double p) const { return double_at(k) < p; }

    // uniform in [0, bound), bound >= 1; rejection-free Lemire reduction is
    // avoided on purpose: the multiply-shift map is reproducible and the bias
    // (< 2^-53 for desk-scale bounds) is irrelevant here
    std::uint64_t below(std::uint64_t bound) {
        return std::uint64_t(next_double() * double(bound));
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = std::size_t(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

} // namespace tlab

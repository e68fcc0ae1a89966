#pragma once

#include <cstdint>
#include <string>

#include "thresholdlab/bitset.hpp"
#include "thresholdlab/error.hpp"

namespace tlab {

// Exact enumeration over 2^X is only offered up to this ground-set size.
inline constexpr int MAX_EXACT_GROUND = 24;

struct GroundSet {
    int size = 0;
    std::string label;
};

inline void require_exact_ground(const GroundSet& g, const char* op) {
    if (g.size > MAX_EXACT_GROUND)
        fail(errc::ground_set_too_large,
             std::string(op) + ": ground set size " + std::to_string(g.size) + " exceeds " +
                 std::to_string(MAX_EXACT_GROUND));
}

// A subset of a ground set of size N, as an N-bit value. For N <= 64 the
// packed word form (uint64) is used on hot paths; the Bitset form covers
// arbitrary N (e.g. edge sets of K_n for n = 64, N = 2016).
class SubsetMask {
public:
    SubsetMask() = default;
    explicit SubsetMask(int nbits) : bits_(nbits) {}
    SubsetMask(int nbits, std::uint64_t packed) : bits_(nbits) {
        for (int i = 0; i < nbits && i < 64; ++i)
            if ((packed >> i) & 1) bits_.set(i);
    }

    int ground_size() const { return bits_.size(); }
    bool test(int i) const { return bits_.test(i); }
    void set(int i) { bits_.set(i); }
    void reset(int i) { bits_.reset(i); }
    void assign(int i, bool v) { bits_.assign(i, v); }
    void clear() { bits_.clear(); }
    int count() const { return bits_.count(); }

    bool is_subset_of(const SubsetMask& o) const { return bits_.is_subset_of(o.bits_); }
    bool is_superset_of(const SubsetMask& o) const { return o.bits_.is_subset_of(bits_); }

    std::uint64_t packed() const {
        // callers guarantee ground_size() <= 64
        return bits_.words() ? bits_.word(0) : 0;
    }
    void set_packed(std::uint64_t v) {
        if (bits_.words()) bits_.set_word(0, v);
    }

    const Bitset& bits() const { return bits_; }
    Bitset& bits() { return bits_; }

    friend bool operator==(const SubsetMask& a, const SubsetMask& b) {
        return a.bits_ == b.bits_;
    }

    // "0110...": character i (leftmost = element 0) is element i's membership
    std::string to_bitstring() const {
        std::string s(ground_size(), '0');
        for (int i = 0; i < ground_size(); ++i)
            if (test(i)) s[i] = '1';
        return s;
    }

    static SubsetMask from_bitstring(const std::string& s) {
        SubsetMask m(int(s.size()));
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1') m.set(int(i));
            else if (s[i] != '0')
                fail(errc::config_invalid, "bitstring must contain only '0'/'1'");
        }
        return m;
    }

private:
    Bitset bits_;
};

} // namespace tlab

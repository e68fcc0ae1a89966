#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tlab {

// Unsigned arbitrary-precision integer, little-endian 64-bit limbs, no
// trailing zero limbs. Only what the exact simplex fallback needs.
class BigUint {
public:
    BigUint() = default;
    BigUint(std::uint64_t v) { // NOLINT(google-explicit-constructor)
        if (v) limbs_.push_back(v);
    }

    bool is_zero() const { return limbs_.empty(); }
    bool is_odd() const { return !limbs_.empty() && (limbs_[0] & 1); }

    static int compare(const BigUint& a, const BigUint& b);

    friend bool operator==(const BigUint& a, const BigUint& b) { return compare(a, b) == 0; }
    friend bool operator<(const BigUint& a, const BigUint& b) { return compare(a, b) < 0; }

    friend BigUint operator+(const BigUint& a, const BigUint& b);
    // requires a >= b
    friend BigUint operator-(const BigUint& a, const BigUint& b);
    friend BigUint operator*(const BigUint& a, const BigUint& b);

    BigUint shifted_left(unsigned bits) const;
    BigUint shifted_right(unsigned bits) const;

    std::size_t bit_length() const;
    bool bit(std::size_t i) const;

    // quotient and remainder; divisor must be nonzero
    static std::pair<BigUint, BigUint> divmod(const BigUint& a, const BigUint& b);
    static BigUint gcd(BigUint a, BigUint b); // binary gcd

    double to_double() const;
    std::string to_string() const; // decimal, for diagnostics

private:
    void trim();
    std::vector<std::uint64_t> limbs_;
};

// Sign-magnitude rational, always gcd-normalised with positive denominator.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t v);                  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t num, std::int64_t den);
    Rational(int sign, BigUint num, BigUint den);

    // exact conversion: every finite double is m * 2^e
    static Rational from_double_exact(double d);

    int sign() const { return sign_; }
    bool is_zero() const { return sign_ == 0; }

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational operator-() const;

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    static int compare(const Rational& a, const Rational& b);
    friend bool operator==(const Rational& a, const Rational& b) { return compare(a, b) == 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return compare(a, b) != 0; }
    friend bool operator<(const Rational& a, const Rational& b) { return compare(a, b) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return compare(a, b) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return compare(a, b) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return compare(a, b) >= 0; }

    double to_double() const;
    std::string to_string() const;

private:
    void normalise();
    int sign_ = 0; // -1, 0, +1
    BigUint num_;
    BigUint den_;
};

} // namespace tlab

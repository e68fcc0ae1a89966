#include "thresholdlab/rational.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace { using u128 = unsigned __int128; }

namespace tlab {

void BigUint::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

int BigUint::compare(const BigUint& a, const BigUint& b) {
    if (a.limbs_.size() != b.limbs_.size())
        return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
    for (std::size_t i = a.limbs_.size(); i-- > 0;) {
        if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
    }
    return 0;
}

BigUint operator+(const BigUint& a, const BigUint& b) {
    BigUint out;
    const auto &x = a.limbs_, &y = b.limbs_;
    std::size_t n = std::max(x.size(), y.size());
    out.limbs_.resize(n, 0);
    u128 carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
        u128 s = carry;
        if (i < x.size()) s += x[i];
        if (i < y.size()) s += y[i];
        out.limbs_[i] = std::uint64_t(s);
        carry = s >> 64;
    }
    if (carry) out.limbs_.push_back(std::uint64_t(carry));
    return out;
}

BigUint operator-(const BigUint& a, const BigUint& b) {
    if (BigUint::compare(a, b) < 0) throw std::logic_error("BigUint underflow");
    BigUint out;
    out.limbs_.resize(a.limbs_.size(), 0);
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
        u128 lhs = a.limbs_[i];
        u128 rhs = (i < b.limbs_.size() ? b.limbs_[i] : 0);
        rhs += std::uint64_t(borrow);
        if (lhs >= rhs) {
            out.limbs_[i] = std::uint64_t(lhs - rhs);
            borrow = 0;
        } else {
            out.limbs_[i] = std::uint64_t((u128(1) << 64) + lhs - rhs);
            borrow = 1;
        }
    }
    out.trim();
    return out;
}

BigUint operator*(const BigUint& a, const BigUint& b) {
    if (a.is_zero() || b.is_zero()) return BigUint();
    BigUint out;
    out.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
        u128 carry = 0;
        for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
            u128 cur = out.limbs_[i + j];
            cur += u128(a.limbs_[i]) * b.limbs_[j];
            cur += carry;
            out.limbs_[i + j] = std::uint64_t(cur);
            carry = cur >> 64;
        }
        std::size_t k = i + b.limbs_.size();
        while (carry) {
            u128 cur = out.limbs_[k] + carry;
            out.limbs_[k] = std::uint64_t(cur);
            carry = cur >> 64;
            ++k;
        }
    }
    out.trim();
    return out;
}

BigUint BigUint::shifted_left(unsigned bits) const {
    if (is_zero() || bits == 0) {
        BigUint c = *this;
        return c;
    }
    unsigned limb_shift = bits / 64, bit_shift = bits % 64;
    BigUint out;
    out.limbs_.assign(limbs_.size() + limb_shift + 1, 0);
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        out.limbs_[i + limb_shift] |= bit_shift ? (limbs_[i] << bit_shift) : limbs_[i];
        if (bit_shift) out.limbs_[i + limb_shift + 1] |= limbs_[i] >> (64 - bit_shift);
    }
    out.trim();
    return out;
}

BigUint BigUint::shifted_right(unsigned bits) const {
    unsigned limb_shift = bits / 64, bit_shift = bits % 64;
    if (limb_shift >= limbs_.size()) return BigUint();
    BigUint out;
    out.limbs_.assign(limbs_.size() - limb_shift, 0);
    for (std::size_t i = 0; i < out.limbs_.size(); ++i) {
        out.limbs_[i] = limbs_[i + limb_shift] >> bit_shift;
        if (bit_shift && i + limb_shift + 1 < limbs_.size())
            out.limbs_[i] |= limbs_[i + limb_shift + 1] << (64 - bit_shift);
    }
    out.trim();
    return out;
}

std::size_t BigUint::bit_length() const {
    if (limbs_.empty()) return 0;
    return 64 * (limbs_.size() - 1) + (64 - std::countl_zero(limbs_.back()));
}

bool BigUint::bit(std::size_t i) const {
    std::size_t limb = i / 64;
    if (limb >= limbs_.size()) return false;
    return (limbs_[limb] >> (i % 64)) & 1;
}

std::pair<BigUint, BigUint> BigUint::divmod(const BigUint& a, const BigUint& b) {
    if (b.is_zero()) throw std::logic_error("BigUint division by zero");
    if (compare(a, b) < 0) return {BigUint(), a};
    BigUint q, r;
    q.limbs_.assign(a.limbs_.size(), 0);
    for (std::size_t i = a.bit_length(); i-- > 0;) {
        r = r.shifted_left(1);
        if (a.bit(i)) {
            if (r.limbs_.empty()) r.limbs_.push_back(1);
            else r.limbs_[0] |= 1;
        }
        if (compare(r, b) >= 0) {
            r = r - b;
            q.limbs_[i / 64] |= std::uint64_t(1) << (i % 64);
        }
    }
    q.trim();
    return {q, r};
}

BigUint BigUint::gcd(BigUint a, BigUint b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    unsigned shift = 0;
    while (!a.is_odd() && !b.is_odd()) {
        a = a.shifted_right(1);
        b = b.shifted_right(1);
        ++shift;
    }
    while (!a.is_odd()) a = a.shifted_right(1);
    while (true) {
        while (!b.is_odd()) b = b.shifted_right(1);
        if (compare(a, b) > 0) std::swap(a, b);
        b = b - a;
        if (b.is_zero()) break;
    }
    return a.shifted_left(shift);
}

double BigUint::to_double() const {
    double out = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;)
        out = out * 0x1.0p64 + double(limbs_[i]);
    return out;
}

std::string BigUint::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    BigUint cur = *this;
    const BigUint ten(10);
    while (!cur.is_zero()) {
        auto [q, r] = divmod(cur, ten);
        out.push_back(char('0' + (r.is_zero() ? 0 : r.limbs_[0])));
        cur = q;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

Rational::Rational(std::int64_t v) : Rational(v, 1) {}

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::logic_error("Rational: zero denominator");
    int s = 1;
    if (num < 0) {
        s = -s;
        num = -num;
    }
    if (den < 0) {
        s = -s;
        den = -den;
    }
    sign_ = num == 0 ? 0 : s;
    num_ = BigUint(std::uint64_t(num));
    den_ = BigUint(std::uint64_t(den));
    normalise();
}

Rational::Rational(int sign, BigUint num, BigUint den) : sign_(sign), num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::logic_error("Rational: zero denominator");
    if (num_.is_zero()) sign_ = 0;
    normalise();
}

void Rational::normalise() {
    if (sign_ == 0) {
        num_ = BigUint();
        den_ = BigUint(1);
        return;
    }
    BigUint g = BigUint::gcd(num_, den_);
    if (!(g == BigUint(1))) {
        num_ = BigUint::divmod(num_, g).first;
        den_ = BigUint::divmod(den_, g).first;
    }
}

Rational Rational::from_double_exact(double d) {
    if (!std::isfinite(d)) throw std::logic_error("Rational: non-finite double");
    if (d == 0.0) return Rational();
    int sign = d < 0 ? -1 : 1;
    d = std::abs(d);
    int exp;
    double mant = std::frexp(d, &exp); // d = mant * 2^exp, mant in [0.5, 1)
    auto mant_int = std::uint64_t(std::ldexp(mant, 53));
    exp -= 53;
    BigUint num(mant_int), den(1);
    if (exp >= 0)
        num = num.shifted_left(unsigned(exp));
    else
        den = den.shifted_left(unsigned(-exp));
    return Rational(sign, std::move(num), std::move(den));
}

Rational Rational::operator-() const {
    Rational out = *this;
    out.sign_ = -out.sign_;
    return out;
}

Rational operator+(const Rational& a, const Rational& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    BigUint lhs = a.num_ * b.den_;
    BigUint rhs = b.num_ * a.den_;
    BigUint den = a.den_ * b.den_;
    if (a.sign_ == b.sign_) return Rational(a.sign_, lhs + rhs, std::move(den));
    int cmp = BigUint::compare(lhs, rhs);
    if (cmp == 0) return Rational();
    return cmp > 0 ? Rational(a.sign_, lhs - rhs, std::move(den))
                   : Rational(b.sign_, rhs - lhs, std::move(den));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return Rational();
    return Rational(a.sign_ * b.sign_, a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.sign_ == 0) throw std::logic_error("Rational: division by zero");
    if (a.sign_ == 0) return Rational();
    return Rational(a.sign_ * b.sign_, a.num_ * b.den_, a.den_ * b.num_);
}

int Rational::compare(const Rational& a, const Rational& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
    if (a.sign_ == 0) return 0;
    int mag = BigUint::compare(a.num_ * b.den_, b.num_ * a.den_);
    return a.sign_ > 0 ? mag : -mag;
}

double Rational::to_double() const {
    if (sign_ == 0) return 0.0;
    // scale so the quotient keeps ~80 significant bits
    std::size_t nb = num_.bit_length(), db = den_.bit_length();
    long shift = long(db) - long(nb) + 80;
    BigUint scaled = shift >= 0 ? num_.shifted_left(unsigned(shift)) : num_.shifted_right(unsigned(-shift));
    BigUint q = BigUint::divmod(scaled, den_).first;
    double out = std::ldexp(q.to_double(), int(-shift));
    return sign_ > 0 ? out : -out;
}

std::string Rational::to_string() const {
    if (sign_ == 0) return "0";
    std::string s = num_.to_string() + "/" + den_.to_string();
    return sign_ > 0 ? s : "-" + s;
}

} // namespace tlab

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace tlab {

// Kahan-Neumaier compensated accumulator.
class KahanSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Streaming log-sum-exp: after add(x_1..x_T), value() = log(sum_t exp(x_t)).
// Keeps a running maximum and rescales the partial sum when it moves.
class LogSumExp {
public:
    void add(double x) {
        if (n_ == 0 || x > max_) {
            if (n_ > 0) scaled_ = scaled_ * std::exp(max_ - x) + 1.0;
            else scaled_ = 1.0;
            max_ = x;
        } else {
            scaled_ += std::exp(x - max_);
        }
        ++n_;
    }
    std::uint64_t count() const { return n_; }
    double value() const {
        if (n_ == 0) return -std::numeric_limits<double>::infinity();
        return max_ + std::log(scaled_);
    }
    // log of the mean of exp(x_t)
    double log_mean() const { return value() - std::log(double(n_)); }

private:
    double max_ = 0.0;
    double scaled_ = 0.0;
    std::uint64_t n_ = 0;
};

inline constexpr double Z95 = 1.96;

// 95% normal-approximation half-width for a Bernoulli frequency.
inline double proportion_half_width(double freq, std::uint64_t trials) {
    if (trials == 0) return 1.0;
    return Z95 * std::sqrt(freq * (1.0 - freq) / double(trials));
}

// 95% half-width for a sample mean given the sample variance.
inline double mean_half_width(double variance, std::uint64_t trials) {
    if (trials == 0) return std::numeric_limits<double>::infinity();
    return Z95 * std::sqrt((variance < 0 ? 0 : variance) / double(trials));
}

// Survival function of the chi-square distribution, integer dof >= 1.
// Built from the closed forms at dof 1 and 2 plus the upward recurrence
// Q_{k+2}(x) = Q_k(x) + (x/2)^{k/2} e^{-x/2} / Gamma(k/2 + 1).
double chi2_sf(double x, int dof);

// log of binomial(n, k); -inf outside 0 <= k <= n.
double log_binomial(double n, double k);

} // namespace tlab

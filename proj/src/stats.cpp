#include "thresholdlab/stats.hpp"

#include <cmath>

#include "thresholdlab/error.hpp"

namespace tlab {

double chi2_sf(double x, int dof) {
    if (dof < 1) fail(errc::invalid_argument, "chi2_sf: dof must be >= 1");
    if (x <= 0) return 1.0;
    double q, term;
    int k;
    if (dof % 2 == 1) {
        q = std::erfc(std::sqrt(x / 2.0));
        // (x/2)^{1/2} e^{-x/2} / Gamma(3/2)
        term = std::sqrt(x / 2.0) * std::exp(-x / 2.0) / (std::sqrt(M_PI) / 2.0);
        k = 1;
    } else {
        q = std::exp(-x / 2.0);
        term = (x / 2.0) * std::exp(-x / 2.0);
        k = 2;
    }
    while (k + 2 <= dof) {
        q += term;
        k += 2;
        term *= (x / 2.0) / (double(k) / 2.0);
    }
    return q > 1.0 ? 1.0 : q;
}

double log_binomial(double n, double k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

} // namespace tlab

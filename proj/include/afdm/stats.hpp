// stats.hpp - small statistics helpers for experiment verification

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace afdm {

/// Asymptotic Kolmogorov survival function Q(lambda) = 2 sum (-1)^{k-1} e^{-2k^2 lambda^2}.
inline double kolmogorov_q(double lambda) {
    if (lambda <= 0.0) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-12) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

/// Two-sample Kolmogorov-Smirnov p-value (asymptotic, with the usual
/// small-sample correction on lambda). Samples need not be sorted.
inline double two_sample_ks_pvalue(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks test: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() && ib < b.size()) {
        const double x = std::min(a[ia], b[ib]);
        while (ia < a.size() && a[ia] <= x) ++ia;
        while (ib < b.size() && b[ib] <= x) ++ib;
        d = std::max(d, std::abs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    const double lambda = (ne + 0.12 + 0.11 / ne) * d;
    return kolmogorov_q(lambda);
}

/// Standard error of a binomial proportion estimate.
inline double proportion_stderr(double p, double n) {
    if (n <= 0.0) throw std::invalid_argument("proportion_stderr: n must be > 0");
    return std::sqrt(std::max(p * (1.0 - p), 0.0) / n);
}

}  // namespace afdm

// complex_vec.hpp - complex baseband vector type and small helpers

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace afdm {

using cd = std::complex<double>;
using ComplexVec = std::vector<cd>;

constexpr double kTwoPi = 6.283185307179586476925286766559;

inline bool is_finite(const cd& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline bool all_finite(const ComplexVec& x) {
    for (const cd& z : x) {
        if (!is_finite(z)) return false;
    }
    return true;
}

// Squared L2 norm.
inline double energy(const ComplexVec& x) {
    double e = 0.0;
    for (const cd& z : x) e += std::norm(z);
    return e;
}

inline double mean_power(const ComplexVec& x) {
    if (x.empty()) throw std::invalid_argument("mean_power: empty vector");
    return energy(x) / static_cast<double>(x.size());
}

inline double peak_power(const ComplexVec& x) {
    if (x.empty()) throw std::invalid_argument("peak_power: empty vector");
    double p = 0.0;
    for (const cd& z : x) p = std::max(p, std::norm(z));
    return p;
}

inline double max_abs_diff(const ComplexVec& a, const ComplexVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: size mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// e^{j*phi}
inline cd cis(double phi) {
    return {std::cos(phi), std::sin(phi)};
}

}  // namespace afdm

#include "afdm/papr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "afdm/dft.hpp"

namespace afdm {

namespace {

cd cis_tau(double x) {
    return cis(kTwoPi * (x - std::floor(x)));
}

// Zero-pad the one-sided bin vector (bins 0..N-1) to length L*N and return
// the sqrt(L)-scaled unitary IDFT, so every L-th sample equals the N-point
// signal and total energy scales by L.
ComplexVec upsample_bins(const ComplexVec& bins, int oversample) {
    const std::size_t n = bins.size();
    const std::size_t ln = n * static_cast<std::size_t>(oversample);
    ComplexVec padded(ln, cd(0.0, 0.0));
    std::copy(bins.begin(), bins.end(), padded.begin());
    ComplexVec up = idft_unitary(padded);
    const double scale = std::sqrt(static_cast<double>(oversample));
    for (cd& z : up) z *= scale;
    return up;
}

PaprSample papr_from_signal(const ComplexVec& s, int oversample) {
    PaprSample out;
    out.papr_linear = peak_power(s) / mean_power(s);
    out.papr_db = 10.0 * std::log10(out.papr_linear);
    out.oversample = oversample;
    return out;
}

}  // namespace

ComplexVec oversampled_time_signal(const ComplexVec& x, double c1, const PreChirpProfile& profile,
                                   int oversample) {
    if (oversample < 1) throw std::invalid_argument("oversampled_time_signal: L must be >= 1");
    if (x.size() != profile.size()) {
        throw std::invalid_argument("oversampled_time_signal: symbol/profile length mismatch");
    }
    const std::size_t n = x.size();
    ComplexVec v(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double m2 = static_cast<double>(m) * static_cast<double>(m);
        v[m] = x[m] * cis_tau(profile.c2_values[m] * m2);
    }
    if (oversample == 1) {
        ComplexVec s = idft_unitary(v);
        for (std::size_t i = 0; i < n; ++i) {
            const double i2 = static_cast<double>(i) * static_cast<double>(i);
            s[i] *= cis_tau(c1 * i2);
        }
        return s;
    }
    ComplexVec s = upsample_bins(v, oversample);
    const double inv_l = 1.0 / static_cast<double>(oversample);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double t = static_cast<double>(i) * inv_l;
        s[i] *= cis_tau(c1 * t * t);
    }
    return s;
}

PaprSample papr(const ComplexVec& x, double c1, const PreChirpProfile& profile, int oversample) {
    return papr_from_signal(oversampled_time_signal(x, c1, profile, oversample), oversample);
}

PaprSample papr_of_time_block(const ComplexVec& samples, int oversample) {
    if (oversample < 1) throw std::invalid_argument("papr_of_time_block: L must be >= 1");
    if (samples.empty()) throw std::invalid_argument("papr_of_time_block: empty block");
    if (oversample == 1) return papr_from_signal(samples, 1);
    return papr_from_signal(upsample_bins(dft_unitary(samples), oversample), oversample);
}

CcdfCurve ccdf(const std::vector<PaprSample>& samples, const std::vector<double>& thresholds_db) {
    if (samples.empty()) throw std::invalid_argument("ccdf: no samples");
    CcdfCurve curve;
    curve.thresholds_db = thresholds_db;
    curve.probabilities.resize(thresholds_db.size());
    curve.n_trials = samples.size();
    for (std::size_t i = 0; i < thresholds_db.size(); ++i) {
        std::size_t count = 0;
        for (const PaprSample& s : samples) {
            if (s.papr_db > thresholds_db[i]) ++count;
        }
        curve.probabilities[i] = static_cast<double>(count) / static_cast<double>(samples.size());
    }
    return curve;
}

double ccdf_threshold_db(std::vector<double> papr_db_samples, double level) {
    if (papr_db_samples.empty()) throw std::invalid_argument("ccdf_threshold_db: no samples");
    if (level <= 0.0 || level >= 1.0) throw std::invalid_argument("ccdf_threshold_db: level in (0,1)");
    std::sort(papr_db_samples.begin(), papr_db_samples.end(), std::greater<double>());
    std::size_t idx = static_cast<std::size_t>(level * static_cast<double>(papr_db_samples.size()));
    if (idx >= papr_db_samples.size()) idx = papr_db_samples.size() - 1;
    return papr_db_samples[idx];
}

double analytic_peak_cdf(double gamma, int n_subcarriers) {
    if (n_subcarriers < 2) throw std::invalid_argument("analytic_peak_cdf: N must be >= 2");
    if (gamma < 0.0) throw std::invalid_argument("analytic_peak_cdf: gamma must be >= 0");
    const double n = static_cast<double>(n_subcarriers);
    const double factor = n * std::sqrt((3.14159265358979323846 / 3.0) * std::log(n));
    return std::exp(-std::exp(-gamma) * factor);
}

cd candidate_correlation(int n_subcarriers, double phase_delta) {
    if (n_subcarriers < 2) throw std::invalid_argument("candidate_correlation: N must be >= 2");
    const double n = static_cast<double>(n_subcarriers);
    return (cd(n - 1.0, 0.0) + cis(phase_delta)) / n;
}

}  // namespace afdm

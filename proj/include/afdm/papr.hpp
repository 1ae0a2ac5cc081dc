// papr.hpp - PAPR measurement with oversampling, CCDF estimation, and the
// peak-statistics design formulas

#pragma once

#include <vector>

#include "afdm/complex_vec.hpp"
#include "afdm/modem.hpp"

namespace afdm {

struct PaprSample {
    double papr_linear = 1.0;
    double papr_db = 0.0;
    int oversample = 1;
};

struct CcdfCurve {
    std::vector<double> thresholds_db;
    std::vector<double> probabilities;
    std::size_t n_trials = 0;
};

/// Evaluate the modulated signal at sample instants t = n/L, n = 0..LN-1.
///
/// The de-post-chirped stage F^H Lambda_c2^H x occupies bins 0..N-1, so it is
/// upsampled by zero-padded spectrum interpolation; the post-chirp phase
/// e^{j2pi c1 t^2} is then applied pointwise at the fractional instants.
/// L = 1 reproduces afdm_modulate exactly.
ComplexVec oversampled_time_signal(const ComplexVec& x, double c1, const PreChirpProfile& profile,
                                   int oversample);

/// max|s|^2 / mean|s|^2 over the oversampled block.
PaprSample papr(const ComplexVec& x, double c1, const PreChirpProfile& profile, int oversample);

/// PAPR of an arbitrary time-domain block (band-limited interpolation with
/// the same one-sided bin convention). Used for the OTFS baseline.
PaprSample papr_of_time_block(const ComplexVec& samples, int oversample);

/// Empirical exceedance probability per threshold.
CcdfCurve ccdf(const std::vector<PaprSample>& samples, const std::vector<double>& thresholds_db);

/// PAPR (dB) at which the empirical CCDF first drops to the given level:
/// with n samples sorted descending, the floor(level*n)-th entry (0-based).
double ccdf_threshold_db(std::vector<double> papr_db_samples, double level);

/// Approximate CDF of the oversampled peak power of an N-subcarrier block:
/// exp(-e^{-gamma} * N * sqrt((pi/3) ln N)).
double analytic_peak_cdf(double gamma, int n_subcarriers);

/// Model correlation (N - 1 + e^{j*phase_delta}) / N of two candidate signals
/// that differ only in the pre-chirp value of one subcarrier.
cd candidate_correlation(int n_subcarriers, double phase_delta);

}  // namespace afdm

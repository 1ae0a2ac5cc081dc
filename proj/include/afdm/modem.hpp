// modem.hpp - AFDM configuration, pre-chirp profiles, DAFT modulation and
// chirp-periodic prefix handling

#pragma once

#include <string>
#include <vector>

#include "afdm/complex_vec.hpp"
#include "afdm/linalg.hpp"

namespace afdm {

enum class GroupPattern { adjacent, comb };

std::string to_string(GroupPattern p);
GroupPattern group_pattern_from_string(const std::string& s);

/// Post-chirp parameter for full diversity: c1 = (2*alpha_max + 1) / (2N).
double compute_c1(int alpha_max, int n_subcarriers);

struct AfdmConfig {
    int n_subcarriers = 64;  // N
    int alpha_max = 1;       // integer part of the max normalized Doppler
    double c1 = 3.0 / 128.0;
    int cpp_len = 2;         // >= max path delay, < N
    int oversample = 4;      // L used for PAPR measurement

    static AfdmConfig make(int n_subcarriers, int alpha_max, int cpp_len, int oversample = 4);
};

/// Per-subcarrier pre-chirp values c2[m] plus the group/selection structure
/// that generated them. Subcarrier 0 always stores 0: its phase contribution
/// e^{-j2pi c2 * 0^2} is 1 for any value.
struct PreChirpProfile {
    std::vector<double> c2_values;

    // selection metadata (set for candidate-set generated profiles; required
    // for side-information serialization)
    int group_count = 1;      // V
    int candidate_count = 1;  // W
    int precision_exponent = 2;  // k, decimal precision of the candidate values
    GroupPattern pattern = GroupPattern::adjacent;
    std::vector<int> selection;  // V entries in [1, W]
    bool has_selection_meta = false;

    std::size_t size() const { return c2_values.size(); }

    /// Uniform pre-chirp (conventional AFDM with a single c2 on every subcarrier).
    static PreChirpProfile uniform(int n_subcarriers, double c2);

    /// All-zero profile (the c1 = c2 = 0 OFDM reduction uses this).
    static PreChirpProfile zero(int n_subcarriers) { return uniform(n_subcarriers, 0.0); }
};

/// Wire format {N, V, pattern, W, k, selection:[...]} so a receiver can
/// rebuild c2_values bit-exactly from side information.
std::string profile_to_json(const PreChirpProfile& p);
PreChirpProfile profile_from_json(const std::string& text);

struct TimeBlock {
    ComplexVec samples;
    bool has_cpp = false;
};

/// A = Lambda_c2 * F * Lambda_c1 with Lambda entries e^{-j2pi c n^2}.
CMat build_daft_matrix(double c1, const std::vector<double>& c2_values);

/// Fast-path IDAFT: s = Lambda_c1^H F^H Lambda_c2^H x.
TimeBlock afdm_modulate(const ComplexVec& x, double c1, const PreChirpProfile& profile);

/// y = A r. Requires a CPP-free block; round-trips afdm_modulate.
ComplexVec afdm_demodulate(const TimeBlock& r, double c1, const PreChirpProfile& profile);

/// Prefix sample at -q equals s[N-q] * e^{-j2pi c1 (N^2 - 2Nq)}, q = 1..cpp_len.
TimeBlock add_cpp(const TimeBlock& s, int cpp_len, double c1);
TimeBlock remove_cpp(const TimeBlock& r, int cpp_len);

}  // namespace afdm

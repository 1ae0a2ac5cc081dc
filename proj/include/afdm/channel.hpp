// channel.hpp - doubly dispersive channel construction and AWGN

#pragma once

#include <string>
#include <vector>

#include "afdm/complex_vec.hpp"
#include "afdm/linalg.hpp"
#include "afdm/modem.hpp"
#include "afdm/rng.hpp"

namespace afdm {

struct PathSpec {
    cd gain;          // h_p
    int delay = 0;    // l_p, integer samples
    double doppler = 0.0;  // f_p, normalized to the subcarrier spacing
};

struct LtvChannel {
    std::vector<PathSpec> paths;
    int n_subcarriers = 0;

    int max_delay() const;
};

/// H = sum_p h_p Gamma_CPP_p W^{f_p} Pi^{l_p}, with Pi the forward cyclic
/// shift, W^{f} = diag(e^{-j2pi f n/N}), and the CPP phase on the wrapped
/// samples. Delays must be < N.
CMat build_time_channel(const LtvChannel& ch, double c1);

/// H applied to a vector without materializing the matrix (P nonzeros/row).
ComplexVec apply_time_channel(const LtvChannel& ch, double c1, const ComplexVec& s);

/// Effective DAFT-domain channel A H A^H for the given pre-chirp profile,
/// assembled column-by-column through the fast modulator.
CMat build_heff(const LtvChannel& ch, double c1, const PreChirpProfile& profile);

/// Adds circular complex Gaussian noise with per-sample variance n0.
ComplexVec awgn(const ComplexVec& s, double n0, Rng& rng);

/// Random channel ensemble: delays without replacement from [0, l_max],
/// Doppler uniform (integers in [-alpha_max, alpha_max] when integer_doppler),
/// gains CN(0, 1/P) so the total path power has unit mean.
struct ChannelScenario {
    int n_paths = 3;
    int l_max = 2;
    int alpha_max = 1;
    bool integer_doppler = true;

    LtvChannel draw(int n_subcarriers, Rng& rng) const;

    std::string to_json(std::uint64_t seed) const;
    static ChannelScenario from_json(const std::string& text, std::uint64_t* seed_out = nullptr);
};

}  // namespace afdm

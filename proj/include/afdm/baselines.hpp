// baselines.hpp - OFDM and minimal OTFS modulators for the PAPR comparisons

#pragma once

#include "afdm/complex_vec.hpp"
#include "afdm/modem.hpp"

namespace afdm {

/// Unitary IDFT of the symbol vector; the c1 = c2 = 0 reduction of AFDM.
TimeBlock ofdm_modulate(const ComplexVec& x);

/// Delay-Doppler grid, symbols stored doppler-major: symbols[k * delay_bins + l].
struct OtfsGrid {
    int doppler_bins = 8;  // M_d
    int delay_bins = 8;    // N_d
    ComplexVec symbols;    // M_d * N_d entries
};

/// Inverse symplectic finite Fourier transform of the grid, serialized
/// column-wise (rectangular transmit pulse): a single delay-Doppler impulse
/// becomes one 2-D complex exponential across the whole frame.
TimeBlock otfs_modulate(const OtfsGrid& grid);

}  // namespace afdm

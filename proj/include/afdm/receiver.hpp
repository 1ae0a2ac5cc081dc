// receiver.hpp - DAFT-domain MMSE equalization, side-information application,
// demapping and BER counting

#pragma once

#include <cstdint>

#include "afdm/channel.hpp"
#include "afdm/gps.hpp"
#include "afdm/modem.hpp"
#include "afdm/qam.hpp"

namespace afdm {

/// x_hat = H^H (H H^H + n0 I)^{-1} y for unit-energy symbols.
ComplexVec mmse_equalize(const ComplexVec& y, const CMat& h_eff, double n0);

struct GpsParams {
    int group_count = 4;   // V
    int w_count = 2;       // W
    int k = 2;
    GroupPattern pattern = GroupPattern::adjacent;
};

/// Full receive chain with the profile known a priori (genie side info):
/// demodulate, MMSE-equalize against A H A^H, hard-demap.
BitVec recover_bits_genie(const TimeBlock& r, const PreChirpProfile& profile,
                          const LtvChannel& ch, double c1, double n0);

/// Same chain, but the profile is reconstructed from the side-bit string
/// first. Malformed side bits raise std::invalid_argument.
BitVec recover_bits(const TimeBlock& r, const BitVec& side_bits, const LtvChannel& ch,
                    const AfdmConfig& cfg, const GpsParams& gps, double n0);

struct BerCount {
    std::uint64_t errors = 0;
    std::uint64_t total = 0;

    double rate() const { return total == 0 ? 0.0 : static_cast<double>(errors) / static_cast<double>(total); }
};

BerCount ber_count(const BitVec& tx_bits, const BitVec& rx_bits);

}  // namespace afdm

#include "afdm/receiver.hpp"

#include <stdexcept>

namespace afdm {

ComplexVec mmse_equalize(const ComplexVec& y, const CMat& h_eff, double n0) {
    if (n0 < 0.0) throw std::invalid_argument("mmse_equalize: n0 must be >= 0");
    const std::size_t n = h_eff.rows();
    if (h_eff.cols() != n || y.size() != n) {
        throw std::invalid_argument("mmse_equalize: dimension mismatch");
    }
    CMat gram = h_eff.mul(h_eff.adjoint());
    for (std::size_t i = 0; i < n; ++i) gram(i, i) += n0;
    const ComplexVec z = lu_solve(std::move(gram), y);
    return h_eff.adjoint().mul(z);
}

BitVec recover_bits_genie(const TimeBlock& r, const PreChirpProfile& profile,
                          const LtvChannel& ch, double c1, double n0) {
    const ComplexVec y = afdm_demodulate(r, c1, profile);
    const CMat h_eff = build_heff(ch, c1, profile);
    const ComplexVec x_hat = mmse_equalize(y, h_eff, n0);
    return qam16_demap(x_hat);
}

BitVec recover_bits(const TimeBlock& r, const BitVec& side_bits, const LtvChannel& ch,
                    const AfdmConfig& cfg, const GpsParams& gps, double n0) {
    const std::vector<int> selection = side_bits_decode(side_bits, gps.group_count, gps.w_count);
    const PreChirpProfile profile = profile_from_selection(cfg.n_subcarriers, gps.group_count,
                                                           gps.w_count, gps.k, gps.pattern, selection);
    return recover_bits_genie(r, profile, ch, cfg.c1, n0);
}

BerCount ber_count(const BitVec& tx_bits, const BitVec& rx_bits) {
    if (tx_bits.size() != rx_bits.size()) throw std::invalid_argument("ber_count: length mismatch");
    BerCount c;
    c.total = tx_bits.size();
    for (std::size_t i = 0; i < tx_bits.size(); ++i) {
        if ((tx_bits[i] & 1u) != (rx_bits[i] & 1u)) ++c.errors;
    }
    return c;
}

}  // namespace afdm

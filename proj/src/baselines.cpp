#include "afdm/baselines.hpp"

#include <stdexcept>

#include "afdm/dft.hpp"

namespace afdm {

TimeBlock ofdm_modulate(const ComplexVec& x) {
    return TimeBlock{idft_unitary(x), false};
}

TimeBlock otfs_modulate(const OtfsGrid& grid) {
    const int md = grid.doppler_bins;
    const int nd = grid.delay_bins;
    if (md < 1 || nd < 1) throw std::invalid_argument("otfs_modulate: grid dimensions must be >= 1");
    if (static_cast<int>(grid.symbols.size()) != md * nd) {
        throw std::invalid_argument("otfs_modulate: symbol count != doppler_bins * delay_bins");
    }

    // IDFT along the Doppler axis for each delay bin
    CMat stage(static_cast<std::size_t>(md), static_cast<std::size_t>(nd));
    ComplexVec column(static_cast<std::size_t>(md));
    for (int l = 0; l < nd; ++l) {
        for (int k = 0; k < md; ++k) {
            column[static_cast<std::size_t>(k)] = grid.symbols[static_cast<std::size_t>(k * nd + l)];
        }
        const ComplexVec t = idft_unitary(column);
        for (int a = 0; a < md; ++a) {
            stage(static_cast<std::size_t>(a), static_cast<std::size_t>(l)) = t[static_cast<std::size_t>(a)];
        }
    }

    // DFT along the delay axis, then serialize column-wise
    TimeBlock out;
    out.samples.resize(static_cast<std::size_t>(md * nd));
    ComplexVec row(static_cast<std::size_t>(nd));
    for (int a = 0; a < md; ++a) {
        for (int l = 0; l < nd; ++l) row[static_cast<std::size_t>(l)] = stage(static_cast<std::size_t>(a), static_cast<std::size_t>(l));
        const ComplexVec f = dft_unitary(row);
        for (int b = 0; b < nd; ++b) {
            out.samples[static_cast<std::size_t>(b * md + a)] = f[static_cast<std::size_t>(b)];
        }
    }
    return out;
}

}  // namespace afdm

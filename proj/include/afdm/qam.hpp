// qam.hpp - Gray-mapped 16-QAM with unit average symbol energy

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "afdm/complex_vec.hpp"

namespace afdm {

using BitVec = std::vector<std::uint8_t>;  // entries 0/1

/// The fixed 16-QAM constellation used throughout the simulator.
///
/// Labels are 4-bit values b0 b1 b2 b3 (b0 most significant). The I axis is
/// driven by (b0,b1), the Q axis by (b2,b3), each through the per-axis Gray
/// code 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3, scaled by 1/sqrt(10) so the
/// mean symbol power is exactly 1.
struct QamConstellation {
    static constexpr int order = 16;
    static constexpr int bits_per_symbol = 4;

    std::array<cd, 16> points;  // indexed by label

    static const QamConstellation& instance();

    /// Hard minimum-distance decision. Ties resolve to the lowest label.
    int decide(cd z) const;

private:
    QamConstellation();
};

/// Map a bit sequence (length divisible by 4, MSB-first per symbol) to symbols.
ComplexVec qam16_map(const BitVec& bits);

/// Hard-demap symbols back to bits.
BitVec qam16_demap(const ComplexVec& symbols);

}  // namespace afdm

#include "afdm/qam.hpp"

#include <cmath>
#include <stdexcept>

namespace afdm {

namespace {

// per-axis Gray code on the 4 amplitude levels
double gray_level(unsigned two_bits) {
    switch (two_bits) {
        case 0b00: return -3.0;
        case 0b01: return -1.0;
        case 0b11: return +1.0;
        case 0b10: return +3.0;
        default: throw std::logic_error("gray_level: bad input");
    }
}

}  // namespace

QamConstellation::QamConstellation() {
    const double scale = 1.0 / std::sqrt(10.0);
    for (unsigned label = 0; label < 16; ++label) {
        const double i_amp = gray_level((label >> 2) & 0x3);
        const double q_amp = gray_level(label & 0x3);
        points[label] = cd(i_amp, q_amp) * scale;
    }
}

const QamConstellation& QamConstellation::instance() {
    static const QamConstellation c;
    return c;
}

int QamConstellation::decide(cd z) const {
    int best = 0;
    double best_d = std::norm(z - points[0]);
    for (int label = 1; label < 16; ++label) {
        const double d = std::norm(z - points[label]);
        if (d < best_d) {
            best_d = d;
            best = label;
        }
    }
    return best;
}

ComplexVec qam16_map(const BitVec& bits) {
    if (bits.size() % 4 != 0) throw std::invalid_argument("qam16_map: bit count not divisible by 4");
    const auto& c = QamConstellation::instance();
    ComplexVec out(bits.size() / 4);
    for (std::size_t s = 0; s < out.size(); ++s) {
        unsigned label = 0;
        for (int b = 0; b < 4; ++b) {
            label = (label << 1) | (bits[4 * s + b] & 1u);
        }
        out[s] = c.points[label];
    }
    return out;
}

BitVec qam16_demap(const ComplexVec& symbols) {
    const auto& c = QamConstellation::instance();
    BitVec out(symbols.size() * 4);
    for (std::size_t s = 0; s < symbols.size(); ++s) {
        const int label = c.decide(symbols[s]);
        for (int b = 0; b < 4; ++b) {
            out[4 * s + b] = static_cast<std::uint8_t>((label >> (3 - b)) & 1);
        }
    }
    return out;
}

}  // namespace afdm

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "afdm/baselines.hpp"
#include "afdm/papr.hpp"
#include "afdm/qam.hpp"
#include "afdm/rng.hpp"

using namespace afdm;

namespace {

ComplexVec random_qam_block(int n, std::uint64_t stream) {
    Rng rng(stream);
    BitVec bits(static_cast<std::size_t>(4 * n));
    for (auto& b : bits) b = rng.bit();
    return qam16_map(bits);
}

// direct double-sum ISFFT oracle, O((M N)^2)
ComplexVec otfs_oracle(const OtfsGrid& g) {
    const int md = g.doppler_bins, nd = g.delay_bins;
    ComplexVec s(static_cast<std::size_t>(md * nd), cd(0.0, 0.0));
    for (int b = 0; b < nd; ++b) {
        for (int a = 0; a < md; ++a) {
            cd acc = 0.0;
            for (int k = 0; k < md; ++k) {
                for (int l = 0; l < nd; ++l) {
                    const double ph = kTwoPi * (static_cast<double>(a) * k / md -
                                                static_cast<double>(b) * l / nd);
                    acc += g.symbols[static_cast<std::size_t>(k * nd + l)] * cd(std::cos(ph), std::sin(ph));
                }
            }
            s[static_cast<std::size_t>(b * md + a)] = acc / std::sqrt(static_cast<double>(md * nd));
        }
    }
    return s;
}

}  // namespace

TEST_CASE("ofdm is the zero-chirp reduction of the AFDM modulator, bit for bit") {
    const int n = 64;
    const ComplexVec x = random_qam_block(n, 900);
    const TimeBlock a = ofdm_modulate(x);
    const TimeBlock b = afdm_modulate(x, 0.0, PreChirpProfile::zero(n));
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) CHECK(a.samples[i] == b.samples[i]);
}

TEST_CASE("ofdm delta input is flat with 0 dB PAPR") {
    ComplexVec x(32, cd(0.0, 0.0));
    x[7] = 1.0;
    const TimeBlock s = ofdm_modulate(x);
    CHECK(papr_of_time_block(s.samples, 4).papr_db == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("otfs impulse spreads into a unit-modulus exponential") {
    OtfsGrid g;
    g.doppler_bins = 8;
    g.delay_bins = 8;
    g.symbols.assign(64, cd(0.0, 0.0));
    g.symbols[2 * 8 + 5] = cd(1.0, 0.0);
    const TimeBlock s = otfs_modulate(g);
    for (const cd& z : s.samples) CHECK(std::abs(z) == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(papr_of_time_block(s.samples, 1).papr_db == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("otfs preserves grid energy") {
    OtfsGrid g;
    g.doppler_bins = 8;
    g.delay_bins = 8;
    g.symbols = random_qam_block(64, 901);
    const TimeBlock s = otfs_modulate(g);
    CHECK(energy(s.samples) == doctest::Approx(energy(g.symbols)).epsilon(1e-12));
}

TEST_CASE("otfs equals the direct double-sum ISFFT oracle") {
    OtfsGrid g;
    g.doppler_bins = 8;
    g.delay_bins = 8;
    g.symbols = random_qam_block(64, 902);
    const TimeBlock fast = otfs_modulate(g);
    CHECK(max_abs_diff(fast.samples, otfs_oracle(g)) < 1e-9);
}

TEST_CASE("otfs validates its grid") {
    OtfsGrid g;
    g.doppler_bins = 4;
    g.delay_bins = 4;
    g.symbols.assign(10, cd(0.0, 0.0));
    CHECK_THROWS_AS(otfs_modulate(g), std::invalid_argument);
    g.doppler_bins = 0;
    CHECK_THROWS_AS(otfs_modulate(g), std::invalid_argument);
}

TEST_CASE("rectangular grids work too") {
    OtfsGrid g;
    g.doppler_bins = 4;
    g.delay_bins = 16;
    g.symbols = random_qam_block(64, 903);
    const TimeBlock s = otfs_modulate(g);
    CHECK(s.samples.size() == 64);
    CHECK(energy(s.samples) == doctest::Approx(energy(g.symbols)).epsilon(1e-12));
    CHECK(max_abs_diff(s.samples, otfs_oracle(g)) < 1e-9);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "afdm/channel.hpp"
#include "afdm/receiver.hpp"
#include "afdm/rng.hpp"

using namespace afdm;

namespace {

BitVec random_bits(std::size_t count, std::uint64_t stream) {
    Rng rng(stream);
    BitVec b(count);
    for (auto& x : b) x = rng.bit();
    return b;
}

CMat random_matrix(std::size_t n, std::uint64_t stream) {
    Rng rng(stream);
    CMat m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            double g1 = 0.0, g2 = 0.0;
            rng.gaussian_pair(g1, g2);
            m(r, c) = cd(g1, g2);
        }
    }
    return m;
}

}  // namespace

TEST_CASE("mmse identity and shrinkage") {
    const CMat eye = CMat::identity(6);
    ComplexVec y(6);
    for (std::size_t i = 0; i < 6; ++i) y[i] = cd(static_cast<double>(i) - 2.0, 1.0);
    CHECK(max_abs_diff(mmse_equalize(y, eye, 0.0), y) < 1e-13);
    const ComplexVec half = mmse_equalize(y, eye, 1.0);
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(half[i] - y[i] / 2.0) < 1e-13);
}

TEST_CASE("mmse approaches the exact solve at vanishing noise") {
    const std::size_t n = 16;
    const CMat h = random_matrix(n, 700);
    ComplexVec x(n);
    Rng rng(701);
    for (cd& z : x) {
        double g1 = 0.0, g2 = 0.0;
        rng.gaussian_pair(g1, g2);
        z = cd(g1, g2);
    }
    const ComplexVec y = h.mul(x);
    const ComplexVec x_hat = mmse_equalize(y, h, 1e-8);
    CHECK(max_abs_diff(x_hat, x) < 1e-4);
}

TEST_CASE("rank-deficient noiseless systems are rejected") {
    CMat zero(4, 4);
    const ComplexVec y(4, cd(1.0, 0.0));
    CHECK_THROWS_AS(mmse_equalize(y, zero, 0.0), std::runtime_error);
    CHECK_THROWS_AS(mmse_equalize(y, CMat::identity(4), -1.0), std::invalid_argument);
}

TEST_CASE("ber counting") {
    const BitVec a = {0, 1, 1, 0, 1};
    BitVec b = a;
    CHECK(ber_count(a, b).errors == 0);
    CHECK(ber_count(a, b).total == 5);
    for (auto& x : b) x ^= 1;
    CHECK(ber_count(a, b).errors == 5);
    b = a;
    b[2] ^= 1;
    CHECK(ber_count(a, b).errors == 1);
    CHECK_THROWS_AS(ber_count(a, BitVec{0, 1}), std::invalid_argument);
}

TEST_CASE("noiseless identity channel recovers every bit") {
    const int n = 16;
    const AfdmConfig cfg = AfdmConfig::make(n, 1, 2);
    LtvChannel ch{{PathSpec{cd(1, 0), 0, 0.0}}, n};
    const BitVec bits = random_bits(static_cast<std::size_t>(4 * n), 702);
    const ComplexVec x = qam16_map(bits);
    const PreChirpProfile p = profile_from_selection(n, 4, 2, 2, GroupPattern::adjacent, {2, 1, 2, 2});
    const TimeBlock s = afdm_modulate(x, cfg.c1, p);
    const ComplexVec r = apply_time_channel(ch, cfg.c1, s.samples);
    CHECK(recover_bits_genie(TimeBlock{r, false}, p, ch, cfg.c1, 0.0) == bits);
}

TEST_CASE("noise-free chain over a random full-rank channel has zero BER") {
    const int n = 32;
    const AfdmConfig cfg = AfdmConfig::make(n, 1, 2);
    ChannelScenario sc;
    for (int rep = 0; rep < 5; ++rep) {
        Rng rng(derive_stream(40, kSaltChannel, static_cast<std::uint64_t>(rep)));
        const LtvChannel ch = sc.draw(n, rng);
        const BitVec bits = random_bits(static_cast<std::size_t>(4 * n), 703 + static_cast<std::uint64_t>(rep));
        const ComplexVec x = qam16_map(bits);
        const GpsParams g{4, 2, 2, GroupPattern::adjacent};
        const GpsResult sel = gps_select(x, cfg, g.group_count, g.w_count, g.k, g.pattern, 4);
        const TimeBlock s = afdm_modulate(x, cfg.c1, sel.profile);
        const ComplexVec r = apply_time_channel(ch, cfg.c1, s.samples);
        const BitVec rx = recover_bits(TimeBlock{r, false}, sel.side_bits, ch, cfg, g, 1e-12);
        CHECK(ber_count(bits, rx).errors == 0);
    }
}

TEST_CASE("genie mode equals side-bit mode bit for bit") {
    const int n = 16;
    const AfdmConfig cfg = AfdmConfig::make(n, 1, 2);
    ChannelScenario sc;
    Rng ch_rng(derive_stream(41, kSaltChannel, 0));
    const LtvChannel ch = sc.draw(n, ch_rng);
    const BitVec bits = random_bits(static_cast<std::size_t>(4 * n), 704);
    const ComplexVec x = qam16_map(bits);
    const GpsParams g{4, 2, 2, GroupPattern::adjacent};
    const GpsResult sel = gps_select(x, cfg, g.group_count, g.w_count, g.k, g.pattern, 4);
    const TimeBlock s = afdm_modulate(x, cfg.c1, sel.profile);
    Rng noise_rng(derive_stream(41, kSaltNoise, 0));
    const double n0 = 0.01;
    const ComplexVec r = awgn(apply_time_channel(ch, cfg.c1, s.samples), n0, noise_rng);

    const BitVec via_bits = recover_bits(TimeBlock{r, false}, sel.side_bits, ch, cfg, g, n0);
    const BitVec via_genie = recover_bits_genie(TimeBlock{r, false}, sel.profile, ch, cfg.c1, n0);
    CHECK(via_bits == via_genie);
}

TEST_CASE("corrupted side bits raise the error count on the same realization") {
    const int n = 64;
    const AfdmConfig cfg = AfdmConfig::make(n, 1, 2);
    ChannelScenario sc;
    const GpsParams g{4, 2, 2, GroupPattern::adjacent};
    const double snr_db = 20.0;
    const double n0 = std::pow(10.0, -snr_db / 10.0);

    std::uint64_t errs_good = 0, errs_bad = 0;
    for (int rep = 0; rep < 30; ++rep) {
        Rng ch_rng(derive_stream(42, kSaltChannel, static_cast<std::uint64_t>(rep)));
        const LtvChannel ch = sc.draw(n, ch_rng);
        const BitVec bits = random_bits(static_cast<std::size_t>(4 * n), 800 + static_cast<std::uint64_t>(rep));
        const ComplexVec x = qam16_map(bits);
        const GpsResult sel = gps_select(x, cfg, g.group_count, g.w_count, g.k, g.pattern, 4);
        const TimeBlock s = afdm_modulate(x, cfg.c1, sel.profile);
        Rng noise_rng(derive_stream(42, kSaltNoise, static_cast<std::uint64_t>(rep)));
        const ComplexVec r = awgn(apply_time_channel(ch, cfg.c1, s.samples), n0, noise_rng);

        BitVec wrong = sel.side_bits;
        wrong[0] ^= 1;
        errs_good += ber_count(bits, recover_bits(TimeBlock{r, false}, sel.side_bits, ch, cfg, g, n0)).errors;
        errs_bad += ber_count(bits, recover_bits(TimeBlock{r, false}, wrong, ch, cfg, g, n0)).errors;
    }
    CHECK(errs_bad > errs_good);
}

TEST_CASE("equalizer MSE does not grow with SNR on a fixed channel") {
    const int n = 32;
    const AfdmConfig cfg = AfdmConfig::make(n, 1, 2);
    ChannelScenario sc;
    Rng ch_rng(derive_stream(43, kSaltChannel, 7));
    const LtvChannel ch = sc.draw(n, ch_rng);
    const PreChirpProfile p = initial_profile(n, 4, 2, 2, GroupPattern::adjacent);
    const CMat heff = build_heff(ch, cfg.c1, p);

    double prev = 1e300;
    for (double snr : {0.0, 5.0, 10.0, 15.0, 20.0}) {
        const double n0 = std::pow(10.0, -snr / 10.0);
        double mse = 0.0;
        const int trials = 200;
        for (int t = 0; t < trials; ++t) {
            const BitVec bits = random_bits(static_cast<std::size_t>(4 * n),
                                            derive_stream(43, 1, static_cast<std::uint64_t>(t)));
            const ComplexVec x = qam16_map(bits);
            const TimeBlock s = afdm_modulate(x, cfg.c1, p);
            Rng noise(derive_stream(43, kSaltNoise, static_cast<std::uint64_t>(t),
                                    static_cast<std::uint64_t>(snr * 10)));
            const ComplexVec r = awgn(apply_time_channel(ch, cfg.c1, s.samples), n0, noise);
            const ComplexVec y = afdm_demodulate(TimeBlock{r, false}, cfg.c1, p);
            const ComplexVec x_hat = mmse_equalize(y, heff, n0);
            for (std::size_t i = 0; i < x.size(); ++i) mse += std::norm(x_hat[i] - x[i]);
        }
        mse /= trials * n;
        CHECK(mse <= prev * 1.05);  // Monte Carlo slack
        prev = mse;
    }
}

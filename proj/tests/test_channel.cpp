#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "afdm/channel.hpp"
#include "afdm/gps.hpp"
#include "afdm/qam.hpp"

using namespace afdm;

namespace {

ComplexVec random_qam_block(int n, std::uint64_t stream) {
    Rng rng(stream);
    BitVec bits(static_cast<std::size_t>(4 * n));
    for (auto& b : bits) b = rng.bit();
    return qam16_map(bits);
}

}  // namespace

TEST_CASE("single trivial path is the identity") {
    LtvChannel ch{{PathSpec{cd(1, 0), 0, 0.0}}, 8};
    const CMat h = build_time_channel(ch, compute_c1(1, 8));
    for (std::size_t r = 0; r < 8; ++r) {
        for (std::size_t c = 0; c < 8; ++c) {
            CHECK(std::abs(h(r, c) - (r == c ? cd(1, 0) : cd(0, 0))) < 1e-15);
        }
    }
}

TEST_CASE("pure integer Doppler is a diagonal of phases") {
    const int n = 8;
    const int f = 2;
    LtvChannel ch{{PathSpec{cd(1, 0), 0, static_cast<double>(f)}}, n};
    const CMat h = build_time_channel(ch, compute_c1(1, n));
    for (int r = 0; r < n; ++r) {
        const double ph = -kTwoPi * f * static_cast<double>(r) / n;
        CHECK(std::abs(h(static_cast<std::size_t>(r), static_cast<std::size_t>(r)) -
                       cd(std::cos(ph), std::sin(ph))) < 1e-12);
        for (int c = 0; c < n; ++c) {
            if (c != r) CHECK(std::abs(h(static_cast<std::size_t>(r), static_cast<std::size_t>(c))) == 0.0);
        }
    }
}

TEST_CASE("delayed path equals convolution with the prefixed signal") {
    // independent oracle: add the CPP, delay/Doppler the prefixed sequence
    // sample by sample, discard the prefix
    const int n = 8;
    const double c1 = 3.0 / 128.0;
    const int cpp_len = 3;
    LtvChannel ch{{PathSpec{cd(1, 0), 2, 0.0}, PathSpec{cd(0.4, -0.3), 1, 1.0}}, n};

    const ComplexVec x = random_qam_block(n, 400);
    const PreChirpProfile p = initial_profile(n, 2, 2, 2, GroupPattern::adjacent);
    const TimeBlock s = afdm_modulate(x, c1, p);
    const TimeBlock s_cpp = add_cpp(s, cpp_len, c1);

    ComplexVec expect(static_cast<std::size_t>(n), cd(0.0, 0.0));
    for (const PathSpec& path : ch.paths) {
        for (int t = 0; t < n; ++t) {
            const double ph = -kTwoPi * path.doppler * static_cast<double>(t) / n;
            expect[static_cast<std::size_t>(t)] +=
                path.gain * cd(std::cos(ph), std::sin(ph)) *
                s_cpp.samples[static_cast<std::size_t>(t + cpp_len - path.delay)];
        }
    }

    const ComplexVec got = build_time_channel(ch, c1).mul(s.samples);
    CHECK(max_abs_diff(got, expect) < 1e-12);
    CHECK(max_abs_diff(apply_time_channel(ch, c1, s.samples), expect) < 1e-12);
}

TEST_CASE("delay >= N is rejected") {
    LtvChannel ch{{PathSpec{cd(1, 0), 8, 0.0}}, 8};
    CHECK_THROWS_AS(build_time_channel(ch, 0.0), std::invalid_argument);
}

TEST_CASE("identity channel gives an identity effective channel") {
    const int n = 16;
    LtvChannel ch{{PathSpec{cd(1, 0), 0, 0.0}}, n};
    const PreChirpProfile p = initial_profile(n, 4, 2, 2, GroupPattern::comb);
    const CMat heff = build_heff(ch, compute_c1(1, n), p);
    for (std::size_t r = 0; r < static_cast<std::size_t>(n); ++r) {
        for (std::size_t c = 0; c < static_cast<std::size_t>(n); ++c) {
            CHECK(std::abs(heff(r, c) - (r == c ? cd(1, 0) : cd(0, 0))) < 1e-10);
        }
    }
}

TEST_CASE("operator-built heff equals the explicit matrix product") {
    const int n = 16;
    const double c1 = compute_c1(1, n);
    LtvChannel ch{{PathSpec{cd(0.8, 0.1), 0, 1.0}, PathSpec{cd(-0.2, 0.5), 2, -1.0}}, n};
    const PreChirpProfile p = profile_from_selection(n, 4, 2, 2, GroupPattern::adjacent, {2, 1, 1, 2});

    const CMat a = build_daft_matrix(c1, p.c2_values);
    const CMat oracle = a.mul(build_time_channel(ch, c1)).mul(a.adjoint());
    const CMat fast = build_heff(ch, c1, p);
    for (std::size_t r = 0; r < static_cast<std::size_t>(n); ++r) {
        for (std::size_t c = 0; c < static_cast<std::size_t>(n); ++c) {
            CHECK(std::abs(fast(r, c) - oracle(r, c)) < 1e-9);
        }
    }
}

TEST_CASE("integer-Doppler effective channel is sparse with profile-independent support") {
    const int n = 32;
    const double c1 = compute_c1(1, n);
    for (int rep = 0; rep < 10; ++rep) {
        Rng rng(derive_stream(9, kSaltChannel, static_cast<std::uint64_t>(rep)));
        ChannelScenario sc;
        const LtvChannel ch = sc.draw(n, rng);

        const PreChirpProfile p1 =
            profile_from_selection(n, 4, 2, 2, GroupPattern::adjacent, {1, 2, 2, 1});
        const PreChirpProfile p2 =
            profile_from_selection(n, 4, 2, 2, GroupPattern::adjacent, {2, 2, 1, 1});
        const CMat h1 = build_heff(ch, c1, p1);
        const CMat h2 = build_heff(ch, c1, p2);

        for (std::size_t r = 0; r < static_cast<std::size_t>(n); ++r) {
            double row_norm = 0.0;
            for (std::size_t c = 0; c < static_cast<std::size_t>(n); ++c) row_norm += std::norm(h1(r, c));
            row_norm = std::sqrt(row_norm);
            std::set<std::size_t> support1, support2;
            for (std::size_t c = 0; c < static_cast<std::size_t>(n); ++c) {
                if (std::abs(h1(r, c)) > 1e-9 * row_norm) support1.insert(c);
                if (std::abs(h2(r, c)) > 1e-9 * row_norm) support2.insert(c);
            }
            CHECK(support1.size() <= 3);
            CHECK(support1 == support2);
        }
    }
}

TEST_CASE("awgn basics") {
    const ComplexVec s(64, cd(1.0, -1.0));
    SUBCASE("zero noise is the identity") {
        Rng rng(1);
        CHECK(awgn(s, 0.0, rng) == s);
    }
    SUBCASE("negative variance is rejected") {
        Rng rng(1);
        CHECK_THROWS_AS(awgn(s, -0.1, rng), std::invalid_argument);
    }
    SUBCASE("fixed seed reproduces the same noise bit for bit") {
        Rng a(77), b(77);
        CHECK(awgn(s, 0.5, a) == awgn(s, 0.5, b));
    }
    SUBCASE("empirical variance is close to n0") {
        const double n0 = 0.37;
        Rng rng(5);
        const std::size_t trials = 100000 / s.size() + 1;
        double acc = 0.0;
        std::size_t count = 0;
        for (std::size_t t = 0; t < trials * 2; ++t) {
            const ComplexVec y = awgn(s, n0, rng);
            for (std::size_t i = 0; i < s.size(); ++i) {
                acc += std::norm(y[i] - s[i]);
                ++count;
            }
        }
        CHECK(std::abs(acc / static_cast<double>(count) - n0) < 0.02 * n0);
    }
}

TEST_CASE("noise stays white through the DAFT") {
    const int n = 32;
    const PreChirpProfile p = initial_profile(n, 4, 2, 2, GroupPattern::adjacent);
    const double c1 = compute_c1(1, n);
    Rng rng(6);
    const double n0 = 1.0;
    double diag = 0.0;
    cd off(0.0, 0.0);
    const int trials = 4000;
    for (int t = 0; t < trials; ++t) {
        const ComplexVec w = awgn(ComplexVec(static_cast<std::size_t>(n), cd(0, 0)), n0, rng);
        const ComplexVec y = afdm_demodulate(TimeBlock{w, false}, c1, p);
        diag += std::norm(y[3]);
        off += y[3] * std::conj(y[17]);
    }
    CHECK(std::abs(diag / trials - n0) < 0.1);
    CHECK(std::abs(off) / trials < 0.05);
}

TEST_CASE("scenario draws respect the preset and serialize") {
    ChannelScenario sc;
    sc.n_paths = 3;
    sc.l_max = 2;
    sc.alpha_max = 1;
    Rng rng(123);
    for (int rep = 0; rep < 50; ++rep) {
        const LtvChannel ch = sc.draw(64, rng);
        REQUIRE(ch.paths.size() == 3);
        std::set<int> delays;
        for (const PathSpec& p : ch.paths) {
            delays.insert(p.delay);
            CHECK(p.delay >= 0);
            CHECK(p.delay <= 2);
            CHECK(std::abs(p.doppler) <= 1.0);
            CHECK(p.doppler == std::floor(p.doppler));
        }
        CHECK(delays.size() == 3);  // sampled without replacement
        CHECK(ch.max_delay() == 2);
    }
    std::uint64_t seed = 0;
    const ChannelScenario back = ChannelScenario::from_json(sc.to_json(99), &seed);
    CHECK(back.n_paths == sc.n_paths);
    CHECK(back.l_max == sc.l_max);
    CHECK(back.alpha_max == sc.alpha_max);
    CHECK(back.integer_doppler == sc.integer_doppler);
    CHECK(seed == 99);
}

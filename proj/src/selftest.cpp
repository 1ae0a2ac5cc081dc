// selftest.cpp - built-in oracle-equivalence suite behind `afdm selftest`

#include <cmath>
#include <iomanip>
#include <ostream>

#include "afdm/baselines.hpp"
#include "afdm/channel.hpp"
#include "afdm/dft.hpp"
#include "afdm/gps.hpp"
#include "afdm/harness.hpp"
#include "afdm/papr.hpp"
#include "afdm/qam.hpp"
#include "afdm/receiver.hpp"
#include "afdm/rng.hpp"

namespace afdm {

namespace {

ComplexVec random_block(int n, std::uint64_t stream) {
    Rng rng(stream);
    BitVec bits(static_cast<std::size_t>(4 * n));
    for (auto& b : bits) b = rng.bit();
    return qam16_map(bits);
}

// direct double-sum evaluation of the grouped IDAFT output
ComplexVec direct_modulate(const ComplexVec& x, double c1, const PreChirpProfile& p) {
    const int n = static_cast<int>(x.size());
    ComplexVec s(static_cast<std::size_t>(n), cd(0.0, 0.0));
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    for (int t = 0; t < n; ++t) {
        cd acc = 0.0;
        for (int m = 0; m < n; ++m) {
            const double phase = c1 * t * t + p.c2_values[static_cast<std::size_t>(m)] * m * m +
                                 static_cast<double>(m) * t / static_cast<double>(n);
            acc += x[static_cast<std::size_t>(m)] * cis(kTwoPi * phase);
        }
        s[static_cast<std::size_t>(t)] = acc * inv_sqrt_n;
    }
    return s;
}

// N-point PAPR through explicitly materialized matrices
double matrix_papr_db(const ComplexVec& x, double c1, const PreChirpProfile& p) {
    const CMat a = build_daft_matrix(c1, p.c2_values);
    const ComplexVec s = a.adjoint().mul(x);
    return 10.0 * std::log10(peak_power(s) / mean_power(s));
}

}  // namespace

bool run_selftest(std::ostream& log) {
    bool all_ok = true;
    auto check = [&](const char* name, bool ok) {
        log << (ok ? "[ ok ] " : "[FAIL] ") << name << '\n';
        all_ok = all_ok && ok;
    };

    // DFT round trip and energy
    {
        const ComplexVec x = random_block(64, 11);
        const ComplexVec back = idft_unitary(dft_unitary(x));
        check("dft/idft round trip (N=64)", max_abs_diff(x, back) < 1e-10);
        check("dft preserves energy", std::abs(energy(dft_unitary(x)) - energy(x)) < 1e-10);
    }

    // DAFT unitarity
    {
        std::vector<double> c2(32);
        for (int m = 1; m < 32; ++m) c2[static_cast<std::size_t>(m)] = omega_values(m, 2, 2)[0];
        const CMat a = build_daft_matrix(compute_c1(1, 32), c2);
        const CMat g = a.mul(a.adjoint());
        double err = 0.0;
        for (std::size_t r = 0; r < 32; ++r) {
            for (std::size_t c = 0; c < 32; ++c) {
                err = std::max(err, std::abs(g(r, c) - (r == c ? cd(1.0, 0.0) : cd(0.0, 0.0))));
            }
        }
        check("daft matrix unitary (N=32)", err < 1e-10);
    }

    // fast modulator vs direct double sum
    {
        const int n = 16;
        const ComplexVec x = random_block(n, 12);
        const PreChirpProfile p = initial_profile(n, 4, 2, 2, GroupPattern::adjacent);
        const double c1 = compute_c1(1, n);
        const ComplexVec fast = afdm_modulate(x, c1, p).samples;
        check("fast modulator matches direct sum (N=16)", max_abs_diff(fast, direct_modulate(x, c1, p)) < 1e-9);
    }

    // CPP round trip
    {
        const int n = 16;
        const ComplexVec x = random_block(n, 13);
        const PreChirpProfile p = initial_profile(n, 2, 2, 2, GroupPattern::adjacent);
        const TimeBlock s = afdm_modulate(x, compute_c1(1, n), p);
        const TimeBlock rt = remove_cpp(add_cpp(s, 3, compute_c1(1, n)), 3);
        check("cpp add/remove round trip", max_abs_diff(s.samples, rt.samples) == 0.0);
    }

    // effective-channel sparsity and profile-independent support
    {
        const int n = 32;
        const double c1 = compute_c1(1, n);
        LtvChannel ch;
        ch.n_subcarriers = n;
        ch.paths = {PathSpec{cd(0.6, 0.2), 0, 1.0}, PathSpec{cd(-0.3, 0.5), 1, -1.0},
                    PathSpec{cd(0.2, -0.4), 2, 0.0}};
        const PreChirpProfile p1 = profile_from_selection(n, 4, 2, 2, GroupPattern::adjacent, {1, 2, 1, 2});
        const PreChirpProfile p2 = profile_from_selection(n, 4, 2, 2, GroupPattern::adjacent, {2, 1, 2, 1});
        const CMat h1 = build_heff(ch, c1, p1);
        const CMat h2 = build_heff(ch, c1, p2);
        bool sparse_ok = true;
        bool support_ok = true;
        for (std::size_t r = 0; r < static_cast<std::size_t>(n); ++r) {
            double row_norm = 0.0;
            for (std::size_t c = 0; c < static_cast<std::size_t>(n); ++c) row_norm += std::norm(h1(r, c));
            row_norm = std::sqrt(row_norm);
            int nz = 0;
            for (std::size_t c = 0; c < static_cast<std::size_t>(n); ++c) {
                const bool big1 = std::abs(h1(r, c)) > 1e-9 * row_norm;
                const bool big2 = std::abs(h2(r, c)) > 1e-9 * row_norm;
                if (big1) ++nz;
                if (big1 != big2) support_ok = false;
            }
            if (nz > 3) sparse_ok = false;
        }
        check("effective channel has <= P entries per row", sparse_ok);
        check("nonzero support independent of profile", support_ok);
    }

    // N-point PAPR equals the explicit-matrix ratio
    {
        const int n = 16;
        const ComplexVec x = random_block(n, 14);
        const PreChirpProfile p = initial_profile(n, 4, 2, 2, GroupPattern::adjacent);
        const double c1 = compute_c1(1, n);
        const double lib = papr(x, c1, p, 1).papr_db;
        check("papr(L=1) equals matrix-form ratio", std::abs(lib - matrix_papr_db(x, c1, p)) < 1e-10);
    }

    // greedy selection equals the explicit matrix-form reference
    {
        const int n = 16;
        const ComplexVec x = random_block(n, 0x5EED);
        const AfdmConfig cfg = AfdmConfig::make(n, 1, 2, 4);
        const GpsResult fast = gps_select(x, cfg, 2, 2, 2, GroupPattern::adjacent, 1);

        std::vector<int> sel = {1, 1};
        double papr_min = matrix_papr_db(x, cfg.c1, profile_from_selection(n, 2, 2, 2, GroupPattern::adjacent, sel));
        for (int g = 0; g < 2; ++g) {
            std::vector<int> cand = sel;
            cand[static_cast<std::size_t>(g)] = 2;
            const double p = matrix_papr_db(x, cfg.c1, profile_from_selection(n, 2, 2, 2, GroupPattern::adjacent, cand));
            if (p < papr_min) {
                papr_min = p;
                sel = cand;
            }
        }
        check("gps matches matrix-form greedy reference",
              fast.profile.selection == sel && std::abs(fast.papr_min.papr_db - papr_min) < 1e-9);
    }

    // side-bit coding
    {
        bool ok = side_bits_count(4, 2) == 4 && side_bits_count(8, 3) == 13;
        for (int a = 1; a <= 2 && ok; ++a) {
            for (int b = 1; b <= 2 && ok; ++b) {
                for (int c = 1; c <= 2 && ok; ++c) {
                    for (int d = 1; d <= 2 && ok; ++d) {
                        const std::vector<int> sel = {a, b, c, d};
                        ok = side_bits_decode(side_bits_encode(sel, 2), 4, 2) == sel;
                    }
                }
            }
        }
        check("side bits encode/decode", ok);
    }

    // MMSE identity cases
    {
        const CMat eye = CMat::identity(4);
        const ComplexVec y = {cd(1, 1), cd(-1, 0), cd(0, 2), cd(0.5, -0.5)};
        const ComplexVec a = mmse_equalize(y, eye, 0.0);
        const ComplexVec b = mmse_equalize(y, eye, 1.0);
        bool ok = max_abs_diff(a, y) < 1e-12;
        for (std::size_t i = 0; i < y.size(); ++i) ok = ok && std::abs(b[i] - y[i] / 2.0) < 1e-12;
        check("mmse identity/shrinkage", ok);
    }

    // spectral efficiency accounting
    {
        check("spectral efficiency 256/260",
              std::abs(spectral_efficiency(64, 4, 4, 2) - 256.0 / 260.0) < 1e-15);
    }

    log << (all_ok ? "selftest: all checks passed\n" : "selftest: FAILURES detected\n");
    return all_ok;
}

}  // namespace afdm

#include "afdm/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace afdm {

namespace {

cd cis_tau(double x) {
    return cis(kTwoPi * (x - std::floor(x)));
}

void check_paths(const LtvChannel& ch) {
    if (ch.paths.empty()) throw std::invalid_argument("LtvChannel: at least one path required");
    if (ch.n_subcarriers < 1) throw std::invalid_argument("LtvChannel: N must be >= 1");
    for (const PathSpec& p : ch.paths) {
        if (p.delay < 0 || p.delay >= ch.n_subcarriers) {
            throw std::invalid_argument("LtvChannel: path delay must satisfy 0 <= l < N");
        }
    }
}

// chirp-periodic prefix phase on the wrapped samples:
// e^{-j2pi c1 (N^2 - 2N(l - n))} for n < l, 1 otherwise
cd cpp_phase(int n, int delay, int n_sub, double c1) {
    if (n >= delay) return cd(1.0, 0.0);
    const double nn = static_cast<double>(n_sub);
    return cis_tau(-c1 * (nn * nn - 2.0 * nn * static_cast<double>(delay - n)));
}

}  // namespace

int LtvChannel::max_delay() const {
    int d = 0;
    for (const PathSpec& p : paths) d = std::max(d, p.delay);
    return d;
}

CMat build_time_channel(const LtvChannel& ch, double c1) {
    check_paths(ch);
    const int n = ch.n_subcarriers;
    CMat h(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (const PathSpec& p : ch.paths) {
        for (int row = 0; row < n; ++row) {
            const int col = ((row - p.delay) % n + n) % n;
            const cd doppler = cis_tau(-p.doppler * static_cast<double>(row) / static_cast<double>(n));
            h(static_cast<std::size_t>(row), static_cast<std::size_t>(col)) +=
                p.gain * doppler * cpp_phase(row, p.delay, n, c1);
        }
    }
    return h;
}

ComplexVec apply_time_channel(const LtvChannel& ch, double c1, const ComplexVec& s) {
    check_paths(ch);
    const int n = ch.n_subcarriers;
    if (static_cast<int>(s.size()) != n) throw std::invalid_argument("apply_time_channel: length mismatch");
    ComplexVec r(s.size(), cd(0.0, 0.0));
    for (const PathSpec& p : ch.paths) {
        for (int row = 0; row < n; ++row) {
            const int col = ((row - p.delay) % n + n) % n;
            const cd doppler = cis_tau(-p.doppler * static_cast<double>(row) / static_cast<double>(n));
            r[static_cast<std::size_t>(row)] +=
                p.gain * doppler * cpp_phase(row, p.delay, n, c1) * s[static_cast<std::size_t>(col)];
        }
    }
    return r;
}

CMat build_heff(const LtvChannel& ch, double c1, const PreChirpProfile& profile) {
    check_paths(ch);
    const int n = ch.n_subcarriers;
    if (static_cast<int>(profile.size()) != n) {
        throw std::invalid_argument("build_heff: profile length != N");
    }
    CMat heff(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    ComplexVec e(static_cast<std::size_t>(n), cd(0.0, 0.0));
    for (int col = 0; col < n; ++col) {
        e[static_cast<std::size_t>(col)] = 1.0;
        const TimeBlock tx = afdm_modulate(e, c1, profile);
        const ComplexVec rx = apply_time_channel(ch, c1, tx.samples);
        const ComplexVec y = afdm_demodulate(TimeBlock{rx, false}, c1, profile);
        for (int row = 0; row < n; ++row) {
            heff(static_cast<std::size_t>(row), static_cast<std::size_t>(col)) =
                y[static_cast<std::size_t>(row)];
        }
        e[static_cast<std::size_t>(col)] = 0.0;
    }
    return heff;
}

ComplexVec awgn(const ComplexVec& s, double n0, Rng& rng) {
    if (n0 < 0.0) throw std::invalid_argument("awgn: n0 must be >= 0");
    if (n0 == 0.0) return s;
    ComplexVec out(s.size());
    const double sigma = std::sqrt(n0 / 2.0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        double g1 = 0.0, g2 = 0.0;
        rng.gaussian_pair(g1, g2);
        out[i] = s[i] + cd(sigma * g1, sigma * g2);
    }
    return out;
}

LtvChannel ChannelScenario::draw(int n_subcarriers, Rng& rng) const {
    if (n_paths < 1) throw std::invalid_argument("ChannelScenario: P must be >= 1");
    if (l_max < 0 || l_max >= n_subcarriers) {
        throw std::invalid_argument("ChannelScenario: require 0 <= l_max < N");
    }
    if (n_paths > l_max + 1) {
        throw std::invalid_argument("ChannelScenario: P distinct delays need P <= l_max + 1");
    }
    // partial Fisher-Yates over [0, l_max] gives delays without replacement
    std::vector<int> delays(static_cast<std::size_t>(l_max + 1));
    std::iota(delays.begin(), delays.end(), 0);
    for (int i = 0; i < n_paths; ++i) {
        const int j = rng.uniform_int(i, l_max);
        std::swap(delays[static_cast<std::size_t>(i)], delays[static_cast<std::size_t>(j)]);
    }

    LtvChannel ch;
    ch.n_subcarriers = n_subcarriers;
    const double gain_sigma = std::sqrt(0.5 / static_cast<double>(n_paths));
    for (int p = 0; p < n_paths; ++p) {
        PathSpec path;
        double g1 = 0.0, g2 = 0.0;
        rng.gaussian_pair(g1, g2);
        path.gain = cd(gain_sigma * g1, gain_sigma * g2);
        path.delay = delays[static_cast<std::size_t>(p)];
        path.doppler = integer_doppler
                           ? static_cast<double>(rng.uniform_int(-alpha_max, alpha_max))
                           : (2.0 * rng.uniform() - 1.0) * static_cast<double>(alpha_max);
        ch.paths.push_back(path);
    }
    return ch;
}

std::string ChannelScenario::to_json(std::uint64_t seed) const {
    nlohmann::json j;
    j["P"] = n_paths;
    j["l_max"] = l_max;
    j["alpha_max"] = alpha_max;
    j["integer_doppler"] = integer_doppler;
    j["seed"] = seed;
    return j.dump();
}

ChannelScenario ChannelScenario::from_json(const std::string& text, std::uint64_t* seed_out) {
    nlohmann::json j = nlohmann::json::parse(text);
    ChannelScenario sc;
    sc.n_paths = j.at("P").get<int>();
    sc.l_max = j.at("l_max").get<int>();
    sc.alpha_max = j.at("alpha_max").get<int>();
    sc.integer_doppler = j.at("integer_doppler").get<bool>();
    if (seed_out != nullptr) *seed_out = j.at("seed").get<std::uint64_t>();
    return sc;
}

}  // namespace afdm

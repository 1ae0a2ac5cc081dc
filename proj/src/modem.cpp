#include "afdm/modem.hpp"

#include <cmath>
#include <stdexcept>

#include "afdm/dft.hpp"
#include "afdm/gps.hpp"
#include "json.hpp"

namespace afdm {

namespace {

// e^{j * 2pi * x} with the argument reduced before the trig call; the chirp
// exponents c*n^2 grow past 1e3 at N=256 and full-range reduction keeps the
// fast path and the direct-sum oracle within 1e-12 of each other.
cd cis_tau(double x) {
    return cis(kTwoPi * (x - std::floor(x)));
}

void check_profile_length(const ComplexVec& x, const PreChirpProfile& profile, const char* who) {
    if (x.size() != profile.size()) {
        throw std::invalid_argument(std::string(who) + ": symbol/profile length mismatch");
    }
}

}  // namespace

std::string to_string(GroupPattern p) {
    return p == GroupPattern::adjacent ? "adjacent" : "comb";
}

GroupPattern group_pattern_from_string(const std::string& s) {
    if (s == "adjacent") return GroupPattern::adjacent;
    if (s == "comb") return GroupPattern::comb;
    throw std::invalid_argument("unknown grouping pattern: " + s);
}

double compute_c1(int alpha_max, int n_subcarriers) {
    if (n_subcarriers < 1) throw std::invalid_argument("compute_c1: N must be >= 1");
    if (alpha_max < 0) throw std::invalid_argument("compute_c1: alpha_max must be >= 0");
    return (2.0 * alpha_max + 1.0) / (2.0 * n_subcarriers);
}

AfdmConfig AfdmConfig::make(int n_subcarriers, int alpha_max, int cpp_len, int oversample) {
    if (cpp_len < 0 || cpp_len >= n_subcarriers) {
        throw std::invalid_argument("AfdmConfig: require 0 <= cpp_len < N");
    }
    if (oversample < 1) throw std::invalid_argument("AfdmConfig: oversample must be >= 1");
    AfdmConfig cfg;
    cfg.n_subcarriers = n_subcarriers;
    cfg.alpha_max = alpha_max;
    cfg.c1 = compute_c1(alpha_max, n_subcarriers);
    cfg.cpp_len = cpp_len;
    cfg.oversample = oversample;
    return cfg;
}

PreChirpProfile PreChirpProfile::uniform(int n_subcarriers, double c2) {
    if (n_subcarriers < 1) throw std::invalid_argument("PreChirpProfile::uniform: N must be >= 1");
    PreChirpProfile p;
    p.c2_values.assign(static_cast<std::size_t>(n_subcarriers), c2);
    return p;
}

std::string profile_to_json(const PreChirpProfile& p) {
    if (!p.has_selection_meta) {
        throw std::invalid_argument("profile_to_json: profile carries no selection metadata");
    }
    nlohmann::json j;
    j["N"] = p.c2_values.size();
    j["V"] = p.group_count;
    j["pattern"] = to_string(p.pattern);
    j["W"] = p.candidate_count;
    j["k"] = p.precision_exponent;
    j["selection"] = p.selection;
    return j.dump();
}

PreChirpProfile profile_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    const int n = j.at("N").get<int>();
    const int v = j.at("V").get<int>();
    const int w = j.at("W").get<int>();
    const int k = j.at("k").get<int>();
    const GroupPattern pattern = group_pattern_from_string(j.at("pattern").get<std::string>());
    const std::vector<int> selection = j.at("selection").get<std::vector<int>>();
    return profile_from_selection(n, v, w, k, pattern, selection);
}

CMat build_daft_matrix(double c1, const std::vector<double>& c2_values) {
    const std::size_t n = c2_values.size();
    if (n == 0) throw std::invalid_argument("build_daft_matrix: empty c2 vector");
    CMat a(n, n);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t m = 0; m < n; ++m) {
        const double m2 = static_cast<double>(m) * static_cast<double>(m);
        const cd pre = cis_tau(-c2_values[m] * m2);
        for (std::size_t col = 0; col < n; ++col) {
            const double col2 = static_cast<double>(col) * static_cast<double>(col);
            const double mn = static_cast<double>(m * col % n) / static_cast<double>(n);
            a(m, col) = pre * cis_tau(-mn) * inv_sqrt_n * cis_tau(-c1 * col2);
        }
    }
    return a;
}

TimeBlock afdm_modulate(const ComplexVec& x, double c1, const PreChirpProfile& profile) {
    check_profile_length(x, profile, "afdm_modulate");
    const std::size_t n = x.size();
    ComplexVec v(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double m2 = static_cast<double>(m) * static_cast<double>(m);
        v[m] = x[m] * cis_tau(profile.c2_values[m] * m2);
    }
    ComplexVec u = idft_unitary(v);
    for (std::size_t i = 0; i < n; ++i) {
        const double i2 = static_cast<double>(i) * static_cast<double>(i);
        u[i] *= cis_tau(c1 * i2);
    }
    return TimeBlock{std::move(u), false};
}

ComplexVec afdm_demodulate(const TimeBlock& r, double c1, const PreChirpProfile& profile) {
    if (r.has_cpp) throw std::invalid_argument("afdm_demodulate: remove the CPP first");
    if (r.samples.size() != profile.size()) {
        throw std::invalid_argument("afdm_demodulate: block/profile length mismatch");
    }
    const std::size_t n = r.samples.size();
    ComplexVec t(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double i2 = static_cast<double>(i) * static_cast<double>(i);
        t[i] = r.samples[i] * cis_tau(-c1 * i2);
    }
    ComplexVec y = dft_unitary(t);
    for (std::size_t m = 0; m < n; ++m) {
        const double m2 = static_cast<double>(m) * static_cast<double>(m);
        y[m] *= cis_tau(-profile.c2_values[m] * m2);
    }
    return y;
}

TimeBlock add_cpp(const TimeBlock& s, int cpp_len, double c1) {
    if (s.has_cpp) throw std::invalid_argument("add_cpp: block already has a CPP");
    const int n = static_cast<int>(s.samples.size());
    if (cpp_len < 0 || cpp_len >= n) throw std::invalid_argument("add_cpp: require 0 <= cpp_len < N");
    TimeBlock out;
    out.samples.resize(s.samples.size() + static_cast<std::size_t>(cpp_len));
    for (int q = 1; q <= cpp_len; ++q) {
        const double phase = -c1 * (static_cast<double>(n) * n - 2.0 * n * q);
        out.samples[static_cast<std::size_t>(cpp_len - q)] =
            s.samples[static_cast<std::size_t>(n - q)] * cis_tau(phase);
    }
    std::copy(s.samples.begin(), s.samples.end(), out.samples.begin() + cpp_len);
    out.has_cpp = cpp_len > 0;
    return out;
}

TimeBlock remove_cpp(const TimeBlock& r, int cpp_len) {
    if (cpp_len < 0 || static_cast<std::size_t>(cpp_len) >= r.samples.size()) {
        throw std::invalid_argument("remove_cpp: bad cpp_len");
    }
    TimeBlock out;
    out.samples.assign(r.samples.begin() + cpp_len, r.samples.end());
    out.has_cpp = false;
    return out;
}

}  // namespace afdm

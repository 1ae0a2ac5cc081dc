#include "afdm/gps.hpp"

#include <cmath>
#include <stdexcept>

namespace afdm {

namespace {

constexpr double kPi = 3.14159265358979323846;

// pi*10^k / floor(pi*10^k): the rational-denominator factor that keeps the
// candidate values off exact rationals while pinning their decimal precision.
double precision_ratio(int k) {
    if (k < 0) throw std::invalid_argument("omega_values: k must be >= 0");
    const double scaled = kPi * std::pow(10.0, k);
    return scaled / std::floor(scaled);
}

std::uint64_t checked_pow(std::uint64_t base, int exp, std::uint64_t limit) {
    std::uint64_t v = 1;
    for (int i = 0; i < exp; ++i) {
        if (v > limit / base) return limit + 1;  // saturate
        v *= base;
    }
    return v;
}

}  // namespace

std::vector<double> omega_values(int m, int w_count, int k) {
    if (m < 1) throw std::invalid_argument("omega_values: m must be >= 1 (subcarrier 0 is fixed)");
    if (w_count < 1) throw std::invalid_argument("omega_values: W must be >= 1");
    const double ratio = precision_ratio(k);
    const double m2 = static_cast<double>(m) * static_cast<double>(m);
    std::vector<double> out(static_cast<std::size_t>(w_count));
    if (w_count == 2) {
        const double a = ratio / (4.0 * m2);
        out[0] = a;
        out[1] = -a;
        return out;
    }
    for (int w = 1; w <= w_count; ++w) {
        out[static_cast<std::size_t>(w - 1)] =
            (static_cast<double>(w) - 0.5) * ratio / (static_cast<double>(w_count) * m2);
    }
    return out;
}

std::vector<int> make_groups(int n_subcarriers, int group_count, GroupPattern pattern) {
    if (n_subcarriers < 1 || group_count < 1 || n_subcarriers % group_count != 0) {
        throw std::invalid_argument("make_groups: V must divide N");
    }
    std::vector<int> groups(static_cast<std::size_t>(n_subcarriers));
    const int per_group = n_subcarriers / group_count;
    for (int m = 0; m < n_subcarriers; ++m) {
        groups[static_cast<std::size_t>(m)] =
            pattern == GroupPattern::adjacent ? m / per_group + 1 : m % group_count + 1;
    }
    return groups;
}

PreChirpProfile profile_from_selection(int n_subcarriers, int group_count, int w_count, int k,
                                       GroupPattern pattern, const std::vector<int>& selection) {
    if (static_cast<int>(selection.size()) != group_count) {
        throw std::invalid_argument("profile_from_selection: selection size != V");
    }
    for (int w : selection) {
        if (w < 1 || w > w_count) {
            throw std::invalid_argument("profile_from_selection: selection entry out of [1, W]");
        }
    }
    const std::vector<int> groups = make_groups(n_subcarriers, group_count, pattern);
    PreChirpProfile p;
    p.c2_values.assign(static_cast<std::size_t>(n_subcarriers), 0.0);
    for (int m = 1; m < n_subcarriers; ++m) {
        const int w = selection[static_cast<std::size_t>(groups[static_cast<std::size_t>(m)] - 1)];
        p.c2_values[static_cast<std::size_t>(m)] = omega_values(m, w_count, k)[static_cast<std::size_t>(w - 1)];
    }
    p.group_count = group_count;
    p.candidate_count = w_count;
    p.precision_exponent = k;
    p.pattern = pattern;
    p.selection = selection;
    p.has_selection_meta = true;
    return p;
}

PreChirpProfile initial_profile(int n_subcarriers, int group_count, int w_count, int k,
                                GroupPattern pattern) {
    return profile_from_selection(n_subcarriers, group_count, w_count, k, pattern,
                                  std::vector<int>(static_cast<std::size_t>(group_count), 1));
}

GpsResult gps_select(const ComplexVec& x, const AfdmConfig& cfg, int group_count, int w_count,
                     int k, GroupPattern pattern, int l_select) {
    const int n = cfg.n_subcarriers;
    if (static_cast<int>(x.size()) != n) throw std::invalid_argument("gps_select: block length != N");
    if (l_select < 1) throw std::invalid_argument("gps_select: l_select must be >= 1");

    std::vector<int> selection(static_cast<std::size_t>(group_count), 1);
    PaprSample papr_min = papr(x, cfg.c1, profile_from_selection(n, group_count, w_count, k, pattern, selection),
                               l_select);
    std::uint64_t n_eval = 1;

    for (int g = 0; g < group_count; ++g) {
        for (int w = 2; w <= w_count; ++w) {
            std::vector<int> candidate = selection;
            candidate[static_cast<std::size_t>(g)] = w;
            const PaprSample p =
                papr(x, cfg.c1, profile_from_selection(n, group_count, w_count, k, pattern, candidate),
                     l_select);
            ++n_eval;
            if (p.papr_linear < papr_min.papr_linear) {
                papr_min = p;
                selection = std::move(candidate);
            }
        }
    }

    GpsResult result;
    result.papr_min = papr_min;
    result.profile = profile_from_selection(n, group_count, w_count, k, pattern, selection);
    result.side_bits = side_bits_encode(selection, w_count);
    result.n_evaluations = n_eval;
    return result;
}

GpsResult enumerate_optimal(const ComplexVec& x, const AfdmConfig& cfg, int group_count,
                            int w_count, int k, GroupPattern pattern, int l_select,
                            std::uint64_t budget) {
    const int n = cfg.n_subcarriers;
    if (static_cast<int>(x.size()) != n) throw std::invalid_argument("enumerate_optimal: block length != N");
    if (l_select < 1) throw std::invalid_argument("enumerate_optimal: l_select must be >= 1");
    const std::uint64_t total = checked_pow(static_cast<std::uint64_t>(w_count), group_count, budget);
    if (total > budget) {
        throw std::invalid_argument(
            "enumerate_optimal: W^V exceeds the enumeration budget; use gps_select instead");
    }

    std::vector<int> selection(static_cast<std::size_t>(group_count), 1);
    PaprSample papr_min = papr(x, cfg.c1, profile_from_selection(n, group_count, w_count, k, pattern, selection),
                               l_select);
    std::uint64_t n_eval = 1;

    // lexicographic order over tuples; first strict improvement wins, so ties
    // resolve to the smallest tuple
    std::vector<int> tuple(static_cast<std::size_t>(group_count), 1);
    for (std::uint64_t it = 0; it < total; ++it) {
        const PaprSample p =
            papr(x, cfg.c1, profile_from_selection(n, group_count, w_count, k, pattern, tuple), l_select);
        ++n_eval;
        if (p.papr_linear < papr_min.papr_linear) {
            papr_min = p;
            selection = tuple;
        }
        // increment the tuple, least-significant digit last
        for (int g = group_count - 1; g >= 0; --g) {
            if (tuple[static_cast<std::size_t>(g)] < w_count) {
                ++tuple[static_cast<std::size_t>(g)];
                break;
            }
            tuple[static_cast<std::size_t>(g)] = 1;
        }
    }

    GpsResult result;
    result.papr_min = papr_min;
    result.profile = profile_from_selection(n, group_count, w_count, k, pattern, selection);
    result.side_bits = side_bits_encode(selection, w_count);
    result.n_evaluations = n_eval;
    return result;
}

int side_bits_count(int group_count, int w_count) {
    if (group_count < 1 || w_count < 1) throw std::invalid_argument("side_bits_count: bad V or W");
    if (w_count == 1) return 0;
    unsigned __int128 total = 1;
    const unsigned __int128 limit = static_cast<unsigned __int128>(1) << 126;
    for (int g = 0; g < group_count; ++g) {
        if (total > limit / static_cast<unsigned>(w_count)) {
            throw std::invalid_argument("side_bits_count: W^V too large to encode");
        }
        total *= static_cast<unsigned>(w_count);
    }
    int bits = 0;
    unsigned __int128 v = total - 1;
    while (v != 0) {
        ++bits;
        v >>= 1;
    }
    return bits;
}

BitVec side_bits_encode(const std::vector<int>& selection, int w_count) {
    const int v = static_cast<int>(selection.size());
    const int bits = side_bits_count(v, w_count);
    unsigned __int128 value = 0;
    for (int g = 0; g < v; ++g) {
        const int s = selection[static_cast<std::size_t>(g)];
        if (s < 1 || s > w_count) {
            throw std::invalid_argument("side_bits_encode: selection entry out of [1, W]");
        }
        value = value * static_cast<unsigned>(w_count) + static_cast<unsigned>(s - 1);
    }
    BitVec out(static_cast<std::size_t>(bits));
    for (int b = 0; b < bits; ++b) {
        out[static_cast<std::size_t>(b)] =
            static_cast<std::uint8_t>((value >> (bits - 1 - b)) & 1u);
    }
    return out;
}

std::vector<int> side_bits_decode(const BitVec& bits, int group_count, int w_count) {
    const int expected = side_bits_count(group_count, w_count);
    if (static_cast<int>(bits.size()) != expected) {
        throw std::invalid_argument("side_bits_decode: wrong bit-string length");
    }
    unsigned __int128 value = 0;
    for (std::uint8_t b : bits) {
        if (b > 1) throw std::invalid_argument("side_bits_decode: non-binary entry");
        value = (value << 1) | b;
    }
    unsigned __int128 total = 1;
    for (int g = 0; g < group_count; ++g) total *= static_cast<unsigned>(w_count);
    if (value >= total) throw std::invalid_argument("side_bits_decode: value out of range");
    std::vector<int> selection(static_cast<std::size_t>(group_count));
    for (int g = group_count - 1; g >= 0; --g) {
        selection[static_cast<std::size_t>(g)] =
            static_cast<int>(value % static_cast<unsigned>(w_count)) + 1;
        value /= static_cast<unsigned>(w_count);
    }
    return selection;
}

}  // namespace afdm

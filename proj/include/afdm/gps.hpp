// gps.hpp - grouped pre-chirp selection: candidate sets, grouping patterns,
// the greedy per-group search, the enumerated baseline, and side-bit coding

#pragma once

#include <cstdint>
#include <vector>

#include "afdm/modem.hpp"
#include "afdm/papr.hpp"
#include "afdm/qam.hpp"

namespace afdm {

/// The W candidate pre-chirp values for subcarrier m (m >= 1).
///
/// W == 2 uses the paired values +-pi*10^k / (4 m^2 floor(pi*10^k)); larger W
/// spreads the candidates as (w - 1/2) * pi*10^k / (W m^2 floor(pi*10^k)),
/// w = 1..W. Either way the per-candidate phase steps 2pi*delta*m^2 are
/// uniform on the circle and independent of m.
std::vector<double> omega_values(int m, int w_count, int k);

struct OmegaSet {
    int w_count = 2;
    int k = 2;
    std::vector<double> values(int m) const { return omega_values(m, w_count, k); }
};

/// 1-based group index per subcarrier. adjacent: m -> floor(m/(N/V)) + 1,
/// comb: m -> (m mod V) + 1. V must divide N.
std::vector<int> make_groups(int n_subcarriers, int group_count, GroupPattern pattern);

/// Build the profile for one selection tuple (V entries, each in [1, W]).
/// Subcarrier 0 keeps c2 = 0; every other subcarrier m gets
/// omega_values(m, W, k)[selection[group(m)] - 1].
PreChirpProfile profile_from_selection(int n_subcarriers, int group_count, int w_count, int k,
                                       GroupPattern pattern, const std::vector<int>& selection);

/// All-groups-at-w=1 profile (the positive-value initialization).
PreChirpProfile initial_profile(int n_subcarriers, int group_count, int w_count, int k,
                                GroupPattern pattern);

struct GpsResult {
    PaprSample papr_min;
    PreChirpProfile profile;
    BitVec side_bits;
    std::uint64_t n_evaluations = 0;
};

/// Greedy grouped pre-chirp selection.
///
/// Starts from the all-w=1 profile, then walks the groups in index order; for
/// each group, alternatives w = 2..W are tried in order, and a change is kept
/// only when it strictly lowers the running minimum (ties revert). Exactly
/// 1 + V*(W-1) PAPR evaluations, each at oversampling factor l_select.
GpsResult gps_select(const ComplexVec& x, const AfdmConfig& cfg, int group_count, int w_count,
                     int k, GroupPattern pattern, int l_select);

/// Exhaustive baseline: every one of the W^V selection tuples is evaluated
/// (plus the initialization), ties broken toward the lexicographically
/// smallest tuple. Errors out when W^V exceeds the budget.
GpsResult enumerate_optimal(const ComplexVec& x, const AfdmConfig& cfg, int group_count,
                            int w_count, int k, GroupPattern pattern, int l_select,
                            std::uint64_t budget = (1ULL << 20));

/// ceil(log2(W^V)) - the number of side-information bits.
int side_bits_count(int group_count, int w_count);

/// Mixed-radix big-endian coding of the selection tuple; group 1 is the
/// highest-order digit and the bit string is MSB-first.
BitVec side_bits_encode(const std::vector<int>& selection, int w_count);
std::vector<int> side_bits_decode(const BitVec& bits, int group_count, int w_count);

}  // namespace afdm

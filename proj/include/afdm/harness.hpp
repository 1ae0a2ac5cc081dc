// harness.hpp - seeded Monte Carlo experiment driver, config ingestion and
// CSV/JSON/SVG emission

#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "afdm/channel.hpp"
#include "afdm/gps.hpp"
#include "afdm/modem.hpp"
#include "afdm/papr.hpp"

namespace afdm {

/// Invalid configuration input (maps to CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SideInfoMode { genie, embedded };
enum class OutputFormat { csv, json };

struct ExperimentConfig {
    std::string experiment = "ccdf";  // ccdf | ber | sweep | selftest
    int n_subcarriers = 64;
    int mod_order = 16;
    std::vector<int> v_list = {4};
    std::vector<int> w_list = {2};
    int k = 2;
    std::vector<GroupPattern> patterns = {GroupPattern::adjacent};
    std::vector<std::string> schemes = {"conv", "gps"};
    std::uint64_t n_blocks = 10000;
    std::vector<double> snr_db = {10, 12, 14, 16, 18, 20, 22, 24};
    std::uint64_t seed = 1;
    int oversample = 4;         // L for PAPR measurement
    int oversample_select = 4;  // L inside the selection loop
    SideInfoMode side_info_mode = SideInfoMode::genie;
    std::string out_dir = ".";
    std::uint64_t enum_budget = 1ULL << 20;
    int threads = 1;
    std::uint64_t min_errors = 0;  // 0: always run n_blocks trials per point
    int channel_paths = 3;
    int channel_l_max = 2;
    int channel_alpha_max = 1;
    bool channel_integer_doppler = true;
    OutputFormat format = OutputFormat::csv;

    /// Parse a flat JSON object; any unknown key is a ConfigError naming it.
    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig from_json_file(const std::string& path);

    std::string to_canonical_json() const;
    std::uint64_t config_hash() const;
    void validate() const;

    AfdmConfig afdm() const;
    ChannelScenario scenario() const;
};

// ----- CCDF / sweep experiments -----

struct CcdfCell {
    std::string scheme;  // conv | ofdm | otfs | gps | enum
    int group_count = 0;  // 0 when the scheme has no selection structure
    int w_count = 0;
    std::string pattern = "-";
    std::vector<double> papr_db;  // one sample per block
    CcdfCurve curve;
};

struct CcdfResult {
    std::vector<CcdfCell> cells;
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;
    std::uint64_t n_blocks = 0;
};

CcdfResult run_ccdf(const ExperimentConfig& cfg);

// ----- BER experiment -----

struct BerPoint {
    double snr_db = 0.0;
    std::uint64_t n_bits = 0;
    std::uint64_t n_errors = 0;

    double ber() const { return n_bits == 0 ? 0.0 : static_cast<double>(n_errors) / static_cast<double>(n_bits); }
};

struct BerCell {
    std::string scheme;          // conv | gps
    std::string side_info_mode;  // none | genie | embedded
    int group_count = 0;
    int w_count = 0;
    std::string pattern = "-";
    std::vector<BerPoint> points;
};

struct BerResult {
    std::vector<BerCell> cells;
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;
};

BerResult run_ber(const ExperimentConfig& cfg);

/// N*b / (N*b + ceil(log2 W^V)): payload fraction once side bits are carried.
double spectral_efficiency(int n_subcarriers, int bits_per_symbol, int group_count, int w_count);

// ----- reports -----

std::string ccdf_to_csv(const CcdfResult& r);
std::string ccdf_to_json(const CcdfResult& r);
std::string sweep_summary_csv(const CcdfResult& r, const std::vector<double>& levels);
std::string ber_to_csv(const BerResult& r);
std::string ber_to_json(const BerResult& r);

/// Render a CSV produced by this tool as a log-y SVG plot. kind is "ccdf" or
/// "ber". Malformed input raises ConfigError with the offending line number.
std::string render_plot_svg(const std::string& csv_text, const std::string& kind);

/// Quick oracle-equivalence suite; prints one line per check.
bool run_selftest(std::ostream& log);

/// Run the configured experiment and write its outputs under cfg.out_dir.
/// Returns the list of files written.
std::vector<std::string> run_experiment_to_files(const ExperimentConfig& cfg);

}  // namespace afdm

#include "afdm/harness.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "afdm/baselines.hpp"
#include "afdm/dft.hpp"
#include "afdm/qam.hpp"
#include "afdm/receiver.hpp"
#include "json.hpp"

namespace afdm {

namespace {

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Runs fn(i) for i in [begin, end). Results must go into per-index slots:
// the partitioning then has no effect on the output.
void parallel_for(std::uint64_t begin, std::uint64_t end, int threads,
                  const std::function<void(std::uint64_t)>& fn) {
    if (threads <= 1 || end - begin < 2) {
        for (std::uint64_t i = begin; i < end; ++i) fn(i);
        return;
    }
    const std::uint64_t span = end - begin;
    const std::uint64_t per = (span + static_cast<std::uint64_t>(threads) - 1) / static_cast<std::uint64_t>(threads);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        const std::uint64_t lo = begin + per * static_cast<std::uint64_t>(t);
        const std::uint64_t hi = std::min(end, lo + per);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::uint64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (std::thread& t : pool) t.join();
}

BitVec random_bits(std::size_t count, Rng& rng) {
    BitVec bits(count);
    for (std::uint8_t& b : bits) b = rng.bit();
    return bits;
}

// unit-variance circular complex Gaussian vector
ComplexVec unit_noise(std::size_t n, Rng& rng) {
    ComplexVec w(n);
    const double s = std::sqrt(0.5);
    for (cd& z : w) {
        double g1 = 0.0, g2 = 0.0;
        rng.gaussian_pair(g1, g2);
        z = cd(s * g1, s * g2);
    }
    return w;
}

ComplexVec add_scaled_noise(const ComplexVec& s, const ComplexVec& unit, double n0) {
    ComplexVec out(s.size());
    const double a = std::sqrt(n0);
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i] + a * unit[i];
    return out;
}

// Conventional AFDM: one (irrational-style) pre-chirp value on every
// subcarrier; the k=2 positive candidate of subcarrier 1 is used.
PreChirpProfile conventional_profile(int n, int k) {
    return PreChirpProfile::uniform(n, omega_values(1, 2, k)[0]);
}

int isqrt_exact(int n) {
    const int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    return r * r == n ? r : -1;
}

struct ParsedKey {
    bool seen = false;
};

template <typename T>
T get_typed(const nlohmann::json& j, const std::string& key) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError("config key '" + key + "' has the wrong type");
    }
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    ExperimentConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (key == "experiment") {
            cfg.experiment = get_typed<std::string>(value, key);
        } else if (key == "n_subcarriers") {
            cfg.n_subcarriers = get_typed<int>(value, key);
        } else if (key == "mod_order") {
            cfg.mod_order = get_typed<int>(value, key);
        } else if (key == "v_list") {
            cfg.v_list = get_typed<std::vector<int>>(value, key);
        } else if (key == "w_list") {
            cfg.w_list = get_typed<std::vector<int>>(value, key);
        } else if (key == "k") {
            cfg.k = get_typed<int>(value, key);
        } else if (key == "patterns") {
            cfg.patterns.clear();
            for (const std::string& s : get_typed<std::vector<std::string>>(value, key)) {
                cfg.patterns.push_back(group_pattern_from_string(s));
            }
        } else if (key == "schemes") {
            cfg.schemes = get_typed<std::vector<std::string>>(value, key);
        } else if (key == "n_blocks") {
            cfg.n_blocks = get_typed<std::uint64_t>(value, key);
        } else if (key == "snr_db") {
            cfg.snr_db = get_typed<std::vector<double>>(value, key);
        } else if (key == "seed") {
            cfg.seed = get_typed<std::uint64_t>(value, key);
        } else if (key == "oversample") {
            cfg.oversample = get_typed<int>(value, key);
        } else if (key == "oversample_select") {
            cfg.oversample_select = get_typed<int>(value, key);
        } else if (key == "side_info_mode") {
            const std::string s = get_typed<std::string>(value, key);
            if (s == "genie") {
                cfg.side_info_mode = SideInfoMode::genie;
            } else if (s == "embedded") {
                cfg.side_info_mode = SideInfoMode::embedded;
            } else {
                throw ConfigError("side_info_mode must be 'genie' or 'embedded'");
            }
        } else if (key == "out_dir") {
            cfg.out_dir = get_typed<std::string>(value, key);
        } else if (key == "enum_budget") {
            cfg.enum_budget = get_typed<std::uint64_t>(value, key);
        } else if (key == "threads") {
            cfg.threads = get_typed<int>(value, key);
        } else if (key == "min_errors") {
            cfg.min_errors = get_typed<std::uint64_t>(value, key);
        } else if (key == "channel_paths") {
            cfg.channel_paths = get_typed<int>(value, key);
        } else if (key == "channel_l_max") {
            cfg.channel_l_max = get_typed<int>(value, key);
        } else if (key == "channel_alpha_max") {
            cfg.channel_alpha_max = get_typed<int>(value, key);
        } else if (key == "channel_integer_doppler") {
            cfg.channel_integer_doppler = get_typed<bool>(value, key);
        } else if (key == "format") {
            const std::string s = get_typed<std::string>(value, key);
            if (s == "csv") {
                cfg.format = OutputFormat::csv;
            } else if (s == "json") {
                cfg.format = OutputFormat::json;
            } else {
                throw ConfigError("format must be 'csv' or 'json'");
            }
        } else {
            throw ConfigError("unknown config key: " + key);
        }
    }
    cfg.validate();
    return cfg;
}

void ExperimentConfig::validate() const {
    if (experiment != "ccdf" && experiment != "ber" && experiment != "sweep" &&
        experiment != "selftest") {
        throw ConfigError("experiment must be one of ccdf|ber|sweep|selftest");
    }
    if (n_subcarriers < 2) throw ConfigError("n_subcarriers must be >= 2");
    if (mod_order != 16) throw ConfigError("only mod_order = 16 is supported");
    if (n_blocks < 1) throw ConfigError("n_blocks must be >= 1");
    if (k < 0) throw ConfigError("k must be >= 0");
    if (oversample < 1 || oversample_select < 1) throw ConfigError("oversample factors must be >= 1");
    if (threads < 1) throw ConfigError("threads must be >= 1");
    if (v_list.empty() || w_list.empty() || patterns.empty()) {
        throw ConfigError("v_list, w_list and patterns must be non-empty");
    }
    for (int v : v_list) {
        if (v < 1 || n_subcarriers % v != 0) {
            throw ConfigError("every v_list entry must divide n_subcarriers");
        }
    }
    for (int w : w_list) {
        if (w < 1) throw ConfigError("w_list entries must be >= 1");
    }
    for (const std::string& s : schemes) {
        if (s != "conv" && s != "ofdm" && s != "otfs" && s != "gps" && s != "enum") {
            throw ConfigError("unknown scheme: " + s);
        }
        if (s == "otfs" && isqrt_exact(n_subcarriers) < 0) {
            throw ConfigError("otfs scheme needs a square grid: n_subcarriers must be a perfect square");
        }
    }
    if (experiment == "ber" && snr_db.empty()) throw ConfigError("ber experiment needs snr_db points");
    if (channel_paths < 1 || channel_l_max < 0 || channel_alpha_max < 0) {
        throw ConfigError("bad channel preset");
    }
    if (channel_l_max >= n_subcarriers) throw ConfigError("channel_l_max must be < n_subcarriers");
    if (channel_paths > channel_l_max + 1) {
        throw ConfigError("channel_paths must be <= channel_l_max + 1 (distinct delays)");
    }
}

// threads, out_dir and format are execution details: they must not change a
// single output byte, so they stay out of the canonical form and the hash.
std::string ExperimentConfig::to_canonical_json() const {
    nlohmann::json j;
    j["experiment"] = experiment;
    j["n_subcarriers"] = n_subcarriers;
    j["mod_order"] = mod_order;
    j["v_list"] = v_list;
    j["w_list"] = w_list;
    j["k"] = k;
    std::vector<std::string> pats;
    for (GroupPattern p : patterns) pats.push_back(to_string(p));
    j["patterns"] = pats;
    j["schemes"] = schemes;
    j["n_blocks"] = n_blocks;
    j["snr_db"] = snr_db;
    j["seed"] = seed;
    j["oversample"] = oversample;
    j["oversample_select"] = oversample_select;
    j["side_info_mode"] = side_info_mode == SideInfoMode::genie ? "genie" : "embedded";
    j["enum_budget"] = enum_budget;
    j["min_errors"] = min_errors;
    j["channel_paths"] = channel_paths;
    j["channel_l_max"] = channel_l_max;
    j["channel_alpha_max"] = channel_alpha_max;
    j["channel_integer_doppler"] = channel_integer_doppler;
    return j.dump();
}

std::uint64_t ExperimentConfig::config_hash() const {
    return fnv1a64(to_canonical_json());
}

AfdmConfig ExperimentConfig::afdm() const {
    return AfdmConfig::make(n_subcarriers, channel_alpha_max, channel_l_max, oversample);
}

ChannelScenario ExperimentConfig::scenario() const {
    ChannelScenario sc;
    sc.n_paths = channel_paths;
    sc.l_max = channel_l_max;
    sc.alpha_max = channel_alpha_max;
    sc.integer_doppler = channel_integer_doppler;
    return sc;
}

double spectral_efficiency(int n_subcarriers, int bits_per_symbol, int group_count, int w_count) {
    if (n_subcarriers < 1 || bits_per_symbol < 1 || group_count < 1 || w_count < 1) {
        throw std::invalid_argument("spectral_efficiency: arguments must be positive");
    }
    const double payload = static_cast<double>(n_subcarriers) * bits_per_symbol;
    const double side = static_cast<double>(side_bits_count(group_count, w_count));
    return payload / (payload + side);
}

// ---------------------------------------------------------------------------
// CCDF / sweep
// ---------------------------------------------------------------------------

namespace {

std::vector<double> default_threshold_grid() {
    std::vector<double> t;
    for (int i = 0; i <= 300; ++i) t.push_back(0.05 * static_cast<double>(i));
    return t;
}

struct CellSpec {
    std::string scheme;
    int v = 0;
    int w = 0;
    GroupPattern pattern = GroupPattern::adjacent;
    bool has_groups = false;
};

std::vector<CellSpec> expand_cells(const ExperimentConfig& cfg) {
    std::vector<CellSpec> cells;
    for (const std::string& s : cfg.schemes) {
        if (s == "gps" || s == "enum") {
            for (int v : cfg.v_list) {
                for (int w : cfg.w_list) {
                    for (GroupPattern p : cfg.patterns) {
                        cells.push_back(CellSpec{s, v, w, p, true});
                    }
                }
            }
        } else {
            cells.push_back(CellSpec{s, 0, 0, GroupPattern::adjacent, false});
        }
    }
    return cells;
}

}  // namespace

CcdfResult run_ccdf(const ExperimentConfig& cfg) {
    cfg.validate();
    const int n = cfg.n_subcarriers;
    const AfdmConfig acfg = cfg.afdm();
    const PreChirpProfile conv = conventional_profile(n, cfg.k);
    const PreChirpProfile zero = PreChirpProfile::zero(n);
    const std::vector<CellSpec> specs = expand_cells(cfg);
    const int sq = isqrt_exact(n);

    // preflight the enumeration budget before any allocation-heavy work
    for (const CellSpec& c : specs) {
        if (c.scheme == "enum") {
            double total = 1.0;
            for (int g = 0; g < c.v; ++g) total *= c.w;
            if (total > static_cast<double>(cfg.enum_budget)) {
                throw ConfigError("enum scheme exceeds enum_budget; use gps instead");
            }
        }
    }

    std::vector<std::vector<double>> samples(specs.size(),
                                             std::vector<double>(cfg.n_blocks, 0.0));

    parallel_for(0, cfg.n_blocks, cfg.threads, [&](std::uint64_t b) {
        Rng data_rng(derive_stream(cfg.seed, kSaltDataBlock, b));
        const ComplexVec x = qam16_map(random_bits(static_cast<std::size_t>(4 * n), data_rng));
        for (std::size_t ci = 0; ci < specs.size(); ++ci) {
            const CellSpec& c = specs[ci];
            double sample_db = 0.0;
            if (c.scheme == "conv") {
                sample_db = papr(x, acfg.c1, conv, cfg.oversample).papr_db;
            } else if (c.scheme == "ofdm") {
                sample_db = papr(x, 0.0, zero, cfg.oversample).papr_db;
            } else if (c.scheme == "otfs") {
                OtfsGrid grid;
                grid.doppler_bins = sq;
                grid.delay_bins = sq;
                grid.symbols = x;
                sample_db = papr_of_time_block(otfs_modulate(grid).samples, cfg.oversample).papr_db;
            } else {
                const GpsResult r =
                    c.scheme == "gps"
                        ? gps_select(x, acfg, c.v, c.w, cfg.k, c.pattern, cfg.oversample_select)
                        : enumerate_optimal(x, acfg, c.v, c.w, cfg.k, c.pattern,
                                            cfg.oversample_select, cfg.enum_budget);
                sample_db = cfg.oversample_select == cfg.oversample
                                ? r.papr_min.papr_db
                                : papr(x, acfg.c1, r.profile, cfg.oversample).papr_db;
            }
            samples[ci][b] = sample_db;
        }
    });

    CcdfResult result;
    result.seed = cfg.seed;
    result.config_hash = cfg.config_hash();
    result.n_blocks = cfg.n_blocks;
    const std::vector<double> grid = default_threshold_grid();
    for (std::size_t ci = 0; ci < specs.size(); ++ci) {
        CcdfCell cell;
        cell.scheme = specs[ci].scheme;
        cell.group_count = specs[ci].v;
        cell.w_count = specs[ci].w;
        cell.pattern = specs[ci].has_groups ? to_string(specs[ci].pattern) : "-";
        cell.papr_db = std::move(samples[ci]);
        std::vector<PaprSample> ps(cell.papr_db.size());
        for (std::size_t i = 0; i < cell.papr_db.size(); ++i) {
            ps[i].papr_db = cell.papr_db[i];
            ps[i].papr_linear = std::pow(10.0, cell.papr_db[i] / 10.0);
            ps[i].oversample = cfg.oversample;
        }
        cell.curve = ccdf(ps, grid);
        result.cells.push_back(std::move(cell));
    }
    return result;
}

// ---------------------------------------------------------------------------
// BER
// ---------------------------------------------------------------------------

namespace {

struct BerCellSpec {
    std::string scheme;
    std::string mode;  // none | genie | embedded
    int v = 0;
    int w = 0;
    GroupPattern pattern = GroupPattern::adjacent;
};

struct TrialOutcome {
    std::uint64_t errors = 0;
    std::uint64_t bits = 0;
};

// One transmit/receive pass of a single block; returns the equalized DAFT
// symbols (the caller decides which bins carry payload).
ComplexVec pass_block(const ComplexVec& x, const PreChirpProfile& tx_profile,
                      const PreChirpProfile& rx_profile, const CMat& h_eff_rx,
                      const LtvChannel& ch, double c1, double n0, const ComplexVec& noise_unit) {
    const TimeBlock s = afdm_modulate(x, c1, tx_profile);
    const ComplexVec r = add_scaled_noise(apply_time_channel(ch, c1, s.samples), noise_unit, n0);
    const ComplexVec y = afdm_demodulate(TimeBlock{r, false}, c1, rx_profile);
    return mmse_equalize(y, h_eff_rx, n0);
}

}  // namespace

BerResult run_ber(const ExperimentConfig& cfg) {
    cfg.validate();
    const int n = cfg.n_subcarriers;
    const AfdmConfig acfg = cfg.afdm();
    const ChannelScenario scenario = cfg.scenario();
    const PreChirpProfile conv = conventional_profile(n, cfg.k);
    const std::string mode_name = cfg.side_info_mode == SideInfoMode::genie ? "genie" : "embedded";

    std::vector<BerCellSpec> specs;
    for (const std::string& s : cfg.schemes) {
        if (s == "conv") {
            specs.push_back(BerCellSpec{"conv", "none", 0, 0, GroupPattern::adjacent});
        } else if (s == "gps") {
            for (int v : cfg.v_list) {
                for (int w : cfg.w_list) {
                    for (GroupPattern p : cfg.patterns) {
                        specs.push_back(BerCellSpec{"gps", mode_name, v, w, p});
                    }
                }
            }
        } else {
            throw ConfigError("ber experiment supports schemes conv and gps only");
        }
    }

    BerResult result;
    result.seed = cfg.seed;
    result.config_hash = cfg.config_hash();
    for (const BerCellSpec& s : specs) {
        BerCell cell;
        cell.scheme = s.scheme;
        cell.side_info_mode = s.mode;
        cell.group_count = s.v;
        cell.w_count = s.w;
        cell.pattern = s.scheme == "gps" ? to_string(s.pattern) : "-";
        result.cells.push_back(cell);
    }

    const std::uint64_t chunk = 512;
    for (std::size_t si = 0; si < cfg.snr_db.size(); ++si) {
        const double snr = cfg.snr_db[si];
        const double n0 = std::pow(10.0, -snr / 10.0);

        std::vector<BerPoint> points(specs.size());
        for (std::size_t ci = 0; ci < specs.size(); ++ci) points[ci].snr_db = snr;

        std::vector<std::vector<TrialOutcome>> slot(specs.size());
        std::uint64_t done = 0;
        while (done < cfg.n_blocks) {
            const std::uint64_t batch = std::min(chunk, cfg.n_blocks - done);
            for (auto& v : slot) v.assign(batch, TrialOutcome{});

            parallel_for(0, batch, cfg.threads, [&](std::uint64_t bi) {
                // Streams are keyed by trial index alone: schemes share the
                // draws (paired comparisons) and so do the SNR points, which
                // turns the horizontal crossing estimates into low-variance
                // common-random-number measurements.
                const std::uint64_t trial = done + bi;

                Rng data0(derive_stream(cfg.seed, kSaltDataBlock, trial, 0));
                Rng data1(derive_stream(cfg.seed, kSaltDataBlock, trial, 1));
                const BitVec bits_a = random_bits(static_cast<std::size_t>(4 * n), data0);
                const BitVec bits_b = random_bits(static_cast<std::size_t>(4 * n), data1);
                const ComplexVec x_a = qam16_map(bits_a);

                Rng ch_rng(derive_stream(cfg.seed, kSaltChannel, trial));
                const LtvChannel ch = scenario.draw(n, ch_rng);

                Rng noise0_rng(derive_stream(cfg.seed, kSaltNoise, trial, 0));
                Rng noise1_rng(derive_stream(cfg.seed, kSaltNoise, trial, 1));
                const ComplexVec noise0 = unit_noise(static_cast<std::size_t>(n), noise0_rng);
                const ComplexVec noise1 = unit_noise(static_cast<std::size_t>(n), noise1_rng);

                const CMat heff_conv = build_heff(ch, acfg.c1, conv);

                for (std::size_t ci = 0; ci < specs.size(); ++ci) {
                    const BerCellSpec& spec = specs[ci];
                    TrialOutcome& out = slot[ci][bi];

                    if (spec.scheme == "conv") {
                        const ComplexVec eq =
                            pass_block(x_a, conv, conv, heff_conv, ch, acfg.c1, n0, noise0);
                        const BerCount c = ber_count(bits_a, qam16_demap(eq));
                        out.errors = c.errors;
                        out.bits = c.total;
                        continue;
                    }

                    if (spec.mode == "genie") {
                        const GpsResult g = gps_select(x_a, acfg, spec.v, spec.w, cfg.k,
                                                       spec.pattern, cfg.oversample_select);
                        const CMat heff_g = build_heff(ch, acfg.c1, g.profile);
                        const ComplexVec eq =
                            pass_block(x_a, g.profile, g.profile, heff_g, ch, acfg.c1, n0, noise0);
                        const BerCount c = ber_count(bits_a, qam16_demap(eq));
                        out.errors = c.errors;
                        out.bits = c.total;
                        continue;
                    }

                    // Embedded side information, steady-state block shape: the
                    // lowest-index B DAFT symbols of every block form a BPSK
                    // header region and displace payload. The data block's
                    // header stands in for the previous block's side bits; its
                    // own selection bits ride in the companion block's header,
                    // which is sent with the conventional (a-priori known)
                    // profile. The operating SNR is charged with the displaced
                    // symbols, 10*log10(N/(N-B)), so both curves compare at
                    // equal energy per payload bit.
                    const int side_len = side_bits_count(spec.v, spec.w);
                    const std::size_t payload_syms = static_cast<std::size_t>(n - side_len);
                    const double n0e = n0 * static_cast<double>(n) / static_cast<double>(payload_syms);

                    // data block: placeholder header + payload from bits_a
                    const BitVec data_bits(bits_a.begin(), bits_a.begin() + 4 * payload_syms);
                    ComplexVec x_data(static_cast<std::size_t>(n), cd(1.0, 0.0));
                    {
                        const ComplexVec payload = qam16_map(data_bits);
                        std::copy(payload.begin(), payload.end(), x_data.begin() + side_len);
                    }
                    const GpsResult g = gps_select(x_data, acfg, spec.v, spec.w, cfg.k,
                                                   spec.pattern, cfg.oversample_select);

                    // companion block: functional header + payload from bits_b
                    const BitVec comp_bits(bits_b.begin(), bits_b.begin() + 4 * payload_syms);
                    ComplexVec x_comp(static_cast<std::size_t>(n), cd(1.0, 0.0));
                    {
                        const ComplexVec payload = qam16_map(comp_bits);
                        std::copy(payload.begin(), payload.end(), x_comp.begin() + side_len);
                        for (int i = 0; i < side_len; ++i) {
                            x_comp[static_cast<std::size_t>(i)] =
                                g.side_bits[static_cast<std::size_t>(i)] ? -1.0 : 1.0;
                        }
                    }

                    const ComplexVec comp_eq =
                        pass_block(x_comp, conv, conv, heff_conv, ch, acfg.c1, n0e, noise1);
                    BitVec side_hat(static_cast<std::size_t>(side_len));
                    for (int i = 0; i < side_len; ++i) {
                        side_hat[static_cast<std::size_t>(i)] =
                            comp_eq[static_cast<std::size_t>(i)].real() >= 0.0 ? 0 : 1;
                    }
                    const BitVec comp_rx =
                        qam16_demap(ComplexVec(comp_eq.begin() + side_len, comp_eq.end()));

                    PreChirpProfile profile_hat = g.profile;
                    if (side_len > 0) {
                        try {
                            profile_hat = profile_from_selection(
                                n, spec.v, spec.w, cfg.k, spec.pattern,
                                side_bits_decode(side_hat, spec.v, spec.w));
                        } catch (const std::invalid_argument&) {
                            // undecodable side bits: fall back to the initialization
                            profile_hat = initial_profile(n, spec.v, spec.w, cfg.k, spec.pattern);
                        }
                    }
                    const CMat heff_hat = build_heff(ch, acfg.c1, profile_hat);
                    const ComplexVec data_eq =
                        pass_block(x_data, g.profile, profile_hat, heff_hat, ch, acfg.c1, n0e, noise0);
                    const BitVec data_rx =
                        qam16_demap(ComplexVec(data_eq.begin() + side_len, data_eq.end()));

                    const BerCount cd = ber_count(data_bits, data_rx);
                    const BerCount cp = ber_count(comp_bits, comp_rx);
                    out.errors = cd.errors + cp.errors;
                    out.bits = cd.total + cp.total;
                }
            });

            for (std::size_t ci = 0; ci < specs.size(); ++ci) {
                for (std::uint64_t bi = 0; bi < batch; ++bi) {
                    points[ci].n_errors += slot[ci][bi].errors;
                    points[ci].n_bits += slot[ci][bi].bits;
                }
            }
            done += batch;

            if (cfg.min_errors > 0) {
                std::uint64_t least = UINT64_MAX;
                for (const BerPoint& p : points) least = std::min(least, p.n_errors);
                if (least >= cfg.min_errors) break;
            }
        }

        for (std::size_t ci = 0; ci < specs.size(); ++ci) {
            result.cells[ci].points.push_back(points[ci]);
        }
    }
    return result;
}

}  // namespace afdm

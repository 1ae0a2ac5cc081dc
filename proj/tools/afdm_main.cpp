// afdm_main.cpp - command-line front end for the AFDM/GPS simulator

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "afdm/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericalError = 3;

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::string format;
    std::int64_t seed = -1;
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "experiment config (flat JSON)")->required();
    cmd->add_option("--seed", opts.seed, "override the config seed");
    cmd->add_option("--out", opts.out_dir, "override the output directory");
    cmd->add_option("--format", opts.format, "csv (default) or json mirror")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--threads", opts.threads, "worker threads (deterministic for any count)");
}

int run_experiment(const std::string& experiment, const CommonOpts& opts) {
    afdm::ExperimentConfig cfg = afdm::ExperimentConfig::from_json_file(opts.config_path);
    cfg.experiment = experiment;
    if (opts.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opts.seed);
    if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
    if (!opts.format.empty()) cfg.format = opts.format == "json" ? afdm::OutputFormat::json : afdm::OutputFormat::csv;
    if (opts.threads > 0) cfg.threads = opts.threads;
    cfg.validate();
    for (const std::string& f : afdm::run_experiment_to_files(cfg)) {
        std::cout << "wrote " << f << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"AFDM transceiver simulator with grouped pre-chirp selection"};
    app.require_subcommand(1);

    CommonOpts ccdf_opts, ber_opts, sweep_opts;
    CLI::App* ccdf = app.add_subcommand("ccdf", "PAPR CCDF experiment");
    add_common(ccdf, ccdf_opts);
    CLI::App* ber = app.add_subcommand("ber", "BER-vs-SNR experiment");
    add_common(ber, ber_opts);
    CLI::App* sweep = app.add_subcommand("sweep", "CCDF experiment plus threshold summary");
    add_common(sweep, sweep_opts);

    CLI::App* selftest = app.add_subcommand("selftest", "run the oracle-equivalence suite");

    std::string plot_in, plot_kind = "ccdf", plot_out;
    CLI::App* plot = app.add_subcommand("plot", "render a result CSV as an SVG");
    plot->add_option("--in", plot_in, "input CSV produced by this tool")->required();
    plot->add_option("--kind", plot_kind, "ccdf or ber")->check(CLI::IsMember({"ccdf", "ber"}));
    plot->add_option("--out", plot_out, "output SVG path (default: input with .svg)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ccdf->parsed()) return run_experiment("ccdf", ccdf_opts);
        if (ber->parsed()) return run_experiment("ber", ber_opts);
        if (sweep->parsed()) return run_experiment("sweep", sweep_opts);
        if (selftest->parsed()) {
            return afdm::run_selftest(std::cout) ? kExitOk : kExitNumericalError;
        }
        if (plot->parsed()) {
            std::ifstream in(plot_in, std::ios::binary);
            if (!in) throw afdm::ConfigError("cannot open " + plot_in);
            std::stringstream ss;
            ss << in.rdbuf();
            const std::string svg = afdm::render_plot_svg(ss.str(), plot_kind);
            const std::string out_path = plot_out.empty() ? plot_in + ".svg" : plot_out;
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw std::runtime_error("cannot write " + out_path);
            out << svg;
            std::cout << "wrote " << out_path << '\n';
            return kExitOk;
        }
    } catch (const afdm::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumericalError;
    }
    return kExitOk;
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "afdm/harness.hpp"

using namespace afdm;

namespace {

const char* kTinyCcdf = R"({
  "experiment": "ccdf",
  "n_subcarriers": 16,
  "v_list": [4],
  "w_list": [2],
  "patterns": ["adjacent"],
  "schemes": ["conv", "gps"],
  "n_blocks": 200,
  "seed": 7
})";

const char* kTinyBer = R"({
  "experiment": "ber",
  "n_subcarriers": 16,
  "v_list": [4],
  "w_list": [2],
  "patterns": ["adjacent"],
  "schemes": ["conv", "gps"],
  "n_blocks": 40,
  "snr_db": [300.0],
  "seed": 7
})";

}  // namespace

TEST_CASE("config parsing rejects unknown keys by name") {
    try {
        ExperimentConfig::from_json_text(R"({"experiment":"ccdf","n_sucbarriers":64})");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("n_sucbarriers") != std::string::npos);
    }
}

TEST_CASE("config parsing validates values") {
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"n_subcarriers":"x"})"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"experiment":"nope"})"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"v_list":[5],"n_subcarriers":16})"),
                    ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"mod_order":64})"), ConfigError);
    CHECK_THROWS_AS(
        ExperimentConfig::from_json_text(R"({"schemes":["otfs"],"n_subcarriers":24})"),
        ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text("not json"), ConfigError);
    const ExperimentConfig ok = ExperimentConfig::from_json_text(kTinyCcdf);
    CHECK(ok.n_subcarriers == 16);
    CHECK(ok.seed == 7);
}

TEST_CASE("config hash is stable and sensitive") {
    const ExperimentConfig a = ExperimentConfig::from_json_text(kTinyCcdf);
    ExperimentConfig b = a;
    CHECK(a.config_hash() == b.config_hash());
    b.seed = 8;
    CHECK(a.config_hash() != b.config_hash());
}

TEST_CASE("spectral efficiency accounting") {
    CHECK(spectral_efficiency(64, 4, 4, 2) == doctest::Approx(256.0 / 260.0).epsilon(1e-15));
    CHECK(spectral_efficiency(64, 4, 4, 1) == 1.0);
    CHECK(spectral_efficiency(64, 4, 8, 3) == doctest::Approx(256.0 / 269.0).epsilon(1e-15));
    CHECK_THROWS_AS(spectral_efficiency(0, 4, 4, 2), std::invalid_argument);
}

TEST_CASE("ccdf runs are reproducible byte for byte, for any worker count") {
    ExperimentConfig cfg = ExperimentConfig::from_json_text(kTinyCcdf);
    const std::string csv1 = ccdf_to_csv(run_ccdf(cfg));
    const std::string csv2 = ccdf_to_csv(run_ccdf(cfg));
    CHECK(csv1 == csv2);
    cfg.threads = 3;
    CHECK(ccdf_to_csv(run_ccdf(cfg)) == csv1);
}

TEST_CASE("ccdf csv carries the declared schema") {
    const ExperimentConfig cfg = ExperimentConfig::from_json_text(kTinyCcdf);
    const std::string csv = ccdf_to_csv(run_ccdf(cfg));
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "threshold_db,ccdf,n_trials,scheme,V,W,pattern,seed,config_hash");
    CHECK(csv.find("conv") != std::string::npos);
    CHECK(csv.find("gps") != std::string::npos);
}

TEST_CASE("gps improves the tail even on a small paired run") {
    const ExperimentConfig cfg = ExperimentConfig::from_json_text(kTinyCcdf);
    const CcdfResult r = run_ccdf(cfg);
    REQUIRE(r.cells.size() == 2);
    const double conv_t = ccdf_threshold_db(r.cells[0].papr_db, 0.1);
    const double gps_t = ccdf_threshold_db(r.cells[1].papr_db, 0.1);
    CHECK(gps_t <= conv_t);
}

TEST_CASE("noise-free BER is zero for both schemes in both side-info modes") {
    ExperimentConfig cfg = ExperimentConfig::from_json_text(kTinyBer);
    const BerResult genie = run_ber(cfg);
    for (const BerCell& cell : genie.cells) {
        REQUIRE(cell.points.size() == 1);
        CHECK(cell.points[0].n_errors == 0);
        CHECK(cell.points[0].n_bits >= 40 * 16 * 4);
    }
    cfg.side_info_mode = SideInfoMode::embedded;
    const BerResult emb = run_ber(cfg);
    for (const BerCell& cell : emb.cells) CHECK(cell.points[0].n_errors == 0);
}

TEST_CASE("ber runs are reproducible and thread-count independent") {
    ExperimentConfig cfg = ExperimentConfig::from_json_text(kTinyBer);
    cfg.snr_db = {14.0};
    const std::string csv1 = ber_to_csv(run_ber(cfg));
    cfg.threads = 4;
    const std::string csv2 = ber_to_csv(run_ber(cfg));
    CHECK(csv1 == csv2);
    std::istringstream in(csv1);
    std::string header;
    std::getline(in, header);
    CHECK(header == "snr_db,ber,n_bits,scheme,side_info_mode,V,W,seed,n_errors,config_hash");
}

TEST_CASE("sweep summary lists thresholds per cell and level") {
    const ExperimentConfig cfg = ExperimentConfig::from_json_text(kTinyCcdf);
    const CcdfResult r = run_ccdf(cfg);
    const std::string csv = sweep_summary_csv(r, {1e-1, 1e-2});
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "scheme,V,W,pattern,ccdf_level,threshold_db,n_trials,seed,config_hash");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (!line.empty()) ++rows;
    }
    CHECK(rows == 4);  // 2 cells x 2 levels
}

TEST_CASE("plots: polyline per cell, determinism, and error paths") {
    const ExperimentConfig cfg = ExperimentConfig::from_json_text(kTinyCcdf);
    const std::string csv = ccdf_to_csv(run_ccdf(cfg));
    const std::string svg = render_plot_svg(csv, "ccdf");
    std::size_t polylines = 0;
    for (std::size_t pos = 0; (pos = svg.find("<polyline", pos)) != std::string::npos; ++pos) ++polylines;
    CHECK(polylines == 2);
    CHECK(render_plot_svg(csv, "ccdf") == svg);

    CHECK_THROWS_AS(render_plot_svg("threshold_db,ccdf,n_trials,scheme,V,W,pattern,seed,config_hash\n", "ccdf"),
                    ConfigError);
    try {
        render_plot_svg(
            "threshold_db,ccdf,n_trials,scheme,V,W,pattern,seed,config_hash\n1.0,0.5,10,conv,0,0\n",
            "ccdf");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("experiment driver writes the declared files") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "afdm_harness_test";
    fs::remove_all(dir);
    ExperimentConfig cfg = ExperimentConfig::from_json_text(kTinyCcdf);
    cfg.experiment = "sweep";
    cfg.out_dir = dir.string();
    cfg.format = OutputFormat::json;
    const std::vector<std::string> files = run_experiment_to_files(cfg);
    for (const std::string& f : files) CHECK(fs::exists(f));
    CHECK(fs::exists(dir / "ccdf.csv"));
    CHECK(fs::exists(dir / "ccdf.json"));
    CHECK(fs::exists(dir / "sweep.csv"));
    CHECK(fs::exists(dir / "sweep.meta.json"));
    fs::remove_all(dir);
}

TEST_CASE("selftest passes") {
    std::ostringstream log;
    CHECK(run_selftest(log));
    CHECK(log.str().find("[FAIL]") == std::string::npos);
}

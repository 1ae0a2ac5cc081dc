// bindings.cpp - pybind11 surface over the AFDM/GPS core

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "afdm/baselines.hpp"
#include "afdm/channel.hpp"
#include "afdm/dft.hpp"
#include "afdm/gps.hpp"
#include "afdm/harness.hpp"
#include "afdm/papr.hpp"
#include "afdm/qam.hpp"
#include "afdm/receiver.hpp"

namespace py = pybind11;
using namespace afdm;

namespace {

GroupPattern pattern_arg(const std::string& s) { return group_pattern_from_string(s); }

std::vector<std::vector<cd>> mat_to_rows(const CMat& m) {
    std::vector<std::vector<cd>> rows(m.rows(), std::vector<cd>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) rows[r][c] = m(r, c);
    }
    return rows;
}

CMat rows_to_mat(const std::vector<std::vector<cd>>& rows) {
    if (rows.empty()) throw std::invalid_argument("matrix must be non-empty");
    CMat m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows[0].size()) throw std::invalid_argument("ragged matrix");
        for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
    }
    return m;
}

LtvChannel channel_arg(int n, const std::vector<std::tuple<cd, int, double>>& paths) {
    LtvChannel ch;
    ch.n_subcarriers = n;
    for (const auto& [gain, delay, doppler] : paths) ch.paths.push_back(PathSpec{gain, delay, doppler});
    return ch;
}

}  // namespace

PYBIND11_MODULE(_afdmsim, m) {
    m.doc() = "AFDM transceiver chain with grouped pre-chirp selection";

    py::class_<PreChirpProfile>(m, "PreChirpProfile")
        .def_readonly("c2_values", &PreChirpProfile::c2_values)
        .def_readonly("group_count", &PreChirpProfile::group_count)
        .def_readonly("candidate_count", &PreChirpProfile::candidate_count)
        .def_readonly("selection", &PreChirpProfile::selection)
        .def("to_json", &profile_to_json);

    py::class_<AfdmConfig>(m, "AfdmConfig")
        .def(py::init([](int n, int alpha_max, int cpp_len, int oversample) {
                 return AfdmConfig::make(n, alpha_max, cpp_len, oversample);
             }),
             py::arg("n_subcarriers"), py::arg("alpha_max"), py::arg("cpp_len"),
             py::arg("oversample") = 4)
        .def_readonly("n_subcarriers", &AfdmConfig::n_subcarriers)
        .def_readonly("c1", &AfdmConfig::c1)
        .def_readonly("cpp_len", &AfdmConfig::cpp_len);

    py::class_<GpsResult>(m, "GpsResult")
        .def_property_readonly("papr_db", [](const GpsResult& r) { return r.papr_min.papr_db; })
        .def_property_readonly("papr_linear", [](const GpsResult& r) { return r.papr_min.papr_linear; })
        .def_readonly("profile", &GpsResult::profile)
        .def_readonly("side_bits", &GpsResult::side_bits)
        .def_readonly("n_evaluations", &GpsResult::n_evaluations);

    m.def("compute_c1", &compute_c1, py::arg("alpha_max"), py::arg("n_subcarriers"));
    m.def("dft_unitary", &dft_unitary);
    m.def("idft_unitary", &idft_unitary);
    m.def("qam16_map", &qam16_map);
    m.def("qam16_demap", &qam16_demap);

    m.def("uniform_profile", &PreChirpProfile::uniform, py::arg("n_subcarriers"), py::arg("c2"));
    m.def(
        "profile_from_selection",
        [](int n, int v, int w, int k, const std::string& pattern, const std::vector<int>& sel) {
            return profile_from_selection(n, v, w, k, pattern_arg(pattern), sel);
        },
        py::arg("n_subcarriers"), py::arg("group_count"), py::arg("w_count"), py::arg("k"),
        py::arg("pattern"), py::arg("selection"));
    m.def("profile_from_json", &profile_from_json);

    m.def(
        "afdm_modulate",
        [](const ComplexVec& x, double c1, const PreChirpProfile& p) {
            return afdm_modulate(x, c1, p).samples;
        },
        py::arg("x"), py::arg("c1"), py::arg("profile"));
    m.def(
        "afdm_demodulate",
        [](const ComplexVec& r, double c1, const PreChirpProfile& p) {
            return afdm_demodulate(TimeBlock{r, false}, c1, p);
        },
        py::arg("samples"), py::arg("c1"), py::arg("profile"));
    m.def(
        "add_cpp",
        [](const ComplexVec& s, int cpp_len, double c1) {
            return add_cpp(TimeBlock{s, false}, cpp_len, c1).samples;
        },
        py::arg("samples"), py::arg("cpp_len"), py::arg("c1"));
    m.def(
        "remove_cpp",
        [](const ComplexVec& r, int cpp_len) {
            return remove_cpp(TimeBlock{r, true}, cpp_len).samples;
        },
        py::arg("samples"), py::arg("cpp_len"));

    m.def(
        "build_daft_matrix",
        [](double c1, const std::vector<double>& c2) { return mat_to_rows(build_daft_matrix(c1, c2)); },
        py::arg("c1"), py::arg("c2_values"));
    m.def(
        "build_time_channel",
        [](int n, const std::vector<std::tuple<cd, int, double>>& paths, double c1) {
            return mat_to_rows(build_time_channel(channel_arg(n, paths), c1));
        },
        py::arg("n_subcarriers"), py::arg("paths"), py::arg("c1"));
    m.def(
        "build_heff",
        [](int n, const std::vector<std::tuple<cd, int, double>>& paths, double c1,
           const PreChirpProfile& p) {
            return mat_to_rows(build_heff(channel_arg(n, paths), c1, p));
        },
        py::arg("n_subcarriers"), py::arg("paths"), py::arg("c1"), py::arg("profile"));

    m.def(
        "papr",
        [](const ComplexVec& x, double c1, const PreChirpProfile& p, int oversample) {
            const PaprSample s = papr(x, c1, p, oversample);
            return py::make_tuple(s.papr_linear, s.papr_db);
        },
        py::arg("x"), py::arg("c1"), py::arg("profile"), py::arg("oversample") = 4);
    m.def("oversampled_time_signal", &oversampled_time_signal, py::arg("x"), py::arg("c1"),
          py::arg("profile"), py::arg("oversample"));
    m.def("analytic_peak_cdf", &analytic_peak_cdf, py::arg("gamma"), py::arg("n_subcarriers"));
    m.def("candidate_correlation", &candidate_correlation, py::arg("n_subcarriers"),
          py::arg("phase_delta"));

    m.def("omega_values", &omega_values, py::arg("m"), py::arg("w_count"), py::arg("k"));
    m.def(
        "make_groups",
        [](int n, int v, const std::string& pattern) { return make_groups(n, v, pattern_arg(pattern)); },
        py::arg("n_subcarriers"), py::arg("group_count"), py::arg("pattern"));
    m.def(
        "gps_select",
        [](const ComplexVec& x, const AfdmConfig& cfg, int v, int w, int k,
           const std::string& pattern, int l_select) {
            return gps_select(x, cfg, v, w, k, pattern_arg(pattern), l_select);
        },
        py::arg("x"), py::arg("config"), py::arg("group_count"), py::arg("w_count"), py::arg("k"),
        py::arg("pattern"), py::arg("l_select") = 4);
    m.def(
        "enumerate_optimal",
        [](const ComplexVec& x, const AfdmConfig& cfg, int v, int w, int k,
           const std::string& pattern, int l_select, std::uint64_t budget) {
            return enumerate_optimal(x, cfg, v, w, k, pattern_arg(pattern), l_select, budget);
        },
        py::arg("x"), py::arg("config"), py::arg("group_count"), py::arg("w_count"), py::arg("k"),
        py::arg("pattern"), py::arg("l_select") = 4, py::arg("budget") = (1ULL << 20));
    m.def("side_bits_count", &side_bits_count, py::arg("group_count"), py::arg("w_count"));
    m.def("side_bits_encode", &side_bits_encode, py::arg("selection"), py::arg("w_count"));
    m.def("side_bits_decode", &side_bits_decode, py::arg("bits"), py::arg("group_count"),
          py::arg("w_count"));

    m.def(
        "mmse_equalize",
        [](const ComplexVec& y, const std::vector<std::vector<cd>>& h, double n0) {
            return mmse_equalize(y, rows_to_mat(h), n0);
        },
        py::arg("y"), py::arg("h_eff"), py::arg("n0"));
    m.def(
        "ber_count",
        [](const BitVec& tx, const BitVec& rx) {
            const BerCount c = ber_count(tx, rx);
            return py::make_tuple(c.errors, c.total);
        },
        py::arg("tx_bits"), py::arg("rx_bits"));

    m.def(
        "ofdm_modulate", [](const ComplexVec& x) { return ofdm_modulate(x).samples; }, py::arg("x"));
    m.def(
        "otfs_modulate",
        [](int doppler_bins, int delay_bins, const ComplexVec& symbols) {
            return otfs_modulate(OtfsGrid{doppler_bins, delay_bins, symbols}).samples;
        },
        py::arg("doppler_bins"), py::arg("delay_bins"), py::arg("symbols"));

    m.def("spectral_efficiency", &spectral_efficiency, py::arg("n_subcarriers"),
          py::arg("bits_per_symbol"), py::arg("group_count"), py::arg("w_count"));

    m.def("run_ccdf_csv", [](const std::string& config_json) {
        return ccdf_to_csv(run_ccdf(ExperimentConfig::from_json_text(config_json)));
    });
    m.def("run_ber_csv", [](const std::string& config_json) {
        return ber_to_csv(run_ber(ExperimentConfig::from_json_text(config_json)));
    });
    m.def("render_plot_svg", &render_plot_svg, py::arg("csv_text"), py::arg("kind"));
    m.def("selftest", [] {
        std::ostringstream log;
        const bool ok = run_selftest(log);
        return py::make_tuple(ok, log.str());
    });
}

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "afdm/harness.hpp"
#include "json.hpp"

namespace afdm {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

std::string hash_hex(std::uint64_t h) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

std::string ccdf_to_csv(const CcdfResult& r) {
    std::ostringstream out;
    out << "threshold_db,ccdf,n_trials,scheme,V,W,pattern,seed,config_hash\n";
    for (const CcdfCell& cell : r.cells) {
        for (std::size_t i = 0; i < cell.curve.thresholds_db.size(); ++i) {
            out << fmt("%.2f", cell.curve.thresholds_db[i]) << ','
                << fmt("%.10g", cell.curve.probabilities[i]) << ',' << cell.curve.n_trials << ','
                << cell.scheme << ',' << cell.group_count << ',' << cell.w_count << ','
                << cell.pattern << ',' << r.seed << ',' << hash_hex(r.config_hash) << '\n';
        }
    }
    return out.str();
}

std::string ccdf_to_json(const CcdfResult& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const CcdfCell& cell : r.cells) {
        for (std::size_t i = 0; i < cell.curve.thresholds_db.size(); ++i) {
            nlohmann::json row;
            row["threshold_db"] = cell.curve.thresholds_db[i];
            row["ccdf"] = cell.curve.probabilities[i];
            row["n_trials"] = cell.curve.n_trials;
            row["scheme"] = cell.scheme;
            row["V"] = cell.group_count;
            row["W"] = cell.w_count;
            row["pattern"] = cell.pattern;
            row["seed"] = r.seed;
            row["config_hash"] = hash_hex(r.config_hash);
            rows.push_back(row);
        }
    }
    return rows.dump(2) + "\n";
}

std::string sweep_summary_csv(const CcdfResult& r, const std::vector<double>& levels) {
    std::ostringstream out;
    out << "scheme,V,W,pattern,ccdf_level,threshold_db,n_trials,seed,config_hash\n";
    for (const CcdfCell& cell : r.cells) {
        for (double level : levels) {
            out << cell.scheme << ',' << cell.group_count << ',' << cell.w_count << ','
                << cell.pattern << ',' << fmt("%.6g", level) << ','
                << fmt("%.4f", ccdf_threshold_db(cell.papr_db, level)) << ',' << cell.papr_db.size()
                << ',' << r.seed << ',' << hash_hex(r.config_hash) << '\n';
        }
    }
    return out.str();
}

std::string ber_to_csv(const BerResult& r) {
    std::ostringstream out;
    out << "snr_db,ber,n_bits,scheme,side_info_mode,V,W,seed,n_errors,config_hash\n";
    for (const BerCell& cell : r.cells) {
        for (const BerPoint& p : cell.points) {
            out << fmt("%.6g", p.snr_db) << ',' << fmt("%.10g", p.ber()) << ',' << p.n_bits << ','
                << cell.scheme << ',' << cell.side_info_mode << ',' << cell.group_count << ','
                << cell.w_count << ',' << r.seed << ',' << p.n_errors << ','
                << hash_hex(r.config_hash) << '\n';
        }
    }
    return out.str();
}

std::string ber_to_json(const BerResult& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const BerCell& cell : r.cells) {
        for (const BerPoint& p : cell.points) {
            nlohmann::json row;
            row["snr_db"] = p.snr_db;
            row["ber"] = p.ber();
            row["n_bits"] = p.n_bits;
            row["scheme"] = cell.scheme;
            row["side_info_mode"] = cell.side_info_mode;
            row["V"] = cell.group_count;
            row["W"] = cell.w_count;
            row["seed"] = r.seed;
            row["n_errors"] = p.n_errors;
            row["config_hash"] = hash_hex(r.config_hash);
            rows.push_back(row);
        }
    }
    return rows.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// SVG plotting
// ---------------------------------------------------------------------------

namespace {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (x, y), y > 0
};

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

double parse_number(const std::string& s, std::size_t line_no) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("csv line " + std::to_string(line_no) + ": bad number '" + s + "'");
    }
}

}  // namespace

std::string render_plot_svg(const std::string& csv_text, const std::string& kind) {
    if (kind != "ccdf" && kind != "ber") throw ConfigError("plot kind must be 'ccdf' or 'ber'");

    std::istringstream in(csv_text);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("csv line 1: empty input");
    const std::vector<std::string> header = split_csv_line(line);
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;

    const std::string x_name = kind == "ccdf" ? "threshold_db" : "snr_db";
    const std::string y_name = kind == "ccdf" ? "ccdf" : "ber";
    for (const std::string& want : {x_name, y_name, std::string("scheme"), std::string("V"), std::string("W")}) {
        if (col.find(want) == col.end()) {
            throw ConfigError("csv line 1: missing required column '" + want + "'");
        }
    }

    std::vector<Series> series;
    std::map<std::string, std::size_t> series_index;
    std::size_t line_no = 1;
    std::size_t data_rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw ConfigError("csv line " + std::to_string(line_no) + ": expected " +
                              std::to_string(header.size()) + " fields, got " +
                              std::to_string(fields.size()));
        }
        ++data_rows;
        std::string label = fields[col["scheme"]];
        if (label == "gps" || label == "enum") {
            label += " V=" + fields[col["V"]] + " W=" + fields[col["W"]];
            if (col.count("pattern") != 0) label += " " + fields[col["pattern"]];
        }
        if (col.count("side_info_mode") != 0 && fields[col["side_info_mode"]] != "none" &&
            !fields[col["side_info_mode"]].empty()) {
            label += " (" + fields[col["side_info_mode"]] + ")";
        }
        auto [it, inserted] = series_index.try_emplace(label, series.size());
        if (inserted) series.push_back(Series{label, {}});
        const double x = parse_number(fields[col[x_name]], line_no);
        const double y = parse_number(fields[col[y_name]], line_no);
        if (y > 0.0) series[it->second].points.emplace_back(x, y);
    }
    if (data_rows == 0) throw ConfigError("csv line 1: no data rows");

    double xmin = 1e300, xmax = -1e300, ymin = 1e300;
    bool any = false;
    for (const Series& s : series) {
        for (const auto& [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            any = true;
        }
    }
    if (!any) throw ConfigError("csv line 1: no positive data points to plot");
    if (xmax <= xmin) xmax = xmin + 1.0;
    const double ylo = std::floor(std::log10(ymin));
    const double yhi = 0.0;

    const double w = 860, h = 600, ml = 70, mr = 190, mt = 20, mb = 50;
    const double pw = w - ml - mr, ph = h - mt - mb;
    auto xs = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    auto ys = [&](double y) {
        const double ly = std::log10(y);
        return mt + (yhi - ly) / (yhi - ylo) * ph;
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    svg << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";

    // decade gridlines and y labels
    for (int d = static_cast<int>(ylo); d <= 0; ++d) {
        const double y = ys(std::pow(10.0, d));
        svg << "<line x1=\"" << fmt("%.1f", ml) << "\" y1=\"" << fmt("%.1f", y) << "\" x2=\""
            << fmt("%.1f", ml + pw) << "\" y2=\"" << fmt("%.1f", y)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << fmt("%.1f", ml - 8) << "\" y=\"" << fmt("%.1f", y + 4)
            << "\" text-anchor=\"end\" font-size=\"12\">1e" << d << "</text>\n";
    }
    // x ticks
    const double xstep = (xmax - xmin) / 6.0;
    for (int i = 0; i <= 6; ++i) {
        const double x = xmin + xstep * i;
        svg << "<line x1=\"" << fmt("%.1f", xs(x)) << "\" y1=\"" << fmt("%.1f", mt + ph)
            << "\" x2=\"" << fmt("%.1f", xs(x)) << "\" y2=\"" << fmt("%.1f", mt + ph + 5)
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fmt("%.1f", xs(x)) << "\" y=\"" << fmt("%.1f", mt + ph + 20)
            << "\" text-anchor=\"middle\" font-size=\"12\">" << fmt("%.4g", x) << "</text>\n";
    }
    svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt("%.1f", ml + pw / 2) << "\" y=\"" << fmt("%.1f", h - 10)
        << "\" text-anchor=\"middle\" font-size=\"13\">"
        << (kind == "ccdf" ? "PAPR threshold (dB)" : "SNR (dB)") << "</text>\n";
    svg << "<text x=\"16\" y=\"" << fmt("%.1f", mt + ph / 2)
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
        << fmt("%.1f", mt + ph / 2) << ")\">" << (kind == "ccdf" ? "CCDF" : "BER") << "</text>\n";

    std::size_t color_i = 0;
    for (const Series& s : series) {
        if (s.points.empty()) continue;
        const char* color = kPalette[color_i % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : s.points) {
            svg << fmt("%.2f", xs(x)) << ',' << fmt("%.2f", ys(y)) << ' ';
        }
        svg << "\"/>\n";
        const double ly = mt + 16 + 18 * static_cast<double>(color_i);
        svg << "<line x1=\"" << fmt("%.1f", ml + pw + 10) << "\" y1=\"" << fmt("%.1f", ly - 4)
            << "\" x2=\"" << fmt("%.1f", ml + pw + 34) << "\" y2=\"" << fmt("%.1f", ly - 4)
            << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
        svg << "<text x=\"" << fmt("%.1f", ml + pw + 40) << "\" y=\"" << fmt("%.1f", ly)
            << "\" font-size=\"11\">" << s.label << "</text>\n";
        ++color_i;
    }
    svg << "</svg>\n";
    return svg.str();
}

std::vector<std::string> run_experiment_to_files(const ExperimentConfig& cfg) {
    cfg.validate();
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    std::vector<std::string> written;

    auto meta_json = [&](const std::vector<std::string>& outputs) {
        nlohmann::json j;
        j["config"] = nlohmann::json::parse(cfg.to_canonical_json());
        j["config_hash"] = hash_hex(cfg.config_hash());
        j["outputs"] = outputs;
        return j.dump(2) + "\n";
    };

    if (cfg.experiment == "ccdf" || cfg.experiment == "sweep") {
        const CcdfResult r = run_ccdf(cfg);
        const std::string csv_path = (fs::path(cfg.out_dir) / "ccdf.csv").string();
        write_file(csv_path, ccdf_to_csv(r));
        written.push_back(csv_path);
        if (cfg.format == OutputFormat::json) {
            const std::string json_path = (fs::path(cfg.out_dir) / "ccdf.json").string();
            write_file(json_path, ccdf_to_json(r));
            written.push_back(json_path);
        }
        if (cfg.experiment == "sweep") {
            const std::string sweep_path = (fs::path(cfg.out_dir) / "sweep.csv").string();
            write_file(sweep_path, sweep_summary_csv(r, {1e-1, 1e-2, 1e-3}));
            written.push_back(sweep_path);
        }
        const std::string meta_path =
            (fs::path(cfg.out_dir) / (cfg.experiment + ".meta.json")).string();
        write_file(meta_path, meta_json(written));
        written.push_back(meta_path);
    } else if (cfg.experiment == "ber") {
        const BerResult r = run_ber(cfg);
        const std::string csv_path = (fs::path(cfg.out_dir) / "ber.csv").string();
        write_file(csv_path, ber_to_csv(r));
        written.push_back(csv_path);
        if (cfg.format == OutputFormat::json) {
            const std::string json_path = (fs::path(cfg.out_dir) / "ber.json").string();
            write_file(json_path, ber_to_json(r));
            written.push_back(json_path);
        }
        const std::string meta_path = (fs::path(cfg.out_dir) / "ber.meta.json").string();
        write_file(meta_path, meta_json(written));
        written.push_back(meta_path);
    } else {
        throw ConfigError("run_experiment_to_files handles ccdf, sweep and ber experiments");
    }
    return written;
}

}  // namespace afdm

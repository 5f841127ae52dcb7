#include "rcqldpc/params.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include "json.hpp"

#include "rcqldpc/errors.hpp"

namespace rcq {

namespace {

std::string real17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void append_reals(std::string& out, const std::vector<double>& v) {
    out += '[';
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (j != 0) out += ',';
        out += real17(v[j]);
    }
    out += ']';
}

void append_width(std::string& out, const std::optional<unsigned>& w) {
    if (w.has_value()) {
        out += std::to_string(*w);
    } else {
        out += "\"inf\"";
    }
}

void check_finite(const std::vector<double>& v, const char* what) {
    for (const double x : v) {
        if (!std::isfinite(x)) {
            throw config_error(std::string(what) + " contains a non-finite value");
        }
    }
}

void check_non_increasing(const std::vector<double>& v, const char* what) {
    for (std::size_t j = 1; j < v.size(); ++j) {
        if (v[j] > v[j - 1]) {
            throw config_error(std::string(what) + " must be non-increasing");
        }
    }
}

void check_table_sizes(const std::vector<double>& recon, const std::vector<double>& thresholds,
                       std::size_t symbols, const char* side) {
    if (recon.size() != symbols) {
        throw config_error(std::string(side) + " reconstruction table has " +
                           std::to_string(recon.size()) + " entries, expected " +
                           std::to_string(symbols));
    }
    if (thresholds.size() != symbols - 1) {
        throw config_error(std::string(side) + " threshold table has " +
                           std::to_string(thresholds.size()) + " entries, expected " +
                           std::to_string(symbols - 1));
    }
    check_finite(recon, side);
    check_finite(thresholds, side);
    check_non_increasing(thresholds, side);
}

std::optional<unsigned> read_width(const nlohmann::json& v, const char* key) {
    if (v.is_string()) {
        if (v.get<std::string>() == "inf") return std::nullopt;
        throw parse_error(std::string("parameter JSON: ") + key +
                          " must be a non-negative integer or \"inf\"");
    }
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw parse_error(std::string("parameter JSON: ") + key +
                          " must be a non-negative integer or \"inf\"");
    }
    return static_cast<unsigned>(v.get<long long>());
}

std::vector<double> read_reals(const nlohmann::json& v, const char* key) {
    if (!v.is_array()) {
        throw parse_error(std::string("parameter JSON: ") + key + " must be an array of numbers");
    }
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) {
        if (!x.is_number()) {
            throw parse_error(std::string("parameter JSON: ") + key +
                              " must be an array of numbers");
        }
        out.push_back(x.get<double>());
    }
    return out;
}

double read_real(const nlohmann::json& v, const char* key) {
    if (!v.is_number()) {
        throw parse_error(std::string("parameter JSON: ") + key + " must be a number");
    }
    return v.get<double>();
}

}  // namespace

RcqParameters make_parameters(const RcqDesign& design, std::optional<unsigned> nc,
                              std::optional<unsigned> nv) {
    RcqParameters p;
    p.mode = design.mode;
    p.precision.m = design.bits;
    if (design.mode == RcqMode::ms) {
        if (nc.has_value() && *nc != design.bits) {
            throw config_error("ms mode runs the check stage on the external symbols; nc must "
                               "equal the symbol width " +
                               std::to_string(design.bits));
        }
        p.precision.nc = design.bits;
    } else {
        p.precision.nc = nc;
    }
    p.precision.nv = nv;
    p.design_point = design.design_point;
    p.channel_thresholds_y = design.channel_thresholds_y;
    p.channel_recon = design.channel_recon;
    p.iterations = design.iterations;
    p.mi_trajectory = design.mi_trajectory;
    validate_parameters(p);
    return p;
}

void validate_parameters(const RcqParameters& params) {
    const unsigned m = params.precision.m;
    if (m < 1 || m > 16) throw config_error("symbol width must be 1..16 bits");
    for (const auto& [w, name] : {std::pair{params.precision.nc, "nc"},
                                  std::pair{params.precision.nv, "nv"}}) {
        if (w.has_value() && (*w < 1 || *w > 32)) {
            throw config_error(std::string(name) + " must be 1..32 bits when finite");
        }
    }
    if (params.mode == RcqMode::ms &&
        (!params.precision.nc.has_value() || *params.precision.nc != m)) {
        throw config_error("ms mode requires nc equal to the symbol width " + std::to_string(m));
    }
    if (!(params.design_point.sigma > 0.0) || !std::isfinite(params.design_point.sigma)) {
        throw config_error("design point sigma must be positive");
    }
    if (!(params.design_point.rate > 0.0) || !std::isfinite(params.design_point.rate)) {
        throw config_error("design point rate must be positive");
    }
    if (!std::isfinite(params.design_point.ebno_db)) {
        throw config_error("design point ebno_db must be finite");
    }

    const std::size_t symbols = std::size_t{1} << m;
    check_table_sizes(params.channel_recon, params.channel_thresholds_y, symbols, "channel");
    if (params.iterations.empty()) throw config_error("parameter set has no iteration tables");
    for (std::size_t i = 0; i < params.iterations.size(); ++i) {
        const IterationTables& rec = params.iterations[i];
        const std::string at = " (iteration " + std::to_string(i) + ")";
        if (params.mode == RcqMode::bp) {
            check_table_sizes(rec.check_recon, rec.check_thresholds, symbols, "check");
        } else if (!rec.check_recon.empty() || !rec.check_thresholds.empty()) {
            throw config_error("ms mode parameter sets carry no check tables" + at);
        }
        check_table_sizes(rec.var_recon, rec.var_thresholds, symbols, "variable");
    }
    check_finite(params.mi_trajectory, "mi_trajectory");
}

std::string to_json(const RcqParameters& params) {
    validate_parameters(params);
    std::string out;
    out += "{\n";
    out += "  \"mode\": \"" + to_string(params.mode) + "\",\n";
    out += "  \"precision\": {\"m\": " + std::to_string(params.precision.m) + ", \"nc\": ";
    append_width(out, params.precision.nc);
    out += ", \"nv\": ";
    append_width(out, params.precision.nv);
    out += "},\n";
    out += "  \"design_point\": {\"ebno_db\": " + real17(params.design_point.ebno_db) +
           ", \"rate\": " + real17(params.design_point.rate) +
           ", \"sigma\": " + real17(params.design_point.sigma) + "},\n";
    out += "  \"channel\": {\n    \"thresholds_y\": ";
    append_reals(out, params.channel_thresholds_y);
    out += ",\n    \"recon_llr\": ";
    append_reals(out, params.channel_recon);
    out += "\n  },\n";
    out += "  \"iterations\": [\n";
    for (std::size_t i = 0; i < params.iterations.size(); ++i) {
        const IterationTables& rec = params.iterations[i];
        out += "    {";
        if (params.mode == RcqMode::bp) {
            out += "\"check_recon\": ";
            append_reals(out, rec.check_recon);
            out += ", \"check_thresholds\": ";
            append_reals(out, rec.check_thresholds);
            out += ", ";
        }
        out += "\"var_recon\": ";
        append_reals(out, rec.var_recon);
        out += ", \"var_thresholds\": ";
        append_reals(out, rec.var_thresholds);
        out += i + 1 < params.iterations.size() ? "},\n" : "}\n";
    }
    out += "  ],\n";
    out += "  \"mi_trajectory\": ";
    append_reals(out, params.mi_trajectory);
    out += "\n}\n";
    return out;
}

RcqParameters parameters_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("parameter JSON: ") + e.what());
    }

    RcqParameters p;
    try {
        const std::string mode_name = doc.at("mode").get<std::string>();
        if (mode_name != "bp" && mode_name != "ms") {
            throw parse_error("parameter JSON: unknown mode \"" + mode_name + "\"");
        }
        p.mode = rcq_mode_from_string(mode_name);

        const auto& prec = doc.at("precision");
        const std::optional<unsigned> m = read_width(prec.at("m"), "precision.m");
        if (!m.has_value()) throw parse_error("parameter JSON: precision.m cannot be \"inf\"");
        p.precision.m = *m;
        p.precision.nc = read_width(prec.at("nc"), "precision.nc");
        p.precision.nv = read_width(prec.at("nv"), "precision.nv");

        const auto& point = doc.at("design_point");
        p.design_point.ebno_db = read_real(point.at("ebno_db"), "design_point.ebno_db");
        p.design_point.rate = read_real(point.at("rate"), "design_point.rate");
        p.design_point.sigma = read_real(point.at("sigma"), "design_point.sigma");

        const auto& channel = doc.at("channel");
        p.channel_thresholds_y = read_reals(channel.at("thresholds_y"), "channel.thresholds_y");
        p.channel_recon = read_reals(channel.at("recon_llr"), "channel.recon_llr");

        const auto& iters = doc.at("iterations");
        if (!iters.is_array()) {
            throw parse_error("parameter JSON: iterations must be an array");
        }
        for (const auto& rec : iters) {
            IterationTables t;
            if (p.mode == RcqMode::bp) {
                t.check_recon = read_reals(rec.at("check_recon"), "check_recon");
                t.check_thresholds = read_reals(rec.at("check_thresholds"), "check_thresholds");
            }
            t.var_recon = read_reals(rec.at("var_recon"), "var_recon");
            t.var_thresholds = read_reals(rec.at("var_thresholds"), "var_thresholds");
            p.iterations.push_back(std::move(t));
        }

        p.mi_trajectory = read_reals(doc.at("mi_trajectory"), "mi_trajectory");
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("parameter JSON: ") + e.what());
    }

    validate_parameters(p);
    return p;
}

void save_parameters(const RcqParameters& params, const std::string& path) {
    const std::string text = to_json(params);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out.flush()) throw std::runtime_error("write to " + path + " failed");
}

RcqParameters load_parameters(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parameters_from_json(buf.str());
}

}  // namespace rcq

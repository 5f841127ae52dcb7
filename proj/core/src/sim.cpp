#include "rcqldpc/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "json.hpp"

#include "rcqldpc/channel.hpp"
#include "rcqldpc/code.hpp"
#include "rcqldpc/decoder.hpp"
#include "rcqldpc/errors.hpp"
#include "rcqldpc/params.hpp"
#include "rcqldpc/rng.hpp"

namespace rcq {

namespace {

enum class Kind { bp_inf, minsum_inf, bp_rcq, ms_rcq };

Kind kind_from_string(const std::string& name) {
    if (name == "bp-inf") return Kind::bp_inf;
    if (name == "minsum-inf") return Kind::minsum_inf;
    if (name == "bp-rcq") return Kind::bp_rcq;
    if (name == "ms-rcq") return Kind::ms_rcq;
    throw config_error("unknown decoder \"" + name +
                       "\" (expected bp-inf, minsum-inf, bp-rcq, or ms-rcq)");
}

std::string real6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string real17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Everything a worker needs to turn a noise realization into a decode
// outcome; shared read-only across threads.
struct Engine {
    const TannerGraph* graph = nullptr;
    Kind kind = Kind::bp_inf;
    std::optional<RcqParameters> params;
    unsigned float_iters = 50;

    DecodeOutcome decode(const std::vector<double>& y, std::vector<double>& llr,
                         double sigma) const {
        switch (kind) {
            case Kind::bp_inf:
            case Kind::minsum_inf: {
                for (std::size_t v = 0; v < y.size(); ++v) {
                    llr[v] = 2.0 * y[v] / (sigma * sigma);
                }
                return kind == Kind::bp_inf ? decode_bp_float(*graph, llr, float_iters)
                                            : decode_minsum_float(*graph, llr, float_iters);
            }
            default:
                return decode_rcq(*graph, *params, y);
        }
    }
};

Engine prepare(const SimConfig& cfg, const TannerGraph& graph) {
    if (cfg.ebno_db.empty()) throw config_error("ebno list must be non-empty");
    if (cfg.max_frames < 1) throw config_error("max_frames must be at least 1");
    if (cfg.min_frame_errors < 1) throw config_error("min_frame_errors must be at least 1");
    if (cfg.workers < 1) throw config_error("workers must be at least 1");

    Engine eng;
    eng.graph = &graph;
    eng.kind = kind_from_string(cfg.decoder);
    if (eng.kind == Kind::bp_rcq || eng.kind == Kind::ms_rcq) {
        if (cfg.params_path.empty()) {
            throw config_error("decoder " + cfg.decoder + " needs a parameter file");
        }
        RcqParameters p = load_parameters(cfg.params_path);
        const RcqMode want = eng.kind == Kind::bp_rcq ? RcqMode::bp : RcqMode::ms;
        if (p.mode != want) {
            throw config_error("parameter file mode \"" + to_string(p.mode) +
                               "\" does not match decoder " + cfg.decoder);
        }
        if (cfg.max_iters != 0) {
            if (cfg.max_iters > p.iterations.size()) {
                throw config_error("max_iters " + std::to_string(cfg.max_iters) +
                                   " exceeds the parameter file's " +
                                   std::to_string(p.iterations.size()) + " iteration tables");
            }
            p.iterations.resize(cfg.max_iters);
            p.mi_trajectory.resize(cfg.max_iters);
        }
        eng.params = std::move(p);
    } else if (cfg.max_iters != 0) {
        eng.float_iters = cfg.max_iters;
    }
    return eng;
}

struct FrameStats {
    std::uint64_t bit_errors = 0;
    unsigned iterations = 0;
    bool error = false;
    bool undetected = false;
};

FrameStats summarize(const DecodeOutcome& out) {
    FrameStats s;
    s.iterations = out.iterations_used;
    for (std::uint8_t bit : out.hard_decision) {
        s.bit_errors += bit;
    }
    s.error = !out.success || s.bit_errors != 0;
    s.undetected = out.success && s.bit_errors != 0;
    return s;
}

using CaptureList = std::vector<std::pair<std::size_t, std::vector<double>>>;

// One Eb/N0 point.  Frames are decoded in parallel in fixed windows but
// counted strictly in frame-index order, so the stopping frame — and with it
// every reported number — is independent of the worker count.
SnrRecord simulate_point(const Engine& eng, const SimConfig& cfg, std::size_t snr_index,
                         CaptureList* capture) {
    const double sigma = sigma_from_ebno(
        cfg.ebno_db[snr_index],
        1.0 - static_cast<double>(eng.graph->n_checks()) / static_cast<double>(eng.graph->n_vars()));
    const std::size_t n = eng.graph->n_vars();
    const unsigned workers = cfg.workers;
    const std::uint64_t window = static_cast<std::uint64_t>(workers) * 64;

    SnrRecord rec;
    rec.ebno_db = cfg.ebno_db[snr_index];
    std::uint64_t iteration_sum = 0;
    std::vector<FrameStats> stats;
    std::vector<std::vector<double>> noise;

    const auto started = std::chrono::steady_clock::now();
    for (std::uint64_t base = 0;
         base < cfg.max_frames && rec.frame_errors < cfg.min_frame_errors; base += window) {
        const std::uint64_t count = std::min<std::uint64_t>(window, cfg.max_frames - base);
        stats.assign(count, {});
        if (capture != nullptr) {
            noise.assign(count, {});
        }

        const auto work = [&](unsigned worker) {
            std::vector<double> y(n);
            std::vector<double> llr(n);
            for (std::uint64_t i = worker; i < count; i += workers) {
                Rng rng = Rng::for_frame(cfg.seed, snr_index, base + i);
                for (std::size_t v = 0; v < n; ++v) {
                    y[v] = 1.0 + sigma * rng.next_gaussian();
                }
                stats[i] = summarize(eng.decode(y, llr, sigma));
                if (capture != nullptr && stats[i].error) {
                    noise[i] = y;
                }
            }
        };
        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers - 1);
            for (unsigned w = 1; w < workers; ++w) {
                pool.emplace_back(work, w);
            }
            work(0);
            for (auto& t : pool) {
                t.join();
            }
        }

        for (std::uint64_t i = 0; i < count; ++i) {
            rec.frames += 1;
            rec.bit_errors += stats[i].bit_errors;
            iteration_sum += stats[i].iterations;
            if (stats[i].error) {
                rec.frame_errors += 1;
                rec.undetected_frame_errors += stats[i].undetected ? 1 : 0;
                if (capture != nullptr) {
                    capture->emplace_back(snr_index, std::move(noise[i]));
                }
                if (rec.frame_errors >= cfg.min_frame_errors) {
                    break;
                }
            }
        }
    }
    if (cfg.measure_time) {
        rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    }
    rec.fer = static_cast<double>(rec.frame_errors) / static_cast<double>(rec.frames);
    rec.ber = static_cast<double>(rec.bit_errors) /
              (static_cast<double>(rec.frames) * static_cast<double>(n));
    rec.avg_iterations = static_cast<double>(iteration_sum) / static_cast<double>(rec.frames);
    return rec;
}

SimResult sweep(const SimConfig& cfg, CaptureList* capture) {
    const TannerGraph graph = load_code_file(cfg.code_path);
    const Engine eng = prepare(cfg, graph);
    SimResult result;
    result.config = cfg;
    result.block_length = graph.n_vars();
    for (std::size_t s = 0; s < cfg.ebno_db.size(); ++s) {
        result.records.push_back(simulate_point(eng, cfg, s, capture));
    }
    return result;
}

void write_text(const std::string& text, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out.flush()) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace

SimResult run_fer_sweep(const SimConfig& cfg) {
    return sweep(cfg, nullptr);
}

CrossDecodeReport cross_decode_experiment(const SimConfig& cfg_a, const SimConfig& cfg_b,
                                          const std::string& capture_path) {
    if (cfg_a.code_path != cfg_b.code_path) {
        throw std::invalid_argument("cross-decode requires the same code in both configs");
    }
    if (cfg_a.ebno_db != cfg_b.ebno_db || cfg_a.seed != cfg_b.seed) {
        throw std::invalid_argument("cross-decode requires identical channel settings (ebno list and seed)");
    }

    const TannerGraph graph = load_code_file(cfg_b.code_path);
    const Engine eng_b = prepare(cfg_b, graph);

    CaptureList captured;
    const SimResult run_a = sweep(cfg_a, &captured);

    std::string text = std::to_string(run_a.block_length) + " " + std::to_string(captured.size()) + "\n";
    for (const auto& [snr_index, y] : captured) {
        text += real17(cfg_a.ebno_db[snr_index]);
        for (double v : y) {
            text += ' ';
            text += real17(v);
        }
        text += '\n';
    }
    write_text(text, capture_path);

    CrossDecodeReport report;
    report.captured = captured.size();
    report.capture_path = capture_path;
    std::vector<double> llr(graph.n_vars());
    for (const auto& [snr_index, y] : captured) {
        const double sigma = sigma_from_ebno(
            cfg_b.ebno_db[snr_index],
            1.0 - static_cast<double>(graph.n_checks()) / static_cast<double>(graph.n_vars()));
        const auto out = eng_b.decode(y, llr, sigma);
        const bool correct = out.success &&
                             std::all_of(out.hard_decision.begin(), out.hard_decision.end(),
                                         [](std::uint8_t b) { return b == 0; });
        report.rescued += correct ? 1 : 0;
    }
    report.rescue_fraction =
        report.captured == 0 ? 0.0
                             : static_cast<double>(report.rescued) / static_cast<double>(report.captured);
    return report;
}

void write_results(const SimResult& result, const std::string& path) {
    std::string csv =
        "ebno_db,frames,bit_errors,frame_errors,ber,fer,undetected_frame_errors,avg_iterations,"
        "wall_seconds\n";
    for (const SnrRecord& rec : result.records) {
        csv += real6(rec.ebno_db);
        csv += ',' + std::to_string(rec.frames);
        csv += ',' + std::to_string(rec.bit_errors);
        csv += ',' + std::to_string(rec.frame_errors);
        csv += ',' + real6(rec.ber);
        csv += ',' + real6(rec.fer);
        csv += ',' + std::to_string(rec.undetected_frame_errors);
        csv += ',' + real6(rec.avg_iterations);
        csv += ',' + real6(rec.wall_seconds);
        csv += '\n';
    }
    write_text(csv, path);

    std::string side = "{\n  \"config\": " + to_json(result.config) + ",\n";
    side += "  \"block_length\": " + std::to_string(result.block_length) + ",\n";
    side += "  \"records\": [\n";
    for (std::size_t i = 0; i < result.records.size(); ++i) {
        const SnrRecord& rec = result.records[i];
        // Normal-approximation 95% interval on the frame-error probability,
        // reported relative to the estimate.
        const double half = rec.fer > 0.0
                                ? 1.96 * std::sqrt(rec.fer * (1.0 - rec.fer) /
                                                   static_cast<double>(rec.frames)) / rec.fer
                                : 0.0;
        side += "    {\"ebno_db\": " + real17(rec.ebno_db);
        side += ", \"frames\": " + std::to_string(rec.frames);
        side += ", \"frame_errors\": " + std::to_string(rec.frame_errors);
        side += ", \"fer\": " + real17(rec.fer);
        side += ", \"ci95_rel_half_width\": " + real17(half) + "}";
        side += i + 1 < result.records.size() ? ",\n" : "\n";
    }
    side += "  ]\n}\n";
    write_text(side, path + ".json");
}

std::string to_json(const SimConfig& cfg) {
    std::string out = "{\n";
    out += "    \"code\": \"" + cfg.code_path + "\",\n";
    out += "    \"decoder\": \"" + cfg.decoder + "\",\n";
    out += "    \"params\": \"" + cfg.params_path + "\",\n";
    out += "    \"ebno_db\": [";
    for (std::size_t i = 0; i < cfg.ebno_db.size(); ++i) {
        if (i != 0) out += ',';
        out += real17(cfg.ebno_db[i]);
    }
    out += "],\n";
    out += "    \"max_frames\": " + std::to_string(cfg.max_frames) + ",\n";
    out += "    \"min_frame_errors\": " + std::to_string(cfg.min_frame_errors) + ",\n";
    out += "    \"max_iters\": " + std::to_string(cfg.max_iters) + ",\n";
    out += "    \"seed\": " + std::to_string(cfg.seed) + ",\n";
    out += "    \"workers\": " + std::to_string(cfg.workers) + ",\n";
    out += "    \"output\": \"" + cfg.output_path + "\",\n";
    out += std::string("    \"measure_time\": ") + (cfg.measure_time ? "true" : "false") + "\n";
    out += "  }";
    return out;
}

SimConfig sim_config_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("sim config JSON: ") + e.what());
    }
    SimConfig cfg;
    try {
        cfg.code_path = doc.at("code").get<std::string>();
        cfg.decoder = doc.at("decoder").get<std::string>();
        cfg.params_path = doc.value("params", std::string());
        cfg.ebno_db = doc.at("ebno_db").get<std::vector<double>>();
        cfg.max_frames = doc.value("max_frames", cfg.max_frames);
        cfg.min_frame_errors = doc.value("min_frame_errors", cfg.min_frame_errors);
        cfg.max_iters = doc.value("max_iters", cfg.max_iters);
        cfg.seed = doc.value("seed", cfg.seed);
        cfg.workers = doc.value("workers", cfg.workers);
        cfg.output_path = doc.value("output", std::string());
        cfg.measure_time = doc.value("measure_time", false);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("sim config JSON: ") + e.what());
    }
    return cfg;
}

SimConfig load_sim_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return sim_config_from_json(buf.str());
}

}  // namespace rcq

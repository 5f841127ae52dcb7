#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace rcq {

/// Monte-Carlo sweep description.  All referenced files are loaded and
/// validated up front, so configuration problems surface before the first
/// frame is simulated.
struct SimConfig {
    std::string code_path;
    /// One of: bp-inf | minsum-inf | bp-rcq | ms-rcq.
    std::string decoder = "bp-inf";
    /// Table file; required when decoder is bp-rcq or ms-rcq, ignored otherwise.
    std::string params_path;
    std::vector<double> ebno_db;
    std::uint64_t max_frames = 100000;
    std::uint64_t min_frame_errors = 100;
    /// Iteration budget.  0 selects the parameter file's table count for the
    /// rcq decoders and 50 for the float baselines; a nonzero value must not
    /// exceed the table count (tables cannot be invented past the design).
    unsigned max_iters = 0;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::string output_path;
    /// wall_seconds stays 0 unless set, keeping output bytes reproducible.
    bool measure_time = false;
};

struct SnrRecord {
    double ebno_db = 0.0;
    std::uint64_t frames = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t frame_errors = 0;
    std::uint64_t undetected_frame_errors = 0;
    double ber = 0.0;
    double fer = 0.0;
    double avg_iterations = 0.0;
    double wall_seconds = 0.0;
};

struct SimResult {
    SimConfig config;
    std::size_t block_length = 0;
    std::vector<SnrRecord> records;
};

/// All-zero-codeword FER/BER sweep over cfg.ebno_db.  Per-frame noise comes
/// from a stream derived from (seed, snr index, frame index), and frames are
/// accounted in frame-index order, so the result is identical for any worker
/// count.  Each point stops at min_frame_errors frame errors or max_frames.
/// Throws config_error / parse_error / std::runtime_error on bad input.
SimResult run_fer_sweep(const SimConfig& cfg);

struct CrossDecodeReport {
    std::uint64_t captured = 0;
    std::uint64_t rescued = 0;
    double rescue_fraction = 0.0;
    std::string capture_path;
};

/// Runs the A sweep, stores the noise vector of every frame A fails to
/// capture_path (text: "n count" header, then one "ebno_db y..." line per
/// frame), re-decodes each stored frame with B, and reports the fraction B
/// decodes correctly.  Both configs must name the same code, Eb/N0 list, and
/// seed (std::invalid_argument otherwise).
CrossDecodeReport cross_decode_experiment(const SimConfig& cfg_a, const SimConfig& cfg_b,
                                          const std::string& capture_path);

/// CSV with the pinned header
/// ebno_db,frames,bit_errors,frame_errors,ber,fer,undetected_frame_errors,avg_iterations,wall_seconds
/// (reals at 6 significant digits), plus a <path>.json sidecar embedding the
/// full config and per-point 95% confidence half-widths.
void write_results(const SimResult& result, const std::string& path);

std::string to_json(const SimConfig& cfg);
SimConfig sim_config_from_json(const std::string& text);
SimConfig load_sim_config(const std::string& path);

}  // namespace rcq

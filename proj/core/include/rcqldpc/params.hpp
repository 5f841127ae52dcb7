#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rcqldpc/dde.hpp"

namespace rcq {

// Bit widths the decoder runs at: m is the external (edge symbol) width, nc
// and nv are the internal widths of the check and variable computations.  An
// absent internal width selects native floating point for that stage.
struct Precision {
    unsigned m = 0;
    std::optional<unsigned> nc;
    std::optional<unsigned> nv;
};

// A complete, runnable decoder configuration: the designed channel and
// per-iteration tables together with the precisions to execute them at.
struct RcqParameters {
    RcqMode mode = RcqMode::bp;
    Precision precision;
    DesignPoint design_point;
    std::vector<double> channel_thresholds_y;
    std::vector<double> channel_recon;
    std::vector<IterationTables> iterations;
    std::vector<double> mi_trajectory;
};

// Pairs a finished design with run precisions.  In ms mode the check stage
// operates on the external symbols themselves, so nc is pinned to the
// symbol width: omitting it selects that default and passing any other
// value throws config_error.
RcqParameters make_parameters(const RcqDesign& design, std::optional<unsigned> nc,
                              std::optional<unsigned> nv);

// Structural validation shared by make_parameters and the JSON reader:
// symbol width within [1, 16]; internal widths, when finite, within
// [1, 32] (nc equal to m in ms mode); reconstruction tables hold 2^m
// entries and threshold tables 2^m - 1 non-increasing entries; check
// tables populated exactly in bp mode; at least one iteration; every real
// finite; sigma and rate positive.  Throws config_error naming the first
// violation.
void validate_parameters(const RcqParameters& params);

// JSON document with keys mode, precision {m, nc, nv, where "inf" denotes
// native float}, design_point {ebno_db, rate, sigma}, channel
// {thresholds_y, recon_llr}, iterations as an array of {check_recon,
// check_thresholds, var_recon, var_thresholds} objects (check fields
// omitted in ms mode), and mi_trajectory.  Reals carry 17 significant
// digits, so doubles survive a write/read cycle bit for bit.  Validates
// first; throws config_error on an invalid parameter set.
std::string to_json(const RcqParameters& params);

// Parses and validates a document produced by to_json (or hand-written to
// the same schema).  Throws parse_error on malformed JSON and missing or
// mistyped keys, config_error on structural violations.
RcqParameters parameters_from_json(const std::string& text);

// File variants of to_json / parameters_from_json; both throw
// std::runtime_error when the path cannot be written or read.
void save_parameters(const RcqParameters& params, const std::string& path);
RcqParameters load_parameters(const std::string& path);

}  // namespace rcq

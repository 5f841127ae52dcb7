#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rcqldpc/code.hpp"
#include "rcqldpc/dde.hpp"
#include "rcqldpc/params.hpp"

namespace rcq {

// The float belief-propagation check update clips tanh arguments to this
// magnitude so the pairwise products stay strictly inside (-1, 1).
inline constexpr double kBpTanhClip = 19.07;

// Two's-complement fixed-point layout: total_bits wide, frac_bits of them
// fractional, so the representable range is
// [-2^(total_bits-1), 2^(total_bits-1) - 1] in steps of 2^-frac_bits.
struct FixedPointFormat {
    unsigned total_bits = 0;
    unsigned frac_bits = 0;
};

// Layout used for a decoder-internal datapath of the given width: five bits
// to the left of the binary point (sign included), the rest fractional.
// Throws std::invalid_argument outside 5..32 bits.
FixedPointFormat internal_format(unsigned bits);

// Rounds half away from zero to the nearest representable step, then
// saturates to the format's range.  Every representable value is exact in a
// double, so the result is returned as one.
double fixed_point_quantize(double value, const FixedPointFormat& fmt);

struct DecodeOutcome {
    bool success = false;
    unsigned iterations_used = 0;
    std::vector<std::uint8_t> hard_decision;
    std::size_t unsatisfied_checks = 0;
};

// Min-sum check update for a pair of sign-magnitude symbols: the output
// carries the product of the input signs and the smaller input magnitude.
std::size_t min_sum_symbol(std::size_t a, std::size_t b,
                           const SignMagnitudeAlphabet& alphabet);

// Flooding belief propagation on channel log-likelihood ratios.  Stops early
// once the hard decision satisfies every check; a tie (posterior exactly
// zero) decides bit 0.
DecodeOutcome decode_bp_float(const TannerGraph& graph,
                              const std::vector<double>& channel_llr,
                              unsigned max_iterations);

// Flooding min-sum on channel log-likelihood ratios, same conventions as
// decode_bp_float.
DecodeOutcome decode_minsum_float(const TannerGraph& graph,
                                  const std::vector<double>& channel_llr,
                                  unsigned max_iterations);

// Flooding decode with the quantize-reconstruct-compute datapath described
// by a designed parameter set.  channel_obs holds raw channel outputs (one
// per variable node); they are mapped to symbols by the channel thresholds,
// not interpreted as llrs.  Runs one pass per designed iteration unless the
// syndrome clears earlier.  Throws config_error when the parameter set fails
// validation or the observation count does not match the graph.
DecodeOutcome decode_rcq(const TannerGraph& graph, const RcqParameters& params,
                         const std::vector<double>& channel_obs);

}  // namespace rcq

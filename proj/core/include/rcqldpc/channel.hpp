#pragma once

#include <cstddef>
#include <vector>

#include "rcqldpc/pmf.hpp"

namespace rcq {

// Noise standard deviation of the unit-energy BPSK AWGN channel at a given
// Eb/N0 (dB) and code rate: sigma = sqrt(1 / (2 * rate * 10^(ebno_db/10))).
double sigma_from_ebno(double ebno_db, double rate);

// Per-observation channel llr ln P(y|x=0)/P(y|x=1) = 2y/sigma^2 for BPSK
// mapping bit 0 -> +1.
double awgn_llr(double y, double sigma);

// Fine discretization of the BPSK AWGN channel output.
//
// The y axis is cut into num_bins uniform bins spanning [-(1+clip*sigma),
// +(1+clip*sigma)]; the two outermost bins additionally absorb the tails, so
// the masses sum to 1 exactly up to rounding.  Bin k (increasing y) maps to
// pmf entry num_bins-1-k, giving entries in decreasing-y and therefore
// decreasing-llr order.  Bin edges are mirrored around 0 exactly, masses for
// x = -1 are the reversal of the masses for x = +1, and the resulting joint
// pmf (uniform input prior) is exactly symmetric entry-by-entry.
struct ChannelDiscretization {
    double sigma = 0.0;
    std::size_t num_bins = 0;
    double clip = 0.0;
    BinaryJointPmf pmf;
    // num_bins+1 nominal edges, increasing in y.  The outer two are the
    // clipping limits, not true bin ends (tails are folded inward).
    std::vector<double> bin_edges;

    // y-domain position of the quantizer boundary that separates pmf entry
    // a-1 from pmf entry a (1 <= a <= num_bins-1).  Entries run in
    // decreasing y, so this is bin_edges[num_bins - a].
    double boundary_edge(std::size_t a) const;
};

// Throws std::invalid_argument unless num_bins is even and at least 4, and
// sigma and clip are positive.  Throws internal_consistency_error when sigma
// is so small that a bin mass underflows to zero, which would leave entries
// with no probability on either input.
ChannelDiscretization discretize_awgn(double sigma, std::size_t num_bins = 2000, double clip = 6.0);

// Symbol index for observation y against descending y-domain thresholds:
// the count of thresholds strictly greater than y, so a value equal to a
// threshold joins the higher-llr region.
std::size_t quantize_observation(double y, const std::vector<double>& thresholds_desc);

}  // namespace rcq

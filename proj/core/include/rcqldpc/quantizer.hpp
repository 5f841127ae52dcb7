#pragma once

#include <cstddef>
#include <vector>

#include "rcqldpc/pmf.hpp"

namespace rcq {

// All reconstruction llrs and threshold midpoints are clamped to this range
// (natural-log units) so downstream fixed-point formats always have a finite
// value to represent.
inline constexpr double kLlrClip = 25.0;

double clip_llr(double llr);

// Loss of mutual information, in bits, incurred by merging two clusters with
// summed joint masses (a0, a1) and (b0, b1) into one.  The input marginal
// P(x) cancels out of the difference, so the cost only involves the cluster
// masses; it is non-negative and floored at 0 against rounding.
double merge_cost(double a0, double a1, double b0, double b1);

// Single boundary placement inside entry range [begin, end): grows a cluster
// from the left edge and returns the first index whose cost of joining the
// left cluster is at least its cost of joining the remaining right entries.
// The result b lies in [begin+1, end-1] and splits the range into [begin, b)
// and [b, end).  Throws std::invalid_argument when the range has fewer than
// two entries.
std::size_t sts_boundary(const BinaryJointPmf& pmf, std::size_t begin, std::size_t end);

// Boundary positions of a 2^bits-region contiguous quantizer, as entry
// indices plus llr-domain decision thresholds.  boundary_indices[i] is the
// first entry of region i+1; thresholds[i] is the midpoint of the clamped
// llrs on either side of that boundary, so thresholds are descending and,
// for symmetric inputs, exactly mirrored with the middle one at 0.
struct QuantizerSpec {
    unsigned bits = 0;
    std::vector<std::size_t> boundary_indices;
    std::vector<double> thresholds;
};

// Representative llr per region: ln of the ratio of the region's summed
// masses, clamped to +/-kLlrClip.  Values are non-increasing with the
// region index; for symmetric inputs they are exactly mirrored.
struct ReconstructionTable {
    std::vector<double> llr;
};

struct QuantizationResult {
    QuantizerSpec spec;
    ReconstructionTable recon;
    // Joint pmf of the quantizer output: region mass sums in region order.
    BinaryJointPmf quantized;
    double mi_bits = 0.0;
};

// Hierarchical quantizer design: the middle boundary is placed first (forced
// to the center for symmetric pmfs), then every level splits each existing
// interval once more, until 2^bits regions exist.  For symmetric inputs only
// the left half is searched and all boundaries, thresholds, reconstruction
// values and output masses are mirrored exactly.  Throws
// degenerate_alphabet_error when an interval with fewer than two entries
// would have to be split.
QuantizationResult hdq(const BinaryJointPmf& pmf, unsigned bits);

// Symbol for an llr-domain value against descending thresholds: the count of
// thresholds strictly greater than the value.  A value exactly equal to a
// threshold therefore takes the smaller symbol, and an exact 0 against a
// mirrored threshold set lands in the weakest non-negative region.
std::size_t apply_quantizer(double value, const std::vector<double>& thresholds_desc);
std::size_t apply_quantizer(double value, const QuantizerSpec& spec);

// Exact dynamic program over all contiguous partitions into 2^bits regions,
// maximizing mutual information.  Reference for hdq's greedy hierarchy and
// the subject of the design-quality acceptance check; never worse than hdq.
QuantizationResult dp_optimal_quantizer(const BinaryJointPmf& pmf, unsigned bits);

}  // namespace rcq

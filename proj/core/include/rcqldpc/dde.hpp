#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rcqldpc/channel.hpp"
#include "rcqldpc/code.hpp"
#include "rcqldpc/pmf.hpp"
#include "rcqldpc/quantizer.hpp"

namespace rcq {

// Pairwise log-domain check-node rule 2 atanh(tanh(x/2) tanh(y/2)) evaluated
// in the numerically stable min/log1p form.  boxplus_magnitude takes
// x, y >= 0 (either may be +inf, which acts as the identity); boxplus applies
// the sign rule sign(a) sign(b) on top.
double boxplus_magnitude(double x, double y);
double boxplus(double a, double b);

// Check-node convolution: T = (T_a, T_b), X = X_a xor X_b, so each product
// row gets masses (a0 b0 + a1 b1, a0 b1 + a1 b0) and llr boxplus(l_a, l_b).
// The result is canonical (llr-sorted, exactly-equal llrs merged).  When both
// inputs are symmetric the product is grouped by exactly-negated sort keys
// and assembled left-half-first, so symmetry is preserved bitwise.
BinaryJointPmf check_conv_bp(const BinaryJointPmf& a, const BinaryJointPmf& b);

// Variable-node convolution under an equiprobable input: each product row
// gets masses (2 a0 b0, 2 a1 b1) and llr l_a + l_b.  Canonicalization and
// exact symmetry preservation match check_conv_bp.
BinaryJointPmf var_conv(const BinaryJointPmf& a, const BinaryJointPmf& b);

struct OsaResult {
    BinaryJointPmf pmf;
    double mi_loss_bits = 0.0;
};

// Output-symbol alignment: greedy left-to-right clustering of an llr-sorted
// pmf.  A cluster absorbs the next entry while anchor_llr - entry_llr <= gap,
// where the anchor is the cluster's first entry.  Symmetric pmfs cluster the
// strictly-positive half only and mirror it, so no cluster ever spans the
// center and the llr == 0 twin pair is left untouched.  Throws
// std::invalid_argument when the input is not llr-sorted or gap < 0.
OsaResult osa(const BinaryJointPmf& pmf, double gap);

// Sign-magnitude view of a 2^bits message alphabet in decreasing-llr symbol
// order: symbol t < 2^(bits-1) is level +(2^(bits-1) - t), the rest are
// level -(t - 2^(bits-1) + 1).  Levels run +2^(bits-1)..+1, -1..-2^(bits-1);
// there is no level 0.
struct SignMagnitudeAlphabet {
    unsigned bits = 0;

    std::size_t size() const { return std::size_t{1} << bits; }
    std::size_t half() const { return size() / 2; }

    int level(std::size_t symbol) const {
        const std::size_t h = half();
        return symbol < h ? static_cast<int>(h - symbol)
                          : -static_cast<int>(symbol - h + 1);
    }

    std::size_t symbol(int level) const {
        const std::size_t h = half();
        return level > 0 ? h - static_cast<std::size_t>(level)
                         : h + static_cast<std::size_t>(-level) - 1;
    }
};

// Min-sum check-node convolution in the symbol domain: the output symbol of
// a pair is sign(level_a) sign(level_b) min(|level_a|, |level_b|) and masses
// accumulate by output symbol, so the alphabet never grows.  Inputs and
// output all have exactly 2^bits rows in symbol order.  When both inputs are
// symmetric, mirror-pair masses are averaged and rewritten so the output is
// exactly symmetric.
BinaryJointPmf check_conv_ms(const BinaryJointPmf& a, const BinaryJointPmf& b,
                             const SignMagnitudeAlphabet& alphabet);

enum class RcqMode { bp, ms };

std::string to_string(RcqMode mode);
RcqMode rcq_mode_from_string(const std::string& name);

// Operating point a parameter set was designed for.
struct DesignPoint {
    double ebno_db = 0.0;
    double rate = 0.0;
    double sigma = 0.0;
};

// Per-iteration lookup tables.  In bp mode all four are populated: the check
// node reconstructs its inputs with check_recon, computes in the log domain,
// and requantizes with check_thresholds; the variable node mirrors that with
// var_recon / var_thresholds.  In ms mode the check node works directly on
// symbols, so check_recon and check_thresholds stay empty and var_recon
// carries the log-ratio of the check output distribution per symbol.
struct IterationTables {
    std::vector<double> check_recon;
    std::vector<double> check_thresholds;
    std::vector<double> var_recon;
    std::vector<double> var_thresholds;
};

// Full decoder design produced by density evolution: the channel quantizer
// (thresholds in the observation domain plus reconstruction llrs) and one
// table set per iteration, with bookkeeping for how lossy the run was.
struct RcqDesign {
    RcqMode mode = RcqMode::bp;
    unsigned bits = 0;
    DesignPoint design_point;
    std::vector<double> channel_thresholds_y;
    std::vector<double> channel_recon;
    std::vector<IterationTables> iterations;
    std::vector<double> mi_trajectory;
    double alignment_loss_bits = 0.0;
    double normalization_drift = 0.0;
};

// Designs RCQ decoder tables by discrete density evolution at the given
// channel.  Per iteration: the check-side mixture sum_d rho_d P_v^{conv(d-1)}
// is built with check_conv_bp + osa after every step (bp) or check_conv_ms
// (ms), then quantized with hdq (bp only); the variable-side update
// P_ch conv sum_d lambda_d P_c^{conv(d-1)} uses var_conv with osa after
// every step and is quantized with hdq, whose reconstruction becomes the
// next iteration's check_recon.  The mutual information of the quantized
// variable-side output is recorded per iteration.
//
// Throws std::invalid_argument on a malformed degree distribution (empty,
// degrees < 2, or coefficients not summing to 1 within 1e-9), bits outside
// [1, 16], iterations == 0, or gap < 0; design_failure_error when a
// quantizer stage degenerates (naming the stage and iteration); and
// internal_consistency_error if the recorded mutual information ever drops
// by more than 1e-9 between iterations.
RcqDesign design_rcq(const DegreeDistribution& degrees,
                     const ChannelDiscretization& channel,
                     const DesignPoint& point, RcqMode mode, unsigned bits,
                     unsigned iterations, double gap);

}  // namespace rcq

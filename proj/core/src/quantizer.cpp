#include "rcqldpc/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "rcqldpc/errors.hpp"

namespace rcq {

namespace {

const double kLn2 = std::log(2.0);

double xlog2(double x) {
    return x > 0.0 ? x * std::log2(x) : 0.0;
}

// sum_x s_x log2(s_x / S): the partition-dependent part of the mutual
// information contributed by one cluster.  The input marginal P(x) appears
// in every cluster's full MI term with weight equal to the cluster's mass,
// so it cancels from any merge difference and is omitted throughout.
double cluster_term(double s0, double s1) {
    return xlog2(s0) + xlog2(s1) - xlog2(s0 + s1);
}

// u log2(u/(u+v)) + v log2(v/(u+v)): the negated entropy of mixing two
// masses.  Written with log1p so every addend is scaled by one of the input
// masses themselves; the result keeps full relative accuracy even when u and
// v differ by hundreds of orders of magnitude, which deep density-evolution
// alphabets produce routinely.
double mixing_term(double u, double v) {
    if (u <= 0.0 || v <= 0.0) {
        return 0.0;
    }
    return -(u * std::log1p(v / u) + v * std::log1p(u / v)) / kLn2;
}

}  // namespace

double clip_llr(double llr) {
    return std::clamp(llr, -kLlrClip, kLlrClip);
}

double merge_cost(double a0, double a1, double b0, double b1) {
    const double cost =
        mixing_term(a0, b0) + mixing_term(a1, b1) - mixing_term(a0 + a1, b0 + b1);
    return cost > 0.0 ? cost : 0.0;
}

std::size_t sts_boundary(const BinaryJointPmf& pmf, std::size_t begin, std::size_t end) {
    if (end > pmf.size() || begin >= end || end - begin < 2) {
        throw std::invalid_argument("sts_boundary needs a range of at least two entries");
    }

    // Running sums from both sides, so no subtraction is involved anywhere.
    std::vector<double> suffix0(end - begin + 1, 0.0);
    std::vector<double> suffix1(end - begin + 1, 0.0);
    for (std::size_t k = end; k > begin; --k) {
        const PmfEntry& e = pmf[k - 1];
        suffix0[k - 1 - begin] = suffix0[k - begin] + e.p0;
        suffix1[k - 1 - begin] = suffix1[k - begin] + e.p1;
    }

    double left0 = pmf[begin].p0;
    double left1 = pmf[begin].p1;
    for (std::size_t cand = begin + 1; cand < end; ++cand) {
        const PmfEntry& e = pmf[cand];
        const double into_left = merge_cost(left0, left1, e.p0, e.p1);
        const double into_right =
            merge_cost(e.p0, e.p1, suffix0[cand + 1 - begin], suffix1[cand + 1 - begin]);
        if (into_left >= into_right) return cand;
        left0 += e.p0;
        left1 += e.p1;
    }
    throw internal_consistency_error("sts_boundary scan fell through");
}

namespace {

void split_recursive(const BinaryJointPmf& pmf, std::size_t begin, std::size_t end,
                     unsigned levels, std::vector<std::size_t>& out) {
    if (levels == 0) return;
    if (end - begin < 2) {
        throw degenerate_alphabet_error("cannot split interval [" + std::to_string(begin) + ", " +
                                        std::to_string(end) + "): fewer than two entries");
    }
    const std::size_t b = sts_boundary(pmf, begin, end);
    split_recursive(pmf, begin, b, levels - 1, out);
    out.push_back(b);
    split_recursive(pmf, b, end, levels - 1, out);
}

bool bounds_mirrored(const std::vector<std::size_t>& bounds, std::size_t n) {
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        if (bounds[i] + bounds[bounds.size() - 1 - i] != n) return false;
    }
    return true;
}

// Thresholds, reconstruction values, merged pmf and mutual information for a
// fixed boundary set.  When the source is symmetric and the boundaries
// mirror, only the left half is computed and the rest is reflected, keeping
// R(i) == -R(2^bits-1-i) and mirrored thresholds exact.
QuantizationResult finalize_partition(const BinaryJointPmf& pmf, unsigned bits,
                                      std::vector<std::size_t> bounds) {
    const std::size_t n = pmf.size();
    const std::size_t regions = std::size_t{1} << bits;
    const bool mirror = pmf.symmetric() && bounds_mirrored(bounds, n);

    QuantizationResult out;
    out.spec.bits = bits;
    out.spec.thresholds.resize(bounds.size());
    const std::size_t th_direct = mirror ? bounds.size() / 2 + 1 : bounds.size();
    for (std::size_t i = 0; i < th_direct; ++i) {
        const std::size_t b = bounds[i];
        out.spec.thresholds[i] = 0.5 * (clip_llr(pmf[b - 1].llr) + clip_llr(pmf[b].llr));
        if (mirror && bounds.size() - 1 - i != i) {
            out.spec.thresholds[bounds.size() - 1 - i] = -out.spec.thresholds[i];
        }
    }
    out.spec.boundary_indices = std::move(bounds);
    const auto& bnd = out.spec.boundary_indices;

    auto region_begin = [&](std::size_t r) { return r == 0 ? std::size_t{0} : bnd[r - 1]; };
    auto region_end = [&](std::size_t r) { return r == regions - 1 ? n : bnd[r]; };

    std::vector<PmfEntry> merged(regions);
    out.recon.llr.resize(regions);
    const std::size_t direct = mirror ? regions / 2 : regions;
    for (std::size_t r = 0; r < direct; ++r) {
        double s0 = 0.0;
        double s1 = 0.0;
        for (std::size_t k = region_begin(r); k < region_end(r); ++k) {
            s0 += pmf[k].p0;
            s1 += pmf[k].p1;
        }
        const double l = entry_llr(s0, s1);
        merged[r] = {s0, s1, l};
        out.recon.llr[r] = clip_llr(l);
        if (mirror) {
            merged[regions - 1 - r] = {s1, s0, -l};
            out.recon.llr[regions - 1 - r] = -out.recon.llr[r];
        }
    }
    out.quantized = BinaryJointPmf::from_canonical(std::move(merged), mirror);
    out.mi_bits = normalized_mi_bits(out.quantized);

    for (std::size_t r = 1; r < regions; ++r) {
        if (out.recon.llr[r] > out.recon.llr[r - 1]) {
            throw internal_consistency_error("reconstruction llrs are not non-increasing");
        }
    }
    return out;
}

void require_enough_entries(std::size_t n, unsigned bits) {
    if (bits == 0 || bits > 16) throw std::invalid_argument("quantizer bits must lie in [1, 16]");
    const std::size_t regions = std::size_t{1} << bits;
    if (n < regions) {
        throw degenerate_alphabet_error("pmf with " + std::to_string(n) + " entries cannot fill " +
                                        std::to_string(regions) + " regions");
    }
}

}  // namespace

QuantizationResult hdq(const BinaryJointPmf& pmf, unsigned bits) {
    const std::size_t n = pmf.size();
    require_enough_entries(n, bits);
    const std::size_t regions = std::size_t{1} << bits;

    std::vector<std::size_t> bounds;
    bounds.reserve(regions - 1);
    if (pmf.symmetric()) {
        const std::size_t half = n / 2;
        std::vector<std::size_t> left;
        split_recursive(pmf, 0, half, bits - 1, left);
        bounds = left;
        bounds.push_back(half);
        for (auto it = left.rbegin(); it != left.rend(); ++it) {
            bounds.push_back(n - *it);
        }
    } else {
        split_recursive(pmf, 0, n, bits, bounds);
    }
    return finalize_partition(pmf, bits, std::move(bounds));
}

std::size_t apply_quantizer(double value, const std::vector<double>& thresholds_desc) {
    auto it = std::lower_bound(thresholds_desc.begin(), thresholds_desc.end(), value,
                               [](double th, double v) { return th > v; });
    return static_cast<std::size_t>(it - thresholds_desc.begin());
}

std::size_t apply_quantizer(double value, const QuantizerSpec& spec) {
    return apply_quantizer(value, spec.thresholds);
}

QuantizationResult dp_optimal_quantizer(const BinaryJointPmf& pmf, unsigned bits) {
    const std::size_t n = pmf.size();
    require_enough_entries(n, bits);
    const std::size_t regions = std::size_t{1} << bits;

    std::vector<double> c0(n + 1, 0.0);
    std::vector<double> c1(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        c0[k + 1] = c0[k] + pmf[k].p0;
        c1[k + 1] = c1[k] + pmf[k].p1;
    }
    auto g = [&](std::size_t i, std::size_t j) {
        return cluster_term(c0[j] - c0[i], c1[j] - c1[i]);
    };

    const double neg_inf = -std::numeric_limits<double>::infinity();
    std::vector<double> prev(n + 1, neg_inf);
    std::vector<double> cur(n + 1, neg_inf);
    std::vector<std::vector<std::uint32_t>> choice(regions + 1,
                                                   std::vector<std::uint32_t>(n + 1, 0));
    for (std::size_t j = 1; j <= n; ++j) prev[j] = g(0, j);
    for (std::size_t k = 2; k <= regions; ++k) {
        std::fill(cur.begin(), cur.end(), neg_inf);
        for (std::size_t j = k; j <= n; ++j) {
            double best = neg_inf;
            std::size_t best_i = k - 1;
            for (std::size_t i = k - 1; i < j; ++i) {
                const double v = prev[i] + g(i, j);
                if (v > best) {
                    best = v;
                    best_i = i;
                }
            }
            cur[j] = best;
            choice[k][j] = static_cast<std::uint32_t>(best_i);
        }
        std::swap(prev, cur);
    }

    std::vector<std::size_t> bounds(regions - 1);
    std::size_t j = n;
    for (std::size_t k = regions; k >= 2; --k) {
        j = choice[k][j];
        bounds[k - 2] = j;
    }
    return finalize_partition(pmf, bits, std::move(bounds));
}

}  // namespace rcq

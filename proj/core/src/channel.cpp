#include "rcqldpc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rcqldpc/errors.hpp"

namespace rcq {

double sigma_from_ebno(double ebno_db, double rate) {
    if (rate <= 0.0 || rate >= 1.0) throw std::invalid_argument("rate must lie in (0, 1)");
    return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, ebno_db / 10.0)));
}

double awgn_llr(double y, double sigma) {
    return 2.0 * y / (sigma * sigma);
}

namespace {

// Mass of N(1, sigma^2) on [lo, hi], evaluated through erfc on the side
// where the arguments stay positive so deep-tail bins keep full relative
// precision.
double gaussian_bin_mass(double lo, double hi, double sigma) {
    const double inv = 1.0 / (sigma * std::sqrt(2.0));
    if (lo >= 1.0) {
        return 0.5 * (std::erfc((lo - 1.0) * inv) - std::erfc((hi - 1.0) * inv));
    }
    return 0.5 * (std::erfc((1.0 - hi) * inv) - std::erfc((1.0 - lo) * inv));
}

}  // namespace

double ChannelDiscretization::boundary_edge(std::size_t a) const {
    if (a < 1 || a >= num_bins) throw std::invalid_argument("boundary index out of range");
    return bin_edges[num_bins - a];
}

ChannelDiscretization discretize_awgn(double sigma, std::size_t num_bins, double clip) {
    if (sigma <= 0.0) throw std::invalid_argument("sigma must be positive");
    if (clip <= 0.0) throw std::invalid_argument("clip must be positive");
    if (num_bins < 4 || num_bins % 2 != 0) {
        throw std::invalid_argument("num_bins must be even and at least 4");
    }

    const std::size_t m = num_bins;
    const double span = 1.0 + clip * sigma;
    const double width = 2.0 * span / static_cast<double>(m);

    // Upper-half edges first, then exact mirrors, so edge k == -edge (m-k)
    // bitwise and the middle edge is exactly 0.
    std::vector<double> edges(m + 1);
    for (std::size_t k = m / 2; k <= m; ++k) {
        edges[k] = static_cast<double>(k - m / 2) * width;
    }
    edges[m] = span;
    for (std::size_t k = 0; k < m / 2; ++k) {
        edges[k] = -edges[m - k];
    }

    // Mass per bin for x = +1; the outer bins take the folded tails.
    std::vector<double> mass_plus(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double lo = (k == 0) ? -std::numeric_limits<double>::infinity() : edges[k];
        const double hi = (k == m - 1) ? std::numeric_limits<double>::infinity() : edges[k + 1];
        mass_plus[k] = gaussian_bin_mass(lo, hi, sigma);
        if (!(mass_plus[k] > 0.0)) {
            throw internal_consistency_error("channel bin " + std::to_string(k) +
                                             " has zero mass; sigma too small for this grid");
        }
    }

    // Entry j covers bin m-1-j.  For x = -1 the bin masses are the exact
    // reversal of mass_plus, so p1 of entry j is mass_plus[j] itself.
    std::vector<PmfEntry> entries(m);
    for (std::size_t j = 0; j < m / 2; ++j) {
        const double p0 = 0.5 * mass_plus[m - 1 - j];
        const double p1 = 0.5 * mass_plus[j];
        entries[j] = {p0, p1, entry_llr(p0, p1)};
        entries[m - 1 - j] = {p1, p0, -entries[j].llr};
    }

    ChannelDiscretization out;
    out.sigma = sigma;
    out.num_bins = m;
    out.clip = clip;
    out.pmf = BinaryJointPmf::from_canonical(std::move(entries), true);
    out.bin_edges = std::move(edges);
    if (!out.pmf.llr_sorted()) {
        throw internal_consistency_error("discretized channel llrs are not sorted");
    }
    return out;
}

std::size_t quantize_observation(double y, const std::vector<double>& thresholds_desc) {
    auto it = std::lower_bound(thresholds_desc.begin(), thresholds_desc.end(), y,
                               [](double th, double v) { return th > v; });
    return static_cast<std::size_t>(it - thresholds_desc.begin());
}

}  // namespace rcq

#include "rcqldpc/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rcqldpc/errors.hpp"

namespace rcq {

double entry_llr(double p0, double p1) {
    if (p1 == 0.0 && p0 == 0.0) return 0.0;
    if (p1 == 0.0) return std::numeric_limits<double>::infinity();
    if (p0 == 0.0) return -std::numeric_limits<double>::infinity();
    // Evaluated on the >= 1 ratio only, so swapping the masses negates the
    // result bit for bit and mirror rows always carry exactly opposite llrs.
    return p0 >= p1 ? std::log(p0 / p1) : -std::log(p1 / p0);
}

namespace {

// 0 log2 0 = 0 throughout.
double xlog2(double x) {
    return x > 0.0 ? x * std::log2(x) : 0.0;
}

bool is_exact_mirror(const std::vector<PmfEntry>& e) {
    const std::size_t n = e.size();
    for (std::size_t j = 0; j < n; ++j) {
        const PmfEntry& a = e[j];
        const PmfEntry& b = e[n - 1 - j];
        if (a.p0 != b.p1 || a.p1 != b.p0) return false;
    }
    return true;
}

}  // namespace

BinaryJointPmf BinaryJointPmf::from_masses(std::vector<std::pair<double, double>> masses) {
    std::vector<PmfEntry> rows;
    rows.reserve(masses.size());
    for (const auto& [p0, p1] : masses) {
        if (p0 < 0.0 || p1 < 0.0) throw internal_consistency_error("pmf mass is negative");
        if (p0 == 0.0 && p1 == 0.0) continue;
        rows.push_back({p0, p1, entry_llr(p0, p1)});
    }
    // Decreasing llr; within equal llr, order by decreasing total mass so the
    // sort is deterministic before the merge collapses the run anyway.  A
    // merged class takes the llr of its summed masses, which can land a hair
    // off the shared input llr and out of order with a near-coincident
    // neighbour, so sort and merge repeat until the order is stable.
    const auto cmp = [](const PmfEntry& a, const PmfEntry& b) {
        if (a.llr != b.llr) return a.llr > b.llr;
        return (a.p0 + a.p1) > (b.p0 + b.p1);
    };
    std::vector<PmfEntry> merged = std::move(rows);
    for (bool changed = true; changed;) {
        std::stable_sort(merged.begin(), merged.end(), cmp);
        changed = false;
        std::vector<PmfEntry> next;
        next.reserve(merged.size());
        for (const PmfEntry& r : merged) {
            if (!next.empty() && next.back().llr == r.llr) {
                next.back().p0 += r.p0;
                next.back().p1 += r.p1;
                next.back().llr = entry_llr(next.back().p0, next.back().p1);
                changed = true;
            } else {
                next.push_back(r);
            }
        }
        merged = std::move(next);
    }

    if (is_exact_mirror(merged)) {
        std::vector<std::pair<double, double>> half;
        double zero_mass = 0.0;
        for (const PmfEntry& r : merged) {
            if (r.llr > 0.0) {
                half.push_back({r.p0, r.p1});
            } else if (r.llr == 0.0) {
                zero_mass += r.p0 + r.p1;
            }
        }
        return build_symmetric(half, zero_mass);
    }

    BinaryJointPmf out;
    out.entries_ = std::move(merged);
    out.symmetric_ = false;
    return out;
}

BinaryJointPmf BinaryJointPmf::build_symmetric(const std::vector<std::pair<double, double>>& positive_half,
                                               double zero_mass) {
    std::vector<PmfEntry> rows;
    rows.reserve(2 * positive_half.size() + 2);
    for (const auto& [p0, p1] : positive_half) {
        if (p0 < 0.0 || p1 < 0.0) throw internal_consistency_error("pmf mass is negative");
        if (p0 == 0.0 && p1 == 0.0) continue;
        const double l = entry_llr(p0, p1);
        if (!(l > 0.0)) throw internal_consistency_error("symmetric half entry has llr <= 0");
        rows.push_back({p0, p1, l});
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const PmfEntry& a, const PmfEntry& b) { return a.llr > b.llr; });
    for (std::size_t j = 1; j < rows.size(); ++j) {
        if (rows[j].llr == rows[j - 1].llr) {
            throw internal_consistency_error("symmetric half has duplicate llr values");
        }
    }

    const std::size_t h = rows.size();
    std::vector<PmfEntry> full;
    full.reserve(2 * h + 2);
    for (const PmfEntry& r : rows) full.push_back(r);
    if (zero_mass > 0.0) {
        const double q = zero_mass / 4.0;
        full.push_back({q, q, 0.0});
        full.push_back({q, q, 0.0});
    }
    for (std::size_t j = 0; j < h; ++j) {
        const PmfEntry& r = rows[h - 1 - j];
        full.push_back({r.p1, r.p0, -r.llr});
    }

    BinaryJointPmf out;
    out.entries_ = std::move(full);
    out.symmetric_ = true;
    return out;
}

BinaryJointPmf BinaryJointPmf::from_symbol_order(const std::vector<std::pair<double, double>>& masses) {
    BinaryJointPmf out;
    out.entries_.reserve(masses.size());
    for (const auto& [p0, p1] : masses) {
        if (p0 < 0.0 || p1 < 0.0) throw internal_consistency_error("pmf mass is negative");
        out.entries_.push_back({p0, p1, entry_llr(p0, p1)});
    }
    out.symmetric_ = is_exact_mirror(out.entries_);
    return out;
}

BinaryJointPmf BinaryJointPmf::from_canonical(std::vector<PmfEntry> entries, bool symmetric) {
    BinaryJointPmf out;
    out.entries_ = std::move(entries);
    out.symmetric_ = symmetric;
    return out;
}

double BinaryJointPmf::total_mass() const {
    double s = 0.0;
    for (const PmfEntry& r : entries_) s += r.p0 + r.p1;
    return s;
}

double BinaryJointPmf::prior0() const {
    double s = 0.0;
    for (const PmfEntry& r : entries_) s += r.p0;
    return s;
}

double BinaryJointPmf::mutual_information_bits() const {
    const double total = total_mass();
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("mutual information of an unnormalized pmf");
    }
    // I(X;T) = H(X) + sum_t [ sum_x p(x,t) log2 p(x,t) - p(t) log2 p(t) ].
    const double px0 = prior0();
    const double px1 = total - px0;
    double acc = -xlog2(px0) - xlog2(px1);
    for (const PmfEntry& r : entries_) {
        acc += xlog2(r.p0) + xlog2(r.p1) - xlog2(r.p0 + r.p1);
    }
    return acc;
}

double normalized_mi_bits(const BinaryJointPmf& pmf) {
    const double total = pmf.total_mass();
    if (total <= 0.0) throw internal_consistency_error("pmf has zero total mass");
    const double px0 = pmf.prior0() / total;
    const double px1 = 1.0 - px0;
    double acc = -xlog2(px0) - xlog2(px1);
    for (std::size_t j = 0; j < pmf.size(); ++j) {
        const PmfEntry& r = pmf[j];
        const double q0 = r.p0 / total;
        const double q1 = r.p1 / total;
        acc += xlog2(q0) + xlog2(q1) - xlog2(q0 + q1);
    }
    return acc;
}

double BinaryJointPmf::renormalize() {
    const double total = total_mass();
    if (total <= 0.0) throw internal_consistency_error("pmf has zero total mass");
    for (PmfEntry& r : entries_) {
        r.p0 /= total;
        r.p1 /= total;
    }
    return std::abs(1.0 - total);
}

bool BinaryJointPmf::llr_sorted() const {
    for (std::size_t j = 1; j < entries_.size(); ++j) {
        if (entries_[j].llr > entries_[j - 1].llr) return false;
    }
    return true;
}

}  // namespace rcq

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "rcqldpc/pmf.hpp"

namespace testsupport {

// Deterministic uniform in (0,1) built from the engine's raw bits, so frozen
// expected values never depend on the standard library's distribution code.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>((gen() >> 11) + 1) * 0x1.0p-53;
}

inline double xlog2(double x) {
    return x > 0.0 ? x * std::log2(x) : 0.0;
}

// Straight evaluation of I(X;T) = sum p(x,t) log2(p(x,t)/(p(x)p(t))) on raw
// rows; shares nothing with the library's pmf machinery.
inline double mi_oracle(const std::vector<std::array<double, 2>>& rows) {
    double px0 = 0.0;
    double px1 = 0.0;
    for (const auto& r : rows) {
        px0 += r[0];
        px1 += r[1];
    }
    double acc = 0.0;
    for (const auto& r : rows) {
        const double pt = r[0] + r[1];
        acc += xlog2(r[0]) + xlog2(r[1]) - xlog2(pt);
    }
    return acc - xlog2(px0) - xlog2(px1);
}

// MI after merging rows into contiguous regions delimited by ascending
// boundary indices (region r = rows [bounds[r-1], bounds[r])).
inline double partition_mi_oracle(const std::vector<std::array<double, 2>>& rows,
                                  const std::vector<std::size_t>& bounds) {
    std::vector<std::array<double, 2>> merged;
    std::size_t start = 0;
    for (std::size_t r = 0; r <= bounds.size(); ++r) {
        const std::size_t stop = r < bounds.size() ? bounds[r] : rows.size();
        std::array<double, 2> acc = {0.0, 0.0};
        for (std::size_t k = start; k < stop; ++k) {
            acc[0] += rows[k][0];
            acc[1] += rows[k][1];
        }
        merged.push_back(acc);
        start = stop;
    }
    return mi_oracle(merged);
}

inline std::vector<std::array<double, 2>> rows_of(const rcq::BinaryJointPmf& pmf) {
    std::vector<std::array<double, 2>> rows;
    rows.reserve(pmf.size());
    for (const auto& e : pmf.entries()) rows.push_back({e.p0, e.p1});
    return rows;
}

// Random normalized symmetric pmf with `half` strictly-positive-llr entries
// (descending) plus optional center mass; total size 2*half or 2*half+2.
inline rcq::BinaryJointPmf random_symmetric_pmf(std::mt19937_64& gen, std::size_t half,
                                                bool with_zero_mass) {
    std::vector<std::pair<double, double>> entries;
    double llr = 4.0 + 2.0 * uniform01(gen);
    for (std::size_t i = 0; i < half; ++i) {
        llr -= 0.05 + uniform01(gen);
        const double mass = 0.05 + uniform01(gen);
        const double ratio = std::exp(llr);
        entries.push_back({mass * ratio / (1.0 + ratio), mass / (1.0 + ratio)});
    }
    const double zero_mass = with_zero_mass ? 0.1 + 0.2 * uniform01(gen) : 0.0;
    auto pmf = rcq::BinaryJointPmf::build_symmetric(entries, zero_mass);
    pmf.renormalize();
    return pmf;
}

// Random pmf with no symmetry structure, normalized, llr-sorted.
inline rcq::BinaryJointPmf random_pmf(std::mt19937_64& gen, std::size_t n) {
    std::vector<std::pair<double, double>> masses;
    for (std::size_t i = 0; i < n; ++i) {
        masses.push_back({0.01 + uniform01(gen), 0.01 + uniform01(gen)});
    }
    auto pmf = rcq::BinaryJointPmf::from_masses(masses);
    pmf.renormalize();
    return pmf;
}

}  // namespace testsupport

#include "rcqldpc/dde.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rcqldpc/errors.hpp"

namespace rcq {

double boxplus_magnitude(double x, double y) {
    if (std::isinf(x)) return y;
    if (std::isinf(y)) return x;
    return std::min(x, y) + std::log1p(std::exp(-(x + y))) -
           std::log1p(std::exp(-std::abs(x - y)));
}

double boxplus(double a, double b) {
    const double mag = boxplus_magnitude(std::abs(a), std::abs(b));
    return (a < 0.0) == (b < 0.0) ? mag : -mag;
}

namespace {

struct PairMasses {
    double p0 = 0.0;
    double p1 = 0.0;
};

// Positive product classes keyed by their exact sort key, largest first.
using ClassMap = std::map<double, PairMasses, std::greater<double>>;

// Assembles a symmetric pmf from positive-side cluster masses plus pooled
// center mass.  Clusters whose llr (recomputed from the summed masses) is no
// longer strictly positive fold into the center together with their implied
// mirror, and clusters whose recomputed llrs collide are merged; both cases
// repeat until the half is strictly descending, which build_symmetric
// requires.  Almost always a single pass.
BinaryJointPmf symmetric_from_clusters(std::vector<PairMasses> half, double zero_mass) {
    for (;;) {
        std::vector<PmfEntry> rows;
        rows.reserve(half.size());
        double folded = 0.0;
        for (const PairMasses& m : half) {
            if (m.p0 == 0.0 && m.p1 == 0.0) continue;
            const double l = entry_llr(m.p0, m.p1);
            if (l > 0.0) {
                rows.push_back({m.p0, m.p1, l});
            } else {
                folded += 2.0 * (m.p0 + m.p1);
            }
        }
        zero_mass += folded;
        std::stable_sort(rows.begin(), rows.end(),
                         [](const PmfEntry& a, const PmfEntry& b) { return a.llr > b.llr; });
        bool merged = false;
        std::vector<PairMasses> next;
        next.reserve(rows.size());
        double run_llr = 0.0;
        for (const PmfEntry& r : rows) {
            if (!next.empty() && r.llr == run_llr) {
                next.back().p0 += r.p0;
                next.back().p1 += r.p1;
                merged = true;
            } else {
                next.push_back({r.p0, r.p1});
                run_llr = r.llr;
            }
        }
        if (!merged && folded == 0.0) {
            std::vector<std::pair<double, double>> pairs;
            pairs.reserve(next.size());
            for (const PairMasses& m : next) pairs.push_back({m.p0, m.p1});
            return BinaryJointPmf::build_symmetric(pairs, zero_mass);
        }
        half = std::move(next);
    }
}

enum class ConvKind { check, var };

void product_masses(const PmfEntry& ea, const PmfEntry& eb, ConvKind kind, double& p0,
                    double& p1) {
    if (kind == ConvKind::check) {
        p0 = ea.p0 * eb.p0 + ea.p1 * eb.p1;
        p1 = ea.p0 * eb.p1 + ea.p1 * eb.p0;
    } else {
        p0 = 2.0 * ea.p0 * eb.p0;
        p1 = 2.0 * ea.p1 * eb.p1;
    }
}

// Product pmf of two exactly symmetric inputs.  Every pair gets a sort key
// that is exactly negated for the pair's mirror image (boxplus of the stored
// llrs for the check rule, their sum for the variable rule), so only the
// key > 0 pairs are accumulated and the key == 0 pairs pool in the center;
// the negative side is reconstructed by mirroring, keeping the output
// symmetric bitwise.
BinaryJointPmf conv_symmetric(const BinaryJointPmf& a, const BinaryJointPmf& b, ConvKind kind) {
    ClassMap classes;
    double zero_mass = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const PmfEntry& ea = a[i];
        for (std::size_t j = 0; j < b.size(); ++j) {
            const PmfEntry& eb = b[j];
            double p0 = 0.0;
            double p1 = 0.0;
            product_masses(ea, eb, kind, p0, p1);
            if (p0 + p1 == 0.0) continue;
            double key = 0.0;
            if (kind == ConvKind::check) {
                const double mag = boxplus_magnitude(std::abs(ea.llr), std::abs(eb.llr));
                key = (ea.llr < 0.0) == (eb.llr < 0.0) ? mag : -mag;
            } else {
                key = ea.llr + eb.llr;
            }
            if (key > 0.0) {
                PairMasses& m = classes[key];
                m.p0 += p0;
                m.p1 += p1;
            } else if (key == 0.0) {
                zero_mass += p0 + p1;
            }
        }
    }
    std::vector<PairMasses> half;
    half.reserve(classes.size());
    for (const auto& [key, m] : classes) half.push_back(m);
    return symmetric_from_clusters(std::move(half), zero_mass);
}

BinaryJointPmf conv_general(const BinaryJointPmf& a, const BinaryJointPmf& b, ConvKind kind) {
    std::vector<std::pair<double, double>> rows;
    rows.reserve(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            double p0 = 0.0;
            double p1 = 0.0;
            product_masses(a[i], b[j], kind, p0, p1);
            rows.push_back({p0, p1});
        }
    }
    return BinaryJointPmf::from_masses(std::move(rows));
}

BinaryJointPmf convolve(const BinaryJointPmf& a, const BinaryJointPmf& b, ConvKind kind) {
    if (a.size() == 0 || b.size() == 0) {
        throw std::invalid_argument("convolution of an empty pmf");
    }
    return a.symmetric() && b.symmetric() ? conv_symmetric(a, b, kind)
                                          : conv_general(a, b, kind);
}

// Mirror-averaged symbol pmf: entry s and its mirror are rewritten from
// their mass average so the result is exactly symmetric with exactly
// negated llrs.
BinaryJointPmf symmetric_symbol_pmf(const std::vector<PairMasses>& acc) {
    const std::size_t n = acc.size();
    std::vector<PmfEntry> entries(n);
    for (std::size_t s = 0; s < n / 2; ++s) {
        const std::size_t sm = n - 1 - s;
        const double m0 = 0.5 * (acc[s].p0 + acc[sm].p1);
        const double m1 = 0.5 * (acc[s].p1 + acc[sm].p0);
        const double l = entry_llr(m0, m1);
        entries[s] = {m0, m1, l};
        entries[sm] = {m1, m0, -l};
    }
    return BinaryJointPmf::from_canonical(std::move(entries), true);
}

}  // namespace

BinaryJointPmf check_conv_bp(const BinaryJointPmf& a, const BinaryJointPmf& b) {
    return convolve(a, b, ConvKind::check);
}

BinaryJointPmf var_conv(const BinaryJointPmf& a, const BinaryJointPmf& b) {
    return convolve(a, b, ConvKind::var);
}

OsaResult osa(const BinaryJointPmf& pmf, double gap) {
    if (gap < 0.0) throw std::invalid_argument("alignment gap must be non-negative");
    if (pmf.size() == 0) throw std::invalid_argument("alignment of an empty pmf");
    if (!pmf.llr_sorted()) throw std::invalid_argument("alignment requires an llr-sorted pmf");

    const double before = normalized_mi_bits(pmf);
    BinaryJointPmf out;
    if (pmf.symmetric()) {
        std::vector<PairMasses> half;
        double zero_mass = 0.0;
        std::size_t j = 0;
        while (j < pmf.size() && pmf[j].llr > 0.0) {
            const double anchor = pmf[j].llr;
            PairMasses m;
            while (j < pmf.size() && pmf[j].llr > 0.0 && anchor - pmf[j].llr <= gap) {
                m.p0 += pmf[j].p0;
                m.p1 += pmf[j].p1;
                ++j;
            }
            half.push_back(m);
        }
        for (; j < pmf.size() && pmf[j].llr == 0.0; ++j) {
            zero_mass += pmf[j].p0 + pmf[j].p1;
        }
        out = symmetric_from_clusters(std::move(half), zero_mass);
    } else {
        std::vector<std::pair<double, double>> rows;
        std::size_t j = 0;
        while (j < pmf.size()) {
            const double anchor = pmf[j].llr;
            double s0 = 0.0;
            double s1 = 0.0;
            while (j < pmf.size() && anchor - pmf[j].llr <= gap) {
                s0 += pmf[j].p0;
                s1 += pmf[j].p1;
                ++j;
            }
            rows.push_back({s0, s1});
        }
        out = BinaryJointPmf::from_masses(std::move(rows));
    }
    const double after = normalized_mi_bits(out);
    return {std::move(out), before - after};
}

BinaryJointPmf check_conv_ms(const BinaryJointPmf& a, const BinaryJointPmf& b,
                             const SignMagnitudeAlphabet& alphabet) {
    if (alphabet.bits < 1 || alphabet.bits > 16) {
        throw std::invalid_argument("sign-magnitude alphabet needs 1..16 bits");
    }
    const std::size_t n = alphabet.size();
    if (a.size() != n || b.size() != n) {
        throw std::invalid_argument("pmf size does not match the sign-magnitude alphabet");
    }
    std::vector<PairMasses> acc(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int la = alphabet.level(i);
        for (std::size_t j = 0; j < n; ++j) {
            const int lb = alphabet.level(j);
            const int mag = std::min(std::abs(la), std::abs(lb));
            const std::size_t t = alphabet.symbol((la < 0) == (lb < 0) ? mag : -mag);
            acc[t].p0 += a[i].p0 * b[j].p0 + a[i].p1 * b[j].p1;
            acc[t].p1 += a[i].p0 * b[j].p1 + a[i].p1 * b[j].p0;
        }
    }
    if (a.symmetric() && b.symmetric()) return symmetric_symbol_pmf(acc);
    std::vector<std::pair<double, double>> rows;
    rows.reserve(n);
    for (const PairMasses& m : acc) rows.push_back({m.p0, m.p1});
    return BinaryJointPmf::from_symbol_order(rows);
}

std::string to_string(RcqMode mode) {
    return mode == RcqMode::bp ? "bp" : "ms";
}

RcqMode rcq_mode_from_string(const std::string& name) {
    if (name == "bp") return RcqMode::bp;
    if (name == "ms") return RcqMode::ms;
    throw std::invalid_argument("unknown rcq mode: " + name);
}

namespace {

void validate_degree_side(const std::map<std::size_t, double>& side, const char* name) {
    if (side.empty()) {
        throw std::invalid_argument(std::string(name) + " degree distribution is empty");
    }
    double sum = 0.0;
    for (const auto& [d, w] : side) {
        if (d < 2) {
            throw std::invalid_argument(std::string(name) +
                                        " degrees below 2 are unsupported in density evolution");
        }
        if (w <= 0.0) {
            throw std::invalid_argument(std::string(name) + " coefficients must be positive");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument(std::string(name) + " coefficients must sum to 1");
    }
}

}  // namespace

RcqDesign design_rcq(const DegreeDistribution& degrees, const ChannelDiscretization& channel,
                     const DesignPoint& point, RcqMode mode, unsigned bits, unsigned iterations,
                     double gap) {
    if (bits < 1 || bits > 16) throw std::invalid_argument("symbol width must be 1..16 bits");
    if (iterations == 0) throw std::invalid_argument("design needs at least one iteration");
    if (gap < 0.0) throw std::invalid_argument("alignment gap must be non-negative");
    validate_degree_side(degrees.lambda, "variable");
    validate_degree_side(degrees.rho, "check");

    RcqDesign design;
    design.mode = mode;
    design.bits = bits;
    design.design_point = point;

    QuantizationResult channel_q;
    try {
        channel_q = hdq(channel.pmf, bits);
    } catch (const degenerate_alphabet_error& e) {
        throw design_failure_error(std::string("channel quantizer collapsed: ") + e.what());
    }
    design.channel_recon = channel_q.recon.llr;
    design.channel_thresholds_y.reserve(channel_q.spec.boundary_indices.size());
    for (const std::size_t a : channel_q.spec.boundary_indices) {
        design.channel_thresholds_y.push_back(channel.boundary_edge(a));
    }

    BinaryJointPmf p_ch = channel_q.quantized;
    design.normalization_drift += p_ch.renormalize();

    const std::size_t dc_max = degrees.rho.rbegin()->first;
    const std::size_t dv_max = degrees.lambda.rbegin()->first;
    const SignMagnitudeAlphabet alphabet{bits};

    auto aligned = [&](BinaryJointPmf pmf) {
        design.normalization_drift += pmf.renormalize();
        OsaResult r = osa(pmf, gap);
        design.alignment_loss_bits += r.mi_loss_bits;
        return std::move(r.pmf);
    };

    auto quantize_stage = [&](const BinaryJointPmf& pmf, const char* stage, unsigned it) {
        try {
            return hdq(pmf, bits);
        } catch (const degenerate_alphabet_error& e) {
            throw design_failure_error(std::string(stage) + " quantizer collapsed at iteration " +
                                       std::to_string(it) + ": " + e.what());
        }
    };

    auto mixture = [](const std::map<std::size_t, double>& weights,
                      const std::vector<BinaryJointPmf>& powers) {
        std::vector<std::pair<double, double>> rows;
        for (const auto& [d, w] : weights) {
            const BinaryJointPmf& p = powers[d - 1];
            for (std::size_t j = 0; j < p.size(); ++j) {
                rows.push_back({w * p[j].p0, w * p[j].p1});
            }
        }
        return BinaryJointPmf::from_masses(std::move(rows));
    };

    BinaryJointPmf p_v = p_ch;
    std::vector<double> check_recon = channel_q.recon.llr;

    for (unsigned it = 0; it < iterations; ++it) {
        IterationTables rec;
        BinaryJointPmf p_c;
        if (mode == RcqMode::bp) {
            std::vector<BinaryJointPmf> powers(dc_max);
            powers[1] = p_v;
            for (std::size_t e = 2; e + 1 <= dc_max; ++e) {
                powers[e] = aligned(check_conv_bp(powers[e - 1], p_v));
            }
            BinaryJointPmf mix = mixture(degrees.rho, powers);
            design.normalization_drift += mix.renormalize();
            const QuantizationResult qc = quantize_stage(mix, "check-side", it);
            rec.check_recon = check_recon;
            rec.check_thresholds = qc.spec.thresholds;
            rec.var_recon = qc.recon.llr;
            p_c = qc.quantized;
            design.normalization_drift += p_c.renormalize();
        } else {
            std::vector<BinaryJointPmf> powers(dc_max);
            powers[1] = p_v;
            for (std::size_t e = 2; e + 1 <= dc_max; ++e) {
                powers[e] = check_conv_ms(powers[e - 1], p_v, alphabet);
                design.normalization_drift += powers[e].renormalize();
            }
            std::vector<PairMasses> acc(alphabet.size());
            for (const auto& [d, w] : degrees.rho) {
                const BinaryJointPmf& p = powers[d - 1];
                for (std::size_t t = 0; t < alphabet.size(); ++t) {
                    acc[t].p0 += w * p[t].p0;
                    acc[t].p1 += w * p[t].p1;
                }
            }
            p_c = symmetric_symbol_pmf(acc);
            design.normalization_drift += p_c.renormalize();
            rec.var_recon.resize(alphabet.size());
            for (std::size_t t = 0; t < alphabet.size(); ++t) {
                rec.var_recon[t] = clip_llr(p_c[t].llr);
            }
        }

        std::vector<BinaryJointPmf> vpowers(dv_max);
        vpowers[1] = p_c;
        for (std::size_t e = 2; e + 1 <= dv_max; ++e) {
            vpowers[e] = aligned(var_conv(vpowers[e - 1], p_c));
        }
        BinaryJointPmf vmix = mixture(degrees.lambda, vpowers);
        design.normalization_drift += vmix.renormalize();
        const BinaryJointPmf full = aligned(var_conv(p_ch, vmix));
        const QuantizationResult qv = quantize_stage(full, "variable-side", it);
        rec.var_thresholds = qv.spec.thresholds;
        check_recon = qv.recon.llr;
        p_v = qv.quantized;
        design.normalization_drift += p_v.renormalize();

        const double mi = normalized_mi_bits(p_v);
        if (!design.mi_trajectory.empty() && mi < design.mi_trajectory.back() - 1e-9) {
            throw internal_consistency_error("mutual information decreased at iteration " +
                                             std::to_string(it));
        }
        design.mi_trajectory.push_back(mi);
        design.iterations.push_back(std::move(rec));
    }
    return design;
}

}  // namespace rcq

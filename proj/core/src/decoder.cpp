#include "rcqldpc/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "rcqldpc/channel.hpp"
#include "rcqldpc/errors.hpp"
#include "rcqldpc/quantizer.hpp"

namespace rcq {

namespace {

// Shared flooding loop for the float decoders: the check update fills the
// check-to-variable array from the variable-to-check array, everything else
// (variable update, hard decision, early exit) is identical.
template <typename CheckUpdate>
DecodeOutcome decode_float_impl(const TannerGraph& g, const std::vector<double>& channel_llr,
                                unsigned max_iterations, CheckUpdate&& update_checks) {
    if (channel_llr.size() != g.n_vars()) {
        throw config_error("channel llr count does not match the code length");
    }

    std::vector<double> v2c(g.n_edges());
    std::vector<double> c2v(g.n_edges(), 0.0);
    for (std::size_t v = 0; v < g.n_vars(); ++v) {
        for (std::size_t e : g.var_edges(v)) {
            v2c[e] = channel_llr[v];
        }
    }

    DecodeOutcome out;
    out.hard_decision.resize(g.n_vars());
    for (std::size_t v = 0; v < g.n_vars(); ++v) {
        out.hard_decision[v] = channel_llr[v] < 0.0 ? 1 : 0;
    }

    std::optional<SyndromeResult> syn;
    for (unsigned it = 1; it <= max_iterations; ++it) {
        update_checks(v2c, c2v);
        for (std::size_t v = 0; v < g.n_vars(); ++v) {
            double total = channel_llr[v];
            for (std::size_t e : g.var_edges(v)) {
                total += c2v[e];
            }
            for (std::size_t e : g.var_edges(v)) {
                v2c[e] = total - c2v[e];
            }
            out.hard_decision[v] = total < 0.0 ? 1 : 0;
        }
        out.iterations_used = it;
        syn = syndrome(g, out.hard_decision);
        if (syn->is_codeword) {
            break;
        }
    }
    if (!syn) {
        syn = syndrome(g, out.hard_decision);
    }
    out.success = syn->is_codeword;
    out.unsatisfied_checks = syn->unsatisfied;
    return out;
}

double saturating_add(double a, double b, const std::optional<FixedPointFormat>& fmt,
                      double lo, double hi) {
    const double s = a + b;
    if (!fmt) {
        return s;
    }
    return std::min(std::max(s, lo), hi);
}

}  // namespace

FixedPointFormat internal_format(unsigned bits) {
    if (bits < 5 || bits > 32) {
        throw std::invalid_argument("internal datapath width must be 5..32 bits");
    }
    return {bits, bits - 5};
}

double fixed_point_quantize(double value, const FixedPointFormat& fmt) {
    if (fmt.total_bits == 0 || fmt.total_bits > 32 || fmt.frac_bits >= fmt.total_bits) {
        throw std::invalid_argument("invalid fixed-point format");
    }
    const double scale = std::ldexp(1.0, static_cast<int>(fmt.frac_bits));
    const double lo = -std::ldexp(1.0, static_cast<int>(fmt.total_bits) - 1) / scale;
    const double hi = (std::ldexp(1.0, static_cast<int>(fmt.total_bits) - 1) - 1.0) / scale;
    const double q = std::round(value * scale) / scale;
    return std::min(std::max(q, lo), hi);
}

std::size_t min_sum_symbol(std::size_t a, std::size_t b,
                           const SignMagnitudeAlphabet& alphabet) {
    const int la = alphabet.level(a);
    const int lb = alphabet.level(b);
    const int mag = std::min(std::abs(la), std::abs(lb));
    return alphabet.symbol((la < 0) != (lb < 0) ? -mag : mag);
}

DecodeOutcome decode_bp_float(const TannerGraph& g, const std::vector<double>& channel_llr,
                              unsigned max_iterations) {
    std::vector<double> t;
    std::vector<double> prefix;
    std::vector<double> suffix;
    const auto update = [&](const std::vector<double>& in, std::vector<double>& out) {
        for (std::size_t c = 0; c < g.n_checks(); ++c) {
            const auto& edges = g.check_edges(c);
            const std::size_t d = edges.size();
            t.resize(d);
            prefix.assign(d + 1, 1.0);
            suffix.assign(d + 1, 1.0);
            for (std::size_t k = 0; k < d; ++k) {
                const double x = std::clamp(in[edges[k]], -kBpTanhClip, kBpTanhClip);
                t[k] = std::tanh(0.5 * x);
            }
            for (std::size_t k = 0; k < d; ++k) {
                prefix[k + 1] = prefix[k] * t[k];
            }
            for (std::size_t k = d; k > 0; --k) {
                suffix[k - 1] = t[k - 1] * suffix[k];
            }
            for (std::size_t k = 0; k < d; ++k) {
                out[edges[k]] = 2.0 * std::atanh(prefix[k] * suffix[k + 1]);
            }
        }
    };
    return decode_float_impl(g, channel_llr, max_iterations, update);
}

DecodeOutcome decode_minsum_float(const TannerGraph& g, const std::vector<double>& channel_llr,
                                  unsigned max_iterations) {
    const auto update = [&](const std::vector<double>& in, std::vector<double>& out) {
        for (std::size_t c = 0; c < g.n_checks(); ++c) {
            const auto& edges = g.check_edges(c);
            const std::size_t d = edges.size();
            double min1 = std::numeric_limits<double>::infinity();
            double min2 = min1;
            std::size_t argmin = d;
            bool parity = false;
            for (std::size_t k = 0; k < d; ++k) {
                const double x = in[edges[k]];
                parity ^= x < 0.0;
                const double a = std::abs(x);
                if (a < min1) {
                    min2 = min1;
                    min1 = a;
                    argmin = k;
                } else if (a < min2) {
                    min2 = a;
                }
            }
            for (std::size_t k = 0; k < d; ++k) {
                const bool neg = parity != (in[edges[k]] < 0.0);
                const double mag = k == argmin ? min2 : min1;
                out[edges[k]] = neg ? -mag : mag;
            }
        }
    };
    return decode_float_impl(g, channel_llr, max_iterations, update);
}

DecodeOutcome decode_rcq(const TannerGraph& g, const RcqParameters& params,
                         const std::vector<double>& channel_obs) {
    validate_parameters(params);
    if (channel_obs.size() != g.n_vars()) {
        throw config_error("channel observation count does not match the code length");
    }

    const bool ms = params.mode == RcqMode::ms;
    std::optional<FixedPointFormat> nc_fmt;
    if (!ms && params.precision.nc) {
        if (*params.precision.nc < 5) {
            throw config_error("check datapath width must be at least 5 bits");
        }
        nc_fmt = internal_format(*params.precision.nc);
    }
    std::optional<FixedPointFormat> nv_fmt;
    if (params.precision.nv) {
        if (*params.precision.nv < 5) {
            throw config_error("variable datapath width must be at least 5 bits");
        }
        nv_fmt = internal_format(*params.precision.nv);
    }
    const auto qc = [&](double x) { return nc_fmt ? fixed_point_quantize(x, *nc_fmt) : x; };
    const auto qv = [&](double x) { return nv_fmt ? fixed_point_quantize(x, *nv_fmt) : x; };
    double v_lo = -std::numeric_limits<double>::infinity();
    double v_hi = std::numeric_limits<double>::infinity();
    if (nv_fmt) {
        const double scale = std::ldexp(1.0, static_cast<int>(nv_fmt->frac_bits));
        v_lo = -std::ldexp(1.0, static_cast<int>(nv_fmt->total_bits) - 1) / scale;
        v_hi = (std::ldexp(1.0, static_cast<int>(nv_fmt->total_bits) - 1) - 1.0) / scale;
    }

    const SignMagnitudeAlphabet alphabet{params.precision.m};
    const std::size_t n_symbols = alphabet.size();

    // Channel reconstructions enter the variable-node adder, so they are
    // stored in its format up front.
    std::vector<double> ch_recon_q(n_symbols);
    for (std::size_t s = 0; s < n_symbols; ++s) {
        ch_recon_q[s] = qv(params.channel_recon[s]);
    }
    std::vector<double> r_ch(g.n_vars());
    std::vector<std::uint16_t> u(g.n_edges());
    for (std::size_t v = 0; v < g.n_vars(); ++v) {
        const std::size_t s = quantize_observation(channel_obs[v], params.channel_thresholds_y);
        r_ch[v] = ch_recon_q[s];
        for (std::size_t e : g.var_edges(v)) {
            u[e] = static_cast<std::uint16_t>(s);
        }
    }

    DecodeOutcome out;
    out.hard_decision.resize(g.n_vars());
    for (std::size_t v = 0; v < g.n_vars(); ++v) {
        out.hard_decision[v] = r_ch[v] < 0.0 ? 1 : 0;
    }

    std::vector<std::uint16_t> s_in(g.n_edges());
    std::vector<double> check_in(g.n_edges());
    std::vector<double> t;
    std::vector<double> prefix;
    std::vector<double> suffix;
    std::vector<double> recon_q(n_symbols);
    std::vector<double> var_recon_q(n_symbols);

    std::optional<SyndromeResult> syn;
    for (std::size_t it = 0; it < params.iterations.size(); ++it) {
        const IterationTables& tables = params.iterations[it];

        if (ms) {
            for (std::size_t c = 0; c < g.n_checks(); ++c) {
                const auto& edges = g.check_edges(c);
                const std::size_t d = edges.size();
                const int cap = static_cast<int>(alphabet.half());
                int min1 = cap;
                int min2 = cap;
                std::size_t argmin = d;
                bool parity = false;
                for (std::size_t k = 0; k < d; ++k) {
                    const int level = alphabet.level(u[edges[k]]);
                    parity ^= level < 0;
                    const int a = std::abs(level);
                    if (a < min1) {
                        min2 = min1;
                        min1 = a;
                        argmin = k;
                    } else if (a < min2) {
                        min2 = a;
                    }
                }
                for (std::size_t k = 0; k < d; ++k) {
                    const bool neg = parity != (alphabet.level(u[edges[k]]) < 0);
                    const int mag = k == argmin ? min2 : min1;
                    s_in[edges[k]] = static_cast<std::uint16_t>(alphabet.symbol(neg ? -mag : mag));
                }
            }
        } else {
            for (std::size_t s = 0; s < n_symbols; ++s) {
                recon_q[s] = qc(tables.check_recon[s]);
            }
            for (std::size_t e = 0; e < g.n_edges(); ++e) {
                check_in[e] = recon_q[u[e]];
            }
            for (std::size_t c = 0; c < g.n_checks(); ++c) {
                const auto& edges = g.check_edges(c);
                const std::size_t d = edges.size();
                t.resize(d);
                prefix.assign(d + 1, 1.0);
                suffix.assign(d + 1, 1.0);
                for (std::size_t k = 0; k < d; ++k) {
                    t[k] = std::tanh(0.5 * check_in[edges[k]]);
                }
                for (std::size_t k = 0; k < d; ++k) {
                    prefix[k + 1] = prefix[k] * t[k];
                }
                for (std::size_t k = d; k > 0; --k) {
                    suffix[k - 1] = t[k - 1] * suffix[k];
                }
                for (std::size_t k = 0; k < d; ++k) {
                    const double x = qc(2.0 * std::atanh(prefix[k] * suffix[k + 1]));
                    s_in[edges[k]] =
                        static_cast<std::uint16_t>(apply_quantizer(x, tables.check_thresholds));
                }
            }
        }

        for (std::size_t s = 0; s < n_symbols; ++s) {
            var_recon_q[s] = qv(tables.var_recon[s]);
        }
        for (std::size_t v = 0; v < g.n_vars(); ++v) {
            const auto& edges = g.var_edges(v);
            const std::size_t d = edges.size();
            for (std::size_t k = 0; k < d; ++k) {
                double acc = r_ch[v];
                for (std::size_t j = 0; j < d; ++j) {
                    if (j == k) {
                        continue;
                    }
                    acc = saturating_add(acc, var_recon_q[s_in[edges[j]]], nv_fmt, v_lo, v_hi);
                }
                u[edges[k]] = static_cast<std::uint16_t>(apply_quantizer(acc, tables.var_thresholds));
            }
            double posterior = r_ch[v];
            for (std::size_t j = 0; j < d; ++j) {
                posterior = saturating_add(posterior, var_recon_q[s_in[edges[j]]], nv_fmt, v_lo, v_hi);
            }
            out.hard_decision[v] = posterior < 0.0 ? 1 : 0;
        }

        out.iterations_used = static_cast<unsigned>(it + 1);
        syn = syndrome(g, out.hard_decision);
        if (syn->is_codeword) {
            break;
        }
    }
    if (!syn) {
        syn = syndrome(g, out.hard_decision);
    }
    out.success = syn->is_codeword;
    out.unsatisfied_checks = syn->unsatisfied;
    return out;
}

}  // namespace rcq

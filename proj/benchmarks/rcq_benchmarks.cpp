#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "rcqldpc/channel.hpp"
#include "rcqldpc/code.hpp"
#include "rcqldpc/dde.hpp"
#include "rcqldpc/decoder.hpp"
#include "rcqldpc/params.hpp"
#include "rcqldpc/quantizer.hpp"
#include "rcqldpc/rng.hpp"

namespace {

constexpr double kEbno = 2.0;
constexpr double kRate = 0.5;

const rcq::TannerGraph& graph606() {
    static const rcq::TannerGraph g =
        rcq::expand_qc(rcq::parse_qc_file(std::string(RCQLDPC_DATA_DIR) + "/array_3_6_606.qc"));
    return g;
}

// A fixed batch of noisy frames at the benchmark operating point, reused by
// every decoder so the numbers compare like for like.
const std::vector<std::vector<double>>& frames() {
    static const std::vector<std::vector<double>> batch = [] {
        const double sigma = rcq::sigma_from_ebno(kEbno, kRate);
        std::vector<std::vector<double>> out(64, std::vector<double>(graph606().n_vars()));
        rcq::Rng rng(12345);
        for (auto& frame : out) {
            for (auto& y : frame) {
                y = 1.0 + sigma * rng.next_gaussian();
            }
        }
        return out;
    }();
    return batch;
}

std::vector<double> to_llr(const std::vector<double>& y) {
    const double sigma = rcq::sigma_from_ebno(kEbno, kRate);
    std::vector<double> llr(y.size());
    for (std::size_t v = 0; v < y.size(); ++v) {
        llr[v] = 2.0 * y[v] / (sigma * sigma);
    }
    return llr;
}

const rcq::RcqDesign& design(rcq::RcqMode mode) {
    static const auto make = [](rcq::RcqMode m) {
        rcq::DegreeDistribution deg;
        deg.lambda[3] = 1.0;
        deg.rho[6] = 1.0;
        const double sigma = rcq::sigma_from_ebno(kEbno, kRate);
        const auto channel = rcq::discretize_awgn(sigma, 2000, 6.0);
        return rcq::design_rcq(deg, channel, {kEbno, kRate, sigma}, m, 4, 10, 1e-3);
    };
    static const rcq::RcqDesign bp = make(rcq::RcqMode::bp);
    static const rcq::RcqDesign ms = make(rcq::RcqMode::ms);
    return mode == rcq::RcqMode::bp ? bp : ms;
}

void decode_float(benchmark::State& state, bool bp) {
    const auto& g = graph606();
    std::vector<std::vector<double>> llrs;
    for (const auto& y : frames()) {
        llrs.push_back(to_llr(y));
    }
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& llr = llrs[i++ % llrs.size()];
        benchmark::DoNotOptimize(bp ? rcq::decode_bp_float(g, llr, 10)
                                    : rcq::decode_minsum_float(g, llr, 10));
    }
    state.SetItemsProcessed(state.iterations() * g.n_vars());
}

void BM_decode_bp_float(benchmark::State& state) { decode_float(state, true); }
void BM_decode_minsum_float(benchmark::State& state) { decode_float(state, false); }

void decode_rcq_mode(benchmark::State& state, rcq::RcqMode mode, std::optional<unsigned> nv) {
    const auto& g = graph606();
    const auto params = mode == rcq::RcqMode::ms
                            ? rcq::make_parameters(design(mode), 4, nv)
                            : rcq::make_parameters(design(mode), std::nullopt, nv);
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& y = frames()[i++ % frames().size()];
        benchmark::DoNotOptimize(rcq::decode_rcq(g, params, y));
    }
    state.SetItemsProcessed(state.iterations() * g.n_vars());
}

void BM_decode_ms_rcq(benchmark::State& state) {
    decode_rcq_mode(state, rcq::RcqMode::ms, std::nullopt);
}
void BM_decode_ms_rcq_nv12(benchmark::State& state) {
    decode_rcq_mode(state, rcq::RcqMode::ms, 12u);
}
void BM_decode_bp_rcq(benchmark::State& state) {
    decode_rcq_mode(state, rcq::RcqMode::bp, std::nullopt);
}

const rcq::BinaryJointPmf& channel_pmf() {
    static const auto channel =
        rcq::discretize_awgn(rcq::sigma_from_ebno(kEbno, kRate), 2000, 6.0);
    return channel.pmf;
}

void BM_hdq_channel(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(rcq::hdq(channel_pmf(), 4));
    }
}

void BM_dp_optimal_channel(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(rcq::dp_optimal_quantizer(channel_pmf(), 4));
    }
}

void BM_check_convolution_with_alignment(benchmark::State& state) {
    const auto q = rcq::hdq(channel_pmf(), 4);
    for (auto _ : state) {
        auto acc = q.quantized;
        for (int k = 0; k < 5; ++k) {
            acc = rcq::osa(rcq::check_conv_bp(acc, q.quantized), 1e-3).pmf;
        }
        benchmark::DoNotOptimize(acc);
    }
}

void BM_design_ms_tables(benchmark::State& state) {
    rcq::DegreeDistribution deg;
    deg.lambda[3] = 1.0;
    deg.rho[6] = 1.0;
    const double sigma = rcq::sigma_from_ebno(kEbno, kRate);
    const auto channel = rcq::discretize_awgn(sigma, 2000, 6.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            rcq::design_rcq(deg, channel, {kEbno, kRate, sigma}, rcq::RcqMode::ms, 4, 10, 1e-3));
    }
}

BENCHMARK(BM_decode_bp_float)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_decode_minsum_float)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_decode_ms_rcq)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_decode_ms_rcq_nv12)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_decode_bp_rcq)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_hdq_channel)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_dp_optimal_channel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_check_convolution_with_alignment)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_design_ms_tables)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

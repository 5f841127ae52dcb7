#include <cstdio>
#include <exception>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rcqldpc/channel.hpp"
#include "rcqldpc/code.hpp"
#include "rcqldpc/dde.hpp"
#include "rcqldpc/params.hpp"
#include "rcqldpc/pmf.hpp"
#include "rcqldpc/quantizer.hpp"
#include "rcqldpc/sim.hpp"

namespace {

std::string real17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text(const std::string& text, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out.flush()) throw std::runtime_error("write to " + path + " failed");
}

void append_reals(std::string& out, const std::vector<double>& v) {
    out += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i != 0) out += ',';
        out += real17(v[i]);
    }
    out += ']';
}

struct QuantizeChannelArgs {
    double ebno_db = 0.0;
    double rate = 0.5;
    unsigned bins = 2000;
    unsigned bits = 4;
    double clip = 6.0;
    std::string out;
};

void run_quantize_channel(const QuantizeChannelArgs& args) {
    const double sigma = rcq::sigma_from_ebno(args.ebno_db, args.rate);
    const auto channel = rcq::discretize_awgn(sigma, args.bins, args.clip);
    const auto q = rcq::hdq(channel.pmf, args.bits);

    std::vector<double> thresholds_y;
    thresholds_y.reserve(q.spec.boundary_indices.size());
    for (const std::size_t a : q.spec.boundary_indices) {
        thresholds_y.push_back(channel.boundary_edge(a));
    }

    const double fine_mi = channel.pmf.mutual_information_bits();
    std::string text = "{\n";
    text += "  \"ebno_db\": " + real17(args.ebno_db) + ",\n";
    text += "  \"rate\": " + real17(args.rate) + ",\n";
    text += "  \"sigma\": " + real17(sigma) + ",\n";
    text += "  \"bins\": " + std::to_string(args.bins) + ",\n";
    text += "  \"bits\": " + std::to_string(args.bits) + ",\n";
    text += "  \"thresholds_y\": ";
    append_reals(text, thresholds_y);
    text += ",\n  \"recon_llr\": ";
    append_reals(text, q.recon.llr);
    text += ",\n  \"mi_fine_bits\": " + real17(fine_mi) + ",\n";
    text += "  \"mi_quantized_bits\": " + real17(q.mi_bits) + ",\n";
    text += "  \"mi_loss_bits\": " + real17(fine_mi - q.mi_bits) + "\n";
    text += "}\n";
    write_text(text, args.out);
    std::printf("quantized channel at %.4g dB: %u bins -> %u regions, MI %.6f -> %.6f bits\n",
                args.ebno_db, args.bins, 1u << args.bits, fine_mi, q.mi_bits);
    std::printf("wrote %s\n", args.out.c_str());
}

struct DesignArgs {
    std::string code;
    std::string mode = "bp";
    unsigned bits = 4;
    double ebno_db = 0.0;
    unsigned iters = 0;
    double ls = 1e-3;
    unsigned bins = 2000;
    double clip = 6.0;
    std::optional<unsigned> nc;
    std::optional<unsigned> nv;
    std::string out;
};

void run_design(const DesignArgs& args) {
    const auto graph = rcq::load_code_file(args.code);
    const auto degrees = rcq::degree_distributions(graph);
    const double rate =
        1.0 - static_cast<double>(graph.n_checks()) / static_cast<double>(graph.n_vars());
    const double sigma = rcq::sigma_from_ebno(args.ebno_db, rate);
    const auto channel = rcq::discretize_awgn(sigma, args.bins, args.clip);
    const auto design =
        rcq::design_rcq(degrees, channel, {args.ebno_db, rate, sigma},
                        rcq::rcq_mode_from_string(args.mode), args.bits, args.iters, args.ls);
    const auto params = rcq::make_parameters(design, args.nc, args.nv);
    rcq::save_parameters(params, args.out);
    std::printf("designed %s-rcq m=%u for %s (rate %.4g) at %.4g dB, %u iterations\n",
                args.mode.c_str(), args.bits, args.code.c_str(), rate, args.ebno_db, args.iters);
    std::printf("final design MI %.6f bits, alignment loss %.3g bits\n",
                design.mi_trajectory.back(), design.alignment_loss_bits);
    std::printf("wrote %s\n", args.out.c_str());
}

void run_simulate(const rcq::SimConfig& cfg) {
    const auto result = rcq::run_fer_sweep(cfg);
    rcq::write_results(result, cfg.output_path);
    for (const auto& rec : result.records) {
        std::printf("ebno %.4g dB: fer %.4g (%llu/%llu frames), ber %.4g, avg iters %.3g\n",
                    rec.ebno_db, rec.fer, static_cast<unsigned long long>(rec.frame_errors),
                    static_cast<unsigned long long>(rec.frames), rec.ber, rec.avg_iterations);
    }
    std::printf("wrote %s and %s.json\n", cfg.output_path.c_str(), cfg.output_path.c_str());
}

void run_cross_decode(const std::string& config_a, const std::string& config_b,
                      const std::string& out) {
    const auto cfg_a = rcq::load_sim_config(config_a);
    const auto cfg_b = rcq::load_sim_config(config_b);
    const auto report = rcq::cross_decode_experiment(cfg_a, cfg_b, out + ".frames");

    std::string text = "{\n";
    text += "  \"decoder_a\": \"" + cfg_a.decoder + "\",\n";
    text += "  \"decoder_b\": \"" + cfg_b.decoder + "\",\n";
    text += "  \"captured\": " + std::to_string(report.captured) + ",\n";
    text += "  \"rescued\": " + std::to_string(report.rescued) + ",\n";
    text += "  \"rescue_fraction\": " + real17(report.rescue_fraction) + ",\n";
    text += "  \"capture_path\": \"" + report.capture_path + "\"\n";
    text += "}\n";
    write_text(text, out);
    std::printf("decoder %s failed %llu frames; %s rescued %llu (fraction %.4g)\n",
                cfg_a.decoder.c_str(), static_cast<unsigned long long>(report.captured),
                cfg_b.decoder.c_str(), static_cast<unsigned long long>(report.rescued),
                report.rescue_fraction);
    std::printf("wrote %s and %s\n", out.c_str(), report.capture_path.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RCQ LDPC toolkit: quantizer design, density-evolution table design, "
                 "and Monte-Carlo decoder simulation"};
    app.require_subcommand(1);

    QuantizeChannelArgs qc;
    auto* quantize = app.add_subcommand(
        "quantize-channel", "Design a mutual-information-maximizing channel quantizer");
    quantize->add_option("--ebno", qc.ebno_db, "Eb/N0 operating point in dB")->required();
    quantize->add_option("--rate", qc.rate, "code rate used to map Eb/N0 to sigma")->required();
    quantize->add_option("--bins", qc.bins, "fine discretization bin count")->required();
    quantize->add_option("--bits", qc.bits, "quantizer output width in bits")->required();
    quantize->add_option("--clip", qc.clip, "observation clip range in sigma units");
    quantize->add_option("--out", qc.out, "output JSON path")->required();

    DesignArgs ds;
    auto* design = app.add_subcommand(
        "design", "Design RCQ decoder tables by discrete density evolution");
    design->add_option("--code", ds.code, "parity-check file (alist or QC text)")->required();
    design->add_option("--mode", ds.mode, "check-node rule")
        ->check(CLI::IsMember({"bp", "ms"}))
        ->required();
    design->add_option("--bits", ds.bits, "external message width m in bits")->required();
    design->add_option("--ebno", ds.ebno_db, "design Eb/N0 in dB")->required();
    design->add_option("--iters", ds.iters, "decoder iteration count I_T")->required();
    design->add_option("--ls", ds.ls, "alignment merge threshold l_s");
    design->add_option("--bins", ds.bins, "channel discretization bin count");
    design->add_option("--clip", ds.clip, "observation clip range in sigma units");
    design->add_option("--nc", ds.nc, "check datapath width in bits (default: unbounded)");
    design->add_option("--nv", ds.nv, "variable datapath width in bits (default: unbounded)");
    design->add_option("--out", ds.out, "output parameter JSON path")->required();

    rcq::SimConfig sim;
    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo FER/BER sweep");
    simulate->add_option("--code", sim.code_path, "parity-check file (alist or QC text)")
        ->required();
    simulate->add_option("--decoder", sim.decoder, "bp-inf | minsum-inf | bp-rcq | ms-rcq")
        ->required();
    simulate->add_option("--params", sim.params_path, "parameter JSON (rcq decoders)");
    simulate->add_option("--ebno", sim.ebno_db, "Eb/N0 list in dB (comma separated)")
        ->required()
        ->delimiter(',');
    simulate->add_option("--max-frames", sim.max_frames, "frame budget per point");
    simulate->add_option("--min-errors", sim.min_frame_errors, "frame errors to stop at");
    simulate->add_option("--max-iters", sim.max_iters,
                         "iteration budget (0: table count for rcq, 50 for float)");
    simulate->add_option("--seed", sim.seed, "base RNG seed");
    simulate->add_option("--workers", sim.workers, "worker thread count");
    simulate->add_flag("--timing", sim.measure_time, "record wall_seconds per point");
    simulate->add_option("--out", sim.output_path, "output CSV path")->required();

    std::string cross_a;
    std::string cross_b;
    std::string cross_out;
    auto* cross = app.add_subcommand(
        "cross-decode", "Re-decode one decoder's failed frames with another decoder");
    cross->add_option("--config-a", cross_a, "sim config JSON for the capturing decoder")
        ->required();
    cross->add_option("--config-b", cross_b, "sim config JSON for the rescuing decoder")
        ->required();
    cross->add_option("--out", cross_out, "output report JSON path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (quantize->parsed()) {
            run_quantize_channel(qc);
        } else if (design->parsed()) {
            run_design(ds);
        } else if (simulate->parsed()) {
            run_simulate(sim);
        } else if (cross->parsed()) {
            run_cross_decode(cross_a, cross_b, cross_out);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

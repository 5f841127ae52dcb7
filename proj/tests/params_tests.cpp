#include <cstdio>
#include <limits>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "doctest.h"

#include "rcqldpc/channel.hpp"
#include "rcqldpc/errors.hpp"
#include "rcqldpc/params.hpp"

namespace {

// Minimal well-formed bp parameter set (m = 2): 4 reconstruction levels and
// 3 thresholds per table, one iteration.
rcq::RcqParameters tiny_bp() {
    rcq::RcqParameters p;
    p.mode = rcq::RcqMode::bp;
    p.precision = {2, std::nullopt, std::nullopt};
    p.design_point = {2.0, 0.5, rcq::sigma_from_ebno(2.0, 0.5)};
    p.channel_thresholds_y = {0.5, 0.0, -0.5};
    p.channel_recon = {3.0, 1.0, -1.0, -3.0};
    rcq::IterationTables t;
    t.check_recon = {2.5, 0.75, -0.75, -2.5};
    t.check_thresholds = {1.5, 0.0, -1.5};
    t.var_recon = {4.0, 1.25, -1.25, -4.0};
    t.var_thresholds = {2.0, 0.0, -2.0};
    p.iterations = {t};
    p.mi_trajectory = {0.5};
    return p;
}

rcq::RcqParameters tiny_ms() {
    rcq::RcqParameters p = tiny_bp();
    p.mode = rcq::RcqMode::ms;
    p.precision.nc = 2;
    for (auto& rec : p.iterations) {
        rec.check_recon.clear();
        rec.check_thresholds.clear();
    }
    return p;
}

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("reals serialize with 17 significant digits") {
    rcq::RcqParameters p = tiny_bp();
    p.design_point.ebno_db = 0.1;
    p.design_point.sigma = 1.0 / 3.0;
    p.mi_trajectory = {0.79432823472428149};
    const std::string text = rcq::to_json(p);
    CHECK(text.find("\"ebno_db\": 0.10000000000000001") != std::string::npos);
    CHECK(text.find("\"sigma\": 0.33333333333333331") != std::string::npos);
    CHECK(text.find("0.79432823472428149") != std::string::npos);
    CHECK(text.find("\"rate\": 0.5") != std::string::npos);
}

TEST_CASE("bp parameters round-trip through JSON bit for bit") {
    rcq::RcqParameters p = tiny_bp();
    p.precision.nc = 10;
    p.mi_trajectory = {0.1, 1.0 / 3.0, 0.97};
    const rcq::RcqParameters q = rcq::parameters_from_json(rcq::to_json(p));
    CHECK(q.mode == rcq::RcqMode::bp);
    CHECK(q.precision.m == 2);
    REQUIRE(q.precision.nc.has_value());
    CHECK(*q.precision.nc == 10);
    CHECK(!q.precision.nv.has_value());
    CHECK(q.design_point.ebno_db == p.design_point.ebno_db);
    CHECK(q.design_point.rate == p.design_point.rate);
    CHECK(q.design_point.sigma == p.design_point.sigma);
    CHECK(q.channel_thresholds_y == p.channel_thresholds_y);
    CHECK(q.channel_recon == p.channel_recon);
    REQUIRE(q.iterations.size() == 1);
    CHECK(q.iterations[0].check_recon == p.iterations[0].check_recon);
    CHECK(q.iterations[0].check_thresholds == p.iterations[0].check_thresholds);
    CHECK(q.iterations[0].var_recon == p.iterations[0].var_recon);
    CHECK(q.iterations[0].var_thresholds == p.iterations[0].var_thresholds);
    CHECK(q.mi_trajectory == p.mi_trajectory);
}

TEST_CASE("ms parameters omit check tables in the document and on reload") {
    const rcq::RcqParameters p = tiny_ms();
    const std::string text = rcq::to_json(p);
    CHECK(text.find("check_recon") == std::string::npos);
    CHECK(text.find("check_thresholds") == std::string::npos);
    CHECK(text.find("\"nc\": 2") != std::string::npos);
    const rcq::RcqParameters q = rcq::parameters_from_json(text);
    CHECK(q.mode == rcq::RcqMode::ms);
    REQUIRE(q.iterations.size() == 1);
    CHECK(q.iterations[0].check_recon.empty());
    CHECK(q.iterations[0].check_thresholds.empty());
    CHECK(q.iterations[0].var_recon == p.iterations[0].var_recon);
}

TEST_CASE("infinite precisions serialize as the string inf") {
    const rcq::RcqParameters p = tiny_bp();
    const std::string text = rcq::to_json(p);
    CHECK(text.find("\"nc\": \"inf\"") != std::string::npos);
    CHECK(text.find("\"nv\": \"inf\"") != std::string::npos);
    const rcq::RcqParameters q = rcq::parameters_from_json(text);
    CHECK(!q.precision.nc.has_value());
    CHECK(!q.precision.nv.has_value());
}

TEST_CASE("save and load round-trip through a file") {
    rcq::RcqParameters p = tiny_bp();
    p.precision.nv = 12;
    const std::string path = temp_path("rcq_params_roundtrip.json");
    rcq::save_parameters(p, path);
    const rcq::RcqParameters q = rcq::load_parameters(path);
    CHECK(q.channel_recon == p.channel_recon);
    REQUIRE(q.precision.nv.has_value());
    CHECK(*q.precision.nv == 12);

    // Editing the precision of a stored file keeps every table intact.
    rcq::RcqParameters edited = q;
    edited.precision.nv = 8;
    rcq::save_parameters(edited, path);
    const rcq::RcqParameters r = rcq::load_parameters(path);
    CHECK(*r.precision.nv == 8);
    CHECK(r.iterations[0].var_recon == p.iterations[0].var_recon);
    std::remove(path.c_str());
}

TEST_CASE("make_parameters pins nc to the symbol width in ms mode") {
    rcq::RcqDesign d;
    d.mode = rcq::RcqMode::ms;
    d.bits = 2;
    d.design_point = {2.0, 0.5, rcq::sigma_from_ebno(2.0, 0.5)};
    d.channel_thresholds_y = {0.5, 0.0, -0.5};
    d.channel_recon = {3.0, 1.0, -1.0, -3.0};
    rcq::IterationTables t;
    t.var_recon = {4.0, 1.25, -1.25, -4.0};
    t.var_thresholds = {2.0, 0.0, -2.0};
    d.iterations = {t};
    d.mi_trajectory = {0.5};

    const rcq::RcqParameters p = rcq::make_parameters(d, std::nullopt, std::nullopt);
    REQUIRE(p.precision.nc.has_value());
    CHECK(*p.precision.nc == 2);
    CHECK(rcq::make_parameters(d, 2, 10).precision.nv == 10);
    CHECK_THROWS_AS(rcq::make_parameters(d, 4, std::nullopt), rcq::config_error);
}

TEST_CASE("validation rejects structural violations") {
    CHECK_THROWS_AS(rcq::validate_parameters(rcq::RcqParameters{}), rcq::config_error);

    rcq::RcqParameters wrong_recon = tiny_bp();
    wrong_recon.channel_recon.pop_back();
    CHECK_THROWS_AS(rcq::validate_parameters(wrong_recon), rcq::config_error);

    rcq::RcqParameters wrong_thresholds = tiny_bp();
    wrong_thresholds.iterations[0].var_thresholds = {2.0, 0.0};
    CHECK_THROWS_AS(rcq::validate_parameters(wrong_thresholds), rcq::config_error);

    rcq::RcqParameters increasing = tiny_bp();
    increasing.iterations[0].var_thresholds = {-2.0, 0.0, 2.0};
    CHECK_THROWS_AS(rcq::validate_parameters(increasing), rcq::config_error);

    rcq::RcqParameters ms_with_checks = tiny_ms();
    ms_with_checks.iterations[0].check_recon = {2.5, 0.75, -0.75, -2.5};
    CHECK_THROWS_AS(rcq::validate_parameters(ms_with_checks), rcq::config_error);

    rcq::RcqParameters ms_wrong_nc = tiny_ms();
    ms_wrong_nc.precision.nc = 3;
    CHECK_THROWS_AS(rcq::validate_parameters(ms_wrong_nc), rcq::config_error);

    rcq::RcqParameters no_iterations = tiny_bp();
    no_iterations.iterations.clear();
    CHECK_THROWS_AS(rcq::validate_parameters(no_iterations), rcq::config_error);

    rcq::RcqParameters non_finite = tiny_bp();
    non_finite.channel_recon[0] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(rcq::to_json(non_finite), rcq::config_error);

    rcq::RcqParameters bad_sigma = tiny_bp();
    bad_sigma.design_point.sigma = 0.0;
    CHECK_THROWS_AS(rcq::validate_parameters(bad_sigma), rcq::config_error);
}

TEST_CASE("parser reports malformed documents") {
    CHECK_THROWS_AS(rcq::parameters_from_json("not json"), rcq::parse_error);
    CHECK_THROWS_AS(rcq::parameters_from_json("{}"), rcq::parse_error);

    const std::string good = rcq::to_json(tiny_bp());
    std::string bad_mode = good;
    bad_mode.replace(bad_mode.find("\"bp\""), 4, "\"xx\"");
    CHECK_THROWS_AS(rcq::parameters_from_json(bad_mode), rcq::parse_error);

    std::string bad_width = good;
    bad_width.replace(bad_width.find("\"inf\""), 5, "\"big\"");
    CHECK_THROWS_AS(rcq::parameters_from_json(bad_width), rcq::parse_error);

    std::string negative_width = good;
    negative_width.replace(negative_width.find("\"inf\""), 5, "-3");
    CHECK_THROWS_AS(rcq::parameters_from_json(negative_width), rcq::parse_error);

    std::string string_table = good;
    const auto pos = string_table.find("\"mi_trajectory\": [0.5]");
    REQUIRE(pos != std::string::npos);
    string_table.replace(pos, 22, "\"mi_trajectory\": [\"x\"]");
    CHECK_THROWS_AS(rcq::parameters_from_json(string_table), rcq::parse_error);
}

TEST_CASE("a designed parameter set survives the JSON cycle unchanged") {
    const double sigma = rcq::sigma_from_ebno(2.0, 0.5);
    const auto channel = rcq::discretize_awgn(sigma, 2000, 6.0);
    rcq::DegreeDistribution deg;
    deg.lambda[3] = 1.0;
    deg.rho[6] = 1.0;
    for (const rcq::RcqMode mode : {rcq::RcqMode::bp, rcq::RcqMode::ms}) {
        const auto design =
            rcq::design_rcq(deg, channel, {2.0, 0.5, sigma}, mode, 4, 3, 1e-3);
        const auto p = rcq::make_parameters(
            design, mode == rcq::RcqMode::ms ? std::optional<unsigned>{4} : std::nullopt,
            std::nullopt);
        const auto q = rcq::parameters_from_json(rcq::to_json(p));
        CHECK(q.mode == mode);
        CHECK(q.channel_thresholds_y == p.channel_thresholds_y);
        CHECK(q.channel_recon == p.channel_recon);
        REQUIRE(q.iterations.size() == p.iterations.size());
        for (std::size_t i = 0; i < q.iterations.size(); ++i) {
            CHECK(q.iterations[i].check_recon == p.iterations[i].check_recon);
            CHECK(q.iterations[i].check_thresholds == p.iterations[i].check_thresholds);
            CHECK(q.iterations[i].var_recon == p.iterations[i].var_recon);
            CHECK(q.iterations[i].var_thresholds == p.iterations[i].var_thresholds);
        }
        CHECK(q.mi_trajectory == p.mi_trajectory);
    }
}

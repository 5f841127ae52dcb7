#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "rcqldpc/code.hpp"

namespace {

std::string data_path(const std::string& name) {
    return std::string(RCQLDPC_DATA_DIR) + "/" + name;
}

std::map<std::size_t, std::size_t> var_degree_histogram(const rcq::TannerGraph& g) {
    std::map<std::size_t, std::size_t> h;
    for (std::size_t v = 0; v < g.n_vars(); ++v) ++h[g.var_checks(v).size()];
    return h;
}

std::map<std::size_t, std::size_t> check_degree_histogram(const rcq::TannerGraph& g) {
    std::map<std::size_t, std::size_t> h;
    for (std::size_t c = 0; c < g.n_checks(); ++c) ++h[g.check_vars(c).size()];
    return h;
}

// A length-4 cycle exists iff some pair of checks shares two variables.
bool has_four_cycle(const rcq::TannerGraph& g) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t v = 0; v < g.n_vars(); ++v) {
        std::vector<std::size_t> checks = g.var_checks(v);
        std::sort(checks.begin(), checks.end());
        for (std::size_t i = 0; i < checks.size(); ++i) {
            for (std::size_t j = i + 1; j < checks.size(); ++j) {
                if (!seen.insert({checks[i], checks[j]}).second) return true;
            }
        }
    }
    return false;
}

}  // namespace

TEST_CASE("bundled 802.11n rate-1/2 n=1296 code expands to the expected graph") {
    const rcq::TannerGraph g = rcq::load_code_file(data_path("ieee80211n_1296_r12.qc"));

    CHECK(g.n_vars() == 1296);
    CHECK(g.n_checks() == 648);
    CHECK(g.n_edges() == 4644);

    const auto vh = var_degree_histogram(g);
    CHECK(vh == std::map<std::size_t, std::size_t>{{2, 594}, {3, 486}, {4, 54}, {11, 162}});

    const auto ch = check_degree_histogram(g);
    CHECK(ch == std::map<std::size_t, std::size_t>{{7, 540}, {8, 108}});
}

TEST_CASE("802.11n edge-perspective degree fractions are the exact rationals") {
    const rcq::TannerGraph g = rcq::load_code_file(data_path("ieee80211n_1296_r12.qc"));
    const rcq::DegreeDistribution d = rcq::degree_distributions(g);

    REQUIRE(d.lambda.size() == 4);
    CHECK(d.lambda.at(2) == 1188.0 / 4644.0);
    CHECK(d.lambda.at(3) == 1458.0 / 4644.0);
    CHECK(d.lambda.at(4) == 216.0 / 4644.0);
    CHECK(d.lambda.at(11) == 1782.0 / 4644.0);

    REQUIRE(d.rho.size() == 2);
    CHECK(d.rho.at(7) == 3780.0 / 4644.0);
    CHECK(d.rho.at(8) == 864.0 / 4644.0);
}

TEST_CASE("802.11n graph has no length-4 cycles") {
    const rcq::TannerGraph g = rcq::load_code_file(data_path("ieee80211n_1296_r12.qc"));
    CHECK_FALSE(has_four_cycle(g));
}

TEST_CASE("bundled (3,6) array code is regular, rate 1/2, girth at least 6") {
    const rcq::TannerGraph g = rcq::load_code_file(data_path("array_3_6_606.qc"));

    CHECK(g.n_vars() == 606);
    CHECK(g.n_checks() == 303);
    CHECK(g.n_edges() == 1818);
    for (std::size_t v = 0; v < g.n_vars(); ++v) CHECK(g.var_checks(v).size() == 3);
    for (std::size_t c = 0; c < g.n_checks(); ++c) CHECK(g.check_vars(c).size() == 6);

    const rcq::DegreeDistribution d = rcq::degree_distributions(g);
    CHECK(d.lambda == std::map<std::size_t, double>{{3, 1.0}});
    CHECK(d.rho == std::map<std::size_t, double>{{6, 1.0}});

    CHECK_FALSE(has_four_cycle(g));
}

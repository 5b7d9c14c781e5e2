#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "snoop/density.hpp"
#include "snoop/distributions.hpp"
#include "snoop/errors.hpp"
#include "snoop/snoopsim.hpp"
#include "snoop/uniformity.hpp"

using namespace snoop::sim;
using snoop::RngState;

namespace {

SimulationConfig small_zmin(std::uint64_t seed, unsigned workers = 1) {
    SimulationConfig c;
    c.replications = 1000;
    c.seed = seed;
    c.lottery = {49, 6, 2000};
    c.workers = workers;
    return c;
}

SimulationConfig small_normality(std::uint64_t seed, unsigned workers = 1) {
    SimulationConfig c;
    c.replications = 2000;
    c.seed = seed;
    c.sample_size = 200;
    c.workers = workers;
    return c;
}

}  // namespace

TEST_CASE("empirical distribution") {
    const EmpiricalDistribution d({3.0, 1.0, 2.0, 2.0});
    CHECK(d.values() == std::vector<double>{1.0, 2.0, 2.0, 3.0});
    CHECK(d.ecdf(0.5) == 0.0);
    CHECK(d.ecdf(2.0) == 0.75);
    CHECK(d.ecdf(std::numeric_limits<double>::infinity()) == 1.0);
    CHECK(d.ecdf(-std::numeric_limits<double>::infinity()) == 0.0);
    CHECK(d.quantile(0.25) == 1.0);
    CHECK(d.quantile(0.26) == 2.0);
    CHECK(d.quantile(1.0) == 3.0);
    CHECK_THROWS_AS(d.quantile(0.0), snoop::DomainError);
    CHECK_THROWS_AS(EmpiricalDistribution({1.0, std::nan("")}), snoop::DomainError);
    std::ostringstream out;
    d.write_csv(out);
    CHECK(out.str() == "value\n1\n2\n2\n3\n");
    CHECK(mc_standard_error(0.5, 100) == doctest::Approx(0.05));
}

TEST_CASE("quantile and ecdf are consistent") {
    const auto d = simulate_zmin(small_zmin(1));
    for (double p = 0.001; p <= 1.0; p += 0.0097) CHECK(d.ecdf(d.quantile(p)) >= p);
}

TEST_CASE("standardized minimum by hand") {
    // V = 4, K = 2, N = 6: n = 12, n/V = 3, sigma^2 = 12 * 2 / 16 = 1.5
    const snoop::lottery::CountVector c({1, 3, 4, 4});
    CHECK(standardized_min(c, 2) == doctest::Approx(-2.0 / std::sqrt(1.5)).epsilon(1e-14));
}

TEST_CASE("zmin is deterministic across worker counts") {
    const auto a = simulate_zmin(small_zmin(2, 1));
    const auto b = simulate_zmin(small_zmin(2, 3));
    const auto c = simulate_zmin(small_zmin(2, 8));
    CHECK(a.values() == b.values());
    CHECK(a.values() == c.values());
    CHECK(a.values() != simulate_zmin(small_zmin(3, 1)).values());
}

TEST_CASE("zmin never exceeds the z of any single number") {
    const auto cfg = small_zmin(4);
    std::vector<double> recomputed;
    for (std::uint64_t r = 0; r < cfg.replications; ++r) {
        const auto counts = snoop::lottery::simulate_counts(cfg.lottery, RngState{cfg.seed, r});
        const double zmin = standardized_min(counts, 6);
        recomputed.push_back(zmin);
        const snoop::uniformity::NullModel model{49, 6, counts.total()};
        for (int m : {1, 13, 49}) {
            CHECK(zmin <= snoop::uniformity::z_test_number(counts[m], model, snoop::uniformity::Side::left)
                                  .statistic_corrected + 1e-12);
        }
    }
    std::sort(recomputed.begin(), recomputed.end());
    CHECK(recomputed == simulate_zmin(cfg).values());
}

TEST_CASE("zmin ecdf lies above the normal cdf") {
    // Below -3 the tail mass of the 1000-replication sample is too small to resolve.
    const auto d = simulate_zmin(small_zmin(5));
    for (double z = -3.0; z <= 3.0; z += 0.05) CHECK(d.ecdf(z) >= snoop::dist::std_normal_cdf(z));
}

TEST_CASE("corrected p-value edges") {
    const auto d = simulate_zmin(small_zmin(6));
    CHECK(corrected_p_value(d, std::numeric_limits<double>::infinity()) == 1.0);
    CHECK(corrected_p_value(d, d.min() - 1e-9) == 0.0);
    CHECK(corrected_p_value(d, -2.7822) <= corrected_p_value(d, -2.5));
    CHECK_THROWS_AS(corrected_p_value(EmpiricalDistribution{}, 0.0), snoop::DomainError);
    CHECK_THROWS_AS(size_distortion_table(EmpiricalDistribution{}, {0.05}), snoop::DomainError);
}

TEST_CASE("size distortion table") {
    const auto d = simulate_zmin(small_zmin(7));
    const auto t = size_distortion_table(d, {0.001, 0.01, 0.05, 0.10});
    REQUIRE(t.size() == 4);
    for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i].rejection >= t[i - 1].rejection);
    for (const auto& e : t) {
        CHECK(e.rejection >= e.alpha);
        CHECK(e.inflation == doctest::Approx(e.rejection / e.alpha));
        CHECK(e.standard_error == doctest::Approx(mc_standard_error(e.rejection, d.size())));
        CHECK(e.critical == doctest::Approx(snoop::dist::std_normal_quantile(e.alpha)));
    }
    CHECK(size_distortion_table(d, {1e-12}).front().rejection == 0.0);
    CHECK_THROWS_AS(size_distortion_table(d, {0.0}), snoop::DomainError);
    CHECK_THROWS_AS(size_distortion_table(d, {1.0}), snoop::DomainError);
    std::ostringstream out;
    write_distortion_csv(out, t);
    CHECK(out.str().rfind("alpha,", 0) == 0);
    const auto text = out.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 5);
}

TEST_CASE("replication floor") {
    auto c = small_zmin(8);
    c.replications = 999;
    CHECK_THROWS_AS(simulate_zmin(c), snoop::DomainError);
    auto n = small_normality(8);
    n.replications = 10;
    CHECK_THROWS_AS(normality_size_power(n, 0.05), snoop::DomainError);
}

TEST_CASE("zmin density mode sits well below zero") {
    // Gaussian-limit oracle (min of 49 equicorrelated normals, correlation -1/48): mode -2.11.
    for (std::uint64_t seed : {kDefaultSeed, kDefaultSeed + 1, kDefaultSeed + 2}) {
        auto cfg = small_zmin(seed);
        cfg.replications = 10000;
        cfg.lottery.games = 10000;
        const auto d = simulate_zmin(cfg);
        const auto dens = snoop::dist::kde_density(d.values(), snoop::dist::linear_grid(-5.0, 0.0, 501));
        CHECK(std::abs(dens.mode() - -2.2) <= 0.15);
    }
}

TEST_CASE("alternative parsing") {
    CHECK(Alternative::parse("gaussian").kind == Alternative::Kind::gaussian);
    CHECK(Alternative::parse("normal").kind == Alternative::Kind::gaussian);
    for (auto text : {"t10", "t:10", "student_t(10)"}) {
        const auto a = Alternative::parse(text);
        CHECK(a.kind == Alternative::Kind::student_t);
        CHECK(a.df == 10);
    }
    CHECK(Alternative::parse("t5").df == 5);
    CHECK(Alternative::parse(Alternative::parse("t7").name()).df == 7);
    CHECK_THROWS_AS(Alternative::parse("t0"), snoop::DomainError);
    CHECK_THROWS_AS(Alternative::parse("cauchy"), snoop::DomainError);
}

TEST_CASE("normality study is deterministic across worker counts") {
    const auto a = normality_size_power(small_normality(21, 1), 0.05);
    const auto b = normality_size_power(small_normality(21, 4), 0.05);
    for (std::size_t s = 0; s < kStatisticCount; ++s) {
        CHECK(a.size[s].rate == b.size[s].rate);
        CHECK(a.power[s].rate == b.power[s].rate);
    }
    const auto m1 = normality_replication(small_normality(21), Scenario::null, 17);
    const auto m2 = normality_replication(small_normality(21), Scenario::null, 17);
    CHECK(m1.kurt == m2.kurt);
    CHECK(normality_replication(small_normality(21), Scenario::alternative, 17).kurt != m1.kurt);
}

TEST_CASE("eventwise dominance and rate ordering") {
    const auto cfg = small_normality(22);
    const auto crit = snoop::normality::critical_values(0.05);
    std::array<int, kStatisticCount> hits{};
    for (std::size_t r = 0; r < cfg.replications; ++r) {
        const auto m = normality_replication(cfg, Scenario::null, r);
        const auto res = snoop::normality::normality_from_moments(m, 0.05);
        CHECK(res.gamma_min_sq <= res.gamma1_sq);
        CHECK(res.gamma1_sq <= res.gamma_max_sq);
        CHECK(res.gamma_min_sq <= res.gamma2_sq);
        CHECK(res.gamma2_sq <= res.gamma_max_sq);
        const auto f = snoop::normality::reject_flags(m, crit);
        hits[kGamma1Sq] += f.gamma1_sq;
        hits[kGamma2Sq] += f.gamma2_sq;
        hits[kJarqueBera] += f.jb;
        hits[kGammaMaxSq] += f.gamma_max_sq;
        hits[kGammaMinSq] += f.gamma_min_sq;
    }
    const auto t = normality_size_power(cfg, 0.05);
    for (std::size_t s = 0; s < kStatisticCount; ++s) {
        CHECK(t.size[s].rate == hits[s] / double(cfg.replications));
        CHECK(t.size[s].rate >= 0.0);
        CHECK(t.power[s].rate <= 1.0);
    }
    CHECK(t.size[kGammaMinSq].rate <= t.size[kGamma1Sq].rate);
    CHECK(t.size[kGamma1Sq].rate <= t.size[kGammaMaxSq].rate);
    CHECK(t.power[kGammaMinSq].rate <= t.power[kGamma2Sq].rate);
    CHECK(t.power[kGamma2Sq].rate <= t.power[kGammaMaxSq].rate);
}

TEST_CASE("gaussian alternative reproduces the size row") {
    auto cfg = small_normality(23);
    cfg.replications = 20000;
    cfg.alternative = Alternative::parse("gaussian");
    const auto t = normality_size_power(cfg, 0.05);
    for (std::size_t s = 0; s < kStatisticCount; ++s) {
        const double se = std::hypot(t.size[s].standard_error, t.power[s].standard_error);
        CHECK(std::abs(t.size[s].rate - t.power[s].rate) <= 2 * se + 1e-12);
    }
}

TEST_CASE("size-power csv layout") {
    const auto t = normality_size_power(small_normality(24), 0.05);
    std::ostringstream out;
    write_size_power_csv(out, t);
    std::istringstream in(out.str());
    std::string line;
    std::vector<std::string> first_cells;
    while (std::getline(in, line)) first_cells.push_back(line.substr(0, line.find(',')));
    CHECK(first_cells == std::vector<std::string>{"test statistic", "size", "power", "size_se", "power_se"});
    CHECK(out.str().find("Gamma1^2") != std::string::npos);
    std::ostringstream console;
    write_size_power_console(console, t);
    CHECK_FALSE(console.str().empty());
}

TEST_CASE("analytic selector sizes at n = 1e4") {
    SimulationConfig cfg;
    cfg.replications = 100000;
    cfg.sample_size = 10000;
    const auto t = normality_size_power(cfg, 0.05);
    const auto a = snoop::normality::analytic_snoop_size(0.05);
    CHECK(std::abs(t.size[kGammaMaxSq].rate - a.size_max) <= 0.004);
    CHECK(std::abs(t.size[kGammaMinSq].rate - a.size_min) <= 0.004);
}

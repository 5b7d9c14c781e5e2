#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "snoop/errors.hpp"
#include "snoop/lottery.hpp"

using namespace snoop::lottery;
using snoop::RngState;

TEST_CASE("config validation") {
    CHECK_NOTHROW(LotteryConfig{49, 6, 1}.validate());
    CHECK_THROWS_AS(LotteryConfig({49, 49, 1}).validate(), snoop::DomainError);
    CHECK_THROWS_AS(LotteryConfig({49, 0, 1}).validate(), snoop::DomainError);
    CHECK_THROWS_AS(LotteryConfig({49, 6, 0}).validate(), snoop::DomainError);
}

TEST_CASE("simulated 6/49 history has plausible counts") {
    const LotteryConfig cfg{49, 6, 10000};
    const auto history = simulate_history(cfg, 0.0, RngState{1, 0});
    const auto counts = counts_from_history(history);
    CHECK(counts.total() == 60000);
    // sd of S_m from K N (V - K) / V^2
    const double sd = std::sqrt(6.0 * 10000 * 43 / (49.0 * 49.0));
    for (int m = 1; m <= 49; ++m) CHECK(std::abs(counts[m] - 60000.0 / 49.0) < 6 * sd);
    for (const auto& g : history.games()) CHECK_FALSE(g.has_additional());
}

TEST_CASE("V=3, K=2 games are uniform over the three subsets") {
    std::map<std::set<int>, int> freq;
    const int histories = 3000;
    for (int r = 0; r < histories; ++r) {
        const auto h = simulate_history({3, 2, 5}, 0.0, RngState{3, static_cast<std::uint64_t>(r)});
        for (const auto& g : h.games()) freq[std::set<int>(g.numbers.begin(), g.numbers.end())]++;
    }
    REQUIRE(freq.size() == 3);
    const double total = histories * 5.0;
    for (const auto& [subset, c] : freq) CHECK(std::abs(c / total - 1.0 / 3.0) < 0.01);
}

TEST_CASE("additional numbers") {
    const auto all = simulate_history({49, 6, 200}, 1.0, RngState{4, 0});
    for (const auto& g : all.games()) {
        REQUIRE(g.has_additional());
        std::set<int> s(g.numbers.begin(), g.numbers.end());
        s.insert(*g.additional);
        CHECK(s.size() == 7);
    }
    const auto part = simulate_history({49, 6, 10}, 0.55, RngState{4, 1});
    CHECK(part.additional_count() == 5);
    for (int j = 0; j < 10; ++j) CHECK(part.games()[static_cast<std::size_t>(j)].has_additional() == (j < 5));
    CHECK_THROWS_AS(simulate_history({49, 6, 10}, 1.5, RngState{}), snoop::DomainError);
}

TEST_CASE("sample I, II, III counts") {
    const auto h = simulate_history({49, 6, 500}, 0.8, RngState{5, 0});
    const auto one = counts_from_history(h, Sample::main);
    const auto two = counts_from_history(h, Sample::main_and_additional);
    const auto three = counts_from_history(h, Sample::additional_only);
    CHECK(one.total() == 3000);
    CHECK(three.total() == 400);
    CHECK(two.total() == 3400);
    for (int m = 1; m <= 49; ++m) CHECK(two[m] == one[m] + three[m]);
    CHECK(counts_from_history(h, true, false) == two);
    CHECK(counts_from_history(h, false, true) == three);
    CHECK(counts_from_history(h, true, true) == three);
    CHECK(counts_from_history(h, false, false) == one);
}

TEST_CASE("single game count") {
    const DrawHistory h({49, 6, 1}, {Game{"", {1, 2, 3, 4, 5, 6}, std::nullopt}});
    const auto c = counts_from_history(h);
    CHECK(c.total() == 6);
    for (int m = 1; m <= 49; ++m) CHECK(c[m] == (m <= 6 ? 1 : 0));
    CHECK_THROWS_AS(counts_from_history(h, Sample::additional_only), snoop::EmptySampleError);
}

TEST_CASE("history invariants are enforced") {
    CHECK_THROWS_AS(DrawHistory({49, 6, 1}, {Game{"", {1, 1, 3, 4, 5, 6}, {}}}), snoop::DomainError);
    CHECK_THROWS_AS(DrawHistory({49, 6, 1}, {Game{"", {1, 2, 3, 4, 5, 50}, {}}}), snoop::DomainError);
    CHECK_THROWS_AS(DrawHistory({49, 6, 1}, {Game{"", {1, 2, 3, 4, 5}, {}}}), snoop::DomainError);
    CHECK_THROWS_AS(DrawHistory({49, 6, 1}, {Game{"", {1, 2, 3, 4, 5, 6}, 6}}), snoop::DomainError);
    CHECK_THROWS_AS(DrawHistory({49, 6, 2}, {Game{"", {1, 2, 3, 4, 5, 6}, {}}}), snoop::DomainError);
}

TEST_CASE("count vector invariants") {
    CHECK_THROWS_AS(CountVector({1, 2, 3}, 7), snoop::DomainError);
    CHECK_THROWS_AS(CountVector({1, -1, 3}), snoop::DomainError);
    const CountVector c({4, 5, 6});
    CHECK(c.total() == 15);
    CHECK_THROWS_AS(c[0], snoop::DomainError);
    CHECK_THROWS_AS(c[4], snoop::DomainError);
}

TEST_CASE("game indicators sum to the sample I counts") {
    const auto h = simulate_history({49, 6, 300}, 0.5, RngState{6, 0});
    const auto counts = counts_from_history(h);
    for (int m = 1; m <= 49; ++m) {
        const auto y = game_indicators(h, m);
        REQUIRE(y.size() == 300);
        CHECK(std::accumulate(y.begin(), y.end(), std::int64_t{0}) == counts[m]);
    }
    CHECK_THROWS_AS(game_indicators(h, 0), snoop::DomainError);
    CHECK_THROWS_AS(game_indicators(h, 50), snoop::DomainError);
}

TEST_CASE("game indicators are Bernoulli(K/V)") {
    const auto h = simulate_history({49, 6, 100000}, 0.0, RngState{7, 0});
    const auto y = game_indicators(h, 13);
    CHECK(std::abs(std::accumulate(y.begin(), y.end(), 0.0) / y.size() - 6.0 / 49.0) < 0.003);

    const auto small = simulate_history({3, 2, 100000}, 0.0, RngState{7, 1});
    const auto y1 = game_indicators(small, 1);
    CHECK(std::abs(std::accumulate(y1.begin(), y1.end(), 0.0) / y1.size() - 2.0 / 3.0) < 0.005);
}

TEST_CASE("indicators of two numbers within a game are negatively correlated") {
    const auto h = simulate_history({49, 6, 200000}, 0.0, RngState{8, 0});
    const auto a = game_indicators(h, 1);
    const auto b = game_indicators(h, 2);
    double ma = 0, mb = 0, mab = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        ma += a[j];
        mb += b[j];
        mab += a[j] * b[j];
    }
    const double n = static_cast<double>(a.size());
    const double cov = mab / n - (ma / n) * (mb / n);
    // Exact value: K(K-1)/(V(V-1)) - (K/V)^2 = 30/2352 - 36/2401 = -0.00224
    CHECK(cov < 0.0);
    CHECK(std::abs(cov - (30.0 / 2352.0 - 36.0 / 2401.0)) < 0.0008);
}

TEST_CASE("variance law K N (V-K) / V^2") {
    const LotteryConfig cfg{49, 6, 1000};
    const int histories = 10000;
    std::vector<double> s1, s13;
    for (int r = 0; r < histories; ++r) {
        const auto c = simulate_counts(cfg, RngState{9, static_cast<std::uint64_t>(r)});
        s1.push_back(static_cast<double>(c[1]));
        s13.push_back(static_cast<double>(c[13]));
    }
    const double expected = 6.0 * 1000 * 43 / 2401.0;  // 107.46
    for (const auto* s : {&s1, &s13}) {
        const double mean = std::accumulate(s->begin(), s->end(), 0.0) / histories;
        double var = 0;
        for (double v : *s) var += (v - mean) * (v - mean);
        var /= histories - 1;
        CHECK(std::abs(var / expected - 1.0) < 0.05);
    }
}

TEST_CASE("simulate_counts matches the materialized history") {
    const LotteryConfig cfg{49, 6, 777};
    const RngState state{10, 3};
    CHECK(simulate_counts(cfg, state) == counts_from_history(simulate_history(cfg, 0.0, state)));
}

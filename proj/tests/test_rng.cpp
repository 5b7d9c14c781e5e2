#include <doctest.h>

#include <cmath>
#include <vector>

#include "snoop/rng.hpp"

using snoop::PhiloxCounter;
using snoop::Rng;
using snoop::RngState;

TEST_CASE("philox4x32-10 known-answer vectors") {
    // Reference vectors shipped with Random123.
    CHECK(snoop::philox4x32_10({0, 0, 0, 0}, {0, 0}) ==
          PhiloxCounter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(snoop::philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}) ==
          PhiloxCounter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(snoop::philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
          PhiloxCounter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("same state reproduces the same sequence") {
    Rng a(RngState{42, 7});
    Rng b(RngState{42, 7});
    for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u32() == b.next_u32());
    for (int i = 0; i < 100; ++i) REQUIRE(a.normal() == b.normal());
}

TEST_CASE("streams and lanes differ") {
    Rng base(RngState{42, 7});
    Rng other_stream(RngState{42, 8});
    Rng other_seed(RngState{43, 7});
    Rng other_lane(RngState{42, 7}, 1);
    int same_stream = 0, same_seed = 0, same_lane = 0;
    for (int i = 0; i < 256; ++i) {
        const auto x = base.next_u32();
        same_stream += x == other_stream.next_u32();
        same_seed += x == other_seed.next_u32();
        same_lane += x == other_lane.next_u32();
    }
    CHECK(same_stream < 2);
    CHECK(same_seed < 2);
    CHECK(same_lane < 2);
}

TEST_CASE("first outputs of stream 0 are the raw philox block") {
    Rng rng(RngState{0, 0});
    const auto block = snoop::philox4x32_10({0, 0, 0, 0}, {0, 0});
    for (auto word : block) CHECK(rng.next_u32() == word);
}

TEST_CASE("uniform_int is unbiased on a small range") {
    Rng rng(RngState{1, 0});
    std::vector<int> hist(7, 0);
    const int draws = 700000;
    for (int i = 0; i < draws; ++i) ++hist[rng.uniform_int(7)];
    for (int h : hist) CHECK(std::abs(h - draws / 7) < 5 * std::sqrt(draws / 7.0));
    CHECK_THROWS(rng.uniform_int(0));
}

TEST_CASE("uniform doubles stay in range") {
    Rng rng(RngState{9, 9});
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        const double v = rng.uniform_pos();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        REQUIRE(v > 0.0);
        REQUIRE(v <= 1.0);
    }
}

TEST_CASE("normal and chi-squared moments") {
    Rng rng(RngState{5, 3});
    const int draws = 400000;
    double s1 = 0, s2 = 0, c1 = 0, c2 = 0;
    for (int i = 0; i < draws; ++i) {
        const double z = rng.normal();
        s1 += z;
        s2 += z * z;
        const double w = rng.chi_squared(10);
        c1 += w;
        c2 += w * w;
    }
    const double mean = s1 / draws;
    const double var = s2 / draws - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.01);
    const double cmean = c1 / draws;
    const double cvar = c2 / draws - cmean * cmean;
    CHECK(std::abs(cmean - 10.0) < 0.05);   // 5 s.e.
    CHECK(std::abs(cvar - 20.0) < 0.5);
}

TEST_CASE("gamma with shape below one") {
    Rng rng(RngState{11, 0});
    const int draws = 200000;
    double s = 0;
    for (int i = 0; i < draws; ++i) s += rng.chi_squared(1);
    CHECK(std::abs(s / draws - 1.0) < 0.02);
}

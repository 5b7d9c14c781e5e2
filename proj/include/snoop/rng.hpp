#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace snoop {

/// Identifies one reproducible random stream: the same (seed, stream_id) yields the same
/// sequence on every platform, and distinct stream ids never share counter space.
struct RngState {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    friend bool operator==(const RngState&, const RngState&) = default;
};

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3").
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

/// Counter-based generator over Philox4x32-10.
///
/// Key = seed. Counter words: [0] block index, [1] lane, [2..3] stream id. A lane is a
/// sub-stream of one RngState (e.g. numerator and denominator of a Student-t draw); it
/// occupies disjoint counter space, so lanes are independent by construction.
/// Each stream holds 2^32 blocks (2^34 32-bit outputs).
class Rng {
public:
    using result_type = std::uint32_t;

    explicit Rng(RngState state, std::uint32_t lane = 0) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return next_u32(); }

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform on (0, 1]; safe as a log argument.
    double uniform_pos();
    /// Uniform integer in [0, range). Lemire's multiply-shift with rejection; exact.
    std::uint32_t uniform_int(std::uint32_t range);

    /// Standard normal via Box-Muller; the second variate of each pair is cached.
    double normal();
    /// Gamma(shape, 1) via Marsaglia-Tsang squeeze; shape < 1 uses the U^(1/a) boost.
    double gamma(double shape);
    /// Chi-squared(df) as 2 * Gamma(df / 2).
    double chi_squared(double df);

    const RngState& state() const noexcept { return state_; }
    std::uint32_t lane() const noexcept { return lane_; }

private:
    void refill();

    RngState state_;
    std::uint32_t lane_;
    PhiloxKey key_;
    std::uint64_t block_ = 0;
    PhiloxCounter buffer_{};
    int cursor_ = 4;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace snoop

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "snoop/rng.hpp"

namespace snoop::lottery {

/// Urn parameters of a "K out of V" lottery played N times.
struct LotteryConfig {
    int pool_size = 49;    // V
    int draw_size = 6;     // K
    std::int64_t games = 1;  // N

    /// Throws DomainError unless 1 <= K < V and N >= 1.
    void validate() const;

    friend bool operator==(const LotteryConfig&, const LotteryConfig&) = default;
};

struct Game {
    std::string date;                 // ISO yyyy-mm-dd, or empty for simulated games
    std::vector<int> numbers;         // draw order
    std::optional<int> additional;

    bool has_additional() const noexcept { return additional.has_value(); }
};

/// Validated sequence of games. Immutable after construction.
class DrawHistory {
public:
    /// `config.games` must equal games.size(); every game is checked against the config.
    DrawHistory(LotteryConfig config, std::vector<Game> games);

    const LotteryConfig& config() const noexcept { return config_; }
    const std::vector<Game>& games() const noexcept { return games_; }
    std::size_t size() const noexcept { return games_.size(); }
    std::int64_t additional_count() const noexcept { return additional_count_; }

private:
    LotteryConfig config_;
    std::vector<Game> games_;
    std::int64_t additional_count_ = 0;
};

/// Per-number counts S_1..S_V with total n.
class CountVector {
public:
    /// counts[i] holds S_{i+1}. `total` must equal the sum of counts.
    CountVector(std::vector<std::int64_t> counts, std::int64_t total);
    /// Total taken as the sum of counts.
    explicit CountVector(std::vector<std::int64_t> counts);

    /// S_m for 1-based m.
    std::int64_t operator[](int m) const;
    std::int64_t total() const noexcept { return total_; }
    int pool_size() const noexcept { return static_cast<int>(counts_.size()); }
    std::span<const std::int64_t> counts() const noexcept { return counts_; }

    friend bool operator==(const CountVector&, const CountVector&) = default;

private:
    std::vector<std::int64_t> counts_;
    std::int64_t total_;
};

/// Which balls enter a count.
enum class Sample {
    main,                 // sample I: the K main numbers of every game
    main_and_additional,  // sample II: main numbers plus the additional number where drawn
    additional_only,      // sample III: the additional numbers alone
};

void validate_game(const Game& game, const LotteryConfig& config);

/// Simulates `config.games` games. The first floor(additional_fraction * N) games also carry
/// an additional number drawn uniformly from the V - K numbers not yet drawn.
DrawHistory simulate_history(const LotteryConfig& config, double additional_fraction, RngState rng);

/// Counts of sample I from the same random stream as simulate_history(config, 0, rng), without
/// materializing the games.
CountVector simulate_counts(const LotteryConfig& config, RngState rng);

/// Reduces a history to counts of the requested sample.
/// Throws EmptySampleError for Sample::additional_only when no game has an additional number.
CountVector counts_from_history(const DrawHistory& history, Sample sample = Sample::main);

/// Flag-style overload mirroring the three samples: additional_only wins over include_additional.
CountVector counts_from_history(const DrawHistory& history, bool include_additional, bool additional_only);

/// Y_{m,j}: 1 iff number m is among the main numbers of game j.
std::vector<std::uint8_t> game_indicators(const DrawHistory& history, int m);

}  // namespace snoop::lottery

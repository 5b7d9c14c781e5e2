#include "snoop/lottery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "snoop/distributions.hpp"
#include "snoop/errors.hpp"

namespace snoop::lottery {

void LotteryConfig::validate() const {
    if (pool_size < 2) throw DomainError("lottery: pool size must be at least 2");
    if (draw_size < 1 || draw_size >= pool_size) {
        throw DomainError("lottery: draw size K must satisfy 1 <= K < V (K=" + std::to_string(draw_size) +
                          ", V=" + std::to_string(pool_size) + ")");
    }
    if (games < 1) throw DomainError("lottery: number of games must be positive");
}

void validate_game(const Game& game, const LotteryConfig& config) {
    if (static_cast<int>(game.numbers.size()) != config.draw_size) {
        throw DomainError("game has " + std::to_string(game.numbers.size()) + " numbers, expected " +
                          std::to_string(config.draw_size));
    }
    std::vector<bool> seen(static_cast<std::size_t>(config.pool_size) + 1, false);
    for (int x : game.numbers) {
        if (x < 1 || x > config.pool_size) throw DomainError("number " + std::to_string(x) + " out of range");
        if (seen[static_cast<std::size_t>(x)]) throw DomainError("number " + std::to_string(x) + " drawn twice");
        seen[static_cast<std::size_t>(x)] = true;
    }
    if (game.additional) {
        const int a = *game.additional;
        if (a < 1 || a > config.pool_size) throw DomainError("additional number " + std::to_string(a) + " out of range");
        if (seen[static_cast<std::size_t>(a)]) {
            throw DomainError("additional number " + std::to_string(a) + " repeats a main number");
        }
    }
}

DrawHistory::DrawHistory(LotteryConfig config, std::vector<Game> games)
    : config_(config), games_(std::move(games)) {
    config_.validate();
    if (static_cast<std::int64_t>(games_.size()) != config_.games) {
        throw DomainError("history: config expects " + std::to_string(config_.games) + " games, got " +
                          std::to_string(games_.size()));
    }
    for (const auto& g : games_) {
        validate_game(g, config_);
        if (g.additional) ++additional_count_;
    }
}

CountVector::CountVector(std::vector<std::int64_t> counts, std::int64_t total)
    : counts_(std::move(counts)), total_(total) {
    if (counts_.empty()) throw DomainError("count vector: empty");
    std::int64_t sum = 0;
    for (auto c : counts_) {
        if (c < 0) throw DomainError("count vector: negative count");
        sum += c;
    }
    if (sum != total_) {
        throw DomainError("count vector: counts sum to " + std::to_string(sum) + " but total is " +
                          std::to_string(total_));
    }
}

CountVector::CountVector(std::vector<std::int64_t> counts)
    : CountVector(counts, std::accumulate(counts.begin(), counts.end(), std::int64_t{0})) {}

std::int64_t CountVector::operator[](int m) const {
    if (m < 1 || m > pool_size()) throw DomainError("count vector: number " + std::to_string(m) + " out of range");
    return counts_[static_cast<std::size_t>(m - 1)];
}

DrawHistory simulate_history(const LotteryConfig& config, double additional_fraction, RngState state) {
    config.validate();
    if (!(additional_fraction >= 0.0 && additional_fraction <= 1.0)) {
        throw DomainError("simulate_history: additional fraction must lie in [0, 1]");
    }
    const auto with_additional =
        static_cast<std::int64_t>(std::floor(additional_fraction * static_cast<double>(config.games)));

    Rng rng(state);
    dist::SubsetSampler sampler(config.pool_size);
    std::vector<Game> games;
    games.reserve(static_cast<std::size_t>(config.games));
    for (std::int64_t j = 0; j < config.games; ++j) {
        const bool add = j < with_additional;
        const auto drawn = sampler.draw(config.draw_size + (add ? 1 : 0), rng);
        Game g;
        g.numbers.assign(drawn.begin(), drawn.begin() + config.draw_size);
        if (add) g.additional = drawn[static_cast<std::size_t>(config.draw_size)];
        games.push_back(std::move(g));
    }
    return DrawHistory(config, std::move(games));
}

CountVector simulate_counts(const LotteryConfig& config, RngState state) {
    config.validate();
    Rng rng(state);
    dist::SubsetSampler sampler(config.pool_size);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(config.pool_size), 0);
    for (std::int64_t j = 0; j < config.games; ++j) {
        for (int x : sampler.draw(config.draw_size, rng)) ++counts[static_cast<std::size_t>(x - 1)];
    }
    return CountVector(std::move(counts), config.games * config.draw_size);
}

CountVector counts_from_history(const DrawHistory& history, Sample sample) {
    const auto& cfg = history.config();
    if (sample == Sample::additional_only && history.additional_count() == 0) {
        throw EmptySampleError("history has no additional numbers");
    }
    std::vector<std::int64_t> counts(static_cast<std::size_t>(cfg.pool_size), 0);
    for (const auto& g : history.games()) {
        if (sample != Sample::additional_only) {
            for (int x : g.numbers) ++counts[static_cast<std::size_t>(x - 1)];
        }
        if (sample != Sample::main && g.additional) ++counts[static_cast<std::size_t>(*g.additional - 1)];
    }
    return CountVector(std::move(counts));
}

CountVector counts_from_history(const DrawHistory& history, bool include_additional, bool additional_only) {
    if (additional_only) return counts_from_history(history, Sample::additional_only);
    return counts_from_history(history, include_additional ? Sample::main_and_additional : Sample::main);
}

std::vector<std::uint8_t> game_indicators(const DrawHistory& history, int m) {
    if (m < 1 || m > history.config().pool_size) {
        throw DomainError("game_indicators: number " + std::to_string(m) + " out of range");
    }
    std::vector<std::uint8_t> y;
    y.reserve(history.size());
    for (const auto& g : history.games()) {
        y.push_back(std::find(g.numbers.begin(), g.numbers.end(), m) != g.numbers.end() ? 1 : 0);
    }
    return y;
}

}  // namespace snoop::lottery

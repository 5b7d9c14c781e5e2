#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "snoop/empirical.hpp"
#include "snoop/lottery.hpp"
#include "snoop/normality.hpp"

namespace snoop::sim {

inline constexpr std::uint64_t kDefaultSeed = 20191129;
/// Floor on replications for any distributional output.
inline constexpr std::size_t kMinReplications = 1000;

/// Data-generating process for the power row of the normality study.
struct Alternative {
    enum class Kind { gaussian, student_t };
    Kind kind = Kind::student_t;
    int df = 10;

    /// "gaussian" / "normal", or "t<df>" / "t:<df>" / "student_t(<df>)".
    static Alternative parse(std::string_view text);
    std::string name() const;
};

struct SimulationConfig {
    std::size_t replications = 10000;
    std::uint64_t seed = kDefaultSeed;
    lottery::LotteryConfig lottery{49, 6, 10000};
    std::size_t sample_size = 1000;
    Alternative alternative{};
    /// Worker threads; 0 selects std::thread::hardware_concurrency(). Results do not depend on it.
    unsigned workers = 0;
};

// ---------------------------------------------------------------------------------------------
// Minimum-count statistic

/// (min_m S_m - n/V) / sigma_(K), with sigma_(K)^2 = K N (V-K) / V^2 and n = K N.
double standardized_min(const lottery::CountVector& counts, int draw_size);

/// One replication per stream id r = 0..R-1: simulate N uniform games, keep the standardized
/// minimum count. Returns the sorted sample of R values.
EmpiricalDistribution simulate_zmin(const SimulationConfig& config);

/// P(Z_min <= z_observed) under the simulated distribution.
double corrected_p_value(const EmpiricalDistribution& dist, double z_observed);

struct DistortionEntry {
    double alpha = 0.0;           // nominal level
    double critical = 0.0;        // z_alpha
    double rejection = 0.0;       // ECDF(z_alpha): actual size of the post-hoc test
    double standard_error = 0.0;  // binomial MC standard error of `rejection`
    double inflation = 0.0;       // rejection / alpha
};

/// Actual rejection probabilities of a nominal-alpha left-sided test applied to the selected
/// minimum. Entries follow the order of `alphas`.
std::vector<DistortionEntry> size_distortion_table(const EmpiricalDistribution& dist,
                                                   const std::vector<double>& alphas);

void write_distortion_csv(std::ostream& out, const std::vector<DistortionEntry>& table);

// ---------------------------------------------------------------------------------------------
// Normality-test selection study

enum Statistic : std::size_t { kGamma1Sq = 0, kGamma2Sq, kJarqueBera, kGammaMaxSq, kGammaMinSq, kStatisticCount };
std::string_view statistic_name(Statistic s);

struct RateEstimate {
    double rate = 0.0;
    double standard_error = 0.0;
};

struct SizePowerTable {
    std::array<RateEstimate, kStatisticCount> size{};
    std::array<RateEstimate, kStatisticCount> power{};
    double alpha = 0.05;
    std::size_t replications = 0;
    std::size_t sample_size = 0;
    std::uint64_t seed = 0;
    Alternative alternative{};
};

/// Which data a replication draws: Gaussian null (lane 0) or the alternative (lanes 2, 3).
enum class Scenario { null, alternative };

/// Moments of replication `r` of a scenario; exposes single replications for eventwise checks.
normality::MomentStats normality_replication(const SimulationConfig& config, Scenario scenario, std::size_t r);

/// Size row under Gaussian data, power row under config.alternative. Rejection rules:
/// JB against chi2_{1-alpha}(2); the single-moment tests and both selectors against chi2_{1-alpha}(1).
SizePowerTable normality_size_power(const SimulationConfig& config, double alpha);

/// Layout: `test statistic,Gamma1^2,...` then `size` and `power` rows, followed by the
/// matching standard-error rows.
void write_size_power_csv(std::ostream& out, const SizePowerTable& table);
void write_size_power_console(std::ostream& out, const SizePowerTable& table);

}  // namespace snoop::sim

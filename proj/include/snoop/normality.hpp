#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace snoop::normality {

/// Standardized sample moments with divisor n throughout.
struct MomentStats {
    std::size_t n = 0;
    double mean = 0.0;
    double d = 0.0;     // sqrt(mean squared deviation)
    double skew = 0.0;  // m3 / d^3
    double kurt = 0.0;  // m4 / d^4 (not excess)
};

/// Requires n >= 4 and a nonconstant sample (DegenerateSampleError otherwise).
MomentStats moment_stats(std::span<const double> x);

enum class Moment { skew, kurt };
std::string_view to_string(Moment m);

/// Skewness, kurtosis and Jarque-Bera statistics, with the snooping selectors.
/// p-values use the naive chi-squared(1) reference for the max/min selectors.
struct NormalityResult {
    MomentStats moments;
    double gamma1_sq = 0.0;  // n skew^2 / 6
    double gamma2_sq = 0.0;  // n (kurt - 3)^2 / 24
    double jb = 0.0;         // gamma1_sq + gamma2_sq
    double gamma_max_sq = 0.0;
    double gamma_min_sq = 0.0;
    Moment selected = Moment::skew;  // attains gamma_max_sq; ties go to skew

    struct PValues {
        double gamma1_sq, gamma2_sq, jb, gamma_max_sq, gamma_min_sq;
    } p_values{};

    struct Rejections {
        bool gamma1_sq, gamma2_sq, jb, gamma_max_sq, gamma_min_sq;
    } rejects{};
};

/// Critical values chi2_{1-alpha}(1) and chi2_{1-alpha}(2).
struct CriticalValues {
    double one_df;
    double two_df;
};
CriticalValues critical_values(double alpha);

NormalityResult normality_from_moments(const MomentStats& moments, double alpha);
NormalityResult normality_tests(std::span<const double> x, double alpha);

/// Rejection flags only, for simulation loops; avoids p-value evaluation.
NormalityResult::Rejections reject_flags(const MomentStats& moments, const CriticalValues& crit);

/// Sizes of the max/min selectors when the two single-moment tests are independent:
/// P(max > c) = 2a - a^2, P(min > c) = a^2. Defined for alpha in [0, 1].
struct SnoopSizes {
    double size_max;
    double size_min;
};
SnoopSizes analytic_snoop_size(double alpha);

}  // namespace snoop::normality

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "snoop/lottery.hpp"

namespace snoop::uniformity {

enum class Side { left, right, two_sided };

std::string_view to_string(Side side);
/// Accepts "left", "right", "two-sided" (also "two_sided", "both").
Side parse_side(std::string_view text);

/// H0: every number has probability 1/V on each ball, for balls drawn K at a time without
/// replacement; n balls in total.
struct NullModel {
    int pool_size = 49;  // V
    int draw_size = 6;   // K
    std::int64_t n = 0;

    void validate() const;
    double p0() const noexcept { return 1.0 / pool_size; }
    double expected_count() const noexcept { return static_cast<double>(n) / pool_size; }
    /// Variance shrinkage (V - K) / (V - 1) from drawing without replacement.
    double finite_population_factor() const noexcept {
        return static_cast<double>(pool_size - draw_size) / (pool_size - 1);
    }
};

/// Single-number binomial test, classical and corrected for within-game dependence.
struct ZTestResult {
    double statistic_iid = 0.0;        // (S - n/V) / sigma_iid
    double statistic_corrected = 0.0;  // (S - n/V) / sigma_k
    double sigma_iid = 0.0;            // sqrt(n (V-1) / V^2)
    double sigma_k = 0.0;              // sigma_iid * sqrt((V-K)/(V-1))
    double p_value = 0.0;              // of the corrected statistic
    double p_value_iid = 0.0;          // naive, for comparison
    Side side = Side::left;
};

/// p-value of a standard-normal statistic; two-sided doubles the smaller tail.
double normal_p_value(double z, Side side);

/// Throws DomainError if count > n, K >= V, or the model is otherwise invalid.
ZTestResult z_test_number(std::int64_t count, const NullModel& model, Side side);

/// Pearson goodness-of-fit test with the finite-population scaling.
struct ChiSqTestResult {
    double statistic_iid = 0.0;        // sum (S_m - n/V)^2 / (n/V)
    double statistic_corrected = 0.0;  // statistic_iid * (V-1)/(V-K)
    int df = 0;                        // V - 1
    double p_value = 0.0;              // chi-squared(V-1) upper tail of the corrected statistic
    int draw_size = 0;
    std::int64_t n = 0;
};

/// Classical statistic, computed from exact integer deviations V*S_m - n.
double pearson_statistic_iid(const lottery::CountVector& counts);

/// Applies the (V-1)/(V-K) scaling to a given classical statistic.
ChiSqTestResult corrected_pearson(double statistic_iid, int pool_size, int draw_size, std::int64_t n = 0);

/// Throws DomainError when counts.total() != model.n or pool sizes differ.
ChiSqTestResult pearson_test(const lottery::CountVector& counts, const NullModel& model);

/// Main numbers plus an additional number in only some games: the number of balls per game
/// is K or K+1, so no single corrected statistic is valid. Both bracketing corrections are
/// reported and the true p-value lies in [p_value_low, p_value_high].
struct MixedSampleBounds {
    std::int64_t n = 0;
    std::int64_t games_with_additional = 0;
    ChiSqTestResult as_k;          // corrected with K  (larger p-value)
    ChiSqTestResult as_k_plus_1;   // corrected with K+1 (smaller p-value)
    double p_value_low = 0.0;
    double p_value_high = 0.0;
};

/// Tests of sample I (main numbers, K-correction), sample II (bounds only), sample III
/// (additional numbers, independent draws).
struct SampleChainReport {
    int pool_size = 0;
    int draw_size = 0;
    ChiSqTestResult main;
    std::optional<MixedSampleBounds> mixed;
    std::optional<ChiSqTestResult> additional_only;
    std::vector<std::string> notices;
};

SampleChainReport sample_chain_report(const lottery::DrawHistory& history);

/// Rows to include when rendering a report; absent samples are skipped regardless.
struct ReportRows {
    bool main = true;
    bool mixed = true;
    bool additional_only = true;
};

/// Console table with the columns: sample, type, n, statistic, p-value.
void write_report_table(std::ostream& out, const SampleChainReport& report, ReportRows rows = {});
/// Same rows as CSV: sample,type,n,statistic,value,p_value,note. Sample II spans two rows.
void write_report_csv(std::ostream& out, const SampleChainReport& report, ReportRows rows = {});

}  // namespace snoop::uniformity

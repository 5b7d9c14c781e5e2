#include "snoop/normality.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "snoop/distributions.hpp"
#include "snoop/errors.hpp"

namespace snoop::normality {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
}

}  // namespace

std::string_view to_string(Moment m) { return m == Moment::skew ? "skew" : "kurt"; }

MomentStats moment_stats(std::span<const double> x) {
    if (x.size() < 4) throw DomainError("moment_stats: need at least 4 observations, got " + std::to_string(x.size()));
    const double n = static_cast<double>(x.size());
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : x) {
        const double dev = v - mean;
        const double dev2 = dev * dev;
        m2 += dev2;
        m3 += dev2 * dev;
        m4 += dev2 * dev2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    // Relative threshold: rounding of a constant sample leaves m2 at ~eps^2 * mean^2.
    if (!(m2 > 1e-28 * std::max(1.0, mean * mean))) throw DegenerateSampleError("moment_stats: constant sample");
    MomentStats s;
    s.n = x.size();
    s.mean = mean;
    s.d = std::sqrt(m2);
    s.skew = m3 / (m2 * s.d);
    s.kurt = m4 / (m2 * m2);
    return s;
}

CriticalValues critical_values(double alpha) {
    check_alpha(alpha);
    return {dist::chi_squared_quantile(1.0 - alpha, 1), dist::chi_squared_quantile(1.0 - alpha, 2)};
}

NormalityResult::Rejections reject_flags(const MomentStats& m, const CriticalValues& crit) {
    const double n = static_cast<double>(m.n);
    const double g1 = n * m.skew * m.skew / 6.0;
    const double excess = m.kurt - 3.0;
    const double g2 = n * excess * excess / 24.0;
    return {g1 > crit.one_df, g2 > crit.one_df, g1 + g2 > crit.two_df, std::max(g1, g2) > crit.one_df,
            std::min(g1, g2) > crit.one_df};
}

NormalityResult normality_from_moments(const MomentStats& moments, double alpha) {
    const auto crit = critical_values(alpha);
    NormalityResult r;
    r.moments = moments;
    const double n = static_cast<double>(moments.n);
    r.gamma1_sq = n * moments.skew * moments.skew / 6.0;
    const double excess = moments.kurt - 3.0;
    r.gamma2_sq = n * excess * excess / 24.0;
    r.jb = r.gamma1_sq + r.gamma2_sq;
    r.selected = r.gamma2_sq > r.gamma1_sq ? Moment::kurt : Moment::skew;
    r.gamma_max_sq = std::max(r.gamma1_sq, r.gamma2_sq);
    r.gamma_min_sq = std::min(r.gamma1_sq, r.gamma2_sq);
    r.p_values = {dist::chi_squared_sf(r.gamma1_sq, 1), dist::chi_squared_sf(r.gamma2_sq, 1),
                  dist::chi_squared_sf(r.jb, 2), dist::chi_squared_sf(r.gamma_max_sq, 1),
                  dist::chi_squared_sf(r.gamma_min_sq, 1)};
    r.rejects = reject_flags(moments, crit);
    return r;
}

NormalityResult normality_tests(std::span<const double> x, double alpha) {
    return normality_from_moments(moment_stats(x), alpha);
}

SnoopSizes analytic_snoop_size(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("analytic_snoop_size: alpha must lie in [0, 1]");
    return {2.0 * alpha - alpha * alpha, alpha * alpha};
}

}  // namespace snoop::normality

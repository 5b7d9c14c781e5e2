#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "snoop/rng.hpp"

namespace snoop::dist {

double std_normal_pdf(double z);

/// Phi(z). Throws DomainError for non-finite z.
double std_normal_cdf(double z);

/// Phi^{-1}(p) for p in (0, 1); bracketed Newton, |Phi(result) - p| <= 1e-9.
double std_normal_quantile(double p);

/// Regularized lower incomplete gamma P(a, x): series for x < a + 1, else 1 - Q.
double regularized_gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x): Lentz continued fraction for x >= a + 1.
double regularized_gamma_q(double a, double x);

double chi_squared_pdf(double x, int df);
double chi_squared_cdf(double x, int df);
/// Upper tail P(X > x) for X ~ chi-squared(df). Requires x >= 0 and df >= 1.
double chi_squared_sf(double x, int df);
/// Inverse CDF for p in (0, 1).
double chi_squared_quantile(double p, int df);

/// Student-t(df) variate as Z / sqrt(W / df). Z is drawn from `numerator`, W ~ chi-squared(df)
/// from `denominator`; the two generators should be independent lanes.
double sample_student_t(int df, Rng& numerator, Rng& denominator);

/// Student-t generator owning its numerator and denominator lanes of one RngState.
class StudentT {
public:
    StudentT(int df, RngState state, std::uint32_t numerator_lane = 0,
             std::uint32_t denominator_lane = 1);

    double operator()() { return sample_student_t(df_, numerator_, denominator_); }
    int df() const noexcept { return df_; }

private:
    int df_;
    Rng numerator_;
    Rng denominator_;
};

/// Uniform draws of `k` distinct values from {1, ..., pool_size} by partial Fisher-Yates.
///
/// Keeps a permutation buffer across calls; a partial shuffle applied to any permutation
/// yields every ordered k-subset with equal probability, so the buffer is never reset.
class SubsetSampler {
public:
    explicit SubsetSampler(int pool_size);

    /// Returns the drawn values in draw order. Valid until the next call.
    std::span<const int> draw(int k, Rng& rng);

    int pool_size() const noexcept { return static_cast<int>(perm_.size()); }

private:
    std::vector<int> perm_;
};

}  // namespace snoop::dist

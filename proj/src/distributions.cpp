#include "snoop/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <utility>

#include "snoop/errors.hpp"

namespace snoop::dist {

namespace {

constexpr double kEpsilon = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 1000;

double gamma_prefactor(double a, double x) { return std::exp(a * std::log(x) - x - std::lgamma(a)); }

double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < kMaxIterations; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEpsilon) return sum * gamma_prefactor(a, x);
    }
    throw NumericalError("incomplete gamma series did not converge");
}

double gamma_q_continued_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIterations; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEpsilon) return h * gamma_prefactor(a, x);
    }
    throw NumericalError("incomplete gamma continued fraction did not converge");
}

void check_gamma_args(double a, double x) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("incomplete gamma: shape must be positive");
    if (!(x >= 0.0)) throw DomainError("incomplete gamma: x must be non-negative");
}

void check_df(int df) {
    if (df < 1) throw DomainError("chi-squared: df must be >= 1, got " + std::to_string(df));
}

void check_open_probability(double p, const char* who) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError(std::string(who) + ": p must lie in (0, 1)");
}

// Newton iteration safeguarded by a sign-change bracket [lo, hi]; falls back to bisection
// whenever the Newton step leaves the bracket. `residual` must be increasing in x.
template <class Residual, class Slope>
double bracketed_newton(Residual residual, Slope slope, double lo, double hi, double x) {
    for (int it = 0; it < kMaxIterations; ++it) {
        const double f = residual(x);
        if (f == 0.0) return x;
        if (f > 0.0) hi = x; else lo = x;
        const double s = slope(x);
        double next = (s > 0.0 && std::isfinite(s)) ? x - f / s : std::numeric_limits<double>::quiet_NaN();
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 4.0 * kEpsilon * std::max(1.0, std::abs(x)) || hi - lo <= kEpsilon * std::max(1.0, std::abs(x))) {
            return next;
        }
        x = next;
    }
    throw NumericalError("quantile root-finding did not converge");
}

}  // namespace

double std_normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

double std_normal_cdf(double z) {
    if (!std::isfinite(z)) throw DomainError("std_normal_cdf: non-finite argument");
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double std_normal_quantile(double p) {
    check_open_probability(p, "std_normal_quantile");
    if (p == 0.5) return 0.0;
    // Starting point from the logistic-type tail approximation; Newton does the rest.
    const double tail = std::min(p, 1.0 - p);
    const double t = std::sqrt(-2.0 * std::log(tail));
    double start = t - (2.515517 + 0.802853 * t + 0.010328 * t * t) /
                           (1.0 + 1.432788 * t + 0.189269 * t * t + 0.001308 * t * t * t);
    if (p < 0.5) start = -start;
    const bool lower = p < 0.5;
    auto residual = [&](double z) {
        // Evaluate in the tail that keeps full relative precision.
        return lower ? std_normal_cdf(z) - p : (1.0 - p) - std_normal_cdf(-z);
    };
    return bracketed_newton(residual, std_normal_pdf, -40.0, 40.0, start);
}

double regularized_gamma_p(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_continued_fraction(a, x);
}

double regularized_gamma_q(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_continued_fraction(a, x);
}

double chi_squared_pdf(double x, int df) {
    check_df(df);
    if (x < 0.0) return 0.0;
    const double k = 0.5 * df;
    if (x == 0.0) {
        if (df == 1) return std::numeric_limits<double>::infinity();
        return df == 2 ? 0.5 : 0.0;
    }
    return std::exp((k - 1.0) * std::log(x) - 0.5 * x - k * std::numbers::ln2 - std::lgamma(k));
}

double chi_squared_cdf(double x, int df) {
    check_df(df);
    if (!(x >= 0.0)) throw DomainError("chi_squared_cdf: x must be non-negative");
    return regularized_gamma_p(0.5 * df, 0.5 * x);
}

double chi_squared_sf(double x, int df) {
    check_df(df);
    if (!(x >= 0.0)) throw DomainError("chi_squared_sf: x must be non-negative");
    return regularized_gamma_q(0.5 * df, 0.5 * x);
}

double chi_squared_quantile(double p, int df) {
    check_open_probability(p, "chi_squared_quantile");
    check_df(df);
    const bool lower = p < 0.5;
    auto residual = [&](double x) {
        if (x <= 0.0) return -p;
        return lower ? chi_squared_cdf(x, df) - p : (1.0 - p) - chi_squared_sf(x, df);
    };
    double hi = std::max(1.0, 2.0 * df);
    while (residual(hi) < 0.0) hi *= 2.0;
    auto slope = [df](double x) { return chi_squared_pdf(x, df); };
    return bracketed_newton(residual, slope, 0.0, hi, std::min(static_cast<double>(df), 0.5 * hi));
}

double sample_student_t(int df, Rng& numerator, Rng& denominator) {
    if (df < 1) throw DomainError("sample_student_t: df must be >= 1");
    const double z = numerator.normal();
    const double w = denominator.chi_squared(df);
    return z / std::sqrt(w / df);
}

StudentT::StudentT(int df, RngState state, std::uint32_t numerator_lane, std::uint32_t denominator_lane)
    : df_(df), numerator_(state, numerator_lane), denominator_(state, denominator_lane) {
    if (df < 1) throw DomainError("StudentT: df must be >= 1");
    if (numerator_lane == denominator_lane) throw std::invalid_argument("StudentT: lanes must differ");
}

SubsetSampler::SubsetSampler(int pool_size) {
    if (pool_size < 1) throw DomainError("SubsetSampler: pool size must be positive");
    perm_.resize(static_cast<std::size_t>(pool_size));
    std::iota(perm_.begin(), perm_.end(), 1);
}

std::span<const int> SubsetSampler::draw(int k, Rng& rng) {
    const int v = pool_size();
    if (k < 0 || k > v) throw DomainError("SubsetSampler: k out of range");
    for (int i = 0; i < k; ++i) {
        const int j = i + static_cast<int>(rng.uniform_int(static_cast<std::uint32_t>(v - i)));
        std::swap(perm_[static_cast<std::size_t>(i)], perm_[static_cast<std::size_t>(j)]);
    }
    return {perm_.data(), static_cast<std::size_t>(k)};
}

}  // namespace snoop::dist

#pragma once

#include <ostream>
#include <vector>

namespace snoop::sim {

/// Sorted Monte Carlo sample supporting exact ECDF and quantile queries.
class EmpiricalDistribution {
public:
    EmpiricalDistribution() = default;
    /// Sorts the values. NaNs are rejected.
    explicit EmpiricalDistribution(std::vector<double> values);

    /// Fraction of values <= x. +inf gives 1, -inf gives 0.
    double ecdf(double x) const;
    /// Smallest stored value v with ecdf(v) >= p, for p in (0, 1].
    double quantile(double p) const;

    std::size_t size() const noexcept { return sorted_.size(); }
    bool empty() const noexcept { return sorted_.empty(); }
    const std::vector<double>& values() const noexcept { return sorted_; }
    double min() const { return sorted_.front(); }
    double max() const { return sorted_.back(); }

    /// Single-column CSV with header `value`, full round-trip precision.
    void write_csv(std::ostream& out) const;

private:
    std::vector<double> sorted_;
};

/// Binomial Monte Carlo standard error sqrt(p (1 - p) / R).
double mc_standard_error(double p, std::size_t replications);

}  // namespace snoop::sim

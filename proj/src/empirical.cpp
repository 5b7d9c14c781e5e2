#include "snoop/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "snoop/errors.hpp"

namespace snoop::sim {

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> values) : sorted_(std::move(values)) {
    if (std::any_of(sorted_.begin(), sorted_.end(), [](double v) { return std::isnan(v); })) {
        throw DomainError("empirical distribution: NaN value");
    }
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalDistribution::ecdf(double x) const {
    if (sorted_.empty()) throw DomainError("ecdf of an empty distribution");
    if (std::isnan(x)) throw DomainError("ecdf: NaN argument");
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double EmpiricalDistribution::quantile(double p) const {
    if (sorted_.empty()) throw DomainError("quantile of an empty distribution");
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("quantile: p must lie in (0, 1]");
    const double r = static_cast<double>(sorted_.size());
    auto rank = static_cast<std::size_t>(std::ceil(p * r));
    // ceil(p R) can overshoot by one ulp-induced step; back off while the ECDF still covers p.
    while (rank > 1 && static_cast<double>(rank - 1) / r >= p) --rank;
    rank = std::clamp<std::size_t>(rank, 1, sorted_.size());
    return sorted_[rank - 1];
}

void EmpiricalDistribution::write_csv(std::ostream& out) const {
    out << "value\n";
    char buf[40];
    for (double v : sorted_) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf << '\n';
    }
}

double mc_standard_error(double p, std::size_t replications) {
    if (replications == 0) throw DomainError("mc_standard_error: no replications");
    return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(replications));
}

}  // namespace snoop::sim

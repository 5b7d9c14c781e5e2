#include "snoop/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "snoop/errors.hpp"
#include "snoop/format.hpp"

namespace snoop::dist {

namespace {

// Linear interpolation between order statistics (type 7), on a sorted copy.
double sorted_quantile(const std::vector<double>& sorted, double p) {
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

double Density::integral() const {
    double total = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        total += 0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
    }
    return total;
}

double Density::mode() const {
    if (values.empty()) throw std::logic_error("Density::mode on empty density");
    const auto it = std::max_element(values.begin(), values.end());
    return grid[static_cast<std::size_t>(it - values.begin())];
}

double silverman_bandwidth(std::span<const double> samples) {
    if (samples.size() < 2) throw DegenerateSampleError("kde: need at least two samples");
    const double n = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double x : samples) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : samples) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    if (!(sd > 0.0)) throw DegenerateSampleError("kde: constant sample");

    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double iqr = sorted_quantile(sorted, 0.75) - sorted_quantile(sorted, 0.25);
    const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
    return 0.9 * spread * std::pow(n, -0.2);
}

Density kde_density(std::span<const double> samples, std::span<const double> grid,
                    std::optional<double> bandwidth) {
    const double h = bandwidth ? *bandwidth : silverman_bandwidth(samples);
    if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("kde: bandwidth must be positive");
    if (samples.empty()) throw DegenerateSampleError("kde: empty sample");
    if (!std::is_sorted(grid.begin(), grid.end())) throw DomainError("kde: grid must be ascending");

    // Sorting lets each grid point touch only samples within 8 bandwidths.
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double cutoff = 8.0 * h;
    const double norm = 1.0 / (static_cast<double>(sorted.size()) * h * std::sqrt(2.0 * std::numbers::pi));

    Density out;
    out.bandwidth = h;
    out.grid.assign(grid.begin(), grid.end());
    out.values.reserve(grid.size());
    for (double g : grid) {
        const auto first = std::lower_bound(sorted.begin(), sorted.end(), g - cutoff);
        const auto last = std::upper_bound(first, sorted.end(), g + cutoff);
        double acc = 0.0;
        for (auto it = first; it != last; ++it) {
            const double u = (g - *it) / h;
            acc += std::exp(-0.5 * u * u);
        }
        out.values.push_back(acc * norm);
    }
    return out;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
    if (count < 2 || !(hi > lo)) throw DomainError("linear_grid: need count >= 2 and hi > lo");
    std::vector<double> grid(count);
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) grid[i] = lo + step * static_cast<double>(i);
    grid.back() = hi;
    return grid;
}

void write_density_csv(std::ostream& out, const Density& density) {
    out << "grid,density\n";
    for (std::size_t i = 0; i < density.grid.size(); ++i) {
        out << format_real(density.grid[i]) << ',' << format_real(density.values[i]) << '\n';
    }
}

}  // namespace snoop::dist

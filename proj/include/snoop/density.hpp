#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <vector>

namespace snoop::dist {

/// Density values tabulated on an ascending grid.
struct Density {
    std::vector<double> grid;
    std::vector<double> values;
    double bandwidth = 0.0;

    /// Trapezoidal integral over the grid.
    double integral() const;
    /// Grid point with the largest density value (first one on ties).
    double mode() const;
};

/// Silverman's rule of thumb: 0.9 * min(sd, IQR / 1.34) * n^(-1/5).
/// Falls back to sd when the IQR is zero. Throws DegenerateSampleError on a constant sample.
double silverman_bandwidth(std::span<const double> samples);

/// Gaussian kernel density estimate evaluated at each grid point.
/// Bandwidth defaults to silverman_bandwidth(samples).
Density kde_density(std::span<const double> samples, std::span<const double> grid,
                    std::optional<double> bandwidth = std::nullopt);

/// `count` equally spaced points on [lo, hi].
std::vector<double> linear_grid(double lo, double hi, std::size_t count);

/// Two-column CSV `grid,density`.
void write_density_csv(std::ostream& out, const Density& density);

}  // namespace snoop::dist

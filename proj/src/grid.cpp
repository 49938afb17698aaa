#include "dgbo/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dgbo/errors.hpp"

namespace dgbo {

Grid::Grid(int n_points, double length)
    : n_(n_points), length_(length), spacing_(length / n_points) {
    x_.resize(n_);
    for (int m = 0; m < n_; ++m) x_[m] = -0.5 * length_ + m * spacing_;

    const double k0 = 2.0 * std::numbers::pi / length_;
    xi_.resize(n_);
    for (int j = 0; j < n_; ++j) {
        const int m = (j < n_ / 2) ? j : j - n_;
        xi_[j] = k0 * m;
    }
}

GridPtr make_grid(int n_points, double length) {
    if (n_points < 8 || n_points % 2 != 0)
        throw InvalidGridError("n_points must be even and >= 8, got " +
                               std::to_string(n_points));
    if (!(length > 0.0) || !std::isfinite(length))
        throw InvalidGridError("length must be positive and finite, got " +
                               std::to_string(length));
    return std::make_shared<const Grid>(n_points, length);
}

}  // namespace dgbo

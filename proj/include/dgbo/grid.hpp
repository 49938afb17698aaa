#pragma once

#include <Eigen/Dense>
#include <memory>

namespace dgbo {

/// Uniform periodic grid on [-L/2, L/2) standing in for the real line.
///
/// Sample points x_m = -L/2 + m*dx, m = 0..n-1. Wavenumbers are stored in
/// FFT order: xi_j = 2*pi*j/L for j = 0, 1, ..., n/2-1, -n/2, ..., -1, so
/// wavenumbers()[j] lines up with the j-th bin of the discrete spectrum.
/// The Nyquist mode -pi*n/L (bin n/2) is the one unpaired frequency.
class Grid {
public:
    Grid(int n_points, double length);

    int n_points() const { return n_; }
    double length() const { return length_; }
    double spacing() const { return spacing_; }

    /// Physical sample coordinates, ascending from -L/2.
    const Eigen::ArrayXd& x() const { return x_; }

    /// Wavenumbers in FFT bin order.
    const Eigen::ArrayXd& wavenumbers() const { return xi_; }

    /// Bin index of the unpaired Nyquist mode.
    int nyquist_bin() const { return n_ / 2; }

    bool operator==(const Grid& other) const {
        return n_ == other.n_ && length_ == other.length_;
    }

private:
    int n_;
    double length_;
    double spacing_;
    Eigen::ArrayXd x_;
    Eigen::ArrayXd xi_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Builds a periodic grid. Throws InvalidGridError unless n_points is even,
/// at least 8, and length is positive.
GridPtr make_grid(int n_points, double length);

}  // namespace dgbo

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <mutex>

#include "dgbo/grid.hpp"

namespace dgbo {

/// Real-valued function sampled on a Grid, with paired spectral coefficients.
///
/// Spectrum convention (pinned by test_grid_field):
///   u(x_m) = sum_j  u_hat[j] * exp(i * xi_j * (x_m + L/2)),
/// i.e. u_hat = DFT(samples) / n in FFT bin order. With this normalization
/// Parseval reads  sum_m u_m^2 dx = L * sum_j |u_hat[j]|^2, and coefficients
/// are directly comparable across resolutions (zero-padding changes nothing).
///
/// Diagonal multipliers in xi commute with the spatial-origin phase, so all
/// spectral operators act on these coefficients exactly as they would on the
/// true Fourier transform; the physical coordinate only matters for x-weighted
/// quadrature, which is done in sample space against grid->x().
///
/// Fields are immutable after construction and safe to share across threads;
/// the spectrum is computed on first use and cached (copies share the cache).
class Field {
public:
    Field() = default;

    /// Takes ownership of physical samples.
    Field(GridPtr grid, Eigen::ArrayXd samples);

    /// Builds the field from spectral coefficients (inverse transform is taken
    /// immediately; the cache is pre-seeded). The imaginary residue of the
    /// inverse transform is discarded; callers are responsible for handing in
    /// conjugate-symmetric spectra.
    static Field from_spectrum(GridPtr grid, const Eigen::ArrayXcd& spectrum);

    const GridPtr& grid() const { return grid_; }
    const Eigen::ArrayXd& samples() const { return samples_; }

    /// Fourier coefficients, FFT bin order, length n. Lazily computed.
    const Eigen::ArrayXcd& spectrum() const;

    int size() const { return static_cast<int>(samples_.size()); }
    bool valid() const { return grid_ != nullptr && samples_.size() > 0; }

private:
    struct SpectrumCache {
        std::once_flag once;
        Eigen::ArrayXcd value;
    };

    GridPtr grid_;
    Eigen::ArrayXd samples_;
    std::shared_ptr<SpectrumCache> cache_;
};

/// Forward transform: coefficients = DFT(samples)/n.
Eigen::ArrayXcd to_spectrum(const Eigen::ArrayXd& samples);

/// Inverse of to_spectrum; returns the real part of the synthesis sum.
Eigen::ArrayXd to_samples(const Eigen::ArrayXcd& spectrum);

/// Inverse transform kept complex, for realness diagnostics.
Eigen::ArrayXcd to_samples_complex(const Eigen::ArrayXcd& spectrum);

/// Max |imag| of the synthesis of this field's spectrum. Near machine epsilon
/// for any field produced by the toolkit's operators.
double imag_residue(const Field& f);

/// Translates the profile right by `shift` (returns g with g(x) = f(x - shift))
/// via the spectral phase e^{-i xi shift}. Exact for band-limited fields; the
/// Nyquist bin is zeroed.
Field shift_field(const Field& f, double shift);

}  // namespace dgbo

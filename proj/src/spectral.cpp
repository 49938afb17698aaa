#include "dgbo/spectral.hpp"

#include <cmath>
#include <string>

#include "dgbo/errors.hpp"

namespace dgbo {

Field fractional_derivative(const Field& f, double s) {
    if (s < 0.0)
        throw InvalidExponentError("fractional derivative order must be >= 0, got " +
                                   std::to_string(s));
    if (s == 0.0) return f;
    const auto& xi = f.grid()->wavenumbers();
    Eigen::ArrayXcd spec = f.spectrum();
    for (Eigen::Index j = 0; j < spec.size(); ++j)
        spec[j] *= std::pow(std::abs(xi[j]), s);  // |0|^s = 0 kills the mean
    return Field::from_spectrum(f.grid(), spec);
}

Field hilbert_transform(const Field& f) {
    const auto& xi = f.grid()->wavenumbers();
    Eigen::ArrayXcd spec = f.spectrum();
    const std::complex<double> mi(0.0, -1.0);
    for (Eigen::Index j = 0; j < spec.size(); ++j) {
        const double sgn = (xi[j] > 0.0) - (xi[j] < 0.0);
        spec[j] *= mi * sgn;
    }
    spec[f.grid()->nyquist_bin()] = 0.0;
    return Field::from_spectrum(f.grid(), spec);
}

Field spatial_derivative(const Field& f) {
    const auto& xi = f.grid()->wavenumbers();
    Eigen::ArrayXcd spec = f.spectrum();
    for (Eigen::Index j = 0; j < spec.size(); ++j)
        spec[j] *= std::complex<double>(0.0, xi[j]);
    spec[f.grid()->nyquist_bin()] = 0.0;
    return Field::from_spectrum(f.grid(), spec);
}

Field dealiased_power(const Field& f, int p, int max_points) {
    if (p < 1) throw InvalidInputError("power must be >= 1");
    if (p == 1) return f;

    const int n = f.size();
    const int pad = ((p + 1) / 2 + (p + 1) % 2) * n;  // ceil((p+1)/2) * n
    if (pad > max_points)
        throw ResourceError("dealiased power would need " + std::to_string(pad) +
                            " points, cap is " + std::to_string(max_points));

    const auto& spec = f.spectrum();
    const int ny = n / 2;

    // Upsample: copy low modes, split the coarse Nyquist between +-n/2 so the
    // fine signal stays real and carries the same trig polynomial.
    Eigen::ArrayXcd fine = Eigen::ArrayXcd::Zero(pad);
    for (int j = 0; j < ny; ++j) fine[j] = spec[j];
    for (int j = 1; j < ny; ++j) fine[pad - j] = spec[n - j];
    fine[ny] = 0.5 * spec[ny];
    fine[pad - ny] = 0.5 * spec[ny];

    Eigen::ArrayXd phys = to_samples(fine);
    phys = phys.pow(p);
    Eigen::ArrayXcd powered = to_spectrum(phys);

    // Truncate: retained modes are alias-free by the pad choice; the coarse
    // Nyquist bin collects both fine +-n/2 partners.
    Eigen::ArrayXcd out(n);
    for (int j = 0; j < ny; ++j) out[j] = powered[j];
    for (int j = 1; j < ny; ++j) out[n - j] = powered[pad - j];
    out[ny] = powered[ny] + powered[pad - ny];

    return Field::from_spectrum(f.grid(), out);
}

double l2_norm(const Field& f) {
    return std::sqrt(f.samples().square().sum() * f.grid()->spacing());
}

double sobolev_seminorm(const Field& f, double s) {
    if (s < 0.0)
        throw InvalidExponentError("Sobolev order must be >= 0, got " + std::to_string(s));
    const auto& xi = f.grid()->wavenumbers();
    const auto& spec = f.spectrum();
    double acc = 0.0;
    if (s == 0.0) {
        acc = spec.abs2().sum();
    } else {
        for (Eigen::Index j = 0; j < spec.size(); ++j)
            acc += std::pow(std::abs(xi[j]), 2.0 * s) * std::norm(spec[j]);
    }
    return std::sqrt(f.grid()->length() * acc);
}

double lp_norm_pow(const Field& f, int p) {
    if (p < 1) throw InvalidInputError("p must be >= 1");
    return f.samples().pow(p).sum() * f.grid()->spacing();
}

double lp_norm_pow_abs(const Field& f, int p) {
    if (p < 1) throw InvalidInputError("p must be >= 1");
    return f.samples().abs().pow(p).sum() * f.grid()->spacing();
}

double linf_norm(const Field& f) {
    return f.samples().abs().maxCoeff();
}

double mean_value(const Field& f) {
    return f.samples().mean();
}

}  // namespace dgbo

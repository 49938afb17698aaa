#include "dgbo/random_fields.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace dgbo {

Field random_field(const GridPtr& grid, std::mt19937_64& rng,
                   const RandomFieldOptions& opts) {
    const int n = grid->n_points();
    const int jmax = opts.max_mode > 0 ? std::min(opts.max_mode, n / 2 - 1) : n / 8;

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::ArrayXcd spec = Eigen::ArrayXcd::Zero(n);
    for (int j = 1; j <= jmax; ++j) {
        const double amp = (2.0 * unit(rng) - 1.0) * std::exp(-opts.mode_decay * j);
        const double phase = 2.0 * std::numbers::pi * unit(rng);
        const std::complex<double> c = 0.5 * amp * std::exp(std::complex<double>(0.0, phase));
        spec[j] = c;
        spec[n - j] = std::conj(c);
    }
    Eigen::ArrayXd samples = to_samples(spec);

    if (opts.envelope_frac > 0.0) {
        const double w = opts.envelope_frac * grid->length();
        samples *= (-(grid->x() / w).square()).exp();
    }

    const double peak = samples.abs().maxCoeff();
    if (peak > 0.0) samples *= opts.amplitude / peak;
    return Field(grid, std::move(samples));
}

Field random_localized_field(const GridPtr& grid, std::mt19937_64& rng,
                             double amplitude) {
    RandomFieldOptions opts;
    opts.envelope_frac = 1.0 / 12.0;
    opts.amplitude = amplitude;
    return random_field(grid, rng, opts);
}

}  // namespace dgbo

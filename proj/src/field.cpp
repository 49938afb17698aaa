#include "dgbo/field.hpp"

#include <unsupported/Eigen/FFT>

#include "dgbo/errors.hpp"

namespace dgbo {

namespace {

// One FFT engine per thread; Eigen::FFT caches twiddle plans per length
// internally, so reuse across sizes is cheap.
Eigen::FFT<double>& fft_engine() {
    thread_local Eigen::FFT<double> fft;
    return fft;
}

}  // namespace

Eigen::ArrayXcd to_spectrum(const Eigen::ArrayXd& samples) {
    const Eigen::Index n = samples.size();
    Eigen::VectorXcd out;
    Eigen::VectorXd in = samples.matrix();
    fft_engine().fwd(out, in);
    return out.array() / static_cast<double>(n);
}

Eigen::ArrayXcd to_samples_complex(const Eigen::ArrayXcd& spectrum) {
    const Eigen::Index n = spectrum.size();
    Eigen::VectorXcd out;
    Eigen::VectorXcd in = spectrum.matrix();
    fft_engine().inv(out, in);
    // Eigen's inverse carries a 1/n; our coefficients already do.
    return out.array() * static_cast<double>(n);
}

Eigen::ArrayXd to_samples(const Eigen::ArrayXcd& spectrum) {
    return to_samples_complex(spectrum).real();
}

Field::Field(GridPtr grid, Eigen::ArrayXd samples)
    : grid_(std::move(grid)),
      samples_(std::move(samples)),
      cache_(std::make_shared<SpectrumCache>()) {
    if (!grid_) throw InvalidInputError("Field requires a grid");
    if (samples_.size() != grid_->n_points())
        throw InvalidInputError("sample count does not match grid");
    if (!samples_.isFinite().all())
        throw InvalidInputError("field samples must be finite");
}

Field Field::from_spectrum(GridPtr grid, const Eigen::ArrayXcd& spectrum) {
    if (!grid) throw InvalidInputError("Field requires a grid");
    if (spectrum.size() != grid->n_points())
        throw InvalidInputError("spectrum length does not match grid");
    Field f(std::move(grid), to_samples(spectrum));
    std::call_once(f.cache_->once, [&] { f.cache_->value = spectrum; });
    return f;
}

const Eigen::ArrayXcd& Field::spectrum() const {
    std::call_once(cache_->once, [&] { cache_->value = to_spectrum(samples_); });
    return cache_->value;
}

double imag_residue(const Field& f) {
    return to_samples_complex(f.spectrum()).imag().abs().maxCoeff();
}

Field shift_field(const Field& f, double shift) {
    const auto& xi = f.grid()->wavenumbers();
    Eigen::ArrayXcd spec = f.spectrum();
    for (Eigen::Index j = 0; j < spec.size(); ++j)
        spec[j] *= std::exp(std::complex<double>(0.0, -xi[j] * shift));
    spec[f.grid()->nyquist_bin()] = 0.0;
    return Field::from_spectrum(f.grid(), spec);
}

}  // namespace dgbo

#include <doctest.h>

#include <numbers>
#include <random>

#include "dgbo/errors.hpp"
#include "dgbo/field.hpp"
#include "dgbo/grid.hpp"

using namespace dgbo;

namespace {
constexpr double kPi = std::numbers::pi;

Field sample_function(const GridPtr& grid, double (*f)(double)) {
    Eigen::ArrayXd s(grid->n_points());
    for (int m = 0; m < grid->n_points(); ++m) s[m] = f(grid->x()[m]);
    return Field(grid, std::move(s));
}
}  // namespace

TEST_CASE("make_grid basic layout") {
    const GridPtr g = make_grid(8, 2 * kPi);
    CHECK(g->spacing() == doctest::Approx(kPi / 4).epsilon(1e-15));
    CHECK(g->x()[0] == doctest::Approx(-kPi));
    CHECK(g->x()[4] == doctest::Approx(0.0));

    // FFT bin order 0,1,2,3,-4,-3,-2,-1
    const auto& xi = g->wavenumbers();
    CHECK(xi[0] == 0.0);
    CHECK(xi[3] == doctest::Approx(3.0));
    CHECK(xi[4] == doctest::Approx(-4.0));
    CHECK(xi[7] == doctest::Approx(-1.0));
    CHECK(g->nyquist_bin() == 4);

    // wavenumbers symmetric about zero except the Nyquist
    for (int j = 1; j < 4; ++j) CHECK(xi[j] == doctest::Approx(-xi[8 - j]));
}

TEST_CASE("make_grid spacing example") {
    const GridPtr g = make_grid(256, 100.0);
    CHECK(g->spacing() == doctest::Approx(0.390625).epsilon(1e-16));
    CHECK(g->spacing() * g->n_points() == doctest::Approx(g->length()).epsilon(1e-15));
}

TEST_CASE("make_grid rejects bad input") {
    CHECK_THROWS_AS(make_grid(7, 10.0), InvalidGridError);
    CHECK_THROWS_AS(make_grid(6, 10.0), InvalidGridError);
    CHECK_THROWS_AS(make_grid(128, 0.0), InvalidGridError);
    CHECK_THROWS_AS(make_grid(128, -5.0), InvalidGridError);
}

TEST_CASE("transform round trip and Parseval") {
    const GridPtr g = make_grid(128, 37.0);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss;
    Eigen::ArrayXd s(g->n_points());
    for (auto& v : s) v = gauss(rng);
    const Field f(g, s);

    const Eigen::ArrayXd back = to_samples(f.spectrum());
    const double rel =
        std::sqrt((back - s).square().sum() / s.square().sum());
    CHECK(rel < 1e-12);

    // conjugate symmetry of a real signal's spectrum
    const auto& spec = f.spectrum();
    for (int j = 1; j < g->n_points() / 2; ++j)
        CHECK(std::abs(spec[j] - std::conj(spec[g->n_points() - j])) < 1e-13);

    // pinned normalization: sum u^2 dx == L * sum |u_hat|^2
    const double phys = s.square().sum() * g->spacing();
    const double spect = g->length() * spec.abs2().sum();
    CHECK(phys == doctest::Approx(spect).epsilon(1e-12));
}

TEST_CASE("single mode lands in the right bin") {
    const GridPtr g = make_grid(64, 2 * kPi);
    const Field f = sample_function(g, [](double x) { return std::cos(3.0 * x); });
    const auto& spec = f.spectrum();
    CHECK(std::abs(spec[3] - 0.5) < 1e-13);
    CHECK(std::abs(spec[61] - 0.5) < 1e-13);
    double rest = 0.0;
    for (int j = 0; j < 64; ++j)
        if (j != 3 && j != 61) rest = std::max(rest, std::abs(spec[j]));
    CHECK(rest < 1e-13);
}

TEST_CASE("from_spectrum inverts spectrum()") {
    const GridPtr g = make_grid(64, 5.0);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss;
    Eigen::ArrayXd s(g->n_points());
    for (auto& v : s) v = gauss(rng);
    const Field f(g, s);
    const Field f2 = Field::from_spectrum(g, f.spectrum());
    CHECK((f2.samples() - s).abs().maxCoeff() < 1e-13);
    CHECK(imag_residue(f) < 1e-12);
}

TEST_CASE("field validates input") {
    const GridPtr g = make_grid(16, 1.0);
    Eigen::ArrayXd bad(16);
    bad.setZero();
    bad[3] = std::nan("");
    CHECK_THROWS_AS(Field(g, bad), InvalidInputError);
    Eigen::ArrayXd wrong(8);
    wrong.setZero();
    CHECK_THROWS_AS(Field(g, wrong), InvalidInputError);
}

TEST_CASE("shift_field translates band-limited data exactly") {
    const GridPtr g = make_grid(128, 2 * kPi);
    const Field f = sample_function(g, [](double x) { return std::sin(2.0 * x); });
    const Field shifted = shift_field(f, 0.5);
    for (int m = 0; m < g->n_points(); m += 7)
        CHECK(shifted.samples()[m] ==
              doctest::Approx(std::sin(2.0 * (g->x()[m] - 0.5))).epsilon(1e-12));
}

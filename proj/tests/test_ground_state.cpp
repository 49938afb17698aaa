#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dgbo/errors.hpp"
#include "dgbo/ground_state.hpp"
#include "dgbo/spectral.hpp"

using namespace dgbo;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("closed form oracle registry") {
    const GridPtr g = make_grid(256, 50.0);
    CHECK(closed_form_oracle(ModelParams(1.0, 1), g).has_value());
    CHECK(closed_form_oracle(ModelParams(2.0, 1), g).has_value());
    CHECK_FALSE(closed_form_oracle(ModelParams(1.5, 4), g).has_value());
    CHECK_FALSE(closed_form_oracle(ModelParams(1.0, 5), g).has_value());

    const Field bo = *closed_form_oracle(ModelParams(1.0, 1), g);
    CHECK(bo.samples()[128] == doctest::Approx(2.0));  // peak at x = 0
}

TEST_CASE("equation residual oracle values") {
    const ModelParams bo(1.0, 1);
    const GridPtr g = make_grid(2048, 200.0);
    const Field q = *closed_form_oracle(bo, g);

    // sampled exact solution: residual limited by box truncation
    CHECK(equation_residual(q, bo) < 1e-4);

    // wrong scale is detected
    const Field q2(g, 2.0 * q.samples());
    CHECK(equation_residual(q2, bo) > 0.5);

    // a Gaussian is far from solving the (1,5) profile equation
    const ModelParams gbo(1.0, 5);
    Eigen::ArrayXd gauss = (-(g->x() / 5.0).square()).exp();
    CHECK(equation_residual(Field(g, gauss), gbo) > 0.1);

    const Field zero(g, Eigen::ArrayXd::Zero(2048));
    CHECK_THROWS_AS(equation_residual(zero, bo), UndefinedResidualError);
}

TEST_CASE("petviashvili reproduces the BO soliton") {
    const ModelParams p(1.0, 1);
    const GridPtr g = make_grid(4096, 200.0);
    const GroundState gs = petviashvili_solve(p, g);

    const Field oracle = *closed_form_oracle(p, g);
    CHECK((gs.profile.samples() - oracle.samples()).abs().maxCoeff() < 1e-5);
    CHECK(gs.residual < 1e-10);
    CHECK(gs.mass == doctest::Approx(2.0 * kPi).epsilon(1e-5));
    CHECK(gs.iterations > 0);
}

TEST_CASE("petviashvili reproduces the KdV soliton") {
    const ModelParams p(2.0, 1);
    const GridPtr g = make_grid(2048, 100.0);
    const GroundState gs = petviashvili_solve(p, g);

    const Field oracle = *closed_form_oracle(p, g);
    CHECK((gs.profile.samples() - oracle.samples()).abs().maxCoeff() < 1e-8);
    CHECK(gs.residual < 1e-10);
}

TEST_CASE("petviashvili self-consistency at (1,5)") {
    const ModelParams p(1.0, 5);
    const GridPtr g = make_grid(4096, 200.0);
    const GroundState gs = petviashvili_solve(p, g);

    CHECK(gs.residual < 1e-10);
    // (3.6): ||D^{1/2}Q||^2 / ||Q||^2 = k/c = 5/2 at beta = 1, k = 5
    CHECK(gs.identity_report.residual_c3 < 1e-6);
    const double h = sobolev_seminorm(gs.profile, 0.5);
    CHECK(h * h / gs.mass == doctest::Approx(2.5).epsilon(1e-6));

    // certificate: sharpness closes the loop
    CHECK(weinstein_ratio(gs.profile, p) / k_opt(p, gs.mass) ==
          doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("converged profiles are even, positive, decreasing") {
    const ModelParams p(1.5, 4);
    const GridPtr g = make_grid(1024, 100.0);
    const GroundState gs = petviashvili_solve(p, g);
    const auto& q = gs.profile.samples();
    const int n = gs.profile.size();

    for (int m = 1; m < n; ++m) CHECK(std::abs(q[m] - q[n - m]) < 1e-10);
    CHECK(q.minCoeff() > -1e-10 * q.maxCoeff());
    for (int m = n / 2; m + 1 < n; ++m) CHECK(q[m + 1] <= q[m] + 1e-10);
    CHECK(gs.identity_report.trusted);
}

TEST_CASE("petviashvili accepts a closed-form seed and a user guess") {
    const ModelParams p(2.0, 1);
    const GridPtr g = make_grid(1024, 100.0);

    PetviashviliConfig seeded;
    seeded.initial_guess = PetviashviliConfig::InitialGuess::ClosedFormSeed;
    const GroundState a = petviashvili_solve(p, g, seeded);
    CHECK(a.iterations < 60);

    PetviashviliConfig user;
    user.initial_guess = PetviashviliConfig::InitialGuess::UserField;
    user.user_guess = a.profile;
    const GroundState b = petviashvili_solve(p, g, user);
    CHECK(b.iterations <= a.iterations);

    PetviashviliConfig missing;
    missing.initial_guess = PetviashviliConfig::InitialGuess::UserField;
    CHECK_THROWS_AS(petviashvili_solve(p, g, missing), InvalidInputError);
}

TEST_CASE("petviashvili reports divergence with history") {
    const ModelParams p(1.0, 5);
    const GridPtr g = make_grid(512, 100.0);
    PetviashviliConfig cfg;
    cfg.max_iterations = 2;  // far too few
    try {
        petviashvili_solve(p, g, cfg);
        FAIL("expected DivergenceError");
    } catch (const DivergenceError& e) {
        CHECK(e.residual_history.size() == 2);
    }
}

TEST_CASE("stabilization exponent window is enforced") {
    const ModelParams p(1.0, 1);
    const GridPtr g = make_grid(512, 100.0);
    PetviashviliConfig cfg;
    cfg.stabilization_exponent = 3.5;  // outside (1, (k+2)/k) = (1, 3)
    CHECK_THROWS_AS(petviashvili_solve(p, g, cfg), InvalidInputError);
}

#include "dgbo/ground_state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "dgbo/errors.hpp"
#include "dgbo/spectral.hpp"

namespace dgbo {

namespace {

Eigen::ArrayXd symmetrized(const Eigen::ArrayXd& q) {
    const int n = static_cast<int>(q.size());
    Eigen::ArrayXd out(n);
    out[0] = q[0];  // x = -L/2 is its own mirror
    for (int m = 1; m < n; ++m) out[m] = 0.5 * (q[m] + q[n - m]);
    return out;
}

Eigen::ArrayXd recentered(const Eigen::ArrayXd& q) {
    const int n = static_cast<int>(q.size());
    int peak = 0;
    q.maxCoeff(&peak);
    const int offset = n / 2 - peak;  // x = 0 lives at index n/2
    if (offset == 0) return q;
    Eigen::ArrayXd out(n);
    for (int m = 0; m < n; ++m) out[(m + offset + n) % n] = q[m];
    return out;
}

Field initial_guess_field(const ModelParams& params, const GridPtr& grid,
                          const PetviashviliConfig& config) {
    using Guess = PetviashviliConfig::InitialGuess;
    if (config.initial_guess == Guess::UserField) {
        if (!config.user_guess || !config.user_guess->valid())
            throw InvalidInputError("user initial guess requested but none supplied");
        if (!(*config.user_guess->grid() == *grid))
            throw InvalidInputError("user initial guess lives on a different grid");
        return *config.user_guess;
    }
    if (config.initial_guess == Guess::ClosedFormSeed) {
        if (auto exact = closed_form_oracle(params, grid)) return *exact;
        // fall through to the bump when no closed form is registered
    }
    const double width =
        std::clamp(100.0 * grid->spacing(), 5.0 * grid->spacing(), grid->length() / 8.0);
    Eigen::ArrayXd samples = (-(grid->x() / width).square()).exp();
    return Field(grid, std::move(samples));
}

void check_profile_shape(const Field& Q) {
    const auto& q = Q.samples();
    const int n = static_cast<int>(q.size());
    const double peak = q.abs().maxCoeff();

    for (int m = 1; m < n; ++m)
        if (std::abs(q[m] - q[n - m]) > 1e-10)
            throw DivergenceError("converged profile is not even about the box center", {});
    if ((q < -1e-10 * peak).any())
        throw DivergenceError("converged profile is not positive", {});
    for (int m = n / 2; m + 1 < n; ++m)
        if (q[m + 1] > q[m] + 1e-10)
            throw DivergenceError("converged profile is not decreasing for x > 0", {});
}

}  // namespace

double equation_residual(const Field& Q, const ModelParams& params) {
    const double norm = l2_norm(Q);
    if (!(norm > 0.0)) throw UndefinedResidualError("equation residual of the zero field");
    const Field DbQ = fractional_derivative(Q, params.beta);
    const Field Qp = dealiased_power(Q, params.k + 1);
    Field defect(Q.grid(), DbQ.samples() + Q.samples() - Qp.samples());
    return l2_norm(defect) / norm;
}

std::optional<Field> closed_form_oracle(const ModelParams& params, const GridPtr& grid) {
    const double eps = 1e-12;
    const auto& x = grid->x();
    if (params.k == 1 && std::abs(params.beta - 1.0) < eps) {
        Eigen::ArrayXd q = 2.0 / (1.0 + x.square());
        return Field(grid, std::move(q));
    }
    if (params.k == 1 && std::abs(params.beta - 2.0) < eps) {
        Eigen::ArrayXd q = 1.5 / (0.5 * x).cosh().square();
        return Field(grid, std::move(q));
    }
    return std::nullopt;
}

GroundState petviashvili_solve(const ModelParams& params, const GridPtr& grid,
                               const PetviashviliConfig& config) {
    if (grid->length() < 50.0 || grid->n_points() < 256)
        std::fprintf(stderr,
                     "warning: grid (n=%d, L=%g) may under-resolve the soliton\n",
                     grid->n_points(), grid->length());

    const double gamma = config.stabilization_exponent > 0.0
                             ? config.stabilization_exponent
                             : (params.k + 1.0) / params.k;
    if (!(gamma > 1.0 && gamma < (params.k + 2.0) / params.k))
        throw InvalidInputError("stabilization exponent outside (1, (k+2)/k)");

    Field Q = initial_guess_field(params, grid, config);

    const auto& xi = grid->wavenumbers();
    Eigen::ArrayXd inv_symbol(grid->n_points());
    for (int j = 0; j < grid->n_points(); ++j)
        inv_symbol[j] = 1.0 / (std::pow(std::abs(xi[j]), params.beta) + 1.0);

    std::vector<double> history;
    history.reserve(config.max_iterations);

    for (int it = 1; it <= config.max_iterations; ++it) {
        const Field Qp = dealiased_power(Q, params.k + 1);

        const double h = sobolev_seminorm(Q, params.beta / 2.0);
        const double num = h * h + mass(Q);
        const double den = (Qp.samples() * Q.samples()).sum() * grid->spacing();
        const double stab = num / den;
        if (!std::isfinite(stab) || stab <= 1e-8 || stab >= 1e8)
            throw DegenerateIterationError(
                "stabilization factor degenerated (S = " + std::to_string(stab) + ")");

        Eigen::ArrayXcd next_spec = Qp.spectrum() * inv_symbol;
        Eigen::ArrayXd next = to_samples(next_spec) * std::pow(stab, gamma);
        next = symmetrized(recentered(next));

        const double diff = (next - Q.samples()).abs().maxCoeff();
        history.push_back(diff);
        Q = Field(grid, std::move(next));

        if (diff < config.tolerance) {
            const double res = equation_residual(Q, params);
            if (res < config.residual_tolerance) {
                check_profile_shape(Q);
                GroundState gs;
                gs.profile = Q;
                gs.params = params;
                gs.residual = res;
                gs.iterations = it;
                gs.identity_report = verify_identities(Q, params);
                gs.mass = mass(Q);
                gs.energy = energy(Q, params);
                return gs;
            }
        }
    }
    throw DivergenceError("Petviashvili iteration did not converge within " +
                              std::to_string(config.max_iterations) + " iterations",
                          history);
}

}  // namespace dgbo

#pragma once

#include <optional>
#include <vector>

#include "dgbo/field.hpp"
#include "dgbo/functionals.hpp"
#include "dgbo/model.hpp"

namespace dgbo {

/// Controls for the Petviashvili fixed-point iteration
///   Q <- S^gamma (D^beta + 1)^{-1} Q^{k+1},
///   S = <(D^beta+1)Q, Q> / <Q^{k+1}, Q>.
struct PetviashviliConfig {
    enum class InitialGuess { GaussianBump, ClosedFormSeed, UserField };

    double tolerance = 1e-12;           // successive-iterate L-infinity difference
    double residual_tolerance = 1e-10;  // relative equation residual at acceptance
    int max_iterations = 500;
    double stabilization_exponent = 0.0;  // 0 picks the classical (k+1)/k
    InitialGuess initial_guess = InitialGuess::GaussianBump;
    std::optional<Field> user_guess;
};

/// Converged solitary-wave profile with its certification data.
struct GroundState {
    Field profile;
    ModelParams params;
    double residual = 0.0;  // ||D^beta Q + Q - Q^{k+1}|| / ||Q||
    int iterations = 0;
    IdentityReport identity_report;
    double mass = 0.0;
    double energy = 0.0;
};

/// Relative L^2 defect of D^beta Q + Q - Q^{k+1} (nonlinearity dealiased).
/// Throws UndefinedResidualError on the zero field.
double equation_residual(const Field& Q, const ModelParams& params);

/// Exact profiles where one is known in closed form:
///   (beta, k) = (1, 1): 2 / (1 + x^2)
///   (beta, k) = (2, 1): (3/2) sech^2(x/2)
/// Returns nullopt otherwise.
std::optional<Field> closed_form_oracle(const ModelParams& params, const GridPtr& grid);

/// Computes the positive even decreasing solution of D^beta Q + Q = Q^{k+1}
/// by stabilized fixed-point iteration, re-centering and symmetrizing each
/// iterate. Throws DivergenceError (with the residual history) if the
/// stopping rule is not met within max_iterations, and
/// DegenerateIterationError if the iterate collapses.
GroundState petviashvili_solve(const ModelParams& params, const GridPtr& grid,
                               const PetviashviliConfig& config = {});

}  // namespace dgbo

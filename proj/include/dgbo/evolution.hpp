#pragma once

#include <optional>
#include <vector>

#include "dgbo/field.hpp"
#include "dgbo/functionals.hpp"
#include "dgbo/model.hpp"

namespace dgbo {

enum class Integrator { IfRk4, DuhamelPicard };

/// Controls for the Picard iteration on the Duhamel integral
///   u(t) = U(t)u0 - integral_0^t U(t-t') d/dx(u^{k+1})(t') dt'.
struct PicardConfig {
    int quadrature_nodes = 3;  // Lobatto nodes per panel: 2 (trapezoid) or 3 (Simpson)
    int max_sweeps = 60;
    double tolerance = 1e-12;     // max-over-mesh L^2 change between sweeps
    double nonlinear_scale = 1.0;  // coefficient on d/dx(u^{k+1}); 0 isolates the free flow
};

struct EvolutionConfig {
    double dt = 0.0;  // 0 picks the resolution-scaled default
    bool adaptive = false;
    double target_local_error = 1e-10;  // step-doubling estimate, adaptive mode
    double t_end = 1.0;
    int output_stride = 10;  // record every this-many accepted steps
    Integrator integrator = Integrator::IfRk4;
    PicardConfig picard;
    bool store_snapshots = false;

    // integrity and blow-up telemetry
    double mass_breach_tolerance = 1e-6;
    double blowup_linf_factor = 50.0;
    double blowup_x_factor = 1e3;
};

/// Time series of conserved quantities (and optional snapshots) along a run.
struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<ConservedPair> conserved;
    std::vector<double> linf;
    std::vector<Field> snapshots;  // filled only when requested

    double mass_drift = 0.0;    // max_t |M(t)/M(0) - 1| (absolute fallback near zero)
    double energy_drift = 0.0;

    bool completed = false;
    bool integrity_breach = false;   // mass drift exceeded the configured tolerance
    bool suspected_blowup = false;   // amplitude or X(t) ceiling hit
    long steps_taken = 0;
};

/// Free propagator U_beta(t): spectrum multiplied by exp(i t |xi|^beta xi).
/// L^2-isometric and a one-parameter group on the dealiased subspace; the
/// Nyquist bin is zeroed (its phase cannot be represented for a real signal).
Field linear_group(const Field& u, double t, double beta);

/// Nonlinear part of the flow, -d/dx(u^{k+1}) with the power dealiased.
/// Mean-zero by construction.
Field rhs_nonlinear(const Field& u, const ModelParams& params);

/// One classical RK4 step of v(s) = U(-s)u(s), whose ODE has the dispersive
/// term removed exactly. Local error O(dt^5) on smooth data. Throws
/// InstabilityError if the result is not finite.
Field step_if_rk4(const Field& u, double dt, const ModelParams& params);

/// Solves the Duhamel fixed point on [0, T] by Picard sweeps over a composite
/// Gauss-Lobatto mesh (cfg.dt panels). Throws NoContractionError when sweeps
/// stop contracting, the numerical analogue of the horizon bound T(||u0||).
Field duhamel_picard_solve(const Field& u0, double T, const ModelParams& params,
                           const EvolutionConfig& cfg);

/// Advances u0 to t_end recording conserved quantities, with early flagged
/// termination on mass-integrity breach or blow-up proxy ceilings.
TrajectoryRecord evolve(const Field& u0, const ModelParams& params,
                        const EvolutionConfig& cfg);

/// Resolution-scaled default step, dt = 1e-3 sqrt(L/n).
double default_time_step(const Grid& grid);

}  // namespace dgbo

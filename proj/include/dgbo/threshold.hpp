#pragma once

#include <functional>
#include <optional>

#include "dgbo/evolution.hpp"
#include "dgbo/field.hpp"
#include "dgbo/ground_state.hpp"
#include "dgbo/model.hpp"

namespace dgbo {

/// Relative clearance a strict inequality must have before data is classified
/// admissible. Keeps the verdict deterministic at the equality case u0 = Q,
/// where the two sides agree up to quadrature error.
inline constexpr double kStrictnessMargin = 1e-6;

/// Classification of initial data against the supercritical global-existence
/// threshold, k > 2*beta.
///
/// The verdict is evaluated in the barrier form (2E(u0) < f(x0) and
/// X(0) < x0, with f(x) = x - B x^{k/2beta}), which avoids exponentiating a
/// zero energy; the energy-mass and gradient-mass products of the equivalent
/// scale-invariant form are recorded alongside for reporting.
struct ThresholdReport {
    double s_k = 0.0;

    double lhs_energy_mass = 0.0;  // E(u0)^{s_k} M(u0)^{beta/2 - s_k}
    double rhs_energy_mass = 0.0;  // same with Q
    double lhs_gradient_mass = 0.0;  // ||D^{b/2}u0||^{s_k} ||u0||^{beta/2 - s_k}
    double rhs_gradient_mass = 0.0;

    bool energy_nonneg = false;
    bool admissible = false;

    double A = 0.0;   // 2 E(u0)
    double B = 0.0;   // (2/(k+2)) K_opt^{k+2} ||u0||^{(2+(k+2)(beta-1))/beta}
    double x0 = 0.0;  // barrier maximizer (inf when u0 = 0)
    double f_x0 = 0.0;
    double X0 = 0.0;  // ||D^{beta/2} u0||^2

    std::optional<bool> trajectory_ok;  // unset until an evolution is checked
};

/// s_k = 1/2 - beta/k; positive exactly in the supercritical regime.
double compute_sk(const ModelParams& params);

/// Evaluates the admissibility conditions for u0 against the ground state Q.
/// E(Q) is computed both by quadrature and by its closed form; the two must
/// agree to 1e-6 relative (InternalConsistencyError otherwise). Throws
/// InapplicableTheoremError when k <= 2*beta and InvalidInputError when Q was
/// computed for different parameters.
ThresholdReport check_conditions(const Field& u0, const GroundState& Q,
                                 const ModelParams& params);

/// The barrier f(x) = x - B x^{k/2beta} for x >= 0, with its local maximizer
/// x0 = (2beta/(kB))^{2beta/(k-2beta)} and f(x0) = ((k-2beta)/k) x0.
/// Requires B > 0 and k > 2*beta.
struct BarrierFunction {
    double x0 = 0.0;
    double f_x0 = 0.0;
    std::function<double(double)> f;
};

BarrierFunction barrier_function(const ModelParams& params, double B);

/// True iff at every recorded time both the gradient-mass inequality and the
/// equivalent X(t) < x0 bound hold. The two formulations are cross-checked to
/// 1e-9 relative; disagreement raises InternalConsistencyError. Requires an
/// admissible report (InapplicableTheoremError otherwise).
bool verify_apriori_bound(const TrajectoryRecord& trajectory,
                          const ThresholdReport& report, const GroundState& Q);

}  // namespace dgbo

#pragma once

#include "dgbo/field.hpp"
#include "dgbo/model.hpp"

namespace dgbo {

/// Mass, energy, and the homogeneous H^{beta/2} seminorm of a state,
/// the three quantities tracked along every trajectory.
struct ConservedPair {
    double mass = 0.0;         // integral of u^2
    double energy = 0.0;       // 1/2 ||D^{beta/2}u||^2 - 1/(k+2) integral of u^{k+2}
    double h_half_beta = 0.0;  // ||D^{beta/2}u||, so X = h_half_beta^2
};

/// M(u) = integral of u^2.
double mass(const Field& u);

/// E(u) = 1/2 ||D^{beta/2}u||^2 - 1/(k+2) * integral of u^{k+2}.
/// The last integral keeps its sign for odd k+2.
double energy(const Field& u, const ModelParams& params);

ConservedPair conserved_pair(const Field& u, const ModelParams& params);

/// The scale- and dilation-invariant Gagliardo-Nirenberg quotient
///   ||f||_{k+2}^{k+2} / ( ||D^{beta/2}f||^{k/beta} ||f||^{(2+(k+2)(beta-1))/beta} ),
/// maximized by the ground state. The numerator uses |f|^{k+2}.
/// Throws UndefinedRatioError on the zero field.
double weinstein_ratio(const Field& f, const ModelParams& params);

/// Sharp constant of the inequality, reported as K_opt^{k+2}:
///   (k+2)beta/c * [ (c/k)^{1/beta} / q_mass ]^{k/2},  c = 2+(k+2)(beta-1),
/// where q_mass is the squared L^2 norm of the ground state for (beta, k).
/// Equals weinstein_ratio at the ground state.
double k_opt(const ModelParams& params, double q_mass);

/// Absolute defects of the five integral identities satisfied by the ground
/// state plus its closed-form energy, each normalized by ||Q||^2:
///   c1:       integral Q^{k+2} = ||Q||^2 + ||D^{beta/2}Q||^2
///   c2:       2/(k+2) integral Q^{k+2} = ||Q||^2 - (beta-1)||D^{beta/2}Q||^2
///   c3:       k/c ||Q||^2 = ||D^{beta/2}Q||^2
///   c4:       c/(k+2) integral Q^{k+2} = beta ||Q||^2
///   pohozaev: integral x Q' D^beta Q = (beta-1)/2 ||D^{beta/2}Q||^2
///   EQ:       E(Q) = 1/2 (k-2 beta)/c ||Q||^2
/// Large residuals are data, not errors. `trusted` is false when the profile
/// is off-center or has not decayed below 1e-6 of its peak at the box edge,
/// in which case the x-weighted quadrature (c2, pohozaev) is unreliable.
struct IdentityReport {
    double residual_c1 = 0.0;
    double residual_c2 = 0.0;
    double residual_c3 = 0.0;
    double residual_c4 = 0.0;
    double residual_pohozaev = 0.0;
    double residual_EQ = 0.0;
    bool trusted = true;
};

IdentityReport verify_identities(const Field& Q, const ModelParams& params);

/// c = 2 + (k+2)(beta-1), the combination entering every identity.
inline double identity_denominator(const ModelParams& p) {
    return 2.0 + (p.k + 2) * (p.beta - 1.0);
}

}  // namespace dgbo

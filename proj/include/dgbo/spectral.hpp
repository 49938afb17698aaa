#pragma once

#include "dgbo/field.hpp"

namespace dgbo {

/// Pad cap for dealiased products, in fine-grid points.
inline constexpr int kDealiasMaxPoints = 1 << 22;

/// D^s f = (|xi|^s f_hat)^v. The zero mode is annihilated for s > 0 and kept
/// for s = 0; the Nyquist bin is kept (even multiplier). Throws
/// InvalidExponentError for s < 0.
Field fractional_derivative(const Field& f, double s);

/// Hf = (-i sgn(xi) f_hat)^v. Zero mode and Nyquist bin are zeroed
/// (odd multiplier).
Field hilbert_transform(const Field& f);

/// f' = (i xi f_hat)^v with the Nyquist bin zeroed (odd multiplier).
Field spatial_derivative(const Field& f);

/// Pointwise power f^p evaluated without aliasing: the spectrum is zero-padded
/// to ceil((p+1)/2)*n modes, powered in physical space, and truncated back.
/// The result is the exact Galerkin projection of f^p onto the grid's modes.
/// Throws ResourceError if the padded size exceeds max_points.
Field dealiased_power(const Field& f, int p, int max_points = kDealiasMaxPoints);

/// sqrt( sum u_j^2 dx )
double l2_norm(const Field& f);

/// || |xi|^s u_hat ||, evaluated via Parseval: sqrt( L * sum |xi_j|^{2s} |u_hat_j|^2 ).
/// Coincides with l2_norm at s = 0.
double sobolev_seminorm(const Field& f, double s);

/// Signed quadrature  sum u_j^p dx  (the integral of u^p, sign kept for odd p).
double lp_norm_pow(const Field& f, int p);

/// sum |u_j|^p dx, the L^p norm raised to the p-th power.
double lp_norm_pow_abs(const Field& f, int p);

double linf_norm(const Field& f);

/// Mean over the box, u_hat[0].
double mean_value(const Field& f);

}  // namespace dgbo

#pragma once

#include <string>

#include "dgbo/errors.hpp"

namespace dgbo {

/// Criticality of the nonlinearity power k against the dispersion 2*beta.
enum class Regime { Subcritical, Critical, Supercritical };

/// Dispersion exponent beta and nonlinearity power k of
/// u_t - D^beta u_x + (u^{k+1})_x = 0.
struct ModelParams {
    double beta = 1.0;
    int k = 1;

    ModelParams() = default;
    ModelParams(double beta_, int k_) : beta(beta_), k(k_) {
        if (!(beta >= 1.0 && beta <= 2.0))
            throw InvalidInputError("beta must lie in [1, 2], got " + std::to_string(beta));
        if (k < 1)
            throw InvalidInputError("k must be a positive integer, got " + std::to_string(k));
    }

    Regime regime() const {
        const double gap = k - 2.0 * beta;
        if (gap < 0.0) return Regime::Subcritical;
        if (gap > 0.0) return Regime::Supercritical;
        return Regime::Critical;
    }

    bool supercritical() const { return regime() == Regime::Supercritical; }

    bool operator==(const ModelParams& o) const { return beta == o.beta && k == o.k; }
};

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Subcritical: return "subcritical";
        case Regime::Critical: return "critical";
        case Regime::Supercritical: return "supercritical";
    }
    return "?";
}

}  // namespace dgbo

#pragma once

#include <random>

#include "dgbo/field.hpp"

namespace dgbo {

struct RandomFieldOptions {
    int max_mode = 0;         // 0 means n/8
    double mode_decay = 0.3;  // amplitude ~ exp(-decay * j)
    double amplitude = 1.0;   // target L-infinity scale
    double envelope_frac = 0.0;  // >0: multiply by exp(-(x/(frac*L))^2)
};

/// Smooth random field built from low Fourier modes with decaying random
/// amplitudes. With envelope_frac > 0 the field is localized around the box
/// center, making it a faithful stand-in for a decaying function on the line.
/// Deterministic for a given rng state.
Field random_field(const GridPtr& grid, std::mt19937_64& rng,
                   const RandomFieldOptions& opts = {});

/// Convenience: localized variant used by the inequality and conservation
/// checks (envelope width L/12).
Field random_localized_field(const GridPtr& grid, std::mt19937_64& rng,
                             double amplitude = 1.0);

}  // namespace dgbo

#include "dgbo/evolution.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "dgbo/errors.hpp"
#include "dgbo/spectral.hpp"

namespace dgbo {

namespace {

// exp(i t |xi|^beta xi) on each bin, Nyquist zeroed.
Eigen::ArrayXcd group_phase(const Grid& grid, double t, double beta) {
    const auto& xi = grid.wavenumbers();
    Eigen::ArrayXcd phase(grid.n_points());
    for (int j = 0; j < grid.n_points(); ++j) {
        const double theta = t * std::pow(std::abs(xi[j]), beta) * xi[j];
        phase[j] = std::exp(std::complex<double>(0.0, theta));
    }
    phase[grid.nyquist_bin()] = 0.0;
    return phase;
}

Eigen::ArrayXcd nonlinear_spectrum(const GridPtr& grid, const Eigen::ArrayXcd& spec,
                                   const ModelParams& params) {
    return rhs_nonlinear(Field::from_spectrum(grid, spec), params).spectrum();
}

double spectral_l2(const Grid& grid, const Eigen::ArrayXcd& spec) {
    return std::sqrt(grid.length() * spec.abs2().sum());
}

}  // namespace

double default_time_step(const Grid& grid) {
    return 1e-3 * std::sqrt(grid.length() / grid.n_points());
}

Field linear_group(const Field& u, double t, double beta) {
    Eigen::ArrayXcd spec = u.spectrum() * group_phase(*u.grid(), t, beta);
    return Field::from_spectrum(u.grid(), spec);
}

Field rhs_nonlinear(const Field& u, const ModelParams& params) {
    const Field flux = spatial_derivative(dealiased_power(u, params.k + 1));
    return Field(u.grid(), -flux.samples());
}

Field step_if_rk4(const Field& u, double dt, const ModelParams& params) {
    if (!(dt > 0.0)) throw InvalidInputError("dt must be positive");
    const GridPtr& grid = u.grid();

    const Eigen::ArrayXcd half = group_phase(*grid, 0.5 * dt, params.beta);
    const Eigen::ArrayXcd full = group_phase(*grid, dt, params.beta);

    const Eigen::ArrayXcd v = u.spectrum();
    const Eigen::ArrayXcd a = dt * nonlinear_spectrum(grid, v, params);
    const Eigen::ArrayXcd b =
        dt * nonlinear_spectrum(grid, (half * (v + 0.5 * a)).eval(), params);
    const Eigen::ArrayXcd c =
        dt * nonlinear_spectrum(grid, (half * v + 0.5 * b).eval(), params);
    const Eigen::ArrayXcd d =
        dt * nonlinear_spectrum(grid, (full * v + half * c).eval(), params);

    Eigen::ArrayXcd next = full * v + (full * a + 2.0 * half * (b + c) + d) / 6.0;
    Eigen::ArrayXd samples = to_samples(next);
    if (!samples.isFinite().all())
        throw InstabilityError("IF-RK4 step produced non-finite values", 0.0);
    return Field::from_spectrum(grid, next);
}

Field duhamel_picard_solve(const Field& u0, double T, const ModelParams& params,
                           const EvolutionConfig& cfg) {
    if (!(T > 0.0)) throw InvalidInputError("Picard horizon must be positive");
    const PicardConfig& pc = cfg.picard;
    if (pc.quadrature_nodes != 2 && pc.quadrature_nodes != 3)
        throw InvalidInputError("quadrature_nodes must be 2 or 3");

    const GridPtr& grid = u0.grid();
    const double panel = cfg.dt > 0.0 ? cfg.dt : default_time_step(*grid);
    const int n_panels =
        std::min(std::max(1, static_cast<int>(std::ceil(T / panel - 1e-12))), 4096);
    const int per_panel = pc.quadrature_nodes - 1;  // fine intervals per panel
    const int n_nodes = per_panel * n_panels + 1;
    const double delta = T / (n_nodes - 1);

    // Free flight of u0 to every node, and inter-node propagator phases.
    std::vector<Eigen::ArrayXcd> phases(n_nodes);
    for (int m = 0; m < n_nodes; ++m) phases[m] = group_phase(*grid, m * delta, params.beta);

    const Eigen::ArrayXcd u0_hat = u0.spectrum();
    std::vector<Eigen::ArrayXcd> u(n_nodes), g(n_nodes);
    for (int j = 0; j < n_nodes; ++j) u[j] = phases[j] * u0_hat;

    // Quadrature weights for integral over [0, t_j] on the fine mesh.
    // Simpson panels where the node count allows, a 3/8 closure for odd
    // indices, and a one-sided parabolic rule for the first sub-interval.
    std::vector<std::vector<double>> weights(n_nodes);
    for (int j = 0; j < n_nodes; ++j) {
        std::vector<double> w(j + 1, 0.0);
        if (pc.quadrature_nodes == 2) {
            for (int i = 0; i < j; ++i) {
                w[i] += 0.5 * delta;
                w[i + 1] += 0.5 * delta;
            }
        } else if (j == 1) {
            // parabola through nodes 0,1,2 integrated over the first interval
            w.resize(3, 0.0);
            w[0] = delta * 5.0 / 12.0;
            w[1] = delta * 8.0 / 12.0;
            w[2] = delta * -1.0 / 12.0;
        } else {
            int start = 0;
            if (j % 2 == 1) {
                w[0] += delta * 3.0 / 8.0;
                w[1] += delta * 9.0 / 8.0;
                w[2] += delta * 9.0 / 8.0;
                w[3] += delta * 3.0 / 8.0;
                start = 3;
            }
            for (int i = start; i + 2 <= j; i += 2) {
                w[i] += delta / 3.0;
                w[i + 1] += delta * 4.0 / 3.0;
                w[i + 2] += delta / 3.0;
            }
        }
        weights[j] = std::move(w);
    }

    std::vector<double> sweep_diffs;
    const double scale_guard = 1e6 * (1.0 + spectral_l2(*grid, u0_hat));
    int growth_streak = 0;

    for (int sweep = 1; sweep <= pc.max_sweeps; ++sweep) {
        for (int j = 0; j < n_nodes; ++j)
            g[j] = pc.nonlinear_scale * nonlinear_spectrum(grid, u[j], params);

        double diff = 0.0;
        for (int j = n_nodes - 1; j >= 0; --j) {
            Eigen::ArrayXcd acc = phases[j] * u0_hat;
            const auto& w = weights[j];
            for (int i = 0; i < static_cast<int>(w.size()); ++i) {
                if (w[i] == 0.0) continue;
                // U(t_j - t_i); the j==1 parabolic rule looks one node ahead,
                // where U(-s) = conj(U(s)) for the unimodular phase
                if (j >= i)
                    acc += w[i] * (phases[j - i] * g[i]);
                else
                    acc += w[i] * (phases[i - j].conjugate() * g[i]);
            }
            diff = std::max(diff, spectral_l2(*grid, (acc - u[j]).eval()));
            u[j] = std::move(acc);
        }
        sweep_diffs.push_back(diff);

        if (!std::isfinite(diff) || diff > scale_guard)
            throw NoContractionError(
                "Picard iteration diverged (horizon too large for the data)",
                sweep_diffs);
        if (sweep >= 2 && diff > sweep_diffs[sweep - 2]) {
            if (++growth_streak >= 3 && diff > 10.0 * sweep_diffs.front())
                throw NoContractionError(
                    "Picard iteration stopped contracting (horizon too large)",
                    sweep_diffs);
        } else {
            growth_streak = 0;
        }
        if (diff < pc.tolerance) return Field::from_spectrum(grid, u[n_nodes - 1]);
    }
    throw NoContractionError("Picard iteration did not reach tolerance in " +
                                 std::to_string(pc.max_sweeps) + " sweeps",
                             sweep_diffs);
}

TrajectoryRecord evolve(const Field& u0, const ModelParams& params,
                        const EvolutionConfig& cfg) {
    if (!(cfg.t_end > 0.0)) throw InvalidInputError("t_end must be positive");
    const double dt0 = cfg.dt > 0.0 ? cfg.dt : default_time_step(*u0.grid());
    if (dt0 > cfg.t_end && !cfg.adaptive)
        throw InvalidInputError("dt exceeds t_end");
    if (cfg.output_stride < 1) throw InvalidInputError("output_stride must be >= 1");

    TrajectoryRecord rec;
    Field u = u0;
    double t = 0.0;

    const ConservedPair c0 = conserved_pair(u0, params);
    const double linf0 = linf_norm(u0);
    const double x0 = c0.h_half_beta * c0.h_half_beta;

    auto record = [&](const Field& f, double time) {
        rec.times.push_back(time);
        rec.conserved.push_back(conserved_pair(f, params));
        rec.linf.push_back(linf_norm(f));
        if (cfg.store_snapshots) rec.snapshots.push_back(f);
    };
    record(u, 0.0);

    double h = std::min(dt0, cfg.t_end);
    const double h_min = dt0 * std::pow(2.0, -20);
    long steps_since_output = 0;

    while (t < cfg.t_end - 1e-13 * cfg.t_end) {
        h = std::min(h, cfg.t_end - t);
        Field next = u;
        try {
            if (cfg.integrator == Integrator::DuhamelPicard) {
                next = duhamel_picard_solve(u, h, params, cfg);
            } else if (cfg.adaptive) {
                for (;;) {
                    const Field coarse = step_if_rk4(u, h, params);
                    const Field mid = step_if_rk4(u, 0.5 * h, params);
                    const Field fine = step_if_rk4(mid, 0.5 * h, params);
                    Field delta(u.grid(), fine.samples() - coarse.samples());
                    const double err = l2_norm(delta) / 15.0;
                    if (err <= cfg.target_local_error || h <= h_min) {
                        next = fine;
                        if (err < 0.02 * cfg.target_local_error) h = std::min(h * 1.5, dt0 * 16);
                        break;
                    }
                    h *= 0.5;
                    if (h < h_min)
                        throw InstabilityError("adaptive step shrank below the floor", t);
                }
            } else {
                next = step_if_rk4(u, h, params);
            }
        } catch (const InstabilityError& e) {
            throw InstabilityError(e.what(), t);
        }

        u = next;
        t += h;
        ++rec.steps_taken;
        ++steps_since_output;

        const ConservedPair c = conserved_pair(u, params);
        const double mass_dev = std::abs(c0.mass) > 1e-12
                                    ? std::abs(c.mass / c0.mass - 1.0)
                                    : std::abs(c.mass - c0.mass);
        const bool breach = mass_dev > cfg.mass_breach_tolerance;
        const bool blowup =
            (linf0 > 0.0 && linf_norm(u) > cfg.blowup_linf_factor * linf0) ||
            (x0 > 1e-300 &&
             c.h_half_beta * c.h_half_beta > cfg.blowup_x_factor * x0);

        const bool final_point = t >= cfg.t_end - 1e-13 * cfg.t_end;
        if (breach || blowup || final_point ||
            steps_since_output >= cfg.output_stride) {
            record(u, t);
            steps_since_output = 0;
        }
        if (breach) {
            rec.integrity_breach = true;
            break;
        }
        if (blowup) {
            rec.suspected_blowup = true;
            break;
        }
    }

    rec.completed = !rec.integrity_breach && !rec.suspected_blowup &&
                    t >= cfg.t_end - 1e-13 * cfg.t_end;

    const double m0 = rec.conserved.front().mass;
    const double e0 = rec.conserved.front().energy;
    for (const auto& c : rec.conserved) {
        rec.mass_drift = std::max(rec.mass_drift,
                                  std::abs(m0) > 1e-12 ? std::abs(c.mass / m0 - 1.0)
                                                       : std::abs(c.mass - m0));
        rec.energy_drift = std::max(rec.energy_drift,
                                    std::abs(e0) > 1e-12 ? std::abs(c.energy / e0 - 1.0)
                                                         : std::abs(c.energy - e0));
    }
    return rec;
}

}  // namespace dgbo

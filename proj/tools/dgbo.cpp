// dgbo -- pseudo-spectral toolkit for the k-dispersion generalized
// Benjamin-Ono equation: ground states, conservative evolution, and
// global-existence threshold classification.
//
// Subcommands: ground-state, evolve, threshold, sweep, verify.
// Exit codes: 0 ok, 2 config/usage, 3 instability, 4 inapplicable theorem.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <thread>

#include "dgbo/errors.hpp"
#include "dgbo/evolution.hpp"
#include "dgbo/ground_state.hpp"
#include "dgbo/io.hpp"
#include "dgbo/spectral.hpp"
#include "dgbo/threshold.hpp"
#include "dgbo/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInstability = 3;
constexpr int kExitInapplicable = 4;
constexpr int kExitFailure = 1;

// ---------------------------------------------------------------------------
// strict config parsing: unknown keys are errors, not warnings
// ---------------------------------------------------------------------------

void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw dgbo::ConfigError(path + " must be a JSON object");
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& path) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key))
            throw dgbo::ConfigError("unknown key '" + key + "' in " + path);
}

template <typename T>
T get_or(const json& obj, const std::string& key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw dgbo::ConfigError("bad value for '" + key + "'");
    }
}

template <typename T>
T get_required(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key))
        throw dgbo::ConfigError("missing required key '" + key + "' in " + path);
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw dgbo::ConfigError("bad value for '" + key + "' in " + path);
    }
}

struct InitialDataSpec {
    std::string type = "gaussian";  // gaussian | sech | soliton_multiple | profile_file
    double amplitude = 1.0;
    double width = 5.0;
    std::string path;
};

struct RunConfig {
    json raw;
    std::string hash;

    dgbo::ModelParams model;
    int n_points = 1024;
    double length = 100.0;
    dgbo::PetviashviliConfig petviashvili;
    dgbo::EvolutionConfig evolution;
    InitialDataSpec initial_data;
    std::vector<double> amplitude_list{0.5};
    bool threshold_run_evolution = false;
    std::string threshold_profile_file;
    std::vector<double> sweep_beta;
    std::vector<int> sweep_k;
    std::vector<double> sweep_amplitudes;
    bool sweep_evolve_cells = false;
    dgbo::VerifyOptions verify;
    fs::path output_dir = "out";
};

dgbo::PetviashviliConfig parse_ground_state_block(const json& block) {
    require_object(block, "ground_state");
    reject_unknown_keys(block,
                        {"tolerance", "residual_tolerance", "max_iterations",
                         "stabilization_exponent", "initial_guess"},
                        "ground_state");
    dgbo::PetviashviliConfig pc;
    pc.tolerance = get_or(block, "tolerance", pc.tolerance);
    pc.residual_tolerance = get_or(block, "residual_tolerance", pc.residual_tolerance);
    pc.max_iterations = get_or(block, "max_iterations", pc.max_iterations);
    pc.stabilization_exponent =
        get_or(block, "stabilization_exponent", pc.stabilization_exponent);
    const std::string guess = get_or<std::string>(block, "initial_guess", "gaussian_bump");
    if (guess == "gaussian_bump")
        pc.initial_guess = dgbo::PetviashviliConfig::InitialGuess::GaussianBump;
    else if (guess == "closed_form_seed")
        pc.initial_guess = dgbo::PetviashviliConfig::InitialGuess::ClosedFormSeed;
    else
        throw dgbo::ConfigError("initial_guess must be gaussian_bump or closed_form_seed");
    return pc;
}

dgbo::EvolutionConfig parse_evolution_block(const json& block, InitialDataSpec& data) {
    require_object(block, "evolution");
    reject_unknown_keys(block,
                        {"dt", "adaptive", "target_local_error", "t_end", "output_stride",
                         "integrator", "picard", "store_snapshots", "initial_data"},
                        "evolution");
    dgbo::EvolutionConfig ec;
    ec.dt = get_or(block, "dt", ec.dt);
    ec.adaptive = get_or(block, "adaptive", ec.adaptive);
    ec.target_local_error = get_or(block, "target_local_error", ec.target_local_error);
    ec.t_end = get_or(block, "t_end", ec.t_end);
    ec.output_stride = get_or(block, "output_stride", ec.output_stride);
    ec.store_snapshots = get_or(block, "store_snapshots", ec.store_snapshots);
    const std::string integ = get_or<std::string>(block, "integrator", "if_rk4");
    if (integ == "if_rk4")
        ec.integrator = dgbo::Integrator::IfRk4;
    else if (integ == "duhamel_picard")
        ec.integrator = dgbo::Integrator::DuhamelPicard;
    else
        throw dgbo::ConfigError("integrator must be if_rk4 or duhamel_picard");

    if (block.contains("picard")) {
        const json& p = block.at("picard");
        require_object(p, "evolution.picard");
        reject_unknown_keys(
            p, {"quadrature_nodes", "max_sweeps", "tolerance", "nonlinear_scale"},
            "evolution.picard");
        ec.picard.quadrature_nodes =
            get_or(p, "quadrature_nodes", ec.picard.quadrature_nodes);
        ec.picard.max_sweeps = get_or(p, "max_sweeps", ec.picard.max_sweeps);
        ec.picard.tolerance = get_or(p, "tolerance", ec.picard.tolerance);
        ec.picard.nonlinear_scale =
            get_or(p, "nonlinear_scale", ec.picard.nonlinear_scale);
    }
    if (block.contains("initial_data")) {
        const json& d = block.at("initial_data");
        require_object(d, "evolution.initial_data");
        reject_unknown_keys(d, {"type", "amplitude", "width", "path"},
                            "evolution.initial_data");
        data.type = get_or<std::string>(d, "type", data.type);
        data.amplitude = get_or(d, "amplitude", data.amplitude);
        data.width = get_or(d, "width", data.width);
        data.path = get_or<std::string>(d, "path", data.path);
        if (data.type != "gaussian" && data.type != "sech" &&
            data.type != "soliton_multiple" && data.type != "profile_file")
            throw dgbo::ConfigError(
                "initial_data.type must be gaussian, sech, soliton_multiple, or "
                "profile_file");
    }
    return ec;
}

RunConfig load_config(const std::string& path, bool model_required) {
    std::ifstream in(path);
    if (!in) throw dgbo::ConfigError("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw dgbo::ConfigError(std::string("config parse error: ") + e.what());
    }
    require_object(j, "config");
    reject_unknown_keys(j,
                        {"version", "model", "grid", "ground_state", "evolution",
                         "threshold", "sweep", "verify", "output"},
                        "config");
    const int version = get_required<int>(j, "version", "config");
    if (version != 1) throw dgbo::ConfigError("unsupported config version");

    RunConfig cfg;
    cfg.raw = j;
    cfg.hash = dgbo::config_hash(j);

    if (j.contains("model")) {
        const json& m = j.at("model");
        require_object(m, "model");
        reject_unknown_keys(m, {"beta", "k"}, "model");
        try {
            cfg.model = dgbo::ModelParams(get_required<double>(m, "beta", "model"),
                                          get_required<int>(m, "k", "model"));
        } catch (const dgbo::InvalidInputError& e) {
            throw dgbo::ConfigError(e.what());
        }
    } else if (model_required) {
        throw dgbo::ConfigError("missing required 'model' block");
    }

    if (j.contains("grid")) {
        const json& g = j.at("grid");
        require_object(g, "grid");
        reject_unknown_keys(g, {"n_points", "length"}, "grid");
        cfg.n_points = get_required<int>(g, "n_points", "grid");
        cfg.length = get_required<double>(g, "length", "grid");
    } else if (model_required) {
        throw dgbo::ConfigError("missing required 'grid' block");
    }

    if (j.contains("ground_state"))
        cfg.petviashvili = parse_ground_state_block(j.at("ground_state"));
    if (j.contains("evolution"))
        cfg.evolution = parse_evolution_block(j.at("evolution"), cfg.initial_data);

    if (j.contains("threshold")) {
        const json& t = j.at("threshold");
        require_object(t, "threshold");
        reject_unknown_keys(t, {"amplitude_list", "run_evolution", "profile_file"},
                            "threshold");
        cfg.amplitude_list =
            get_or(t, "amplitude_list", cfg.amplitude_list);
        cfg.threshold_run_evolution = get_or(t, "run_evolution", false);
        cfg.threshold_profile_file = get_or<std::string>(t, "profile_file", "");
    }

    if (j.contains("sweep")) {
        const json& s = j.at("sweep");
        require_object(s, "sweep");
        reject_unknown_keys(s, {"beta_list", "k_list", "amplitude_list", "evolve_cells"},
                            "sweep");
        cfg.sweep_beta = get_or(s, "beta_list", cfg.sweep_beta);
        cfg.sweep_k = get_or(s, "k_list", cfg.sweep_k);
        cfg.sweep_amplitudes = get_or(s, "amplitude_list", cfg.sweep_amplitudes);
        cfg.sweep_evolve_cells = get_or(s, "evolve_cells", false);
    }

    if (j.contains("verify")) {
        const json& v = j.at("verify");
        require_object(v, "verify");
        reject_unknown_keys(v, {"preset", "checks", "seed"}, "verify");
        const std::string preset = get_or<std::string>(v, "preset", "full");
        if (preset == "full")
            cfg.verify.preset = dgbo::VerifyOptions::Preset::Full;
        else if (preset == "reduced")
            cfg.verify.preset = dgbo::VerifyOptions::Preset::Reduced;
        else
            throw dgbo::ConfigError("verify.preset must be full or reduced");
        cfg.verify.checks = get_or(v, "checks", cfg.verify.checks);
        cfg.verify.seed = get_or(v, "seed", cfg.verify.seed);
    }

    if (j.contains("output")) {
        const json& o = j.at("output");
        require_object(o, "output");
        reject_unknown_keys(o, {"directory", "formats"}, "output");
        cfg.output_dir = get_or<std::string>(o, "directory", "out");
        const auto formats =
            get_or<std::vector<std::string>>(o, "formats", {"json", "csv"});
        for (const auto& f : formats)
            if (f != "json" && f != "csv")
                throw dgbo::ConfigError("output.formats entries must be json or csv");
    }
    return cfg;
}

void ensure_output_dir(const RunConfig& cfg) {
    std::error_code ec;
    fs::create_directories(cfg.output_dir, ec);
    if (ec)
        throw dgbo::ConfigError("cannot create output directory " +
                                cfg.output_dir.string());
}

dgbo::GroundState solve_or_load_ground_state(const RunConfig& cfg) {
    if (!cfg.threshold_profile_file.empty()) {
        const dgbo::LoadedProfile lp = dgbo::read_profile_csv(cfg.threshold_profile_file);
        if (!(lp.params == cfg.model))
            throw dgbo::ConfigError("profile file parameters do not match model block");
        dgbo::GroundState gs;
        gs.profile = lp.field;
        gs.params = lp.params;
        gs.residual = dgbo::equation_residual(lp.field, lp.params);
        gs.identity_report = dgbo::verify_identities(lp.field, lp.params);
        gs.mass = dgbo::mass(lp.field);
        gs.energy = dgbo::energy(lp.field, lp.params);
        return gs;
    }
    return dgbo::petviashvili_solve(cfg.model, dgbo::make_grid(cfg.n_points, cfg.length),
                                    cfg.petviashvili);
}

dgbo::Field build_initial_data(const RunConfig& cfg, const dgbo::GridPtr& grid) {
    const InitialDataSpec& d = cfg.initial_data;
    if (d.type == "gaussian") {
        Eigen::ArrayXd s = d.amplitude * (-(grid->x() / d.width).square()).exp();
        return dgbo::Field(grid, std::move(s));
    }
    if (d.type == "sech") {
        Eigen::ArrayXd s = d.amplitude / (grid->x() / d.width).cosh();
        return dgbo::Field(grid, std::move(s));
    }
    if (d.type == "soliton_multiple") {
        const dgbo::GroundState gs = dgbo::petviashvili_solve(cfg.model, grid, cfg.petviashvili);
        return dgbo::Field(grid, d.amplitude * gs.profile.samples());
    }
    // profile_file
    const dgbo::LoadedProfile lp = dgbo::read_profile_csv(d.path);
    if (!(lp.params == cfg.model))
        throw dgbo::ConfigError("initial-data profile parameters do not match model");
    return dgbo::Field(lp.field.grid(), d.amplitude * lp.field.samples());
}

void write_run_info(const RunConfig& cfg, const std::string& command) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%FT%TZ", std::gmtime(&tt));
    // timestamps live here, outside the deterministic result artifacts
    json info{{"command", command},
              {"config_hash", cfg.hash},
              {"toolkit_version", dgbo::kToolkitVersion},
              {"timestamp", stamp}};
    dgbo::write_text_file(cfg.output_dir / "run_info.json", info.dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int cmd_ground_state(const RunConfig& cfg) {
    ensure_output_dir(cfg);
    write_run_info(cfg, "ground-state");
    try {
        const dgbo::GroundState gs = solve_or_load_ground_state(cfg);
        json j = dgbo::ground_state_json(gs, cfg.hash);
        if (auto oracle = dgbo::closed_form_oracle(cfg.model, gs.profile.grid())) {
            j["oracle_linf_error"] =
                (gs.profile.samples() - oracle->samples()).abs().maxCoeff();
        }
        dgbo::write_text_file(cfg.output_dir / "ground_state.json", j.dump(2) + "\n");
        dgbo::write_profile_csv(cfg.output_dir / "profile.csv", gs.profile, cfg.model,
                                cfg.hash);
        std::cout << "ground state converged: iterations=" << gs.iterations
                  << " residual=" << dgbo::format_g17(gs.residual) << "\n";
        return kExitOk;
    } catch (const dgbo::DivergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (!e.residual_history.empty())
            std::cerr << "last successive difference: "
                      << dgbo::format_g17(e.residual_history.back()) << "\n";
        return kExitFailure;
    }
}

int cmd_evolve(const RunConfig& cfg) {
    ensure_output_dir(cfg);
    write_run_info(cfg, "evolve");
    const dgbo::GridPtr grid = dgbo::make_grid(cfg.n_points, cfg.length);
    const dgbo::Field u0 = build_initial_data(cfg, grid);
    try {
        const dgbo::TrajectoryRecord rec = dgbo::evolve(u0, cfg.model, cfg.evolution);
        dgbo::write_trajectory_csv(cfg.output_dir / "trajectory.csv", rec, cfg.hash);
        dgbo::write_text_file(
            cfg.output_dir / "evolve_summary.json",
            dgbo::trajectory_summary_json(rec, cfg.hash).dump(2) + "\n");
        if (cfg.evolution.store_snapshots) {
            for (std::size_t i = 0; i < rec.snapshots.size(); ++i) {
                char name[64];
                std::snprintf(name, sizeof(name), "snapshot_%04zu.csv", i);
                dgbo::write_profile_csv(cfg.output_dir / name, rec.snapshots[i],
                                        cfg.model, cfg.hash);
            }
        }
        std::cout << "evolved to t=" << dgbo::format_g17(rec.times.back())
                  << " mass_drift=" << dgbo::format_g17(rec.mass_drift)
                  << " energy_drift=" << dgbo::format_g17(rec.energy_drift) << "\n";
        if (!rec.completed) {
            std::cerr << "run terminated early ("
                      << (rec.integrity_breach ? "mass integrity breach"
                                               : "suspected blow-up")
                      << ") at t=" << dgbo::format_g17(rec.times.back()) << "\n";
            return kExitInstability;
        }
        return kExitOk;
    } catch (const dgbo::InstabilityError& e) {
        std::cerr << "instability: " << e.what()
                  << " (last good time t=" << dgbo::format_g17(e.last_good_time)
                  << ")\n";
        json j{{"error", "instability"},
               {"last_good_time", e.last_good_time},
               {"config_hash", cfg.hash}};
        dgbo::write_text_file(cfg.output_dir / "evolve_summary.json", j.dump(2) + "\n");
        return kExitInstability;
    }
}

json threshold_cell(const RunConfig& cfg, const dgbo::GroundState& gs, double lambda) {
    const dgbo::Field u0(gs.profile.grid(), lambda * gs.profile.samples());
    dgbo::ThresholdReport rep = dgbo::check_conditions(u0, gs, cfg.model);
    if (cfg.threshold_run_evolution && rep.admissible) {
        const dgbo::TrajectoryRecord rec = dgbo::evolve(u0, cfg.model, cfg.evolution);
        rep.trajectory_ok = dgbo::verify_apriori_bound(rec, rep, gs);
    }
    json cell = dgbo::to_json(rep);
    cell["lambda"] = lambda;
    return cell;
}

int cmd_threshold(const RunConfig& cfg) {
    ensure_output_dir(cfg);
    write_run_info(cfg, "threshold");
    const dgbo::GroundState gs = solve_or_load_ground_state(cfg);

    json reports = json::array();
    for (double lambda : cfg.amplitude_list) reports.push_back(threshold_cell(cfg, gs, lambda));

    const json out{{"format", "dgbo threshold v1"},
                   {"toolkit_version", dgbo::kToolkitVersion},
                   {"config_hash", cfg.hash},
                   {"beta", cfg.model.beta},
                   {"k", cfg.model.k},
                   {"s_k", dgbo::compute_sk(cfg.model)},
                   {"reports", reports}};
    dgbo::write_text_file(cfg.output_dir / "threshold.json", out.dump(2) + "\n");
    for (const auto& cell : reports)
        std::cout << "lambda=" << cell["lambda"].get<double>() << " admissible="
                  << (cell["admissible"].get<bool>() ? "true" : "false") << "\n";
    return kExitOk;
}

struct SweepCell {
    double beta = 0.0;
    int k = 0;
    double lambda = 0.0;
    std::optional<dgbo::ThresholdReport> report;
    std::string error;
};

int cmd_sweep(const RunConfig& cfg, int threads) {
    if (cfg.sweep_beta.empty() || cfg.sweep_k.empty() || cfg.sweep_amplitudes.empty())
        throw dgbo::ConfigError("sweep requires non-empty beta_list, k_list, amplitude_list");
    ensure_output_dir(cfg);
    write_run_info(cfg, "sweep");

    const int n_groups = static_cast<int>(cfg.sweep_beta.size() * cfg.sweep_k.size());
    const int n_lambda = static_cast<int>(cfg.sweep_amplitudes.size());
    std::vector<SweepCell> cells(n_groups * n_lambda);

    // Cells are grouped by (beta, k) so the ground state is solved once per
    // column; groups run on the worker pool, results land in preassigned
    // slots, so output order never depends on scheduling.
    auto run_group = [&](int gi) {
        const double beta = cfg.sweep_beta[gi / cfg.sweep_k.size()];
        const int k = cfg.sweep_k[gi % cfg.sweep_k.size()];
        for (int li = 0; li < n_lambda; ++li) {
            SweepCell& cell = cells[gi * n_lambda + li];
            cell.beta = beta;
            cell.k = k;
            cell.lambda = cfg.sweep_amplitudes[li];
        }
        try {
            const dgbo::ModelParams params(beta, k);
            if (!params.supercritical())
                throw dgbo::InapplicableTheoremError("k <= 2*beta");
            const dgbo::GroundState gs = dgbo::petviashvili_solve(
                params, dgbo::make_grid(cfg.n_points, cfg.length), cfg.petviashvili);
            for (int li = 0; li < n_lambda; ++li) {
                SweepCell& cell = cells[gi * n_lambda + li];
                try {
                    const dgbo::Field u0(gs.profile.grid(),
                                         cell.lambda * gs.profile.samples());
                    dgbo::ThresholdReport rep =
                        dgbo::check_conditions(u0, gs, params);
                    if (cfg.sweep_evolve_cells && rep.admissible) {
                        const dgbo::TrajectoryRecord rec =
                            dgbo::evolve(u0, params, cfg.evolution);
                        rep.trajectory_ok = dgbo::verify_apriori_bound(rec, rep, gs);
                    }
                    cell.report = rep;
                } catch (const std::exception& e) {
                    cell.error = e.what();
                }
            }
        } catch (const std::exception& e) {
            for (int li = 0; li < n_lambda; ++li)
                cells[gi * n_lambda + li].error = e.what();
        }
    };

    std::atomic<int> next{0};
    auto worker = [&] {
        for (int gi; (gi = next.fetch_add(1)) < n_groups;) run_group(gi);
    };
    const int pool = std::max(1, std::min(threads, n_groups));
    std::vector<std::thread> workers;
    for (int t = 0; t + 1 < pool; ++t) workers.emplace_back(worker);
    worker();
    for (auto& w : workers) w.join();

    std::string csv = "beta,k,lambda,s_k,admissible,energy_nonneg,trajectory_ok,"
                      "lhs_gradient_mass,rhs_gradient_mass,x0,X0,error\n";
    int succeeded = 0;
    json jcells = json::array();
    for (const SweepCell& cell : cells) {
        json jc{{"beta", cell.beta}, {"k", cell.k}, {"lambda", cell.lambda}};
        if (cell.report) {
            ++succeeded;
            const dgbo::ThresholdReport& rep = *cell.report;
            jc["report"] = dgbo::to_json(rep);
            csv += dgbo::format_g17(cell.beta) + "," + std::to_string(cell.k) + "," +
                   dgbo::format_g17(cell.lambda) + "," + dgbo::format_g17(rep.s_k) +
                   "," + (rep.admissible ? "true" : "false") + "," +
                   (rep.energy_nonneg ? "true" : "false") + "," +
                   (rep.trajectory_ok ? (*rep.trajectory_ok ? "true" : "false")
                                      : "none") +
                   "," + dgbo::format_g17(rep.lhs_gradient_mass) + "," +
                   dgbo::format_g17(rep.rhs_gradient_mass) + "," +
                   dgbo::format_g17(rep.x0) + "," + dgbo::format_g17(rep.X0) + ",\n";
        } else {
            jc["error"] = cell.error;
            csv += dgbo::format_g17(cell.beta) + "," + std::to_string(cell.k) + "," +
                   dgbo::format_g17(cell.lambda) + ",,,,,,,,," + cell.error + "\n";
        }
        jcells.push_back(jc);
    }

    const json out{{"format", "dgbo sweep v1"},
                   {"toolkit_version", dgbo::kToolkitVersion},
                   {"config_hash", cfg.hash},
                   {"beta_axis", cfg.sweep_beta},
                   {"k_axis", cfg.sweep_k},
                   {"amplitude_axis", cfg.sweep_amplitudes},
                   {"cells", jcells}};
    dgbo::write_text_file(cfg.output_dir / "sweep.json", out.dump(2) + "\n");
    dgbo::write_text_file(cfg.output_dir / "sweep.csv", csv);
    std::cout << "sweep: " << succeeded << "/" << cells.size() << " cells succeeded\n";
    return succeeded > 0 ? kExitOk : kExitFailure;
}

int cmd_verify(const RunConfig& cfg, const std::string& compare_path) {
    ensure_output_dir(cfg);
    write_run_info(cfg, "verify");
    const auto results = dgbo::run_acceptance_suite(cfg.verify);

    for (const auto& r : results) {
        std::printf("%s criterion %2d %-24s [%.2fs]", r.pass ? "PASS" : "FAIL",
                    r.criterion, r.name.c_str(), r.runtime_seconds);
        if (!r.pass) {
            for (const auto& d : r.details)
                if (!(std::isfinite(d.value) && d.value <= d.bound))
                    std::printf("  %s=%.3g>bound %.3g", d.label.c_str(), d.value,
                                d.bound);
            if (!r.note.empty()) std::printf("  (%s)", r.note.c_str());
        }
        std::printf("\n");
    }

    const json report = dgbo::verify_report_json(results, cfg.verify, cfg.hash);
    const std::string dump = report.dump(2) + "\n";
    dgbo::write_text_file(cfg.output_dir / "verify.json", dump);

    if (!compare_path.empty()) {
        std::ifstream in(compare_path);
        if (!in) throw dgbo::ConfigError("cannot open comparison file " + compare_path);
        json old;
        try {
            in >> old;
        } catch (const json::exception& e) {
            throw dgbo::ConfigError(std::string("comparison file parse error: ") + e.what());
        }
        if (!old.contains("config_hash") ||
            old["config_hash"].get<std::string>() != cfg.hash)
            throw dgbo::ConfigError(
                "refusing to compare: config hash mismatch with " + compare_path);
        const bool identical = old.dump(2) + "\n" == dump;
        std::cout << "comparison vs " << compare_path << ": "
                  << (identical ? "identical" : "DIFFERS") << "\n";
        if (!identical) return kExitFailure;
    }
    return dgbo::all_passed(results) ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral toolkit for the k-dispersion generalized "
                 "Benjamin-Ono equation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", dgbo::kToolkitVersion);

    std::string config_path;
    std::string output_dir_override;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    std::uint64_t seed = 0;
    bool seed_given = false;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* opt = sub->add_option("--config", config_path, "run configuration (JSON)")
                        ->envname("DGBO_CONFIG");
        if (config_required) opt->required();
        sub->add_option("--output-dir", output_dir_override, "artifact directory")
            ->envname("DGBO_OUTPUT_DIR");
        sub->add_option("--threads", threads, "worker pool size")
            ->envname("DGBO_THREADS");
        sub->add_option("--seed", seed, "seed for randomized checks")
            ->envname("DGBO_SEED")
            ->each([&](const std::string&) { seed_given = true; });
    };

    auto* gs_cmd = app.add_subcommand("ground-state", "compute and certify a ground state");
    add_common(gs_cmd, true);
    auto* ev_cmd = app.add_subcommand("evolve", "integrate initial data with telemetry");
    add_common(ev_cmd, true);
    auto* th_cmd = app.add_subcommand("threshold", "classify data against the threshold");
    add_common(th_cmd, true);
    auto* sw_cmd = app.add_subcommand("sweep", "threshold verdicts over a parameter grid");
    add_common(sw_cmd, true);

    auto* vf_cmd = app.add_subcommand("verify", "run the verification suite");
    add_common(vf_cmd, false);
    std::string preset_flag;
    std::vector<std::string> check_filter;
    std::string compare_path;
    vf_cmd->add_option("--preset", preset_flag, "full or reduced resolution");
    vf_cmd->add_option("--check", check_filter, "run only the named checks");
    vf_cmd->add_option("--compare", compare_path,
                       "compare against a previous verify.json (same config hash)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        RunConfig cfg = config_path.empty()
                            ? RunConfig{}
                            : load_config(config_path, !vf_cmd->parsed());
        if (config_path.empty()) {
            cfg.raw = json{{"version", 1}};
            cfg.hash = dgbo::config_hash(cfg.raw);
        }
        if (!output_dir_override.empty()) cfg.output_dir = output_dir_override;
        if (seed_given) cfg.verify.seed = seed;
        if (!preset_flag.empty()) {
            if (preset_flag == "full")
                cfg.verify.preset = dgbo::VerifyOptions::Preset::Full;
            else if (preset_flag == "reduced")
                cfg.verify.preset = dgbo::VerifyOptions::Preset::Reduced;
            else
                throw dgbo::ConfigError("--preset must be full or reduced");
        }
        if (!check_filter.empty()) cfg.verify.checks = check_filter;

        if (gs_cmd->parsed()) return cmd_ground_state(cfg);
        if (ev_cmd->parsed()) return cmd_evolve(cfg);
        if (th_cmd->parsed()) return cmd_threshold(cfg);
        if (sw_cmd->parsed()) return cmd_sweep(cfg, threads);
        if (vf_cmd->parsed()) return cmd_verify(cfg, compare_path);
        return kExitConfig;
    } catch (const dgbo::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const dgbo::InapplicableTheoremError& e) {
        std::cerr << "inapplicable: " << e.what() << "\n";
        return kExitInapplicable;
    } catch (const dgbo::InstabilityError& e) {
        std::cerr << "instability: " << e.what() << "\n";
        return kExitInstability;
    } catch (const dgbo::InvalidGridError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

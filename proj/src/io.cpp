#include "dgbo/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "dgbo/errors.hpp"

namespace dgbo {

namespace {

nlohmann::json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

nlohmann::json log10_or_null(double v) {
    if (std::isfinite(v) && v > 0.0) return std::log10(v);
    return nullptr;
}

}  // namespace

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string config_hash(const nlohmann::json& config) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(config.dump())));
    return buf;
}

nlohmann::json to_json(const IdentityReport& rep) {
    return {
        {"residual_c1", rep.residual_c1},
        {"residual_c2", rep.residual_c2},
        {"residual_c3", rep.residual_c3},
        {"residual_c4", rep.residual_c4},
        {"residual_pohozaev", rep.residual_pohozaev},
        {"residual_EQ", rep.residual_EQ},
    };
}

nlohmann::json to_json(const ConservedPair& c) {
    return {{"mass", c.mass}, {"energy", c.energy}, {"h_half_beta", c.h_half_beta}};
}

nlohmann::json to_json(const ThresholdReport& rep) {
    nlohmann::json j{
        {"s_k", rep.s_k},
        {"lhs_energy_mass", finite_or_null(rep.lhs_energy_mass)},
        {"rhs_energy_mass", finite_or_null(rep.rhs_energy_mass)},
        {"lhs_gradient_mass", finite_or_null(rep.lhs_gradient_mass)},
        {"rhs_gradient_mass", finite_or_null(rep.rhs_gradient_mass)},
        {"log10_lhs_energy_mass", log10_or_null(rep.lhs_energy_mass)},
        {"log10_rhs_energy_mass", log10_or_null(rep.rhs_energy_mass)},
        {"log10_lhs_gradient_mass", log10_or_null(rep.lhs_gradient_mass)},
        {"log10_rhs_gradient_mass", log10_or_null(rep.rhs_gradient_mass)},
        {"energy_nonneg", rep.energy_nonneg},
        {"admissible", rep.admissible},
        {"A", rep.A},
        {"B", rep.B},
        {"x0", finite_or_null(rep.x0)},
        {"f_x0", finite_or_null(rep.f_x0)},
        {"log10_x0", log10_or_null(rep.x0)},
        {"log10_f_x0", log10_or_null(rep.f_x0)},
        {"X0", rep.X0},
    };
    if (rep.trajectory_ok)
        j["trajectory_ok"] = *rep.trajectory_ok;
    else
        j["trajectory_ok"] = nullptr;
    return j;
}

nlohmann::json ground_state_json(const GroundState& gs, const std::string& cfg_hash) {
    return {
        {"format", "dgbo ground_state v1"},
        {"toolkit_version", kToolkitVersion},
        {"config_hash", cfg_hash},
        {"beta", gs.params.beta},
        {"k", gs.params.k},
        {"regime", regime_name(gs.params.regime())},
        {"n_points", gs.profile.grid()->n_points()},
        {"length", gs.profile.grid()->length()},
        {"iterations", gs.iterations},
        {"residual", gs.residual},
        {"mass", gs.mass},
        {"energy", gs.energy},
        {"identities", to_json(gs.identity_report)},
        {"identity_trusted", gs.identity_report.trusted},
    };
}

nlohmann::json trajectory_summary_json(const TrajectoryRecord& rec,
                                       const std::string& cfg_hash) {
    return {
        {"format", "dgbo trajectory v1"},
        {"toolkit_version", kToolkitVersion},
        {"config_hash", cfg_hash},
        {"samples", rec.times.size()},
        {"t_final", rec.times.empty() ? 0.0 : rec.times.back()},
        {"steps_taken", rec.steps_taken},
        {"mass_drift", rec.mass_drift},
        {"energy_drift", rec.energy_drift},
        {"completed", rec.completed},
        {"integrity_breach", rec.integrity_breach},
        {"suspected_blowup", rec.suspected_blowup},
    };
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw ConfigError("failed writing " + path.string());
}

std::string profile_csv_string(const Field& profile, const ModelParams& params,
                               const std::string& cfg_hash) {
    std::ostringstream out;
    out << "# dgbo profile v1\n";
    out << "# beta=" << format_g17(params.beta) << " k=" << params.k
        << " n_points=" << profile.grid()->n_points()
        << " length=" << format_g17(profile.grid()->length())
        << " config_hash=" << cfg_hash << "\n";
    out << "x,q\n";
    const auto& x = profile.grid()->x();
    const auto& q = profile.samples();
    for (int m = 0; m < profile.size(); ++m)
        out << format_g17(x[m]) << "," << format_g17(q[m]) << "\n";
    return out.str();
}

void write_profile_csv(const std::filesystem::path& path, const Field& profile,
                       const ModelParams& params, const std::string& cfg_hash) {
    write_text_file(path, profile_csv_string(profile, params, cfg_hash));
}

LoadedProfile read_profile_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open profile file " + path.string());

    std::string line;
    if (!std::getline(in, line) || line != "# dgbo profile v1")
        throw ConfigError("not a dgbo profile v1 file: " + path.string());
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
        throw ConfigError("missing profile metadata line in " + path.string());

    double beta = 0.0, length = 0.0;
    int k = 0, n_points = 0;
    std::string cfg_hash;
    {
        std::istringstream meta(line.substr(2));
        std::string tok;
        while (meta >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = tok.substr(0, eq);
            const std::string val = tok.substr(eq + 1);
            if (key == "beta") beta = std::stod(val);
            else if (key == "k") k = std::stoi(val);
            else if (key == "n_points") n_points = std::stoi(val);
            else if (key == "length") length = std::stod(val);
            else if (key == "config_hash") cfg_hash = val;
        }
    }
    if (!std::getline(in, line) || line != "x,q")
        throw ConfigError("missing x,q header in " + path.string());

    GridPtr grid = make_grid(n_points, length);
    Eigen::ArrayXd q(n_points);
    for (int m = 0; m < n_points; ++m) {
        if (!std::getline(in, line))
            throw ConfigError("profile file truncated at row " + std::to_string(m));
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw ConfigError("malformed profile row: " + line);
        q[m] = std::stod(line.substr(comma + 1));
    }

    LoadedProfile lp{Field(grid, std::move(q)), ModelParams(beta, k), cfg_hash};
    return lp;
}

std::string trajectory_csv_string(const TrajectoryRecord& rec,
                                  const std::string& cfg_hash) {
    std::ostringstream out;
    out << "# dgbo trajectory v1\n";
    out << "# config_hash=" << cfg_hash << "\n";
    out << "t,mass,energy,h_half_beta,linf\n";
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
        out << format_g17(rec.times[i]) << "," << format_g17(rec.conserved[i].mass)
            << "," << format_g17(rec.conserved[i].energy) << ","
            << format_g17(rec.conserved[i].h_half_beta) << ","
            << format_g17(rec.linf[i]) << "\n";
    }
    return out.str();
}

void write_trajectory_csv(const std::filesystem::path& path,
                          const TrajectoryRecord& rec, const std::string& cfg_hash) {
    write_text_file(path, trajectory_csv_string(rec, cfg_hash));
}

}  // namespace dgbo

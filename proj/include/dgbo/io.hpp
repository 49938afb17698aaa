#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "dgbo/evolution.hpp"
#include "dgbo/functionals.hpp"
#include "dgbo/ground_state.hpp"
#include "dgbo/threshold.hpp"

namespace dgbo {

inline constexpr const char* kToolkitVersion = "1.0.0";

/// Fixed 17-significant-digit formatting, enough to round-trip a double.
std::string format_g17(double v);

/// FNV-1a 64-bit over bytes; stable across runs and platforms.
std::uint64_t fnv1a64(std::string_view bytes);

/// Canonical hash of a config document: FNV-1a of the sorted-key JSON dump,
/// as a 16-digit hex string.
std::string config_hash(const nlohmann::json& config);

nlohmann::json to_json(const IdentityReport& rep);
nlohmann::json to_json(const ConservedPair& c);

/// ThresholdReport with every threshold quantity recorded raw and in log10
/// (null where undefined), so large supercritical exponents stay readable.
nlohmann::json to_json(const ThresholdReport& rep);

/// Ground-state metadata: parameters, grid, certification residuals,
/// identity report, provenance.
nlohmann::json ground_state_json(const GroundState& gs, const std::string& cfg_hash);

/// Trajectory summary (drifts, flags, step counts); the time series itself
/// goes to CSV.
nlohmann::json trajectory_summary_json(const TrajectoryRecord& rec,
                                       const std::string& cfg_hash);

/// Profile dump, "dgbo profile v1": '#'-prefixed metadata then x,q rows at 17
/// significant digits.
std::string profile_csv_string(const Field& profile, const ModelParams& params,
                               const std::string& cfg_hash);
void write_profile_csv(const std::filesystem::path& path, const Field& profile,
                       const ModelParams& params, const std::string& cfg_hash);

struct LoadedProfile {
    Field field;
    ModelParams params;
    std::string cfg_hash;
};

/// Parses a "dgbo profile v1" file, reconstructing its grid. Throws
/// ConfigError on malformed input.
LoadedProfile read_profile_csv(const std::filesystem::path& path);

/// Trajectory dump, "dgbo trajectory v1": columns t, mass, energy,
/// h_half_beta, linf.
std::string trajectory_csv_string(const TrajectoryRecord& rec,
                                  const std::string& cfg_hash);
void write_trajectory_csv(const std::filesystem::path& path,
                          const TrajectoryRecord& rec, const std::string& cfg_hash);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace dgbo

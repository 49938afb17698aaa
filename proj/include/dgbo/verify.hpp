#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace dgbo {

/// One measured quantity of a check; the check passes only if value <= bound
/// for every detail.
struct CheckDetail {
    std::string label;
    double value = 0.0;
    double bound = 0.0;
};

struct CheckResult {
    std::string name;
    int criterion = 0;
    bool pass = false;
    std::vector<CheckDetail> details;
    std::string note;              // failure diagnostics; deterministic text
    double runtime_seconds = 0.0;  // console telemetry, never serialized
};

struct VerifyOptions {
    enum class Preset { Full, Reduced };
    Preset preset = Preset::Full;
    std::uint64_t seed = 0x51ab5eedull;
    std::vector<std::string> checks;  // run only these names; empty = all
};

std::vector<std::string> known_check_names();

/// Runs the verification checks (all, or the requested subset) at the preset
/// resolution. Throws ConfigError for an unknown check name. Individual check
/// failures are results, not exceptions.
std::vector<CheckResult> run_acceptance_suite(const VerifyOptions& options);

bool all_passed(const std::vector<CheckResult>& results);

/// Machine-readable report. Deliberately contains no timings or timestamps:
/// two runs with the same options must produce byte-identical dumps.
nlohmann::json verify_report_json(const std::vector<CheckResult>& results,
                                  const VerifyOptions& options,
                                  const std::string& cfg_hash);

const char* preset_name(VerifyOptions::Preset preset);

}  // namespace dgbo

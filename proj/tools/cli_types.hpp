#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ranktwo/integrate.hpp"
#include "ranktwo/systems.hpp"
#include "ranktwo/verify.hpp"

namespace rtcli {

using json = nlohmann::json;

// exit-code contract
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitRuntimeError = 3;

struct CommonConfig {
    std::string system;  // disk | routh_sphere | surface_ball | cylinder
    ranktwo::systems::Variant variant = ranktwo::systems::Variant::reduced4;
    ranktwo::systems::Params params;
    std::uint64_t seed = 12345;
};

struct SimulateConfig {
    CommonConfig common;
    ranktwo::Point initial_state;
    ranktwo::integrate::IntegratorConfig integrator;
    std::optional<std::vector<std::string>> monitors;  // default: standard set
    std::string trajectory_file = "trajectory.csv";
    std::string summary_file = "summary.json";
};

struct VerifyConfig {
    std::string system;  // name | all | heisenberg
    std::map<std::string, ranktwo::systems::Params> params;  // per system, defaults applied
    ranktwo::verify::Options options;
    std::string report_file = "report.json";
    json echo;  // parsed config, embedded in the report
};

struct CasimirConfig {
    CommonConfig common;
    ranktwo::Point initial_state;
    ranktwo::integrate::IntegratorConfig integrator;
    std::optional<double> base_x1;
    std::string casimir_file = "casimirs.csv";
};

struct RankScanConfig {
    CommonConfig common;
    long long samples = 200;
    std::optional<std::vector<std::pair<double, double>>> ranges;
    std::string ranks_file = "ranks.json";
};

// config.cpp
json load_json_file(const std::filesystem::path& path);
SimulateConfig parse_simulate(const json& j);
VerifyConfig parse_verify(const json& j);
CasimirConfig parse_casimir(const json& j);
RankScanConfig parse_rank_scan(const json& j);

// io.cpp
void atomic_write(const std::filesystem::path& path, const std::string& contents);
std::string format_double(double v);  // %.17g
std::string csv_row(const std::vector<double>& values);
std::string timestamp_utc();

// jobs.cpp; each returns a process exit code
int run_simulate(const SimulateConfig& cfg, const std::filesystem::path& outdir);
int run_verify(const VerifyConfig& cfg, const std::filesystem::path& outdir);
int run_casimir(const CasimirConfig& cfg, const std::filesystem::path& outdir);
int run_rank_scan(const RankScanConfig& cfg, const std::filesystem::path& outdir);

}  // namespace rtcli

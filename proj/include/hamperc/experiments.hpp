#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hamperc/plan.hpp"

namespace hamperc {

// Bumped whenever a CSV header or a top-level JSON field changes.
inline constexpr std::string_view kRunSchemaVersion = "hamperc-run-v1";

std::vector<std::string> csv_header(Experiment e);

struct RunRecord {
    ExperimentPlan plan;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    nlohmann::json per_replica = nlohmann::json::array();
    nlohmann::json summary = nlohmann::json::object();
    nlohmann::json thresholds = nlohmann::json::object();
    std::vector<std::string> warnings;
    std::vector<std::string> summary_lines; // the one-screen table
    bool pass = true;                       // gates the exit code only for verify
    std::string software_version;
    std::string timestamp; // UTC, ISO 8601
    double wall_time = 0.0;

    std::string csv() const;
    nlohmann::json to_json() const;
    std::string summary_text() const;
    // Writes csv() / to_json() to the plan's output paths, when set.
    void write_outputs() const;
};

// Progress lines (one per finished acceptance criterion for verify).
using ProgressFn = std::function<void(const std::string&)>;

// Validates the plan and dispatches on plan.experiment.
RunRecord run(const ExperimentPlan& plan, const ProgressFn& progress = {});

// Warning text when eps lies outside (log V)^(1/3) V^(-1/3) < eps <= 0.5.
std::optional<std::string> supercritical_regime_check(std::uint32_t d, std::uint32_t n, double eps);

std::string software_version();

} // namespace hamperc

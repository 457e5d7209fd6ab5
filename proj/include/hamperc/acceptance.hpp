#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace hamperc {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail; // one line: measured values against their bounds
    nlohmann::json data;
    double seconds = 0.0;
};

struct AcceptanceOptions {
    std::uint64_t seed = 20261016; // criterion i uses seed + i
    unsigned threads = 1;
};

inline constexpr int kCriterionCount = 11;

// Runs one criterion, 1..kCriterionCount. Throws std::out_of_range otherwise.
CriterionResult run_criterion(int id, const AcceptanceOptions& opts);

// Runs all criteria in order, reporting each as it finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

// Informational second-largest-cluster report (n = 500, eps = 0.1); never gates.
nlohmann::json duality_acceptance_report(const AcceptanceOptions& opts, std::uint64_t replicas = 30);

std::string format_result_line(const CriterionResult& r);

} // namespace hamperc

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hamperc {

enum class Experiment { Simulate, Explore, Sprinkle, Gw, Verify, Sweep };

std::string_view to_string(Experiment e);
// Throws std::invalid_argument for an unknown name.
Experiment experiment_from_string(std::string_view name);

// Everything needed to reproduce one CLI invocation.
//
// Text form: "key = value" lines under [section] headers, '#' comments.
//   [experiment] kind
//   [graph]      d, n
//   [percolation] epsilon (value, comma list, or start:stop:step), eta
//                (number or "auto" = sqrt(eps) V^(-1/6)), cap (0 = auto)
//   [run]        replicas, seed, threads (0 = HP_THREADS / hardware), k
//   [gw]         N, tail, pmf
//   [output]     csv, json
struct ExperimentPlan {
    Experiment experiment = Experiment::Simulate;
    std::uint32_t d = 2;
    std::uint32_t n = 100;
    std::vector<double> epsilons{0.1};
    std::optional<double> eta; // nullopt: sqrt(eps) V^(-1/6)
    std::uint64_t cap = 0;     // explore only; 0: ceil(eta V) if eps > 0, else V
    std::vector<std::uint64_t> k_thresholds;
    std::uint64_t replicas = 10;
    std::uint64_t seed = 20261016;
    unsigned threads = 0;
    std::uint64_t gw_N = 0; // gw: offspring trials; 0 = Omega of (d, n)
    std::uint64_t gw_tail = 0;
    std::uint64_t gw_pmf = 0;
    std::string out_csv;
    std::string out_json;

    // Accepts "section.key" or the bare key. Throws std::invalid_argument.
    void set(std::string_view key, std::string_view value);

    std::string serialize() const;
    static ExperimentPlan parse(std::string_view text);
    static ExperimentPlan load(const std::string& path);

    // Structural problems throw std::invalid_argument; parameters outside
    // the model's numeric domain throw std::domain_error.
    void validate() const;

    double epsilon() const { return epsilons.front(); }
    double resolved_eta(double eps) const; // explicit eta, or the default rule (0 when eps <= 0)

    friend bool operator==(const ExperimentPlan&, const ExperimentPlan&) = default;
};

// Expands "a:b:step" (inclusive, rounded to 12 decimals) or "a,b,c".
std::vector<double> parse_epsilon_list(std::string_view text);

std::string format_double(double x); // shortest round-trip decimal

} // namespace hamperc

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hamperc/percolation.hpp"

namespace hamperc {

struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n_samples = 0;
    double ci95_low = 0.0; // mean - 1.96 std_error
    double ci95_high = 0.0;
    // Wilson score interval; set only for Bernoulli estimates.
    std::optional<double> wilson_low;
    std::optional<double> wilson_high;

    static Estimate from_samples(std::span<const double> xs);
    static Estimate bernoulli(std::uint64_t successes, std::uint64_t trials);
};

nlohmann::json to_json(const Estimate& e);

// A pinned tolerance together with where it came from.
struct Threshold {
    std::string_view name;
    double value;
    std::string_view calibrated_by;
};

// Versioned fixture of every pass/fail constant used by reports.
struct ThresholdFixture {
    std::string_view version;
    std::span<const Threshold> entries;

    // Throws std::out_of_range for an unknown name.
    const Threshold& get(std::string_view name) const;
    double operator[](std::string_view name) const { return get(name).value; }
};

const ThresholdFixture& thresholds();
nlohmann::json thresholds_json(std::initializer_list<std::string_view> names);

//---------------------------------------------------------------------------//

struct ReplicaSummary {
    std::uint64_t seed = 0;
    std::uint64_t replica = 0;
    std::uint64_t cmax = 0;
    std::uint64_t c2 = 0;
    std::uint64_t clusters = 0;
    std::uint64_t occupied = 0;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> z_geq_table; // (k, Z_{>=k})
    // Good horizontal lines of every cluster of size >= ceil(eta V); empty
    // when eta was not given or d != 2.
    std::vector<std::uint64_t> good_lines;
    double wall_time = 0.0; // seconds
};

// One full configuration (stream = replica) analysed by union-find.
ReplicaSummary simulate_replica(const PercolationConfig& cfg, std::uint64_t replica, std::span<const std::uint64_t> ks,
                                std::optional<double> eta = std::nullopt);

std::vector<ReplicaSummary> run_replicas(const PercolationConfig& cfg, std::span<const std::uint64_t> ks,
                                         std::uint64_t replicas, unsigned threads,
                                         std::optional<double> eta = std::nullopt);

//---------------------------------------------------------------------------//

// Mean cluster size of a uniformly random origin; exploration i uses stream i.
Estimate estimate_chi(const PercolationConfig& cfg, std::uint64_t samples, unsigned threads = 1);

// Fraction of explorations (cap = k) that reach k explored vertices.
Estimate estimate_cluster_tail(const PercolationConfig& cfg, std::uint64_t k, std::uint64_t samples,
                               unsigned threads = 1);

// Same estimator at several thresholds from one coupled set of explorations:
// each run explores up to max(ks), and {|C| >= k} = {T >= k}.
std::vector<Estimate> estimate_cluster_tails(const PercolationConfig& cfg, std::span<const std::uint64_t> ks,
                                             std::uint64_t samples, unsigned threads = 1);

// Per-exploration summary used by property checks on line counts.
struct ExplorationSample {
    VertexId origin = 0;
    std::uint64_t steps = 0;
    std::uint64_t cluster_size = 0;
    bool died_out = false;
    std::uint32_t max_horizontal = 0;
    std::uint64_t good_lines = 0;
};
std::vector<ExplorationSample> sample_explorations(const PercolationConfig& cfg, std::uint64_t cap,
                                                   std::uint64_t samples, std::uint64_t good_threshold,
                                                   unsigned threads = 1);

//---------------------------------------------------------------------------//

struct ZConcentrationReport {
    std::uint64_t k = 1;
    std::vector<std::uint64_t> values;
    double mean = 0.0;
    double sd = 0.0;
    double normalized_sd = 0.0; // sd / (|epsilon| V); NaN when epsilon = 0
    double threshold = 0.0;
    bool pass = false;

    nlohmann::json to_json() const;
};

ZConcentrationReport z_concentration_report(const PercolationConfig& cfg, std::uint64_t k,
                                            std::span<const ReplicaSummary> runs);
ZConcentrationReport z_concentration_report(const PercolationConfig& cfg, std::uint64_t k, std::uint64_t replicas,
                                            unsigned threads = 1);

struct GiantLlnReport {
    std::vector<double> cmax_fraction; // cmax / V per replica
    double zeta = 0.0;                 // survival probability of Bin(Omega, p)
    double two_eps = 0.0;
    double median_fraction = 0.0;
    double median_over_zeta = 0.0;
    double median_over_two_eps = 0.0;
    double fraction_within_zeta = 0.0;   // replicas with |cmax/V / zeta - 1| <= tol
    double fraction_in_two_eps_band = 0.0;
    bool pass_zeta = false;
    bool pass_two_eps = false;
    bool pass = false;

    nlohmann::json to_json() const;
};

// Requires epsilon > 0 (std::domain_error otherwise).
GiantLlnReport giant_lln_report(const PercolationConfig& cfg, std::span<const ReplicaSummary> runs);
GiantLlnReport giant_lln_report(const PercolationConfig& cfg, std::uint64_t replicas, unsigned threads = 1);

// c2 eps^2 / (2 log(eps^3 V)); informational only.
struct DualityReport {
    std::vector<double> ratio;
    double median_ratio = 0.0;

    nlohmann::json to_json() const;
};

// Requires epsilon > 0 and eps^3 V > 1.
DualityReport duality_diagnostic(const PercolationConfig& cfg, std::span<const ReplicaSummary> runs);
DualityReport duality_diagnostic(const PercolationConfig& cfg, std::uint64_t replicas, unsigned threads = 1);

double median(std::vector<double> xs);

} // namespace hamperc

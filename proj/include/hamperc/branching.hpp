#pragma once

#include <cstdint>

#include "hamperc/rng.hpp"

namespace hamperc {

// Galton-Watson process with Bin(N, p) offspring, started from one individual.
struct GWSpec {
    std::uint64_t N = 1;
    double p = 0.0;

    // Throws std::domain_error unless N >= 1 and p in [0, 1].
    GWSpec(std::uint64_t trials, double prob);
    static GWSpec from_epsilon(std::uint64_t trials, double epsilon);

    double lambda() const noexcept { return static_cast<double>(N) * p; }
    double epsilon() const noexcept { return lambda() - 1.0; }
    bool supercritical() const noexcept { return lambda() > 1.0; }
};

struct GWTail {
    GWSpec spec;
    double extinction_prob = 1.0;
    double survival_prob = 0.0;
    std::uint64_t partial_terms = 0; // K
    double pmf_partial = 0.0;        // sum_{k <= K} P(F = k)
};

// log P(Bin(n, p) = x), saddle-point form (Loader 2000); exact to a few ulps
// even when n is in the billions.
double log_binomial_pmf(std::uint64_t n, std::uint64_t x, double p);

// P(F = k) = P(Bin(kN, p) = k - 1) / k. Throws std::domain_error for k == 0.
double progeny_pmf(const GWSpec& spec, std::uint64_t k);

// Smallest root of a = (1 - p (1 - a))^N in [0, 1], by monotone fixed-point
// iteration from a = 0. Returns exactly 1 when lambda <= 1.
double extinction_probability(const GWSpec& spec);
inline double survival_probability(const GWSpec& spec) { return 1.0 - extinction_probability(spec); }

// Extinction probability together with sum_{k <= K} P(F = k).
GWTail gw_tail(const GWSpec& spec, std::uint64_t K);

// P(F >= ell) = 1 - sum_{k < ell} P(F = k). ell >= 1.
double tail_probability(const GWSpec& spec, std::uint64_t ell);

// P(ell <= F <= 2 ell). ell >= 1.
double interval_probability(const GWSpec& spec, std::uint64_t ell);

// |P_A(F >= ell) - P_B(F >= ell)| for two supercritical processes with the
// same p and A.N >= B.N; otherwise std::domain_error.
double tail_difference(const GWSpec& a, const GWSpec& b, std::uint64_t ell);

// One draw of min(F, cap), simulated generation by generation.
std::uint64_t simulate_gw(const GWSpec& spec, std::uint64_t cap, Rng& rng);

} // namespace hamperc

#include "hamperc/branching.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "hamperc/numeric.hpp"

namespace hamperc {

namespace {

constexpr double kLnSqrt2Pi = 0.918938533204672741780329736406;
constexpr double kLn2Pi = 1.837877066409345483560659472811;
constexpr std::uint64_t kTailWarnLimit = 10'000'000;

// log(n!) - [(n + 1/2) log n - n + log sqrt(2 pi)]
double stirling_error(double n)
{
    constexpr double S0 = 1.0 / 12.0;
    constexpr double S1 = 1.0 / 360.0;
    constexpr double S2 = 1.0 / 1260.0;
    constexpr double S3 = 1.0 / 1680.0;
    constexpr double S4 = 1.0 / 1188.0;
    if (n <= 15.0) {
        return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n - kLnSqrt2Pi;
    }
    const double nn = n * n;
    if (n > 500.0) {
        return (S0 - S1 / nn) / n;
    }
    if (n > 80.0) {
        return (S0 - (S1 - S2 / nn) / nn) / n;
    }
    if (n > 35.0) {
        return (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / n;
    }
    return (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n;
}

// Deviance term x log(x / np) + np - x, stable when x is close to np.
double deviance(double x, double np)
{
    if (std::fabs(x - np) < 0.1 * (x + np)) {
        double v = (x - np) / (x + np);
        double s = (x - np) * v;
        double ej = 2.0 * x * v;
        v *= v;
        for (int j = 1; j < 1000; ++j) {
            ej *= v;
            const double s1 = s + ej / (2 * j + 1);
            if (s1 == s) {
                return s1;
            }
            s = s1;
        }
        return s;
    }
    return x * std::log(x / np) + np - x;
}

void check_ell(std::uint64_t ell, const char* what)
{
    if (ell == 0) {
        throw std::domain_error(std::string(what) + ": ell must be at least 1");
    }
    if (ell > kTailWarnLimit) {
        std::cerr << "warning: " << what << " with ell = " << ell << " sums more than 10^7 terms\n";
    }
}

} // namespace

GWSpec::GWSpec(std::uint64_t trials, double prob) : N(trials), p(prob)
{
    if (trials == 0) {
        throw std::domain_error("GWSpec: N must be positive");
    }
    if (!(prob >= 0.0 && prob <= 1.0)) {
        throw std::domain_error("GWSpec: p = " + std::to_string(prob) + " outside [0, 1]");
    }
}

GWSpec GWSpec::from_epsilon(std::uint64_t trials, double epsilon)
{
    return GWSpec(trials, (1.0 + epsilon) / static_cast<double>(trials));
}

double log_binomial_pmf(std::uint64_t n_trials, std::uint64_t x_count, double p)
{
    if (x_count > n_trials) {
        return -std::numeric_limits<double>::infinity();
    }
    const double n = static_cast<double>(n_trials);
    const double x = static_cast<double>(x_count);
    const double q = 1.0 - p;
    if (p == 0.0) {
        return x_count == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    }
    if (q == 0.0) {
        return x_count == n_trials ? 0.0 : -std::numeric_limits<double>::infinity();
    }
    if (x_count == 0) {
        if (n_trials == 0) {
            return 0.0;
        }
        return p < 0.1 ? -deviance(n, n * q) - n * p : n * std::log(q);
    }
    if (x_count == n_trials) {
        return q < 0.1 ? -deviance(n, n * p) - n * q : n * std::log(p);
    }
    const double lc = stirling_error(n) - stirling_error(x) - stirling_error(n - x) - deviance(x, n * p) -
                      deviance(n - x, n * q);
    const double lf = kLn2Pi + std::log(x) + std::log1p(-x / n);
    return lc - 0.5 * lf;
}

double progeny_pmf(const GWSpec& spec, std::uint64_t k)
{
    if (k == 0) {
        throw std::domain_error("progeny_pmf: k must be at least 1");
    }
    if (k > std::numeric_limits<std::uint64_t>::max() / spec.N) {
        throw std::domain_error("progeny_pmf: k * N overflows");
    }
    return std::exp(log_binomial_pmf(k * spec.N, k - 1, spec.p)) / static_cast<double>(k);
}

double extinction_probability(const GWSpec& spec)
{
    if (!spec.supercritical()) {
        return 1.0;
    }
    const double n = static_cast<double>(spec.N);
    double a = 0.0;
    for (int it = 0; it < 1'000'000; ++it) {
        const double next = std::exp(n * std::log1p(-spec.p * (1.0 - a)));
        const double step = next - a;
        a = next;
        if (step < 1e-14) {
            break;
        }
    }
    return a;
}

GWTail gw_tail(const GWSpec& spec, std::uint64_t K)
{
    GWTail tail{spec, 1.0, 0.0, K, 0.0};
    tail.extinction_prob = extinction_probability(spec);
    tail.survival_prob = 1.0 - tail.extinction_prob;
    CompensatedSum sum;
    for (std::uint64_t k = 1; k <= K; ++k) {
        sum += progeny_pmf(spec, k);
    }
    tail.pmf_partial = sum.value();
    return tail;
}

double tail_probability(const GWSpec& spec, std::uint64_t ell)
{
    check_ell(ell, "tail_probability");
    CompensatedSum below;
    for (std::uint64_t k = 1; k < ell; ++k) {
        below += progeny_pmf(spec, k);
    }
    return std::clamp(1.0 - below.value(), 0.0, 1.0);
}

double interval_probability(const GWSpec& spec, std::uint64_t ell)
{
    check_ell(ell, "interval_probability");
    CompensatedSum sum;
    for (std::uint64_t k = ell; k <= 2 * ell; ++k) {
        sum += progeny_pmf(spec, k);
    }
    return sum.value();
}

double tail_difference(const GWSpec& a, const GWSpec& b, std::uint64_t ell)
{
    if (std::fabs(a.p - b.p) > 1e-12 * std::max(a.p, b.p)) {
        throw std::domain_error("tail_difference: both processes must share p");
    }
    if (a.N < b.N) {
        throw std::domain_error("tail_difference: requires A.N >= B.N");
    }
    if (!a.supercritical() || !b.supercritical()) {
        throw std::domain_error("tail_difference: both processes must be supercritical");
    }
    return std::fabs(tail_probability(a, ell) - tail_probability(b, ell));
}

std::uint64_t simulate_gw(const GWSpec& spec, std::uint64_t cap, Rng& rng)
{
    if (cap == 0) {
        throw std::domain_error("simulate_gw: cap must be at least 1");
    }
    std::uint64_t total = 1;
    std::uint64_t generation = 1;
    while (generation > 0 && total < cap) {
        std::binomial_distribution<std::uint64_t> offspring(generation * spec.N, spec.p);
        generation = offspring(rng);
        total += generation;
    }
    return std::min(total, cap);
}

} // namespace hamperc

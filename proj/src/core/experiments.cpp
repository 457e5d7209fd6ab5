#include "hamperc/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hamperc/acceptance.hpp"
#include "hamperc/branching.hpp"
#include "hamperc/parallel.hpp"
#include "hamperc/statistics.hpp"

namespace hamperc {

namespace {

std::string num(double x)
{
    return format_double(x);
}

std::string num(std::uint64_t x)
{
    return std::to_string(x);
}

std::string g15(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (const char c : s) {
        out += c == '"' ? "\"\"" : std::string(1, c);
    }
    return out + "\"";
}

std::string utc_now()
{
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

unsigned thread_count(const ExperimentPlan& plan)
{
    return plan.threads != 0 ? plan.threads : default_threads();
}

std::vector<std::uint64_t> k_list(const ExperimentPlan& plan, std::uint64_t volume)
{
    if (!plan.k_thresholds.empty()) {
        return plan.k_thresholds;
    }
    return {static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(volume), 2.0 / 3.0)))};
}

void add_regime_warnings(RunRecord& rec)
{
    for (const double eps : rec.plan.epsilons) {
        if (auto w = supercritical_regime_check(rec.plan.d, rec.plan.n, eps)) {
            rec.warnings.push_back(*w);
        }
    }
}

// simulate and sweep share the per-(replica, k) row layout.
void simulate_one(RunRecord& rec, double eps, unsigned threads)
{
    const ExperimentPlan& plan = rec.plan;
    const HammingGraph g(plan.d, plan.n);
    const PercolationConfig cfg(g, eps, plan.seed);
    const std::vector<std::uint64_t> ks = k_list(plan, g.vertex_count());
    const double eta = plan.resolved_eta(eps);
    const std::optional<double> line_eta =
        g.dimension() == 2 && eta > 0.0 ? std::optional<double>(eta) : std::nullopt;
    const auto runs = run_replicas(cfg, ks, plan.replicas, threads, line_eta);
    const std::string name(to_string(plan.experiment));
    const double volume = static_cast<double>(g.vertex_count());

    for (const ReplicaSummary& s : runs) {
        nlohmann::json z = nlohmann::json::object();
        for (const auto& [k, value] : s.z_geq_table) {
            rec.rows.push_back({name, num(std::uint64_t{plan.d}), num(std::uint64_t{plan.n}), num(eps), num(eta),
                                num(plan.seed), num(s.replica), num(s.cmax), num(s.c2), num(k), num(value)});
            z[std::to_string(k)] = value;
        }
        rec.per_replica.push_back({{"epsilon", eps},
                                   {"replica", s.replica},
                                   {"cmax", s.cmax},
                                   {"c2", s.c2},
                                   {"clusters", s.clusters},
                                   {"occupied", s.occupied},
                                   {"z_geq", z},
                                   {"good_lines", s.good_lines},
                                   {"wall_time", s.wall_time}});
    }

    std::vector<double> fractions;
    for (const ReplicaSummary& s : runs) {
        fractions.push_back(static_cast<double>(s.cmax) / volume);
    }
    nlohmann::json sum{{"epsilon", eps}, {"eta", eta}, {"median_cmax_fraction", median(fractions)}};
    char line[200];
    std::snprintf(line, sizeof line, "eps = %-8s median cmax/V = %.5f", num(eps).c_str(), median(fractions));
    std::string text = line;
    if (eps > 0.0) {
        const GiantLlnReport giant = giant_lln_report(cfg, runs);
        sum["giant"] = giant.to_json();
        std::snprintf(line, sizeof line, "  zeta = %.5f  2 eps = %.5f", giant.zeta, giant.two_eps);
        text += line;
        if (eps * eps * eps * volume > 1.0) {
            sum["duality"] = duality_diagnostic(cfg, runs).to_json();
        }
    }
    if (runs.size() >= 2) {
        nlohmann::json conc = nlohmann::json::array();
        for (const std::uint64_t k : ks) {
            const ZConcentrationReport rep = z_concentration_report(cfg, k, runs);
            conc.push_back(rep.to_json());
            if (eps != 0.0) {
                std::snprintf(line, sizeof line, "  sd(Z_%lu)/(|eps|V) = %.4f", static_cast<unsigned long>(k),
                              rep.normalized_sd);
                text += line;
            }
        }
        sum["concentration"] = conc;
    }
    rec.summary_lines.push_back(text);
    if (plan.experiment == Experiment::Sweep) {
        rec.summary["by_epsilon"].push_back(sum);
    } else {
        rec.summary = sum;
    }
}

void run_simulate(RunRecord& rec, unsigned threads)
{
    for (const double eps : rec.plan.epsilons) {
        simulate_one(rec, eps, threads);
    }
    rec.thresholds = thresholds_json(
        {"giant.zeta_rel_tol", "giant.two_eps_low", "giant.two_eps_high", "concentration.max_normalized_sd"});
}

void run_explore(RunRecord& rec, unsigned threads)
{
    const ExperimentPlan& plan = rec.plan;
    const HammingGraph g(plan.d, plan.n);
    const double eps = plan.epsilon();
    const PercolationConfig cfg(g, eps, plan.seed);
    const double eta = plan.resolved_eta(eps);
    const double volume = static_cast<double>(g.vertex_count());
    std::uint64_t cap = plan.cap;
    if (cap == 0) {
        cap = eta > 0.0 ? std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(eta * volume)))
                        : g.vertex_count();
    }
    const auto good = static_cast<std::uint64_t>(std::ceil(eta * volume / (4.0 * plan.n)));
    const auto samples = sample_explorations(cfg, cap, plan.replicas, good, threads);

    std::uint64_t reached = 0;
    std::vector<double> sizes;
    for (std::uint64_t i = 0; i < samples.size(); ++i) {
        const ExplorationSample& s = samples[i];
        reached += s.steps >= cap;
        sizes.push_back(static_cast<double>(s.cluster_size));
        rec.rows.push_back({"explore", num(std::uint64_t{plan.d}), num(std::uint64_t{plan.n}), num(eps), num(eta),
                            num(plan.seed), num(i), num(s.origin), num(cap), num(s.steps), num(s.cluster_size),
                            s.died_out ? "1" : "0", num(std::uint64_t{s.max_horizontal}), num(s.good_lines)});
        rec.per_replica.push_back({{"sample", i},
                                   {"origin", s.origin},
                                   {"steps", s.steps},
                                   {"cluster_size", s.cluster_size},
                                   {"died_out", s.died_out},
                                   {"max_horizontal", s.max_horizontal},
                                   {"good_lines", s.good_lines}});
    }
    const Estimate tail = Estimate::bernoulli(reached, samples.size());
    const Estimate mean_size = Estimate::from_samples(sizes);
    const GWSpec gw(g.degree(), cfg.p());
    rec.summary = {{"cap", cap},
                   {"eta", eta},
                   {"good_line_threshold", good},
                   {"tail_estimate", to_json(tail)},
                   {"mean_cluster_size", to_json(mean_size)},
                   {"gw_survival", survival_probability(gw)}};
    char line[200];
    std::snprintf(line, sizeof line, "P(T >= %lu) = %.5f +- %.5f   (Bin(Omega,p) survival %.5f)",
                  static_cast<unsigned long>(cap), tail.mean, tail.std_error, survival_probability(gw));
    rec.summary_lines.push_back(line);
    if (cap <= 10'000'000) {
        rec.summary["gw_tail"] = tail_probability(gw, cap);
    }
    std::snprintf(line, sizeof line, "mean |C_T| = %.4f +- %.4f%s", mean_size.mean, mean_size.std_error,
                  cap == g.vertex_count() ? "   (uncapped: estimates chi)" : "");
    rec.summary_lines.push_back(line);
    rec.thresholds = thresholds_json({"cluster_tail.rel_tol", "cluster_tail.domination_std_errors"});
}

void run_sprinkle(RunRecord& rec, unsigned threads)
{
    const ExperimentPlan& plan = rec.plan;
    const HammingGraph g(plan.d, plan.n);
    const double eps = plan.epsilon();
    const PercolationConfig cfg(g, eps, plan.seed);
    const double eta = plan.resolved_eta(eps);
    std::vector<SprinklingReport> reps(plan.replicas);
    parallel_for(reps.size(), threads, [&](std::uint64_t i) { reps[i] = two_round_exposure(cfg, eta, i); });

    const double line_need = thresholds()["good_lines.line_fraction"] * plan.n;
    std::uint64_t merged = 0, covered = 0;
    for (std::uint64_t i = 0; i < reps.size(); ++i) {
        const SprinklingReport& s = reps[i];
        const std::uint64_t fewest =
            s.good_lines.empty() ? plan.n : *std::min_element(s.good_lines.begin(), s.good_lines.end());
        merged += s.merged_after;
        covered += static_cast<double>(fewest) >= line_need;
        rec.rows.push_back({"sprinkle", num(std::uint64_t{plan.d}), num(std::uint64_t{plan.n}), num(eps), num(eta),
                            num(plan.seed), num(i), num(s.p_minus), num(std::uint64_t{s.clusters_before.size()}),
                            num(s.z_prime), s.merged_after ? "1" : "0", num(s.cmax_before), num(s.cmax_after),
                            num(fewest)});
        rec.per_replica.push_back({{"replica", i},
                                   {"p_minus", s.p_minus},
                                   {"clusters_before", s.clusters_before},
                                   {"z_prime", s.z_prime},
                                   {"merged_after", s.merged_after},
                                   {"cmax_before", s.cmax_before},
                                   {"cmax_after", s.cmax_after},
                                   {"occupied_before", s.occupied_before},
                                   {"occupied_sprinkled", s.occupied_sprinkled},
                                   {"good_lines", s.good_lines}});
    }
    const double n_rep = static_cast<double>(reps.size());
    rec.summary = {{"eta", eta},
                   {"p_minus", reps.front().p_minus},
                   {"large_threshold", reps.front().large_threshold},
                   {"good_line_threshold", reps.front().good_line_threshold},
                   {"merged_fraction", merged / n_rep},
                   {"good_line_fraction", covered / n_rep}};
    char line[200];
    std::snprintf(line, sizeof line, "eta = %.5f  p_- = %.6g  merged in %lu/%lu  >= 3n/4 good lines in %lu/%lu", eta,
                  reps.front().p_minus, static_cast<unsigned long>(merged), static_cast<unsigned long>(reps.size()),
                  static_cast<unsigned long>(covered), static_cast<unsigned long>(reps.size()));
    rec.summary_lines.push_back(line);
    rec.thresholds = thresholds_json({"sprinkle.min_merged_fraction", "sprinkle.min_cmax_over_zprime",
                                      "good_lines.line_fraction", "good_lines.min_replica_fraction"});
}

void run_gw(RunRecord& rec)
{
    const ExperimentPlan& plan = rec.plan;
    const std::uint64_t N = plan.gw_N != 0 ? plan.gw_N : HammingGraph(plan.d, plan.n).degree();
    const double eps = plan.epsilon();
    const GWSpec spec = GWSpec::from_epsilon(N, eps);
    const auto add = [&](const std::string& quantity, std::uint64_t arg, double value) {
        rec.rows.push_back({"gw", num(N), g15(spec.p), num(eps), quantity, arg ? num(arg) : "", g15(value)});
        rec.summary[quantity] = value;
        rec.summary_lines.push_back(quantity + (arg ? "(" + num(arg) + ")" : "") + " = " + g15(value));
    };
    const double a = extinction_probability(spec);
    add("extinction", 0, a);
    add("survival", 0, 1.0 - a);
    if (plan.gw_pmf != 0) {
        add("pmf", plan.gw_pmf, progeny_pmf(spec, plan.gw_pmf));
    }
    if (plan.gw_tail != 0) {
        add("tail", plan.gw_tail, tail_probability(spec, plan.gw_tail));
        add("interval", plan.gw_tail, interval_probability(spec, plan.gw_tail));
    }
    rec.summary["N"] = N;
    rec.summary["p"] = spec.p;
}

void run_verify(RunRecord& rec, unsigned threads, const ProgressFn& progress)
{
    const AcceptanceOptions opts{rec.plan.seed, threads};
    const auto results = run_acceptance(opts, [&](const CriterionResult& r) {
        if (progress) {
            progress(format_result_line(r));
        }
    });
    int passed = 0;
    for (const CriterionResult& r : results) {
        passed += r.pass;
        rec.pass = rec.pass && r.pass;
        rec.rows.push_back({std::to_string(r.id), r.name, r.pass ? "1" : "0", r.detail, g15(r.seconds)});
        rec.per_replica.push_back(
            {{"criterion", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"data", r.data},
             {"seconds", r.seconds}});
        rec.summary_lines.push_back(format_result_line(r));
    }
    rec.summary = {{"passed", passed}, {"criteria", results.size()}};
    rec.summary["duality_diagnostic"] = duality_acceptance_report(opts);
    rec.summary_lines.push_back(std::to_string(passed) + "/" + std::to_string(results.size()) + " criteria passed");
    nlohmann::json th = nlohmann::json::object();
    th["fixture_version"] = std::string(thresholds().version);
    for (const Threshold& t : thresholds().entries) {
        th[std::string(t.name)] = {{"value", t.value}, {"calibrated_by", std::string(t.calibrated_by)}};
    }
    rec.thresholds = th;
}

nlohmann::json plan_json(const ExperimentPlan& p)
{
    return {{"experiment", std::string(to_string(p.experiment))},
            {"d", p.d},
            {"n", p.n},
            {"epsilon", p.epsilons},
            {"eta", p.eta ? nlohmann::json(*p.eta) : nlohmann::json("auto")},
            {"cap", p.cap},
            {"k", p.k_thresholds},
            {"replicas", p.replicas},
            {"seed", p.seed},
            {"threads", p.threads},
            {"gw_N", p.gw_N},
            {"gw_tail", p.gw_tail},
            {"gw_pmf", p.gw_pmf}};
}

} // namespace

std::vector<std::string> csv_header(Experiment e)
{
    switch (e) {
    case Experiment::Simulate:
    case Experiment::Sweep:
        return {"experiment", "d", "n", "epsilon", "eta", "seed", "replica", "cmax", "c2", "z_k", "z_value"};
    case Experiment::Explore:
        return {"experiment", "d",    "n",          "epsilon",  "eta",            "seed",      "sample",
                "origin",     "cap",  "steps",      "cluster_size", "died_out", "max_horizontal", "good_lines"};
    case Experiment::Sprinkle:
        return {"experiment", "d",       "n",            "epsilon",     "eta",       "seed",      "replica",
                "p_minus",    "large_clusters", "z_prime", "merged_after", "cmax_before", "cmax_after",
                "min_good_lines"};
    case Experiment::Gw:
        return {"experiment", "N", "p", "epsilon", "quantity", "argument", "value"};
    case Experiment::Verify:
        return {"criterion", "name", "pass", "detail", "seconds"};
    }
    return {};
}

std::optional<std::string> supercritical_regime_check(std::uint32_t d, std::uint32_t n, double eps)
{
    const double volume = static_cast<double>(HammingGraph(d, n).vertex_count());
    const double lower = std::cbrt(std::log(volume)) / std::cbrt(volume);
    char buf[200];
    if (eps < lower) {
        std::snprintf(buf, sizeof buf,
                      "eps = %s is below (log V)^(1/3) V^(-1/3) = %.4f: outside the supercritical regime",
                      format_double(eps).c_str(), lower);
        return std::string(buf);
    }
    if (eps > 0.5) {
        std::snprintf(buf, sizeof buf, "eps = %s exceeds 0.5: outside the eps << 1 regime",
                      format_double(eps).c_str());
        return std::string(buf);
    }
    return std::nullopt;
}

std::string software_version()
{
    return HAMPERC_VERSION;
}

RunRecord run(const ExperimentPlan& plan, const ProgressFn& progress)
{
    plan.validate();
    const auto start = std::chrono::steady_clock::now();
    RunRecord rec;
    rec.plan = plan;
    rec.header = csv_header(plan.experiment);
    rec.software_version = software_version();
    rec.timestamp = utc_now();
    const unsigned threads = thread_count(plan);
    switch (plan.experiment) {
    case Experiment::Simulate:
    case Experiment::Sweep:
        add_regime_warnings(rec);
        run_simulate(rec, threads);
        break;
    case Experiment::Explore:
        add_regime_warnings(rec);
        run_explore(rec, threads);
        break;
    case Experiment::Sprinkle:
        add_regime_warnings(rec);
        run_sprinkle(rec, threads);
        break;
    case Experiment::Gw:
        run_gw(rec);
        break;
    case Experiment::Verify:
        run_verify(rec, threads, progress);
        break;
    }
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

std::string RunRecord::csv() const
{
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        out += (i ? "," : "") + header[i];
    }
    out += "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += (i ? "," : "") + csv_field(row[i]);
        }
        out += "\n";
    }
    return out;
}

nlohmann::json RunRecord::to_json() const
{
    return {{"schema_version", std::string(kRunSchemaVersion)},
            {"experiment", std::string(to_string(plan.experiment))},
            {"params", plan_json(plan)},
            {"per_replica", per_replica},
            {"summary", summary},
            {"thresholds", thresholds},
            {"pass", pass},
            {"warnings", warnings},
            {"software_version", software_version},
            {"timestamp", timestamp},
            {"wall_time", wall_time}};
}

std::string RunRecord::summary_text() const
{
    std::ostringstream out;
    if (plan.experiment == Experiment::Gw) {
        out << "gw  N=" << summary.value("N", std::uint64_t{0}) << " p=" << format_double(summary.value("p", 0.0))
            << "\n";
    } else {
        out << to_string(plan.experiment) << "  d=" << plan.d << " n=" << plan.n << " replicas=" << plan.replicas
            << " seed=" << plan.seed << "\n";
    }
    for (const std::string& w : warnings) {
        out << "warning: " << w << "\n";
    }
    for (const std::string& line : summary_lines) {
        out << "  " << line << "\n";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "  wall time %.2f s\n", wall_time);
    out << buf;
    return out.str();
}

void RunRecord::write_outputs() const
{
    const auto write = [](const std::string& path, const std::string& text) {
        std::ofstream out(path, std::ios::binary);
        if (!out || !(out << text) || !out.flush()) {
            throw std::ios_base::failure("cannot write '" + path + "'");
        }
    };
    if (!plan.out_csv.empty()) {
        write(plan.out_csv, csv());
    }
    if (!plan.out_json.empty()) {
        write(plan.out_json, to_json().dump(2) + "\n");
    }
}

} // namespace hamperc

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hamperc/experiments.hpp"

using namespace hamperc;

namespace {

std::string joined(const std::vector<std::string>& xs)
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out += (i ? "," : "") + xs[i];
    }
    return out;
}

ExperimentPlan small(Experiment e)
{
    ExperimentPlan p;
    p.experiment = e;
    p.n = 60;
    p.epsilons = {0.2};
    p.replicas = 6;
    p.seed = 99;
    p.threads = 1;
    return p;
}

} // namespace

TEST_CASE("schema pin")
{
    // Changing any of these requires bumping kRunSchemaVersion.
    CHECK(kRunSchemaVersion == "hamperc-run-v1");
    CHECK(joined(csv_header(Experiment::Simulate)) == "experiment,d,n,epsilon,eta,seed,replica,cmax,c2,z_k,z_value");
    CHECK(joined(csv_header(Experiment::Sweep)) == joined(csv_header(Experiment::Simulate)));
    CHECK(joined(csv_header(Experiment::Explore)) ==
          "experiment,d,n,epsilon,eta,seed,sample,origin,cap,steps,cluster_size,died_out,max_horizontal,good_lines");
    CHECK(joined(csv_header(Experiment::Sprinkle)) ==
          "experiment,d,n,epsilon,eta,seed,replica,p_minus,large_clusters,z_prime,merged_after,cmax_before,"
          "cmax_after,min_good_lines");
    CHECK(joined(csv_header(Experiment::Gw)) == "experiment,N,p,epsilon,quantity,argument,value");
    CHECK(joined(csv_header(Experiment::Verify)) == "criterion,name,pass,detail,seconds");

    const RunRecord rec = run(small(Experiment::Simulate));
    const nlohmann::json j = rec.to_json();
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) {
        keys.push_back(k);
    }
    CHECK(joined(keys) ==
          "experiment,params,pass,per_replica,schema_version,software_version,summary,thresholds,timestamp,"
          "wall_time,warnings");
    CHECK(j["schema_version"] == "hamperc-run-v1");
    CHECK(j["per_replica"].size() == 6);
    CHECK(j["timestamp"].get<std::string>().size() == 20);
    CHECK(j["thresholds"].contains("giant.zeta_rel_tol"));
}

TEST_CASE("every row matches its header")
{
    for (const Experiment e : {Experiment::Simulate, Experiment::Explore, Experiment::Sprinkle, Experiment::Gw,
                               Experiment::Sweep}) {
        ExperimentPlan p = small(e);
        if (e == Experiment::Sweep) {
            p.epsilons = {0.1, 0.2};
        }
        if (e == Experiment::Gw) {
            p.gw_tail = 100;
            p.gw_pmf = 3;
        }
        const RunRecord rec = run(p);
        CAPTURE(to_string(e));
        REQUIRE_FALSE(rec.rows.empty());
        for (const auto& row : rec.rows) {
            CHECK(row.size() == rec.header.size());
        }
    }
}

TEST_CASE("simulate emits one row per (replica, k)")
{
    ExperimentPlan p = small(Experiment::Simulate);
    p.k_thresholds = {5, 50, 500};
    const RunRecord rec = run(p);
    CHECK(rec.rows.size() == 18);
    // default k is ceil(V^(2/3)) = ceil(3600^(2/3)) = 235
    const RunRecord def = run(small(Experiment::Simulate));
    CHECK(def.rows.size() == 6);
    CHECK(def.rows[0][9] == "235");

    ExperimentPlan s = small(Experiment::Sweep);
    s.epsilons = parse_epsilon_list("0.1:0.3:0.1");
    CHECK(run(s).rows.size() == 18);
}

TEST_CASE("identical plans give identical CSV bytes, independent of threads")
{
    for (const Experiment e : {Experiment::Simulate, Experiment::Explore, Experiment::Sprinkle}) {
        ExperimentPlan p = small(e);
        p.replicas = 12;
        const std::string a = run(p).csv();
        const std::string b = run(p).csv();
        p.threads = 3;
        const std::string c = run(p).csv();
        CAPTURE(to_string(e));
        CHECK(a == b);
        CHECK(a == c);
        p.seed += 1;
        CHECK(run(p).csv() != a);
    }
}

TEST_CASE("gw rows")
{
    ExperimentPlan p;
    p.experiment = Experiment::Gw;
    p.gw_N = 2000;
    p.epsilons = {0.05};
    p.gw_tail = 10000;
    const RunRecord rec = run(p);
    REQUIRE(rec.rows.size() == 4); // extinction, survival, tail, interval
    CHECK(rec.rows[2][4] == "tail");
    CHECK(rec.rows[2][5] == "10000");
    // 15 significant digits
    const std::string v = rec.rows[2][6];
    REQUIRE(v.rfind("0.0", 0) == 0);
    CHECK(v.size() - 3 == 15);
    CHECK(std::stod(v) == doctest::Approx(0.0937471876477284).epsilon(1e-13));
    CHECK(rec.warnings.empty());

    p.gw_N = 0; // falls back to Omega of (d, n) = 198
    CHECK(run(p).summary["N"] == 198);
}

TEST_CASE("csv quoting")
{
    RunRecord rec;
    rec.header = {"a", "b"};
    rec.rows = {{"x,y", "say \"hi\""}};
    CHECK(rec.csv() == "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n");
}

TEST_CASE("supercritical regime check")
{
    // (log V)^(1/3) V^(-1/3) at V = 9e4 is 0.0502
    const double th = std::cbrt(std::log(9e4)) / std::cbrt(9e4);
    CHECK(th == doctest::Approx(0.0502).epsilon(1e-3));
    CHECK_FALSE(supercritical_regime_check(2, 300, 0.15).has_value());
    CHECK(supercritical_regime_check(2, 300, 0.01).has_value());
    CHECK(supercritical_regime_check(2, 300, 0.0).has_value());
    CHECK(supercritical_regime_check(2, 300, 0.6).has_value());
    CHECK_FALSE(supercritical_regime_check(2, 300, 0.5).has_value());

    ExperimentPlan p = small(Experiment::Simulate);
    p.epsilons = {0.0};
    const RunRecord rec = run(p);
    REQUIRE(rec.warnings.size() == 1);
    CHECK(rec.to_json()["warnings"].size() == 1);
    CHECK(rec.summary_text().find("warning:") != std::string::npos);
}

TEST_CASE("invalid plans are rejected before running")
{
    ExperimentPlan p = small(Experiment::Simulate);
    p.replicas = 0;
    CHECK_THROWS_AS(run(p), std::invalid_argument);
    p = small(Experiment::Simulate);
    p.epsilons = {-3.0};
    CHECK_THROWS_AS(run(p), std::domain_error);
}

TEST_CASE("outputs are written")
{
    ExperimentPlan p = small(Experiment::Simulate);
    p.out_csv = "test_experiments_tmp.csv";
    p.out_json = "test_experiments_tmp.json";
    const RunRecord rec = run(p);
    rec.write_outputs();
    std::ifstream csv(p.out_csv), json(p.out_json);
    std::stringstream a, b;
    a << csv.rdbuf();
    b << json.rdbuf();
    CHECK(a.str() == rec.csv());
    CHECK(nlohmann::json::parse(b.str())["per_replica"] == rec.to_json()["per_replica"]);
    std::remove(p.out_csv.c_str());
    std::remove(p.out_json.c_str());

    p.out_csv = "/nonexistent-dir/x.csv";
    CHECK_THROWS_AS(run(p).write_outputs(), std::ios_base::failure);
}

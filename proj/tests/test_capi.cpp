// Exercises the shared library through the C header only.
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "hamperc/hamperc.h"

TEST_CASE("version and status strings")
{
    CHECK(std::strlen(hp_version()) > 0);
    CHECK(std::string(hp_status_string(HP_OK)) == "ok");
    CHECK(std::string(hp_status_string(HP_ERR_DOMAIN)) == "numeric domain error");
}

TEST_CASE("graph handles and error mapping")
{
    hp_graph* g = nullptr;
    REQUIRE(hp_graph_create(2, 3, &g) == HP_OK);
    CHECK(hp_graph_vertex_count(g) == 9);
    CHECK(hp_graph_degree(g) == 4);
    CHECK(hp_graph_edge_count(g) == 18);
    const uint32_t coords[2] = {2, 1};
    uint64_t v = 0;
    REQUIRE(hp_graph_vertex_index(g, coords, &v) == HP_OK);
    CHECK(v == 5);
    uint32_t back[2] = {};
    REQUIRE(hp_graph_vertex_coords(g, v, back) == HP_OK);
    CHECK(back[0] == 2);
    CHECK(back[1] == 1);
    const uint32_t outside[2] = {3, 0};
    CHECK(hp_graph_vertex_index(g, outside, &v) != HP_OK);

    hp_graph* bad = nullptr;
    CHECK(hp_graph_create(2, 1, &bad) == HP_ERR_INVALID_ARGUMENT);
    CHECK(std::strlen(hp_last_error()) > 0);
    CHECK(bad == nullptr);
    CHECK(hp_graph_create(60, 2, &bad) == HP_ERR_OVERFLOW);
    CHECK(hp_graph_create(2, 3, nullptr) == HP_ERR_NULL);

    hp_config* c = nullptr;
    CHECK(hp_config_create(g, 5.0, 1, &c) == HP_ERR_DOMAIN); // Omega - 1 = 3
    hp_graph_free(g);
}

TEST_CASE("sample, components, oracle")
{
    hp_graph* g = nullptr;
    REQUIRE(hp_graph_create(2, 3, &g) == HP_OK);
    double exact = 0;
    REQUIRE(hp_exact_expectation(g, 1.0, "cmax", 0, 0, &exact) == HP_OK);
    CHECK(exact == 9.0);
    REQUIRE(hp_exact_expectation(g, 0.5, "zgeq", 0, 1, &exact) == HP_OK);
    CHECK(exact == doctest::Approx(9.0));
    CHECK(hp_exact_expectation(g, 0.5, "median", 0, 0, &exact) == HP_ERR_INVALID_ARGUMENT);

    hp_graph* big = nullptr;
    REQUIRE(hp_graph_create(2, 4, &big) == HP_OK);
    CHECK(hp_exact_expectation(big, 0.5, "cmax", 0, 0, &exact) == HP_ERR_LIMIT);

    hp_config* c = nullptr;
    REQUIRE(hp_config_create(big, 1.5, 7, &c) == HP_OK); // p = 2.5 / 6
    hp_edges* e = nullptr;
    REQUIRE(hp_sample(c, 0, &e) == HP_OK);
    hp_clusters* cl = nullptr;
    REQUIRE(hp_components(big, e, &cl) == HP_OK);
    CHECK(hp_clusters_z_geq(cl, 1) == 16);
    CHECK(hp_clusters_cmax(cl) >= hp_clusters_c2(cl));
    uint32_t label = 0;
    CHECK(hp_clusters_label(cl, 15, &label) == HP_OK);
    CHECK(label < hp_clusters_count(cl));
    CHECK(hp_clusters_label(cl, 16, &label) == HP_ERR_INVALID_ARGUMENT);
    CHECK(hp_components(g, e, &cl) == HP_ERR_INVALID_ARGUMENT);

    hp_clusters_free(cl);
    hp_edges_free(e);
    hp_config_free(c);
    hp_graph_free(big);
    hp_graph_free(g);
}

TEST_CASE("exploration, sprinkling, estimates")
{
    hp_graph* g = nullptr;
    REQUIRE(hp_graph_create(2, 100, &g) == HP_OK);
    hp_config* c = nullptr;
    REQUIRE(hp_config_create(g, 0.2, 11, &c) == HP_OK);
    CHECK(hp_config_p(c) == doctest::Approx(1.2 / 198));

    hp_exploration x{};
    REQUIRE(hp_explore(c, 123, 10000, 0, 1, &x) == HP_OK);
    CHECK(x.origin == 123);
    CHECK(x.cluster_size >= x.steps);
    CHECK(hp_explore(c, 10000, 10, 0, 1, &x) == HP_ERR_DOMAIN);

    hp_sprinkle_report s{};
    REQUIRE(hp_sprinkle(c, -1.0, 0, &s) == HP_OK);
    CHECK(s.eta == doctest::Approx(std::sqrt(0.2) * std::pow(1e4, -1.0 / 6.0)));
    CHECK(s.p_minus < hp_config_p(c));
    CHECK(s.cmax_after >= s.cmax_before);

    hp_estimate est{};
    REQUIRE(hp_estimate_chi(c, 200, 1, &est) == HP_OK);
    CHECK(est.n_samples == 200);
    CHECK(est.mean >= 1.0);
    REQUIRE(hp_estimate_cluster_tail(c, 10, 200, 2, &est) == HP_OK);
    CHECK(est.mean <= 1.0);

    hp_config_free(c);
    hp_graph_free(g);
}

TEST_CASE("galton-watson")
{
    double a = 0, tail = 0, pmf = 0;
    REQUIRE(hp_gw_extinction(2000, 1.05 / 2000, &a) == HP_OK);
    REQUIRE(hp_gw_tail(2000, 1.05 / 2000, 10000, &tail) == HP_OK);
    REQUIRE(hp_gw_pmf(2000, 1.05 / 2000, 1, &pmf) == HP_OK);
    CHECK(pmf == doctest::Approx(std::pow(1.0 - 1.05 / 2000, 2000)));
    CHECK(tail > 1.0 - a);
    CHECK(hp_gw_tail(2000, 1.5, 10, &tail) == HP_ERR_DOMAIN);
}

TEST_CASE("plans and runs")
{
    hp_plan* p = nullptr;
    CHECK(hp_plan_create("nonsense", &p) == HP_ERR_INVALID_ARGUMENT);
    REQUIRE(hp_plan_create("simulate", &p) == HP_OK);
    REQUIRE(hp_plan_set(p, "graph.n", "40") == HP_OK);
    REQUIRE(hp_plan_set(p, "replicas", "3") == HP_OK);
    REQUIRE(hp_plan_set(p, "threads", "1") == HP_OK);
    CHECK(hp_plan_set(p, "colour", "1") == HP_ERR_INVALID_ARGUMENT);
    CHECK(hp_plan_validate(p) == HP_OK);

    char* text = nullptr;
    REQUIRE(hp_plan_serialize(p, &text) == HP_OK);
    hp_plan* q = nullptr;
    REQUIRE(hp_plan_parse(text, &q) == HP_OK);
    char* text2 = nullptr;
    REQUIRE(hp_plan_serialize(q, &text2) == HP_OK);
    CHECK(std::string(text) == std::string(text2));
    hp_string_free(text);
    hp_string_free(text2);
    hp_plan_free(q);

    int lines = 0;
    hp_run* r = nullptr;
    REQUIRE(hp_run_execute(p, [](const char*, void* u) { ++*static_cast<int*>(u); }, &lines, &r) == HP_OK);
    CHECK(lines == 0); // progress is only reported by verify
    CHECK(hp_run_passed(r) == 1);
    char* csv = nullptr;
    REQUIRE(hp_run_csv(r, &csv) == HP_OK);
    CHECK(std::string(csv).rfind("experiment,d,n,epsilon,eta,seed,replica,cmax,c2,z_k,z_value\n", 0) == 0);
    hp_string_free(csv);
    char* json = nullptr;
    REQUIRE(hp_run_json(r, &json) == HP_OK);
    CHECK(std::string(json).find("\"schema_version\"") != std::string::npos);
    hp_string_free(json);
    CHECK(hp_run_write_outputs(r) == HP_OK); // no paths set: nothing written
    hp_run_free(r);

    REQUIRE(hp_plan_set(p, "eps", "-7") == HP_OK);
    CHECK(hp_plan_validate(p) == HP_ERR_DOMAIN);
    CHECK(hp_run_execute(p, nullptr, nullptr, &r) == HP_ERR_DOMAIN);
    REQUIRE(hp_plan_set(p, "eps", "0.2") == HP_OK);
    REQUIRE(hp_plan_set(p, "csv", "/nonexistent-dir/out.csv") == HP_OK);
    REQUIRE(hp_run_execute(p, nullptr, nullptr, &r) == HP_OK);
    CHECK(hp_run_write_outputs(r) == HP_ERR_IO);
    hp_run_free(r);
    hp_plan_free(p);

    CHECK(hp_plan_load("/nonexistent/plan.cfg", &p) == HP_ERR_INVALID_ARGUMENT);

    char* warning = nullptr;
    REQUIRE(hp_regime_check(2, 300, 0.15, &warning) == HP_OK);
    CHECK(warning == nullptr);
    REQUIRE(hp_regime_check(2, 300, 0.01, &warning) == HP_OK);
    REQUIRE(warning != nullptr);
    hp_string_free(warning);
}

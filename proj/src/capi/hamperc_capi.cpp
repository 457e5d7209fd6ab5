#include "hamperc/hamperc.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <ios>
#include <memory>
#include <new>
#include <optional>
#include <stdexcept>
#include <string>

#include "hamperc/branching.hpp"
#include "hamperc/brute_force.hpp"
#include "hamperc/experiments.hpp"
#include "hamperc/percolation.hpp"
#include "hamperc/plan.hpp"
#include "hamperc/statistics.hpp"

struct hp_graph {
    hamperc::HammingGraph g;
};
struct hp_config {
    hamperc::PercolationConfig cfg;
};
struct hp_edges {
    hamperc::OccupiedEdgeSet edges;
};
struct hp_clusters {
    hamperc::ClusterStats stats;
};
struct hp_plan {
    hamperc::ExperimentPlan plan;
};
struct hp_run {
    hamperc::RunRecord rec;
};

namespace {

thread_local std::string last_error;

hp_status fail(hp_status s, const char* what)
{
    last_error = what;
    return s;
}

// Runs f, mapping exceptions onto status codes.
template <class F>
hp_status guarded(F&& f)
{
    try {
        f();
        last_error.clear();
        return HP_OK;
    } catch (const std::domain_error& e) {
        return fail(HP_ERR_DOMAIN, e.what());
    } catch (const std::overflow_error& e) {
        return fail(HP_ERR_OVERFLOW, e.what());
    } catch (const std::length_error& e) {
        return fail(HP_ERR_LIMIT, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(HP_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::out_of_range& e) {
        return fail(HP_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::ios_base::failure& e) {
        return fail(HP_ERR_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(HP_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(HP_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(HP_ERR_INTERNAL, "unknown error");
    }
}

#define HP_REQUIRE(...)                                                                                                \
    do {                                                                                                               \
        const void* ptrs_[] = {__VA_ARGS__};                                                                           \
        for (const void* p_ : ptrs_) {                                                                                 \
            if (p_ == nullptr) {                                                                                       \
                return fail(HP_ERR_NULL, "null pointer argument");                                                     \
            }                                                                                                          \
        }                                                                                                              \
    } while (0)

char* dup_string(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void fill(const hamperc::Estimate& e, hp_estimate* out)
{
    *out = {e.mean, e.std_error, e.n_samples, e.ci95_low, e.ci95_high};
}

} // namespace

extern "C" {

const char* hp_version(void)
{
    return HAMPERC_VERSION;
}

const char* hp_status_string(hp_status s)
{
    switch (s) {
    case HP_OK:
        return "ok";
    case HP_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case HP_ERR_DOMAIN:
        return "numeric domain error";
    case HP_ERR_OVERFLOW:
        return "overflow";
    case HP_ERR_LIMIT:
        return "size limit exceeded";
    case HP_ERR_IO:
        return "i/o error";
    case HP_ERR_INTERNAL:
        return "internal error";
    case HP_ERR_NULL:
        return "null pointer";
    }
    return "unknown status";
}

const char* hp_last_error(void)
{
    return last_error.c_str();
}

void hp_string_free(char* s)
{
    std::free(s);
}

hp_status hp_graph_create(uint32_t d, uint32_t n, hp_graph** out)
{
    HP_REQUIRE(out);
    return guarded([&] { *out = new hp_graph{hamperc::HammingGraph(d, n)}; });
}

void hp_graph_free(hp_graph* g)
{
    delete g;
}

uint64_t hp_graph_vertex_count(const hp_graph* g)
{
    return g ? g->g.vertex_count() : 0;
}

uint64_t hp_graph_degree(const hp_graph* g)
{
    return g ? g->g.degree() : 0;
}

uint64_t hp_graph_edge_count(const hp_graph* g)
{
    return g ? g->g.edge_count() : 0;
}

hp_status hp_graph_vertex_index(const hp_graph* g, const uint32_t* coords, uint64_t* out)
{
    HP_REQUIRE(g, coords, out);
    return guarded([&] { *out = g->g.vertex_index({coords, g->g.dimension()}); });
}

hp_status hp_graph_vertex_coords(const hp_graph* g, uint64_t v, uint32_t* coords_out)
{
    HP_REQUIRE(g, coords_out);
    return guarded([&] {
        const hamperc::Vertex x = g->g.vertex_from_index(v);
        std::copy(x.begin(), x.end(), coords_out);
    });
}

hp_status hp_config_create(const hp_graph* g, double epsilon, uint64_t seed, hp_config** out)
{
    HP_REQUIRE(g, out);
    return guarded([&] { *out = new hp_config{hamperc::PercolationConfig(g->g, epsilon, seed)}; });
}

void hp_config_free(hp_config* c)
{
    delete c;
}

double hp_config_p(const hp_config* c)
{
    return c ? c->cfg.p() : 0.0;
}

hp_status hp_sample(const hp_config* c, uint64_t stream, hp_edges** out)
{
    HP_REQUIRE(c, out);
    return guarded([&] { *out = new hp_edges{hamperc::sample_configuration(c->cfg, stream)}; });
}

void hp_edges_free(hp_edges* e)
{
    delete e;
}

uint64_t hp_edges_count(const hp_edges* e)
{
    return e ? e->edges.total_occupied() : 0;
}

hp_status hp_components(const hp_graph* g, const hp_edges* e, hp_clusters** out)
{
    HP_REQUIRE(g, e, out);
    return guarded([&] {
        if (e->edges.line_count() != g->g.line_count()) {
            throw std::invalid_argument("edge set belongs to a different graph");
        }
        *out = new hp_clusters{hamperc::connected_components(g->g, e->edges, true)};
    });
}

void hp_clusters_free(hp_clusters* c)
{
    delete c;
}

uint64_t hp_clusters_cmax(const hp_clusters* c)
{
    return c ? c->stats.cmax : 0;
}

uint64_t hp_clusters_c2(const hp_clusters* c)
{
    return c ? c->stats.c2 : 0;
}

uint64_t hp_clusters_count(const hp_clusters* c)
{
    return c ? c->stats.cluster_count() : 0;
}

uint64_t hp_clusters_z_geq(const hp_clusters* c, uint64_t k)
{
    return c ? hamperc::z_geq(c->stats, k) : 0;
}

hp_status hp_clusters_label(const hp_clusters* c, uint64_t v, uint32_t* out)
{
    HP_REQUIRE(c, out);
    return guarded([&] { *out = c->stats.component.at(v); });
}

hp_status hp_explore(const hp_config* c, uint64_t origin, uint64_t cap, uint64_t stream,
                     uint64_t good_line_threshold, hp_exploration* out)
{
    HP_REQUIRE(c, out);
    return guarded([&] {
        const auto res = hamperc::explore_cluster(c->cfg, origin, cap, stream);
        const auto& h = res.horiz_counts;
        *out = {res.origin,
                res.steps,
                res.cluster_size,
                res.died_out ? 1 : 0,
                h.empty() ? 0u : *std::max_element(h.begin(), h.end()),
                hamperc::good_line_count(res, good_line_threshold)};
    });
}

hp_status hp_sprinkle(const hp_config* c, double eta, uint64_t stream, hp_sprinkle_report* out)
{
    HP_REQUIRE(c, out);
    return guarded([&] {
        if (c->cfg.graph().dimension() != 2) {
            throw std::domain_error("sprinkling reports line structure and needs d = 2");
        }
        if (eta < 0.0) {
            eta = hamperc::default_eta(c->cfg.epsilon(), c->cfg.graph().vertex_count());
        }
        const auto r = hamperc::two_round_exposure(c->cfg, eta, stream);
        const std::uint64_t fewest = r.good_lines.empty()
                                         ? c->cfg.graph().side()
                                         : *std::min_element(r.good_lines.begin(), r.good_lines.end());
        *out = {r.p_minus,          r.eta,        r.large_threshold, r.clusters_before.size(),
                r.z_prime,          r.merged_after ? 1 : 0, r.cmax_before, r.cmax_after,
                r.good_line_threshold, fewest};
    });
}

hp_status hp_gw_extinction(uint64_t N, double p, double* out)
{
    HP_REQUIRE(out);
    return guarded([&] { *out = hamperc::extinction_probability(hamperc::GWSpec(N, p)); });
}

hp_status hp_gw_pmf(uint64_t N, double p, uint64_t k, double* out)
{
    HP_REQUIRE(out);
    return guarded([&] { *out = hamperc::progeny_pmf(hamperc::GWSpec(N, p), k); });
}

hp_status hp_gw_tail(uint64_t N, double p, uint64_t ell, double* out)
{
    HP_REQUIRE(out);
    return guarded([&] { *out = hamperc::tail_probability(hamperc::GWSpec(N, p), ell); });
}

hp_status hp_gw_interval(uint64_t N, double p, uint64_t ell, double* out)
{
    HP_REQUIRE(out);
    return guarded([&] { *out = hamperc::interval_probability(hamperc::GWSpec(N, p), ell); });
}

hp_status hp_estimate_chi(const hp_config* c, uint64_t samples, unsigned threads, hp_estimate* out)
{
    HP_REQUIRE(c, out);
    return guarded([&] { fill(hamperc::estimate_chi(c->cfg, samples, threads), out); });
}

hp_status hp_estimate_cluster_tail(const hp_config* c, uint64_t k, uint64_t samples, unsigned threads,
                                   hp_estimate* out)
{
    HP_REQUIRE(c, out);
    return guarded([&] { fill(hamperc::estimate_cluster_tail(c->cfg, k, samples, threads), out); });
}

hp_status hp_exact_expectation(const hp_graph* g, double p, const char* kind, uint64_t vertex, uint64_t k,
                               double* out)
{
    HP_REQUIRE(g, kind, out);
    return guarded([&] {
        const std::string name = kind;
        hamperc::Functional f;
        if (name == "cmax") {
            f = hamperc::Functional::cmax();
        } else if (name == "chi") {
            f = hamperc::Functional::chi(vertex);
        } else if (name == "tail") {
            f = hamperc::Functional::cluster_tail(vertex, k);
        } else if (name == "zgeq") {
            f = hamperc::Functional::z_geq(k);
        } else {
            throw std::invalid_argument("unknown functional '" + name + "'");
        }
        *out = hamperc::exact_expectation(g->g, p, f).value;
    });
}

hp_status hp_plan_create(const char* experiment, hp_plan** out)
{
    HP_REQUIRE(experiment, out);
    return guarded([&] {
        auto p = std::make_unique<hp_plan>();
        p->plan.experiment = hamperc::experiment_from_string(experiment);
        *out = p.release();
    });
}

hp_status hp_plan_parse(const char* text, hp_plan** out)
{
    HP_REQUIRE(text, out);
    return guarded([&] { *out = new hp_plan{hamperc::ExperimentPlan::parse(text)}; });
}

hp_status hp_plan_load(const char* path, hp_plan** out)
{
    HP_REQUIRE(path, out);
    return guarded([&] { *out = new hp_plan{hamperc::ExperimentPlan::load(path)}; });
}

void hp_plan_free(hp_plan* p)
{
    delete p;
}

hp_status hp_plan_set(hp_plan* p, const char* key, const char* value)
{
    HP_REQUIRE(p, key, value);
    return guarded([&] { p->plan.set(key, value); });
}

hp_status hp_plan_serialize(const hp_plan* p, char** out)
{
    HP_REQUIRE(p, out);
    return guarded([&] { *out = dup_string(p->plan.serialize()); });
}

hp_status hp_plan_validate(const hp_plan* p)
{
    HP_REQUIRE(p);
    return guarded([&] { p->plan.validate(); });
}

hp_status hp_run_execute(const hp_plan* p, hp_progress_fn progress, void* user, hp_run** out)
{
    HP_REQUIRE(p, out);
    return guarded([&] {
        hamperc::ProgressFn fn;
        if (progress != nullptr) {
            fn = [progress, user](const std::string& line) { progress(line.c_str(), user); };
        }
        *out = new hp_run{hamperc::run(p->plan, fn)};
    });
}

void hp_run_free(hp_run* r)
{
    delete r;
}

hp_status hp_run_csv(const hp_run* r, char** out)
{
    HP_REQUIRE(r, out);
    return guarded([&] { *out = dup_string(r->rec.csv()); });
}

hp_status hp_run_json(const hp_run* r, char** out)
{
    HP_REQUIRE(r, out);
    return guarded([&] { *out = dup_string(r->rec.to_json().dump(2)); });
}

hp_status hp_run_summary(const hp_run* r, char** out)
{
    HP_REQUIRE(r, out);
    return guarded([&] { *out = dup_string(r->rec.summary_text()); });
}

int hp_run_passed(const hp_run* r)
{
    return r != nullptr && r->rec.pass ? 1 : 0;
}

hp_status hp_run_write_outputs(const hp_run* r)
{
    HP_REQUIRE(r);
    return guarded([&] { r->rec.write_outputs(); });
}

hp_status hp_regime_check(uint32_t d, uint32_t n, double eps, char** out)
{
    HP_REQUIRE(out);
    return guarded([&] {
        const auto w = hamperc::supercritical_regime_check(d, n, eps);
        *out = w ? dup_string(*w) : nullptr;
    });
}

} // extern "C"

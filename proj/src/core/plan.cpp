#include "hamperc/plan.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hamperc/percolation.hpp"

namespace hamperc {

namespace {

constexpr std::string_view kExperimentNames[] = {"simulate", "explore", "sprinkle", "gw", "verify", "sweep"};

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string quoted(std::string_view key)
{
    return "'" + std::string(key) + "'";
}

double to_double(std::string_view key, std::string_view text)
{
    text = trim(text);
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(x)) {
        throw std::invalid_argument(quoted(key) + ": '" + std::string(text) + "' is not a number");
    }
    return x;
}

std::uint64_t to_uint(std::string_view key, std::string_view text)
{
    text = trim(text);
    std::uint64_t x = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw std::invalid_argument(quoted(key) + ": '" + std::string(text) + "' is not a nonnegative integer");
    }
    return x;
}

std::uint32_t to_uint32(std::string_view key, std::string_view text)
{
    const std::uint64_t x = to_uint(key, text);
    if (x > UINT32_MAX) {
        throw std::invalid_argument(quoted(key) + ": value too large");
    }
    return static_cast<std::uint32_t>(x);
}

template <class T, class F>
std::vector<T> split_list(std::string_view text, F convert)
{
    std::vector<T> out;
    while (true) {
        const auto comma = text.find(',');
        out.push_back(convert(trim(text.substr(0, comma))));
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    return out;
}

template <class T>
std::string join(const std::vector<T>& xs)
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0) {
            out += ",";
        }
        if constexpr (std::is_floating_point_v<T>) {
            out += format_double(xs[i]);
        } else {
            out += std::to_string(xs[i]);
        }
    }
    return out;
}

} // namespace

std::string_view to_string(Experiment e)
{
    return kExperimentNames[static_cast<int>(e)];
}

Experiment experiment_from_string(std::string_view name)
{
    for (int i = 0; i < 6; ++i) {
        if (kExperimentNames[i] == name) {
            return static_cast<Experiment>(i);
        }
    }
    throw std::invalid_argument("unknown experiment '" + std::string(name) + "'");
}

std::string format_double(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::vector<double> parse_epsilon_list(std::string_view text)
{
    text = trim(text);
    if (text.empty()) {
        throw std::invalid_argument("'epsilon': empty");
    }
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        return split_list<double>(text, [](std::string_view s) { return to_double("epsilon", s); });
    }
    const auto second = text.find(':', colon + 1);
    if (second == std::string_view::npos) {
        throw std::invalid_argument("'epsilon': range must be start:stop:step");
    }
    const double start = to_double("epsilon", text.substr(0, colon));
    const double stop = to_double("epsilon", text.substr(colon + 1, second - colon - 1));
    const double step = to_double("epsilon", text.substr(second + 1));
    if (!(step > 0.0) || stop < start) {
        throw std::invalid_argument("'epsilon': range needs step > 0 and stop >= start");
    }
    const auto count = static_cast<std::uint64_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 100000) {
        throw std::invalid_argument("'epsilon': range has more than 10^5 values");
    }
    std::vector<double> out;
    for (std::uint64_t i = 0; i < count; ++i) {
        out.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
    return out;
}

void ExperimentPlan::set(std::string_view key, std::string_view value)
{
    const auto dot = key.find('.');
    const std::string_view name = dot == std::string_view::npos ? key : key.substr(dot + 1);
    value = trim(value);
    if (name == "kind" || name == "experiment") {
        experiment = experiment_from_string(value);
    } else if (name == "d") {
        d = to_uint32(key, value);
    } else if (name == "n") {
        n = to_uint32(key, value);
    } else if (name == "epsilon" || name == "eps") {
        epsilons = parse_epsilon_list(value);
    } else if (name == "eta") {
        if (value == "auto" || value == "sqrt_eps_v_sixth") {
            eta.reset();
        } else {
            eta = to_double(key, value);
        }
    } else if (name == "cap") {
        cap = to_uint(key, value);
    } else if (name == "replicas") {
        replicas = to_uint(key, value);
    } else if (name == "seed") {
        seed = to_uint(key, value);
    } else if (name == "threads") {
        threads = to_uint32(key, value);
    } else if (name == "k") {
        k_thresholds = value.empty()
                           ? std::vector<std::uint64_t>{}
                           : split_list<std::uint64_t>(value, [](std::string_view s) { return to_uint("k", s); });
    } else if (name == "N") {
        gw_N = to_uint(key, value);
    } else if (name == "tail") {
        gw_tail = to_uint(key, value);
    } else if (name == "pmf") {
        gw_pmf = to_uint(key, value);
    } else if (name == "csv" || name == "out_csv") {
        out_csv = std::string(value);
    } else if (name == "json" || name == "out_json") {
        out_json = std::string(value);
    } else {
        throw std::invalid_argument("unknown plan key " + quoted(key));
    }
}

std::string ExperimentPlan::serialize() const
{
    std::ostringstream out;
    out << "[experiment]\nkind = " << to_string(experiment) << "\n\n";
    out << "[graph]\nd = " << d << "\nn = " << n << "\n\n";
    out << "[percolation]\nepsilon = " << join(epsilons) << "\n";
    out << "eta = " << (eta ? format_double(*eta) : std::string("auto")) << "\n";
    out << "cap = " << cap << "\n\n";
    out << "[run]\nreplicas = " << replicas << "\nseed = " << seed << "\nthreads = " << threads << "\n";
    out << "k = " << join(k_thresholds) << "\n\n";
    out << "[gw]\nN = " << gw_N << "\ntail = " << gw_tail << "\npmf = " << gw_pmf << "\n\n";
    out << "[output]\ncsv = " << out_csv << "\njson = " << out_json << "\n";
    return out.str();
}

ExperimentPlan ExperimentPlan::parse(std::string_view text)
{
    ExperimentPlan plan;
    std::string section;
    int lineno = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw std::invalid_argument("config line " + std::to_string(lineno) + ": malformed section header");
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected 'key = value'");
        }
        const std::string key = section.empty() ? std::string(trim(line.substr(0, eq)))
                                                : section + "." + std::string(trim(line.substr(0, eq)));
        try {
            plan.set(key, line.substr(eq + 1));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return plan;
}

ExperimentPlan ExperimentPlan::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void ExperimentPlan::validate() const
{
    if (replicas == 0) {
        throw std::invalid_argument("replicas must be at least 1");
    }
    if (epsilons.empty()) {
        throw std::invalid_argument("epsilon is required");
    }
    if (experiment != Experiment::Sweep && experiment != Experiment::Verify && epsilons.size() != 1) {
        throw std::invalid_argument(std::string(to_string(experiment)) + " takes a single epsilon");
    }
    for (const std::uint64_t k : k_thresholds) {
        if (k == 0) {
            throw std::invalid_argument("k thresholds must be at least 1");
        }
    }
    if (experiment == Experiment::Verify) {
        return;
    }
    if (experiment == Experiment::Gw) {
        const std::uint64_t trials = gw_N != 0 ? gw_N : HammingGraph(d, n).degree();
        for (const double eps : epsilons) {
            const double p = (1.0 + eps) / static_cast<double>(trials);
            if (!(p >= 0.0 && p <= 1.0)) {
                throw std::domain_error("gw: p = (1 + eps) / N = " + format_double(p) + " outside [0, 1]");
            }
        }
        return;
    }
    const HammingGraph g(d, n); // throws invalid_argument / overflow_error
    const double omega = static_cast<double>(g.degree());
    for (const double eps : epsilons) {
        if (!(eps >= -1.0 && eps <= omega - 1.0)) {
            throw std::domain_error("epsilon = " + format_double(eps) + " outside [-1, Omega - 1]");
        }
    }
    if (eta && !(*eta >= 0.0)) {
        throw std::domain_error("eta must be nonnegative");
    }
    if ((experiment == Experiment::Explore || experiment == Experiment::Sprinkle) && d != 2) {
        throw std::invalid_argument(std::string(to_string(experiment)) + " requires d = 2");
    }
    if (experiment == Experiment::Sprinkle && !eta && !(epsilon() > 0.0)) {
        throw std::domain_error("sprinkle with the default eta requires epsilon > 0");
    }
    for (const std::uint64_t k : k_thresholds) {
        if (k > g.vertex_count() + 1) {
            throw std::invalid_argument("k threshold " + std::to_string(k) + " exceeds V + 1");
        }
    }
    if (cap > g.vertex_count()) {
        throw std::invalid_argument("cap exceeds V");
    }
}

double ExperimentPlan::resolved_eta(double eps) const
{
    if (eta) {
        return *eta;
    }
    if (!(eps > 0.0)) {
        return 0.0;
    }
    return default_eta(eps, HammingGraph(d, n).vertex_count());
}

} // namespace hamperc

// hamming-perc: command-line front end over the C API.
//
// Exit codes: 0 ok, 1 a verify criterion failed, 2 usage or i/o error,
// 3 parameter outside the numeric domain, 4 internal error.
#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hamperc/hamperc.h"

namespace {

int exit_code(hp_status s)
{
    switch (s) {
    case HP_OK:
        return 0;
    case HP_ERR_INVALID_ARGUMENT:
    case HP_ERR_IO:
    case HP_ERR_NULL:
        return 2;
    case HP_ERR_DOMAIN:
    case HP_ERR_OVERFLOW:
    case HP_ERR_LIMIT:
        return 3;
    default:
        return 4;
    }
}

int report(hp_status s)
{
    std::fprintf(stderr, "hamming-perc: %s: %s\n", hp_status_string(s), hp_last_error());
    return exit_code(s);
}

struct Owned {
    char* s = nullptr;
    ~Owned() { hp_string_free(s); }
};

// Flag name -> plan key; the value is kept as text and parsed by the plan.
const std::vector<std::pair<std::string, std::string>> kCommonFlags = {
    {"d", "graph.d"},
    {"n", "graph.n"},
    {"eps", "percolation.epsilon"},
    {"eta", "percolation.eta"},
    {"k", "run.k"},
    {"replicas", "run.replicas"},
    {"seed", "run.seed"},
    {"threads", "run.threads"},
    {"out-csv", "output.csv"},
    {"out-json", "output.json"},
};

struct Command {
    std::string name;
    std::string help;
    std::vector<std::pair<std::string, std::string>> extra; // flag, plan key
};

const std::vector<Command> kCommands = {
    {"simulate", "sample configurations and report cmax, c2 and Z_{>=k} per replica", {}},
    {"explore", "run capped cluster explorations from uniform origins (d = 2)", {{"cap", "percolation.cap"}}},
    {"sprinkle", "two-round exposure: p_- clusters, then sprinkling (d = 2)", {}},
    {"gw", "exact binomial Galton-Watson quantities",
     {{"N", "gw.N"}, {"tail", "gw.tail"}, {"pmf", "gw.pmf"}}},
    {"verify", "run the acceptance suite; exit 1 on any failure", {}},
    {"sweep", "simulate over a list or range of eps (a:b:step)", {}},
};

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bond percolation on Hamming graphs H(d, n)", "hamming-perc"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(hp_version()));

    std::map<std::string, std::string> values; // flag -> text, only flags given
    std::map<std::string, std::string> plan_key;
    std::string config_path;
    for (const Command& c : kCommands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("--config", config_path, "key = value config file; flags override it");
        auto flags = kCommonFlags;
        flags.insert(flags.end(), c.extra.begin(), c.extra.end());
        for (const auto& [flag, key] : flags) {
            plan_key[flag] = key;
            sub->add_option_function<std::string>(
                "--" + flag, [&values, flag = flag](const std::string& v) { values[flag] = v; }, key);
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    hp_plan* plan = nullptr;
    hp_status s = config_path.empty() ? hp_plan_create(command.c_str(), &plan)
                                      : hp_plan_load(config_path.c_str(), &plan);
    if (s != HP_OK) {
        return report(s);
    }
    std::unique_ptr<hp_plan, decltype(&hp_plan_free)> plan_guard(plan, hp_plan_free);
    s = hp_plan_set(plan, "experiment.kind", command.c_str());
    for (const auto& [flag, text] : values) {
        if (s == HP_OK) {
            s = hp_plan_set(plan, plan_key.at(flag).c_str(), text.c_str());
        }
    }
    if (s != HP_OK) {
        return report(s);
    }

    hp_progress_fn progress = nullptr;
    if (command == "verify") {
        progress = [](const char* line, void*) {
            std::printf("%s\n", line);
            std::fflush(stdout);
        };
    }
    hp_run* run = nullptr;
    if ((s = hp_run_execute(plan, progress, nullptr, &run)) != HP_OK) {
        return report(s);
    }
    std::unique_ptr<hp_run, decltype(&hp_run_free)> run_guard(run, hp_run_free);
    if ((s = hp_run_write_outputs(run)) != HP_OK) {
        return report(s);
    }
    if (command != "verify") {
        Owned text;
        if ((s = hp_run_summary(run, &text.s)) != HP_OK) {
            return report(s);
        }
        std::fputs(text.s, stdout);
    } else {
        std::printf("%s\n", hp_run_passed(run) ? "all criteria passed" : "some criteria FAILED");
    }
    return hp_run_passed(run) ? 0 : 1;
}

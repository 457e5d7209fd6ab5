// One line per criterion; exit status 1 if any fails.
//   acceptance [--seed S] [--threads T] [--only ID]
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "hamperc/acceptance.hpp"

int main(int argc, char** argv)
{
    hamperc::AcceptanceOptions opts;
    int only = 0;
    for (int i = 1; i + 1 < argc; i += 2) {
        if (!std::strcmp(argv[i], "--seed")) {
            opts.seed = std::stoull(argv[i + 1]);
        } else if (!std::strcmp(argv[i], "--threads")) {
            opts.threads = static_cast<unsigned>(std::stoul(argv[i + 1]));
        } else if (!std::strcmp(argv[i], "--only")) {
            only = std::stoi(argv[i + 1]);
        } else {
            std::fprintf(stderr, "unknown option %s\n", argv[i]);
            return 2;
        }
    }

    int failed = 0;
    const auto report = [&](const hamperc::CriterionResult& r) {
        failed += !r.pass;
        std::printf("%s\n", hamperc::format_result_line(r).c_str());
        std::fflush(stdout);
    };
    if (only != 0) {
        report(hamperc::run_criterion(only, opts));
        return failed ? 1 : 0;
    }
    hamperc::run_acceptance(opts, report);
    std::printf("info: second-largest cluster diagnostic %s\n",
                hamperc::duality_acceptance_report(opts).dump().c_str());
    std::printf("%d/%d criteria passed\n", hamperc::kCriterionCount - failed, hamperc::kCriterionCount);
    return failed ? 1 : 0;
}

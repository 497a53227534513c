#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "selftest.hpp"

using namespace ridgeframe;

int main(int argc, char** argv) {
    CLI::App app{"ridgeframe acceptance suite"};
    selftest::Config cfg;
    std::string junit;
    app.add_flag("--quick", cfg.quick, "reduced fixtures");
    app.add_option("--seed", cfg.seed, "suite seed");
    app.add_option("--only", cfg.only, "criteria to run");
    app.add_option("--junit", junit, "JUnit XML report path");
    CLI11_PARSE(app, argc, argv);

    const auto results = selftest::run(cfg, [](const selftest::Result& r) {
        std::printf("%s  %s  (%.1fs / %.0fs)\n", r.pass() ? "ok  " : "FAIL", r.report().c_str(), r.seconds,
                    r.budget);
        std::fflush(stdout);
    });
    if (!junit.empty()) std::ofstream(junit) << selftest::junit_xml(results);
    return selftest::all_pass(results) ? 0 : 1;
}

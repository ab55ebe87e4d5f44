// Runs every spec under experiments/ and prints one line per criterion.
#include <cstdio>
#include <iostream>
#include <map>
#include <set>

#include "../oracle/oracle.hpp"
#include "planwidth/experiment.hpp"

using namespace planwidth;

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : PLANWIDTH_EXPERIMENT_DIR;
    auto registry = builtin_metrics();
    oracle::register_metrics(registry);

    int failed = 0;
    for (const auto& path : list_specs(dir)) {
        ExperimentSpec spec;
        std::string line;
        bool pass = false;
        try {
            spec = load_spec(path);
            auto rep = run_experiment(spec, registry);
            pass = rep.pass;
            // failing check ids with their row counts
            std::map<std::string, std::size_t> row_fails;
            for (const auto& row : rep.rows) {
                for (const auto& c : row.value("checks", json::array()))
                    if (!c.at("pass").get<bool>()) ++row_fails[c.at("check").get<std::string>()];
                if (row.contains("errors") && !row.at("errors").empty()) ++row_fails["errors"];
            }
            line = std::to_string(rep.rows.size()) + " rows";
            for (const auto& [id, k] : row_fails) line += "; " + id + " failed on " + std::to_string(k);
            for (const auto& a : rep.aggregate)
                line += "; " + a.id + (a.pass ? " ok" : " FAILED") + (a.detail.empty() ? "" : " (" + a.detail + ")");
        } catch (const std::exception& e) {
            line = std::string("error: ") + e.what();
        }
        std::printf("criterion %2d %s %s: %s\n", spec.criterion, pass ? "PASS" : "FAIL", spec.name.c_str(),
                    line.c_str());
        failed += !pass;
    }
    std::printf("%d criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}

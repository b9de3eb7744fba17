// Runs the acceptance criteria at their stated sizes and prints one line per
// criterion. With an argument N only criterion N runs. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>

#include "qd1/verify.hpp"

using qd1::oracle::TrialConfig;
using qd1::verify::SuiteReport;

namespace {

TrialConfig config(std::size_t trials, std::size_t samples) {
    TrialConfig cfg;
    cfg.seed = 20240601;
    cfg.trials = trials;
    cfg.samples_per_instance = samples;
    cfg.max_prime = 13;
    cfg.max_exp = 4;
    return cfg;
}

struct Criterion {
    int id;
    std::string name;
    std::function<SuiteReport()> run;
};

} // namespace

int main(int argc, char** argv) {
    const int only = argc > 1 ? std::atoi(argv[1]) : 0;
    const Criterion criteria[] = {
        {1, "ring-laws 50 groups x 1000 triples", [] { return qd1::verify::ring_laws(config(50, 1000)); }},
        {2, "torsion-cyclic 200 elements x 10", [] { return qd1::verify::torsion_cyclic(config(200, 10)); }},
        {3, "nontorsion-principal 100 groups x 20", [] { return qd1::verify::principal_nontorsion(config(100, 20)); }},
        {4, "torsion-principal 50 reduced + 50 nonreduced", [] { return qd1::verify::principal_torsion(config(50, 20)); }},
        {5, "torsion-products-principal 100 x 20", [] { return qd1::verify::principal_torsion_products(config(100, 20)); }},
        {6, "absolute-principal 200", [] { return qd1::verify::absolute_principal(config(200, 20)); }},
        {7, "ai-classification 20 + 100 rings x 20 ideals", [] { return qd1::verify::ai_classification(config(100, 20)); }},
        {8, "mult-iso 200", [] { return qd1::verify::mult_iso(config(200, 20)); }},
        {9, "height-oracle 500 at bound 6", [] { return qd1::verify::heights(config(500, 1), 6); }},
        {10, "mutation-sensitivity 3 mutations", [] { return qd1::verify::mutations(config(30, 20)); }},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        if (only != 0 && c.id != only) continue;
        auto start = std::chrono::steady_clock::now();
        SuiteReport r = c.run();
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::size_t trials = 0, failures = 0;
        std::string first;
        for (const auto& check : r.checks) {
            trials += check.trials;
            failures += check.failures;
            if (first.empty() && !check.passed()) first = check.check + ": " + check.detail;
        }
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", secs);
        std::cout << (r.passed() ? "PASS" : "FAIL") << " criterion-" << c.id << " " << c.name << " checks=" << r.checks.size()
                  << " trials=" << trials << " failures=" << failures << " time=" << timing
                  << (first.empty() ? "" : " first_failure=" + first) << "\n";
        if (!r.passed()) {
            ++failed;
            std::cout << r.text();
        }
    }
    std::cout << (failed == 0 ? "ALL CRITERIA PASS" : std::to_string(failed) + " CRITERIA FAIL") << "\n";
    return failed;
}

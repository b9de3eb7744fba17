#pragma once

// Randomized verification suites. Each suite draws its instances from
// Rng(seed, suite stream, instance index) and aggregates oracle checks.

#include <string>
#include <vector>

#include "qd1/oracle.hpp"

namespace qd1::verify {

struct SuiteReport {
    std::string suite;
    std::vector<oracle::CheckReport> checks;

    bool passed() const;
    /// One report line per check, then `PASS|FAIL suite=<name>`.
    std::string text() const;
    /// Single-line JSON summary.
    std::string json() const;
};

// cfg.trials counts instances, cfg.samples_per_instance the samples per instance.
SuiteReport ring_laws(const oracle::TrialConfig& cfg);
SuiteReport torsion_cyclic(const oracle::TrialConfig& cfg);
SuiteReport principal_nontorsion(const oracle::TrialConfig& cfg);
SuiteReport principal_torsion(const oracle::TrialConfig& cfg);
SuiteReport principal_torsion_products(const oracle::TrialConfig& cfg);
SuiteReport absolute_principal(const oracle::TrialConfig& cfg);
SuiteReport ai_classification(const oracle::TrialConfig& cfg);
SuiteReport mult_iso(const oracle::TrialConfig& cfg);
SuiteReport heights(const oracle::TrialConfig& cfg, std::uint64_t bound = 6);
/// Runs reduced-size suites under each mutation; a check passes when the
/// mutation makes at least one suite fail.
SuiteReport mutations(const oracle::TrialConfig& cfg);

/// Names accepted by run_named.
std::vector<std::string> suite_names();
/// DomainError for an unknown name.
SuiteReport run_named(const std::string& name, const oracle::TrialConfig& cfg);

} // namespace qd1::verify

#pragma once

#include "semihilbert/io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace semihilbert {

/// Randomized property suites. Each instance is a self-contained JSON case
/// (matrices at round-trip precision plus seeds), so any violation can be
/// replayed bit-for-bit with evaluate_case.

struct SuiteConfig {
    std::uint64_t seed = 42;
    int samples = 20000;   // oracle samples per instance
    int count = 0;         // instances; 0 selects the suite default
};

struct Check {
    std::string name;
    int passed = 0;
    int total = 0;
    double worst = 0.0;   // largest normalized violation measure seen
    bool ok() const { return passed == total; }
};

struct Violation {
    std::string suite;
    std::string check;
    int index = 0;
    Json instance;
    Json outcome;
};

struct SuiteResult {
    std::string name;
    int instances = 0;
    double seconds = 0.0;
    std::vector<Check> checks;
    std::vector<Violation> violations;

    bool pass() const { return violations.empty(); }
    const Check* find(const std::string& check) const;
};

std::vector<std::string> suite_names();

/// Generates the instances of `suite` without evaluating them.
std::vector<Json> generate_cases(const std::string& suite, const SuiteConfig& cfg);

/// Evaluates one case: {"checks": {name: {"ok": bool, "measure": x, ...}}, ...}.
Json evaluate_case(const std::string& suite, const Json& instance);

SuiteResult run_suite(const std::string& suite, const SuiteConfig& cfg);

Json violation_to_json(const Violation& v);
Json suite_result_to_json(const SuiteResult& r);

/// Re-evaluates a serialized violation; the returned outcome matches the
/// stored one exactly on the same platform.
Json replay_violation(const Json& violation);

} // namespace semihilbert

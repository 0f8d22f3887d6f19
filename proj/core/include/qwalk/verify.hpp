#pragma once

// Acceptance checks. Each check returns a pass flag together with the
// measured values it was decided on.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qwalk/calibration.hpp"
#include "qwalk/markov.hpp"

namespace qwalk {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    nlohmann::json measured;
};

nlohmann::json to_json(const CriterionResult& r);

struct VerifyOptions {
    std::uint64_t seed = 1;
    std::int64_t trials = 100000;
    Calibration constants;
    /// Torus sides for the end-to-end search and cost checks.
    std::vector<Index> search_sizes = {16, 32};
    /// Torus sides for the separation check on the halfcheck family.
    std::vector<Index> separation_sizes = {8, 16, 32, 64};
};

/// Reversible ergodic chain from a random symmetric weight matrix: a ring
/// plus random chords and self-loops, normalised by column.
WalkMatrix random_reversible_chain(Index n, std::mt19937_64& engine);

CriterionResult verify_oracle(const VerifyOptions& options);        // 1
CriterionResult verify_extended(const VerifyOptions& options);      // 2
CriterionResult verify_theorems(const VerifyOptions& options);      // 3
CriterionResult verify_escape(const VerifyOptions& options);        // 4
CriterionResult verify_localization(const VerifyOptions& options);  // 5
CriterionResult verify_coverage(const VerifyOptions& options);      // 6
CriterionResult verify_finding(const VerifyOptions& options);       // 7
/// Criteria 8 and 9 share their searches.
std::vector<CriterionResult> verify_search(const VerifyOptions& options);

/// oracle, extended, theorems, escape, locality, finding, search, all.
const std::vector<std::string>& suite_names();
std::vector<CriterionResult> run_suite(const std::string& name, const VerifyOptions& options);

}  // namespace qwalk

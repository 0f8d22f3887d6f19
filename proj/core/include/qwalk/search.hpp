#pragma once

// Multi-marked search on the n x n torus: estimate h, cut the torus into
// grid blocks of side about 2 ceil(4 sqrt(h)), and run interpolated finding
// in every block with a shared estimate 2^-k of the marked fraction.
//
// Blocks are combined as a mixture weighted by their stationary mass, so the
// success of one run is sum_G eps_G success_G.

#include <cstdint>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "qwalk/calibration.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/markov.hpp"
#include "qwalk/quantum.hpp"

namespace qwalk {

struct SearchConfig {
    Index n = 0;
    std::vector<Index> marked;
    /// Fixed exponent; every k in 1..floor(log2 N) is evaluated when empty.
    std::optional<int> k;
    std::uint64_t seed = 0;
    Calibration constants;
    /// Also draw one k (if unset), one block and one vertex.
    bool sample = false;
};

/// floor(log2(n * n)).
int max_exponent(Index n);

/// ceil(c2 D sqrt(max(1, ln D))).
Index block_steps(Index side, double c2);

struct BlockOutcome {
    Index block = 0;
    Range rows;
    Range cols;
    double weight = 0.0;
    Index marked_count = 0;
    double success = 0.0;
};

struct KOutcome {
    int k = 0;
    double eps_tilde = 0.0;
    double success = 0.0;
    std::vector<double> block_success;
};

struct SampleOutcome {
    int k = 0;
    Index block = 0;
    Index vertex = 0;
    bool marked = false;
};

struct SearchReport {
    Index n = 0;
    Index h_unique = 0;
    EffectiveEstimate estimate;
    Index d = 0;
    PartitionLayout layout;
    Index block_side = 0;
    Index steps_per_block = 0;
    std::vector<BlockOutcome> blocks;  // success field holds the best-k value
    std::vector<KOutcome> per_k;
    int best_k = 0;
    double best_success = 0.0;
    /// Average of per_k successes, the success of a uniformly drawn k.
    double uniform_success = 0.0;
    /// 1 - prod_k (1 - success_k); filled by run_k_sweep.
    std::optional<double> sweep_success;
    /// Estimator plus one finding run.
    CostLedger ledger;
    /// Estimator plus one finding run per k; filled by run_k_sweep.
    std::optional<CostLedger> sweep_ledger;
    std::optional<SampleOutcome> sample;

    /// "found", "unsuccessful search" (sampling mode) or "probability".
    std::string verdict() const;
};

SearchReport run_search(const SearchConfig& config);
SearchReport run_k_sweep(const SearchConfig& config);

nlohmann::json to_json(const SearchReport& report);

struct CostCheck {
    std::int64_t steps = 0;
    double bound = 0.0;
    double ratio = 0.0;
    bool h_branch = false;
};

/// Steps against c3 min{sqrt(H max(1, ln H)), sqrt(N ln N)}.
CostCheck verify_cost_bound(const SearchReport& report, double h_eff, double c3);
/// The min{...} term without c3.
double cost_scale(double h_eff, Index n_vertices, bool* h_branch = nullptr);

nlohmann::json to_json(const CostCheck& check);

}  // namespace qwalk

#pragma once

// Monte Carlo localization experiments for random walks on the infinite
// line, the infinite grid and the torus.
//
// Randomness: std::mt19937_64 seeded with std::seed_seq{seed, chunk} for each
// chunk of kTrialChunk trials. Steps consume raw output bits (one per line
// step, two per grid step), so reports are reproducible for a given seed and
// standard library.

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "qwalk/graph.hpp"
#include "qwalk/markov.hpp"

namespace qwalk {

inline constexpr std::int64_t kTrialChunk = 4096;
/// Two-sided 99% normal quantile.
inline constexpr double kZ99 = 2.5758293035489004;

struct Interval {
    double low = 0.0;
    double high = 1.0;
};

/// Wilson score interval for `successes` out of `trials`.
Interval wilson_interval(std::int64_t successes, std::int64_t trials, double z = kZ99);

/// ceil(4 sqrt(T)).
Index localization_threshold(Index steps);

struct WalkTrajectory {
    Index start = 0;
    std::vector<Index> states;  // excludes the start
};

/// T transitions drawn from the columns of P.
WalkTrajectory sample_walk(const WalkMatrix& P, Index start, Index steps, std::uint64_t seed);

enum class LatticeKind { line, grid };

struct LatticePath {
    std::vector<Coord> positions;  // positions[0] is the origin
    Coord max_displacement;        // per-axis maximum of |coordinate|
};

/// Infinite line: +-1 with probability 1/2. Infinite grid: one of the four
/// unit moves with probability 1/4. Starts at the origin.
LatticePath sample_lattice_walk(LatticeKind kind, Index steps, std::uint64_t seed);

struct LocalityReport {
    LatticeKind kind = LatticeKind::line;
    Index steps = 0;
    std::int64_t trials = 0;
    Index threshold = 0;
    std::int64_t localized = 0;
    /// Walks whose final position is beyond the threshold on some axis.
    std::int64_t endpoint_escapes = 0;
    double fraction = 0.0;
    Interval wilson;
    std::uint64_t seed = 0;
};

/// Fraction of walks whose per-axis displacement never exceeds ceil(4 sqrt(T)).
LocalityReport line_localization(Index steps, std::int64_t trials, std::uint64_t seed);
LocalityReport grid_localization(Index steps, std::int64_t trials, std::uint64_t seed);

nlohmann::json to_json(const LocalityReport& r);

struct CoverageReport {
    Index n = 0;
    Index steps = 0;
    Index threshold = 0;
    Index d = 0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    std::int64_t hits = 0;                    // walk visits M
    std::int64_t localized_hits = 0;          // localized and visits M
    std::int64_t localized_block_hits = 0;    // localized and enters a block containing M
    double p_hat = 0.0;
    double p_ml = 0.0;
    double p_gl = 0.0;
    /// Stationary mass of the blocks that contain a marked vertex (exact).
    double p_g = 0.0;
    Index blocks = 0;
    Index marked_blocks = 0;

    /// Binomial standard error sqrt(p (1 - p) / trials).
    double sigma(double p) const;
};

/// Walks of T steps on the n x n torus from a uniform start, partitioned with
/// d = min(n, 2 ceil(4 sqrt(T))). The start counts as visited.
CoverageReport subgrid_coverage(Index n, const MarkedSet& marked, Index steps, std::int64_t trials,
                                std::uint64_t seed);

nlohmann::json to_json(const CoverageReport& r);

}  // namespace qwalk

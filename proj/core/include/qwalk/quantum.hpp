#pragma once

// Szegedy walk simulation on the invariant subspace spanned by
//   a_x = |x>|p_x>   and   b_y = |p_y>|y>,
// where |p_x> = sum_y sqrt(P_yx) |y>. A state is stored as coefficient
// vectors (alpha, beta) with respect to this (generally non-orthogonal) set;
// its Gram matrix is [[I, D], [D, I]] with D the discriminant.

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "qwalk/markov.hpp"
#include "qwalk/spectral.hpp"

namespace qwalk {

/// Setup / update / check operation counts of one run.
struct CostLedger {
    std::int64_t setup = 0;
    std::int64_t update = 0;
    std::int64_t check = 0;

    void charge_setup(std::int64_t count = 1) { setup += count; }
    /// One walk step costs one update and one check.
    void charge_steps(std::int64_t count) {
        update += count;
        check += count;
    }
    std::int64_t steps() const { return update; }
    std::int64_t total() const { return setup + update + check; }

    CostLedger& operator+=(const CostLedger& other);
    bool operator==(const CostLedger&) const = default;
};

nlohmann::json to_json(const CostLedger& ledger);

struct WalkState {
    Eigen::VectorXd alpha;
    Eigen::VectorXd beta;
};

class SzegedyWalk {
public:
    explicit SzegedyWalk(WalkMatrix base);

    Index dim() const { return base_.dim(); }
    const WalkMatrix& base() const { return base_; }
    const SparseMatrix& discriminant() const { return d_; }

    /// W = S * Ref_A acts as (alpha, beta) -> (-beta, alpha + 2 D beta).
    WalkState step(const WalkState& state) const;
    void step_in_place(WalkState& state) const;

    /// Inner product through the Gram matrix.
    double inner(const WalkState& lhs, const WalkState& rhs) const;

    /// Probability of each first-register value: alpha^2 + 2 alpha (D beta) + P (beta^2).
    Eigen::VectorXd first_register(const WalkState& state) const;

    /// W in an orthonormal basis of the span; dimension is the Gram rank.
    Eigen::MatrixXd orthonormal_operator() const;

    /// Eigenphases of orthonormal_operator() in [-pi, pi], ascending.
    Eigen::VectorXd eigenphases() const;

private:
    WalkMatrix base_;
    SparseMatrix d_;
};

SzegedyWalk build_walk(const WalkMatrix& base);

/// Phases +-arccos(l) for every |l| < 1 and one phase for each l = +-1,
/// ascending. This is the spectrum the walk must reproduce.
Eigen::VectorXd expected_eigenphases(const Eigen::VectorXd& discriminant_eigenvalues);

/// Initial state sum_x sqrt(pi_x) a_x.
WalkState initial_state(const Eigen::VectorXd& sqrt_pi);

/// |<init|W^steps init>| for the walk of `walk_base`, starting from `sqrt_pi`.
double detection_overlap(const SzegedyWalk& walk, const Eigen::VectorXd& sqrt_pi, Index steps);

struct DetectionResult {
    double overlap = 1.0;
    CostLedger ledger;
};

/// Runs `steps` steps of W(P') from sum_x sqrt(pi_x) a'_x.
DetectionResult simulate_detection(const WalkMatrix& P, const MarkedSet& marked, Index steps);

/// Closed form eps_M + sum_k <v_k|sqrt(pi_U)>^2 cos(steps * arccos l_k) over
/// the eigenpairs of the unmarked block of D(P').
double detection_overlap_spectral(const WalkMatrix& P, const MarkedSet& marked, Index steps);

/// Interpolation parameter 1 - e / (1 - e), clamped to [0, 1 - 1e-9].
double interpolation_parameter(double eps_estimate);

struct FindResult {
    double success = 0.0;
    double s = 0.0;
    Index steps = 0;
    /// First-register distribution averaged over t = 0..steps-1.
    Eigen::VectorXd average_distribution;
    CostLedger ledger;
};

/// Walks W(P(s)) from sum_x sqrt(pi_x) a_x^(s) and averages the probability of
/// a marked first register over t = 0..steps-1.
FindResult find_via_interpolation(const WalkMatrix& P, const MarkedSet& marked, double eps_estimate,
                                  Index steps);

/// Success of find_via_interpolation for every T = 1..max_steps (entry T-1),
/// from a single walk run.
std::vector<double> interpolation_success_curve(const WalkMatrix& P, const MarkedSet& marked,
                                                double eps_estimate, Index max_steps);

/// Detection overlaps for T = 0..max_steps from a single walk run.
std::vector<double> detection_overlap_curve(const WalkMatrix& P, const MarkedSet& marked, Index max_steps);

struct EstimateOptions {
    double threshold = 0.75;
    /// Halt once the charged steps would exceed this and report `fallback`.
    std::optional<std::int64_t> step_budget;
    Index fallback = 0;
};

struct EffectiveEstimate {
    Index h_tilde = 0;
    bool capped = false;
    std::vector<Index> probes;
    CostLedger ledger;
};

nlohmann::json to_json(const EffectiveEstimate& e);

/// Doubling search T = 1, 2, 4, ... for the first T at which the absorbing
/// walk from the unmarked-conditioned stationary start carries `threshold`
/// mass into M. Each probe is charged ceil(sqrt(T)) steps.
EffectiveEstimate estimate_effective_ht(const WalkMatrix& P, const MarkedSet& marked,
                                        const EstimateOptions& options = {});

/// Upper bound on the estimator's charged steps when it returns h_tilde
/// without hitting a budget: (2 + sqrt 2) sqrt(h) + log2(h) + 1.
double estimator_step_bound(Index h_tilde);

/// Effective hitting time of one marked vertex on the n x n torus. Cached.
Index unique_hitting_time(Index n);

/// Estimator on a torus walk with step budget ceil(sqrt(unique_hitting_time(n))).
EffectiveEstimate cap_estimate(const WalkMatrix& P, const MarkedSet& marked, Index n);

}  // namespace qwalk

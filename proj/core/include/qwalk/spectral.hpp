#pragma once

// Spectral functionals of reversible walks: hitting time, escape time and the
// extended hitting time, each with an independent route for cross-checking.

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "qwalk/markov.hpp"

namespace qwalk {

/// Largest dimension for which the dense eigendecomposition is used by
/// default. Above it the resolvent (conjugate-gradient) route is taken.
inline constexpr Index kDenseSpectralLimit = 1024;

enum class SpectralRoute { automatic, eigen, resolvent };

/// Eigenpairs of a symmetric matrix, eigenvalues sorted descending.
struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;  // column k pairs with eigenvalues(k)

    Index size() const { return eigenvalues.size(); }
    double gap() const { return size() > 1 ? 1.0 - eigenvalues(1) : 1.0; }
};

/// Throws NumericalError if max |V diag(l) V^T - D| exceeds 1e-8.
SpectralDecomposition decompose(const Eigen::MatrixXd& symmetric);
SpectralDecomposition decompose(const Discriminant& d);

/// sum_k |<l'_k|U_pi>|^2 / (1 - l'_k) over the unmarked block of D(P').
/// Equivalent to <U_pi| (I - D'_UU)^{-1} |U_pi>, which the resolvent route
/// evaluates without a decomposition.
double hitting_time_spectral(const WalkMatrix& P, const MarkedSet& marked,
                             SpectralRoute route = SpectralRoute::automatic);

/// Expected absorption time from the pi-conditioned unmarked start, from the
/// linear system (I - Q) t = 1 with Q the unmarked block of P^T.
double hitting_time_linear(const WalkMatrix& P, const MarkedSet& marked);

enum class StartDistribution { conditioned_unmarked, stationary };

struct EffectiveOptions {
    double threshold = 2.0 / 3.0;
    StartDistribution start = StartDistribution::conditioned_unmarked;
};

/// Smallest T such that T steps of P' move at least `threshold` of the start
/// distribution into the marked set. Capped at 100 * ceil(HT).
Index effective_hitting_time(const WalkMatrix& P, const MarkedSet& marked,
                             const EffectiveOptions& options = {});

/// |S_pi> = eps_S^{-1/2} sum_{x in S} sqrt(pi_x) |x>.
Eigen::VectorXd subset_state(const StationaryDistribution& pi, std::span<const Index> subset);

/// sum_{k >= 2} |<l_k|g>|^2 / (1 - l_k) for the decomposition of D(P).
double escape_time(const SpectralDecomposition& spectrum, const Eigen::VectorXd& g);
double escape_time(const WalkMatrix& P, const Eigen::VectorXd& g,
                   SpectralRoute route = SpectralRoute::automatic);
double escape_time_subset(const WalkMatrix& P, std::span<const Index> subset,
                          SpectralRoute route = SpectralRoute::automatic);

struct ExtendedHittingTime {
    double value = 0.0;       // (1 / eps_M) E(P, M_pi)
    double escape = 0.0;      // E(P, M_pi)
    double eps_marked = 0.0;
};

ExtendedHittingTime extended_hitting_time(const WalkMatrix& P, const MarkedSet& marked,
                                          SpectralRoute route = SpectralRoute::automatic);

/// Hitting time of the interpolated walk P(s): the escape functional of
/// D(P(s)) evaluated on |U_pi>. It increases to the extended hitting time as
/// s -> 1.
double interpolated_hitting_time(const WalkMatrix& P, const MarkedSet& marked, double s);

struct InterpolationLimit {
    double limit = 0.0;
    std::vector<double> s;
    std::vector<double> values;
};

/// Evaluates interpolated_hitting_time along an ascending schedule and
/// extrapolates a + b (1 - s) through the two largest s. The default schedule
/// is 1 - eps_M * 10^-j for j = 1..4.
InterpolationLimit extended_hitting_time_limit(const WalkMatrix& P, const MarkedSet& marked,
                                               std::vector<double> s_list = {});

struct HittingTimes {
    double ht = 0.0;
    double ht_linear = 0.0;
    Index ht_eff = 0;
    double eht = 0.0;
    double eht_limit = 0.0;
    double escape = 0.0;
    std::optional<double> gap;
    double eps_marked = 0.0;
    bool ergodic = false;
};

/// Every functional above for one instance. The gap is omitted above the
/// dense limit.
HittingTimes analyze(const WalkMatrix& P, const MarkedSet& marked);

nlohmann::json to_json(const HittingTimes& h);

}  // namespace qwalk

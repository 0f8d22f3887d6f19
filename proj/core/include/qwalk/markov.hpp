#pragma once

// Column-stochastic walk matrices and the derived chains used throughout:
// absorbing walk, interpolated walk and discriminant.
//
// Convention: entry (to, from). Column x holds the distribution of the next
// state given current state x, so distributions evolve as p <- P * p.

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <nlohmann/json.hpp>

#include "qwalk/graph.hpp"

namespace qwalk {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;

/// Raised when a numerical routine cannot meet its stated tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace tolerance {
inline constexpr double stochastic = 1e-12;
inline constexpr double fixed_point = 1e-10;
inline constexpr double reversible = 1e-10;
inline constexpr double symmetric = 1e-12;
}  // namespace tolerance

enum class WalkKind { plain, absorbing, interpolated };

class WalkMatrix {
public:
    /// Validates column sums and entry range; throws std::invalid_argument.
    explicit WalkMatrix(SparseMatrix matrix, WalkKind kind = WalkKind::plain,
                        double interpolation = 0.0);

    static WalkMatrix from_dense(const Eigen::MatrixXd& dense, WalkKind kind = WalkKind::plain);

    Index dim() const { return matrix_.cols(); }
    const SparseMatrix& sparse() const { return matrix_; }
    Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix_); }
    double coeff(Index to, Index from) const { return matrix_.coeff(to, from); }
    Eigen::VectorXd apply(const Eigen::VectorXd& p) const { return matrix_ * p; }

    WalkKind kind() const { return kind_; }
    double interpolation() const { return interpolation_; }

private:
    SparseMatrix matrix_;
    WalkKind kind_;
    double interpolation_;
};

const char* to_string(WalkKind kind);

class StationaryDistribution {
public:
    /// Requires strictly positive entries summing to one.
    explicit StationaryDistribution(Eigen::VectorXd probs);

    const Eigen::VectorXd& probs() const { return probs_; }
    /// Entrywise square roots, the unit vector |pi>.
    Eigen::VectorXd amplitudes() const { return probs_.cwiseSqrt(); }
    double operator[](Index x) const { return probs_(x); }
    Index size() const { return probs_.size(); }

private:
    Eigen::VectorXd probs_;
};

/// Nonempty proper subset of the state space, stored sorted.
class MarkedSet {
public:
    MarkedSet(Index n_states, std::vector<Index> members);

    Index n_states() const { return n_states_; }
    std::span<const Index> members() const { return members_; }
    Index size() const { return static_cast<Index>(members_.size()); }
    bool contains(Index x) const { return mask_.at(static_cast<std::size_t>(x)) != 0; }
    std::vector<Index> unmarked() const;
    /// Stationary mass epsilon_M.
    double mass(const StationaryDistribution& pi) const;

private:
    Index n_states_;
    std::vector<Index> members_;
    std::vector<char> mask_;
};

/// Symmetric matrix sqrt(P o P^T) with entries in [0, 1].
class Discriminant {
public:
    explicit Discriminant(SparseMatrix matrix);
    const SparseMatrix& sparse() const { return matrix_; }
    Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix_); }
    Index dim() const { return matrix_.cols(); }

private:
    SparseMatrix matrix_;
};

struct ReversibilityCheck {
    bool reversible = false;
    double max_violation = 0.0;
};

/// Entry (v, u) = multiplicity(u -> v) / outdeg(u).
WalkMatrix walk_from_graph(const Graph& g);

/// Solves (I - P) pi = 0 with sum(pi) = 1 by sparse LU and verifies the
/// fixed-point residual. Throws NumericalError when the chain has no unique
/// positive stationary distribution.
StationaryDistribution stationary(const WalkMatrix& P);

ReversibilityCheck check_reversible(const WalkMatrix& P, const StationaryDistribution& pi);

/// Strongly connected and aperiodic support graph.
bool check_ergodic(const WalkMatrix& P);

/// Period of the support graph (gcd of cycle lengths); 0 if not strongly connected.
Index period(const WalkMatrix& P);

/// Marked columns become unit vectors on the diagonal.
WalkMatrix make_absorbing(const WalkMatrix& P, const MarkedSet& marked);

/// (1 - s) P + s P_abs.
WalkMatrix interpolate(const WalkMatrix& P, const WalkMatrix& absorbing, double s);

Discriminant discriminant(const WalkMatrix& P);

/// One "row col value" line per nonzero, 0-based.
void write_triplets(std::ostream& out, const SparseMatrix& m);
nlohmann::json matrix_metadata(const WalkMatrix& P);

}  // namespace qwalk

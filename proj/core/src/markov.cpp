#include "qwalk/markov.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <queue>

#include <Eigen/SparseLU>

namespace qwalk {

namespace {

using Triplet = Eigen::Triplet<double>;

void validate_stochastic(const SparseMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw std::invalid_argument("walk matrix must be square and nonempty");
    for (Index col = 0; col < m.outerSize(); ++col) {
        double sum = 0.0;
        for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
            if (!(it.value() >= 0.0 && it.value() <= 1.0))
                throw std::invalid_argument("walk matrix entries must lie in [0, 1]");
            sum += it.value();
        }
        if (std::abs(sum - 1.0) > tolerance::stochastic)
            throw std::invalid_argument("column " + std::to_string(col) + " sums to " +
                                        std::to_string(sum) + ", not 1");
    }
}

}  // namespace

WalkMatrix::WalkMatrix(SparseMatrix matrix, WalkKind kind, double interpolation)
    : matrix_(std::move(matrix)), kind_(kind), interpolation_(interpolation) {
    matrix_.prune(0.0);
    matrix_.makeCompressed();
    validate_stochastic(matrix_);
}

WalkMatrix WalkMatrix::from_dense(const Eigen::MatrixXd& dense, WalkKind kind) {
    return WalkMatrix(dense.sparseView(), kind);
}

const char* to_string(WalkKind kind) {
    switch (kind) {
        case WalkKind::plain: return "plain";
        case WalkKind::absorbing: return "absorbing";
        case WalkKind::interpolated: return "interpolated";
    }
    return "plain";
}

StationaryDistribution::StationaryDistribution(Eigen::VectorXd probs) : probs_(std::move(probs)) {
    if (probs_.size() == 0) throw std::invalid_argument("empty stationary distribution");
    if ((probs_.array() <= 0.0).any())
        throw std::invalid_argument("stationary distribution must be strictly positive");
    if (std::abs(probs_.sum() - 1.0) > tolerance::stochastic)
        throw std::invalid_argument("stationary distribution must sum to 1");
}

MarkedSet::MarkedSet(Index n_states, std::vector<Index> members)
    : n_states_(n_states), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (members_.empty()) throw std::invalid_argument("marked set must be nonempty");
    if (members_.front() < 0 || members_.back() >= n_states)
        throw std::invalid_argument("marked state out of range");
    if (static_cast<Index>(members_.size()) >= n_states)
        throw std::invalid_argument("marked set must be a proper subset");
    mask_.assign(static_cast<std::size_t>(n_states), 0);
    for (Index m : members_) mask_[static_cast<std::size_t>(m)] = 1;
}

std::vector<Index> MarkedSet::unmarked() const {
    std::vector<Index> out;
    out.reserve(static_cast<std::size_t>(n_states_) - members_.size());
    for (Index x = 0; x < n_states_; ++x)
        if (!mask_[static_cast<std::size_t>(x)]) out.push_back(x);
    return out;
}

double MarkedSet::mass(const StationaryDistribution& pi) const {
    double eps = 0.0;
    for (Index m : members_) eps += pi[m];
    return eps;
}

Discriminant::Discriminant(SparseMatrix matrix) : matrix_(std::move(matrix)) {
    const SparseMatrix t = matrix_.transpose();
    const SparseMatrix diff = matrix_ - t;
    if (diff.nonZeros() > 0 && diff.coeffs().cwiseAbs().maxCoeff() > tolerance::symmetric)
        throw std::invalid_argument("discriminant must be symmetric");
}

WalkMatrix walk_from_graph(const Graph& g) {
    std::vector<Triplet> triplets;
    triplets.reserve(g.edges().size());
    for (Index u = 0; u < g.n_vertices(); ++u) {
        const int deg = g.out_degree(u);
        if (deg == 0) throw std::invalid_argument("vertex " + std::to_string(u) + " has no out-edges");
        for (const auto& e : g.out_edges(u))
            triplets.emplace_back(e.target, u, static_cast<double>(e.multiplicity) / deg);
    }
    SparseMatrix m(g.n_vertices(), g.n_vertices());
    m.setFromTriplets(triplets.begin(), triplets.end());
    return WalkMatrix(std::move(m));
}

StationaryDistribution stationary(const WalkMatrix& P) {
    const Index n = P.dim();
    // I - P with its last row replaced by the normalisation constraint.
    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(P.sparse().nonZeros() + 2 * n));
    for (Index col = 0; col < n; ++col) {
        for (SparseMatrix::InnerIterator it(P.sparse(), col); it; ++it)
            if (it.row() != n - 1) triplets.emplace_back(it.row(), col, -it.value());
        if (col != n - 1) triplets.emplace_back(col, col, 1.0);
        triplets.emplace_back(n - 1, col, 1.0);
    }
    SparseMatrix A(n, n);
    A.setFromTriplets(triplets.begin(), triplets.end());
    A.makeCompressed();

    Eigen::SparseLU<SparseMatrix> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success)
        throw NumericalError("stationary: singular system, chain is not irreducible");
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs(n - 1) = 1.0;
    Eigen::VectorXd pi = lu.solve(rhs);
    // One step of iterative refinement.
    pi += lu.solve(rhs - A * pi);
    if (lu.info() != Eigen::Success || !pi.allFinite())
        throw NumericalError("stationary: solve failed");
    if ((pi.array() <= 0.0).any())
        throw NumericalError("stationary: distribution is not strictly positive");
    pi /= pi.sum();
    const double residual = (P.apply(pi) - pi).lpNorm<Eigen::Infinity>();
    if (residual > tolerance::fixed_point)
        throw NumericalError("stationary: fixed-point residual " + std::to_string(residual));
    return StationaryDistribution(std::move(pi));
}

ReversibilityCheck check_reversible(const WalkMatrix& P, const StationaryDistribution& pi) {
    const SparseMatrix& m = P.sparse();
    double worst = 0.0;
    for (Index x = 0; x < m.outerSize(); ++x) {
        for (SparseMatrix::InnerIterator it(m, x); it; ++it) {
            const Index y = it.row();
            const double forward = it.value() * pi[x];
            const double backward = m.coeff(x, y) * pi[y];
            worst = std::max(worst, std::abs(forward - backward));
        }
    }
    return {worst <= tolerance::reversible, worst};
}

namespace {

std::vector<Index> bfs_levels(const SparseMatrix& adjacency_by_column, Index start) {
    // Column u lists the successors of u.
    std::vector<Index> level(static_cast<std::size_t>(adjacency_by_column.cols()), -1);
    std::queue<Index> queue;
    level[static_cast<std::size_t>(start)] = 0;
    queue.push(start);
    while (!queue.empty()) {
        const Index u = queue.front();
        queue.pop();
        for (SparseMatrix::InnerIterator it(adjacency_by_column, u); it; ++it) {
            auto& lv = level[static_cast<std::size_t>(it.row())];
            if (lv < 0) {
                lv = level[static_cast<std::size_t>(u)] + 1;
                queue.push(it.row());
            }
        }
    }
    return level;
}

}  // namespace

Index period(const WalkMatrix& P) {
    const SparseMatrix& forward = P.sparse();
    const SparseMatrix backward = forward.transpose();
    const auto level = bfs_levels(forward, 0);
    const auto back = bfs_levels(backward, 0);
    auto unreached = [](Index l) { return l < 0; };
    if (std::any_of(level.begin(), level.end(), unreached) ||
        std::any_of(back.begin(), back.end(), unreached))
        return 0;
    Index g = 0;
    for (Index u = 0; u < forward.outerSize(); ++u) {
        for (SparseMatrix::InnerIterator it(forward, u); it; ++it) {
            const Index diff = level[static_cast<std::size_t>(u)] + 1 -
                               level[static_cast<std::size_t>(it.row())];
            g = std::gcd(g, diff < 0 ? -diff : diff);
        }
    }
    return g;
}

bool check_ergodic(const WalkMatrix& P) { return period(P) == 1; }

WalkMatrix make_absorbing(const WalkMatrix& P, const MarkedSet& marked) {
    if (marked.n_states() != P.dim()) throw std::invalid_argument("marked set dimension mismatch");
    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(P.sparse().nonZeros()));
    for (Index x = 0; x < P.dim(); ++x) {
        if (marked.contains(x)) {
            triplets.emplace_back(x, x, 1.0);
            continue;
        }
        for (SparseMatrix::InnerIterator it(P.sparse(), x); it; ++it)
            triplets.emplace_back(it.row(), x, it.value());
    }
    SparseMatrix m(P.dim(), P.dim());
    m.setFromTriplets(triplets.begin(), triplets.end());
    return WalkMatrix(std::move(m), WalkKind::absorbing);
}

WalkMatrix interpolate(const WalkMatrix& P, const WalkMatrix& absorbing, double s) {
    if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("interpolation parameter must lie in [0, 1]");
    if (P.dim() != absorbing.dim()) throw std::invalid_argument("dimension mismatch");
    SparseMatrix m = (1.0 - s) * P.sparse() + s * absorbing.sparse();
    return WalkMatrix(std::move(m), WalkKind::interpolated, s);
}

Discriminant discriminant(const WalkMatrix& P) {
    const SparseMatrix t = P.sparse().transpose();
    SparseMatrix d = P.sparse().cwiseProduct(t).cwiseSqrt();
    d.prune(0.0);
    return Discriminant(std::move(d));
}

void write_triplets(std::ostream& out, const SparseMatrix& m) {
    const auto precision = out.precision();
    out << std::setprecision(17);
    for (Index col = 0; col < m.outerSize(); ++col)
        for (SparseMatrix::InnerIterator it(m, col); it; ++it)
            out << it.row() << ' ' << col << ' ' << it.value() << '\n';
    out.precision(precision);
}

nlohmann::json matrix_metadata(const WalkMatrix& P) {
    return {{"dim", P.dim()},
            {"nnz", P.sparse().nonZeros()},
            {"kind", to_string(P.kind())},
            {"interpolation", P.interpolation()},
            {"convention", "entry (to, from); columns sum to 1"}};
}

}  // namespace qwalk

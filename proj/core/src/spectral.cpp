#include "qwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>

namespace qwalk {

namespace {

constexpr double kReconstruction = 1e-8;
constexpr double kPerronSeparation = 1e-10;
constexpr double kNoGap = 1e-12;

bool use_eigen(SpectralRoute route, Index dim) {
    switch (route) {
        case SpectralRoute::eigen: return true;
        case SpectralRoute::resolvent: return false;
        case SpectralRoute::automatic: return dim <= kDenseSpectralLimit;
    }
    return true;
}

SparseMatrix principal_block(const SparseMatrix& m, std::span<const Index> keep) {
    std::vector<Index> local(static_cast<std::size_t>(m.cols()), -1);
    for (std::size_t i = 0; i < keep.size(); ++i) local[static_cast<std::size_t>(keep[i])] = static_cast<Index>(i);
    std::vector<Eigen::Triplet<double>> triplets;
    for (Index col : keep) {
        for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
            const Index r = local[static_cast<std::size_t>(it.row())];
            if (r >= 0) triplets.emplace_back(r, local[static_cast<std::size_t>(col)], it.value());
        }
    }
    const auto k = static_cast<Index>(keep.size());
    SparseMatrix out(k, k);
    out.setFromTriplets(triplets.begin(), triplets.end());
    return out;
}

SparseMatrix identity_minus(const SparseMatrix& m) {
    SparseMatrix id(m.rows(), m.cols());
    id.setIdentity();
    SparseMatrix out = id - m;
    out.makeCompressed();
    return out;
}

Eigen::VectorXd cg_solve(const SparseMatrix& spd, const Eigen::VectorXd& rhs, const char* what) {
    Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(1e-13);
    cg.setMaxIterations(std::max<Index>(1000, 20 * spd.cols()));
    cg.compute(spd);
    Eigen::VectorXd x = cg.solve(rhs);
    if (cg.info() != Eigen::Success || !x.allFinite())
        throw NumericalError(std::string(what) + ": conjugate gradient did not converge");
    return x;
}

Eigen::VectorXd unmarked_state(const StationaryDistribution& pi, std::span<const Index> unmarked) {
    Eigen::VectorXd u(static_cast<Index>(unmarked.size()));
    for (std::size_t i = 0; i < unmarked.size(); ++i) u(static_cast<Index>(i)) = std::sqrt(pi[unmarked[i]]);
    return u / u.norm();
}

}  // namespace

SpectralDecomposition decompose(const Eigen::MatrixXd& symmetric) {
    if (symmetric.rows() != symmetric.cols()) throw std::invalid_argument("matrix must be square");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric);
    if (solver.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
    // Eigen returns ascending order.
    SpectralDecomposition out;
    out.eigenvalues = solver.eigenvalues().reverse();
    out.eigenvectors = solver.eigenvectors().rowwise().reverse();
    const Eigen::MatrixXd rebuilt =
        out.eigenvectors * out.eigenvalues.asDiagonal() * out.eigenvectors.transpose();
    const double residual = (rebuilt - symmetric).cwiseAbs().maxCoeff();
    if (residual > kReconstruction)
        throw NumericalError("eigendecomposition reconstruction residual " + std::to_string(residual));
    return out;
}

SpectralDecomposition decompose(const Discriminant& d) { return decompose(d.dense()); }

double hitting_time_spectral(const WalkMatrix& P, const MarkedSet& marked, SpectralRoute route) {
    const auto pi = stationary(P);
    const auto unmarked = marked.unmarked();
    const Eigen::VectorXd u = unmarked_state(pi, unmarked);
    const SparseMatrix block = principal_block(discriminant(make_absorbing(P, marked)).sparse(), unmarked);

    if (!use_eigen(route, block.cols())) {
        const Eigen::VectorXd x = cg_solve(identity_minus(block), u, "hitting_time_spectral");
        return u.dot(x);
    }

    const auto spectrum = decompose(Eigen::MatrixXd(block));
    if (spectrum.eigenvalues(0) >= 1.0 - kPerronSeparation)
        throw NumericalError("unmarked block has an eigenvalue at 1; marked set is unreachable");
    const Eigen::VectorXd overlaps = spectrum.eigenvectors.transpose() * u;
    double ht = 0.0;
    for (Index k = 0; k < spectrum.size(); ++k)
        ht += overlaps(k) * overlaps(k) / (1.0 - spectrum.eigenvalues(k));
    return ht;
}

double hitting_time_linear(const WalkMatrix& P, const MarkedSet& marked) {
    const auto pi = stationary(P);
    const auto unmarked = marked.unmarked();
    // t_x = 1 + sum_{y in U} P_{yx} t_y, i.e. (I - P_UU^T) t = 1.
    const SparseMatrix q = SparseMatrix(principal_block(P.sparse(), unmarked).transpose());
    Eigen::SparseLU<SparseMatrix> lu;
    SparseMatrix a = identity_minus(q);
    lu.compute(a);
    if (lu.info() != Eigen::Success)
        throw NumericalError("hitting_time_linear: singular system, marked set unreachable");
    const Eigen::VectorXd t = lu.solve(Eigen::VectorXd::Ones(a.cols()));
    if (lu.info() != Eigen::Success || !t.allFinite())
        throw NumericalError("hitting_time_linear: solve failed");
    double eps_u = 0.0, weighted = 0.0;
    for (std::size_t i = 0; i < unmarked.size(); ++i) {
        eps_u += pi[unmarked[i]];
        weighted += pi[unmarked[i]] * t(static_cast<Index>(i));
    }
    return weighted / eps_u;
}

Index effective_hitting_time(const WalkMatrix& P, const MarkedSet& marked, const EffectiveOptions& options) {
    if (!(options.threshold > 0.0 && options.threshold <= 1.0))
        throw std::invalid_argument("threshold must lie in (0, 1]");
    const auto pi = stationary(P);
    const WalkMatrix absorbing = make_absorbing(P, marked);

    Eigen::VectorXd p = pi.probs();
    if (options.start == StartDistribution::conditioned_unmarked) {
        for (Index m : marked.members()) p(m) = 0.0;
        p /= p.sum();
    }
    auto marked_mass = [&](const Eigen::VectorXd& v) {
        double s = 0.0;
        for (Index m : marked.members()) s += v(m);
        return s;
    };
    if (marked_mass(p) >= options.threshold) return 0;

    const auto cap = static_cast<Index>(100.0 * std::ceil(hitting_time_linear(P, marked)));
    for (Index t = 1; t <= cap; ++t) {
        p = absorbing.apply(p);
        if (marked_mass(p) >= options.threshold) return t;
    }
    throw NumericalError("effective_hitting_time: iteration cap exceeded");
}

Eigen::VectorXd subset_state(const StationaryDistribution& pi, std::span<const Index> subset) {
    if (subset.empty()) throw std::invalid_argument("subset must be nonempty");
    Eigen::VectorXd g = Eigen::VectorXd::Zero(pi.size());
    for (Index x : subset) {
        if (x < 0 || x >= pi.size()) throw std::invalid_argument("subset element out of range");
        g(x) = std::sqrt(pi[x]);
    }
    return g / g.norm();
}

double escape_time(const SpectralDecomposition& spectrum, const Eigen::VectorXd& g) {
    if (spectrum.size() < 2) return 0.0;
    if (spectrum.eigenvalues(1) >= 1.0 - kNoGap)
        throw NumericalError("escape_time: walk has no spectral gap");
    const Eigen::VectorXd overlaps = spectrum.eigenvectors.transpose() * g;
    double e = 0.0;
    for (Index k = 1; k < spectrum.size(); ++k)
        e += overlaps(k) * overlaps(k) / (1.0 - spectrum.eigenvalues(k));
    return e;
}

double escape_time(const WalkMatrix& P, const Eigen::VectorXd& g, SpectralRoute route) {
    if (g.size() != P.dim()) throw std::invalid_argument("vector dimension mismatch");
    const Discriminant d = discriminant(P);
    if (use_eigen(route, P.dim())) return escape_time(decompose(d), g);

    // (I - D) restricted to the complement of |pi> is positive definite.
    const Eigen::VectorXd principal = stationary(P).amplitudes();
    const Eigen::VectorXd g_perp = g - principal.dot(g) * principal;
    if (g_perp.norm() < 1e-15) return 0.0;
    const Eigen::VectorXd x = cg_solve(identity_minus(d.sparse()), g_perp, "escape_time");
    return g_perp.dot(x);
}

double escape_time_subset(const WalkMatrix& P, std::span<const Index> subset, SpectralRoute route) {
    if (subset.empty()) throw std::invalid_argument("escape_time_subset: subset must be nonempty");
    if (static_cast<Index>(subset.size()) == P.dim()) return 0.0;
    return escape_time(P, subset_state(stationary(P), subset), route);
}

ExtendedHittingTime extended_hitting_time(const WalkMatrix& P, const MarkedSet& marked, SpectralRoute route) {
    const auto pi = stationary(P);
    ExtendedHittingTime out;
    out.eps_marked = marked.mass(pi);
    out.escape = escape_time(P, subset_state(pi, marked.members()), route);
    out.value = out.escape / out.eps_marked;
    return out;
}

double interpolated_hitting_time(const WalkMatrix& P, const MarkedSet& marked, double s) {
    if (!(s >= 0.0 && s < 1.0)) throw std::invalid_argument("interpolation parameter must lie in [0, 1)");
    const auto pi = stationary(P);
    const auto unmarked = marked.unmarked();
    const Eigen::VectorXd u = subset_state(pi, unmarked);
    const WalkMatrix ps = interpolate(P, make_absorbing(P, marked), s);
    const auto spectrum = decompose(discriminant(ps));
    return escape_time(spectrum, u);
}

InterpolationLimit extended_hitting_time_limit(const WalkMatrix& P, const MarkedSet& marked,
                                               std::vector<double> s_list) {
    if (s_list.empty()) {
        const double eps = marked.mass(stationary(P));
        for (int j = 1; j <= 4; ++j) s_list.push_back(1.0 - eps * std::pow(10.0, -j));
    }
    if (s_list.size() < 2) throw std::invalid_argument("need at least two interpolation parameters");
    if (!std::is_sorted(s_list.begin(), s_list.end()) || s_list.front() < 0.0 || s_list.back() >= 1.0)
        throw std::invalid_argument("interpolation schedule must be ascending in [0, 1)");

    InterpolationLimit out;
    out.s = s_list;
    for (double s : s_list) out.values.push_back(interpolated_hitting_time(P, marked, s));
    for (std::size_t i = 1; i < out.values.size(); ++i) {
        const double prev = out.values[i - 1];
        if (out.values[i] < prev - 1e-8 * std::max(1.0, prev))
            throw NumericalError("interpolated hitting time is not monotone in s");
    }
    const std::size_t last = out.values.size() - 1;
    const double x1 = 1.0 - out.s[last - 1], x2 = 1.0 - out.s[last];
    const double slope = (out.values[last - 1] - out.values[last]) / (x1 - x2);
    out.limit = out.values[last] - slope * x2;
    return out;
}

HittingTimes analyze(const WalkMatrix& P, const MarkedSet& marked) {
    HittingTimes h;
    h.ht = hitting_time_spectral(P, marked);
    h.ht_linear = hitting_time_linear(P, marked);
    h.ht_eff = effective_hitting_time(P, marked);
    const auto eht = extended_hitting_time(P, marked);
    h.eht = eht.value;
    h.escape = eht.escape;
    h.eps_marked = eht.eps_marked;
    h.ergodic = check_ergodic(P);
    if (P.dim() <= kDenseSpectralLimit) {
        h.eht_limit = extended_hitting_time_limit(P, marked).limit;
        h.gap = decompose(discriminant(P)).gap();
    } else {
        h.eht_limit = std::nan("");
    }
    return h;
}

nlohmann::json to_json(const HittingTimes& h) {
    nlohmann::json j = {{"ht", h.ht},
                        {"ht_linear", h.ht_linear},
                        {"ht_eff", h.ht_eff},
                        {"eht", h.eht},
                        {"escape", h.escape},
                        {"eps_marked", h.eps_marked},
                        {"ergodic", h.ergodic}};
    j["eht_limit"] = std::isnan(h.eht_limit) ? nlohmann::json(nullptr) : nlohmann::json(h.eht_limit);
    j["gap"] = h.gap ? nlohmann::json(*h.gap) : nlohmann::json(nullptr);
    return j;
}

}  // namespace qwalk

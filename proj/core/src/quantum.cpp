#include "qwalk/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "qwalk/graph.hpp"

namespace qwalk {

CostLedger& CostLedger::operator+=(const CostLedger& other) {
    setup += other.setup;
    update += other.update;
    check += other.check;
    return *this;
}

nlohmann::json to_json(const CostLedger& ledger) {
    return {{"setup", ledger.setup},
            {"update", ledger.update},
            {"check", ledger.check},
            {"steps", ledger.steps()},
            {"total", ledger.total()}};
}

SzegedyWalk::SzegedyWalk(WalkMatrix base) : base_(std::move(base)), d_(qwalk::discriminant(base_).sparse()) {}

SzegedyWalk build_walk(const WalkMatrix& base) { return SzegedyWalk(base); }

void SzegedyWalk::step_in_place(WalkState& state) const {
    Eigen::VectorXd next_beta = state.alpha + 2.0 * (d_ * state.beta);
    state.alpha = -state.beta;
    state.beta = std::move(next_beta);
}

WalkState SzegedyWalk::step(const WalkState& state) const {
    WalkState out = state;
    step_in_place(out);
    return out;
}

double SzegedyWalk::inner(const WalkState& lhs, const WalkState& rhs) const {
    return lhs.alpha.dot(rhs.alpha) + lhs.beta.dot(rhs.beta) + lhs.alpha.dot(d_ * rhs.beta) +
           lhs.beta.dot(d_ * rhs.alpha);
}

Eigen::VectorXd SzegedyWalk::first_register(const WalkState& state) const {
    const Eigen::VectorXd d_beta = d_ * state.beta;
    const Eigen::VectorXd beta_sq = state.beta.cwiseAbs2();
    return state.alpha.cwiseAbs2() + 2.0 * state.alpha.cwiseProduct(d_beta) + base_.sparse() * beta_sq;
}

Eigen::MatrixXd SzegedyWalk::orthonormal_operator() const {
    const Index n = dim();
    const Eigen::MatrixXd d = Eigen::MatrixXd(d_);
    Eigen::MatrixXd gram(2 * n, 2 * n);
    gram << Eigen::MatrixXd::Identity(n, n), d, d, Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd lift(2 * n, 2 * n);
    lift << Eigen::MatrixXd::Zero(n, n), -Eigen::MatrixXd::Identity(n, n),
        Eigen::MatrixXd::Identity(n, n), 2.0 * d;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    if (solver.info() != Eigen::Success) throw NumericalError("Gram eigendecomposition failed");
    std::vector<Index> keep;
    for (Index k = 0; k < 2 * n; ++k)
        if (solver.eigenvalues()(k) > 1e-10) keep.push_back(k);
    const auto r = static_cast<Index>(keep.size());
    Eigen::MatrixXd u(2 * n, r);
    Eigen::VectorXd sigma(r);
    for (Index i = 0; i < r; ++i) {
        u.col(i) = solver.eigenvectors().col(keep[static_cast<std::size_t>(i)]);
        sigma(i) = solver.eigenvalues()(keep[static_cast<std::size_t>(i)]);
    }
    const Eigen::VectorXd root = sigma.cwiseSqrt();
    return root.asDiagonal() * (u.transpose() * lift * u) * root.cwiseInverse().asDiagonal();
}

Eigen::VectorXd SzegedyWalk::eigenphases() const {
    Eigen::EigenSolver<Eigen::MatrixXd> solver(orthonormal_operator(), false);
    if (solver.info() != Eigen::Success) throw NumericalError("walk eigendecomposition failed");
    const auto& mu = solver.eigenvalues();
    Eigen::VectorXd phases(mu.size());
    for (Index k = 0; k < mu.size(); ++k) phases(k) = std::arg(mu(k));
    std::sort(phases.begin(), phases.end());
    return phases;
}

Eigen::VectorXd expected_eigenphases(const Eigen::VectorXd& eigenvalues) {
    constexpr double edge = 1e-10;
    std::vector<double> phases;
    for (double l : eigenvalues) {
        if (l >= 1.0 - edge) {
            phases.push_back(0.0);
        } else if (l <= -1.0 + edge) {
            phases.push_back(std::numbers::pi);
        } else {
            const double theta = std::acos(l);
            phases.push_back(theta);
            phases.push_back(-theta);
        }
    }
    std::sort(phases.begin(), phases.end());
    return Eigen::Map<Eigen::VectorXd>(phases.data(), static_cast<Index>(phases.size()));
}

WalkState initial_state(const Eigen::VectorXd& sqrt_pi) {
    return {sqrt_pi, Eigen::VectorXd::Zero(sqrt_pi.size())};
}

double detection_overlap(const SzegedyWalk& walk, const Eigen::VectorXd& sqrt_pi, Index steps) {
    if (steps < 0) throw std::invalid_argument("step count must be non-negative");
    const WalkState init = initial_state(sqrt_pi);
    WalkState state = init;
    for (Index t = 0; t < steps; ++t) walk.step_in_place(state);
    return std::min(1.0, std::abs(walk.inner(init, state)));
}

DetectionResult simulate_detection(const WalkMatrix& P, const MarkedSet& marked, Index steps) {
    const auto pi = stationary(P);
    const SzegedyWalk walk(make_absorbing(P, marked));
    DetectionResult out;
    out.ledger.charge_setup();
    out.ledger.charge_steps(steps);
    out.overlap = detection_overlap(walk, pi.amplitudes(), steps);
    return out;
}

double detection_overlap_spectral(const WalkMatrix& P, const MarkedSet& marked, Index steps) {
    const auto pi = stationary(P);
    const auto unmarked = marked.unmarked();
    const Eigen::MatrixXd d = discriminant(make_absorbing(P, marked)).dense();
    const auto u = static_cast<Index>(unmarked.size());
    Eigen::MatrixXd block(u, u);
    Eigen::VectorXd root(u);
    for (Index i = 0; i < u; ++i) {
        root(i) = std::sqrt(pi[unmarked[static_cast<std::size_t>(i)]]);
        for (Index j = 0; j < u; ++j)
            block(i, j) = d(unmarked[static_cast<std::size_t>(i)], unmarked[static_cast<std::size_t>(j)]);
    }
    const auto spectrum = decompose(block);
    const Eigen::VectorXd c = spectrum.eigenvectors.transpose() * root;
    double overlap = marked.mass(pi);
    for (Index k = 0; k < u; ++k) {
        const double l = std::clamp(spectrum.eigenvalues(k), -1.0, 1.0);
        overlap += c(k) * c(k) * std::cos(static_cast<double>(steps) * std::acos(l));
    }
    return std::abs(overlap);
}

double interpolation_parameter(double eps_estimate) {
    if (!(eps_estimate > 0.0 && eps_estimate < 1.0))
        throw std::invalid_argument("estimate of the marked mass must lie in (0, 1)");
    const double s = 1.0 - eps_estimate / (1.0 - eps_estimate);
    return std::clamp(s, 0.0, 1.0 - 1e-9);
}

FindResult find_via_interpolation(const WalkMatrix& P, const MarkedSet& marked, double eps_estimate,
                                  Index steps) {
    if (steps < 1) throw std::invalid_argument("find_via_interpolation needs at least one step");
    FindResult out;
    out.s = interpolation_parameter(eps_estimate);
    out.steps = steps;

    const auto pi = stationary(P);
    const SzegedyWalk walk(interpolate(P, make_absorbing(P, marked), out.s));
    WalkState state = initial_state(pi.amplitudes());
    out.average_distribution = Eigen::VectorXd::Zero(P.dim());
    for (Index t = 0; t < steps; ++t) {
        out.average_distribution += walk.first_register(state);
        if (t + 1 < steps) walk.step_in_place(state);
    }
    out.average_distribution /= static_cast<double>(steps);
    for (Index m : marked.members()) out.success += out.average_distribution(m);
    out.success = std::clamp(out.success, 0.0, 1.0);

    out.ledger.charge_setup();
    out.ledger.charge_steps(steps);
    return out;
}

std::vector<double> interpolation_success_curve(const WalkMatrix& P, const MarkedSet& marked,
                                                double eps_estimate, Index max_steps) {
    if (max_steps < 1) throw std::invalid_argument("need at least one step");
    const double s = interpolation_parameter(eps_estimate);
    const auto pi = stationary(P);
    const SzegedyWalk walk(interpolate(P, make_absorbing(P, marked), s));
    WalkState state = initial_state(pi.amplitudes());
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(max_steps));
    double cumulative = 0.0;
    for (Index t = 0; t < max_steps; ++t) {
        const Eigen::VectorXd p = walk.first_register(state);
        for (Index m : marked.members()) cumulative += p(m);
        out.push_back(std::clamp(cumulative / static_cast<double>(t + 1), 0.0, 1.0));
        walk.step_in_place(state);
    }
    return out;
}

std::vector<double> detection_overlap_curve(const WalkMatrix& P, const MarkedSet& marked, Index max_steps) {
    if (max_steps < 0) throw std::invalid_argument("step count must be non-negative");
    const auto pi = stationary(P);
    const SzegedyWalk walk(make_absorbing(P, marked));
    const WalkState init = initial_state(pi.amplitudes());
    WalkState state = init;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(max_steps + 1));
    for (Index t = 0; t <= max_steps; ++t) {
        out.push_back(std::min(1.0, std::abs(walk.inner(init, state))));
        walk.step_in_place(state);
    }
    return out;
}

nlohmann::json to_json(const EffectiveEstimate& e) {
    return {{"h_tilde", e.h_tilde},
            {"capped", e.capped},
            {"probes", e.probes},
            {"idealized", true},
            {"ledger", to_json(e.ledger)}};
}

EffectiveEstimate estimate_effective_ht(const WalkMatrix& P, const MarkedSet& marked,
                                        const EstimateOptions& options) {
    if (!(options.threshold > 0.0 && options.threshold <= 1.0))
        throw std::invalid_argument("threshold must lie in (0, 1]");
    constexpr Index kMaxSteps = Index{1} << 30;

    const auto pi = stationary(P);
    const WalkMatrix absorbing = make_absorbing(P, marked);
    Eigen::VectorXd p = pi.probs();
    for (Index m : marked.members()) p(m) = 0.0;
    p /= p.sum();
    auto marked_mass = [&] {
        double s = 0.0;
        for (Index m : marked.members()) s += p(m);
        return s;
    };

    EffectiveEstimate out;
    out.ledger.charge_setup();
    Index t = 0;
    for (Index probe = 1;; probe *= 2) {
        const auto cost = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(probe))));
        if (options.step_budget && out.ledger.steps() + cost > *options.step_budget) {
            out.ledger.charge_steps(std::max<std::int64_t>(0, *options.step_budget - out.ledger.steps()));
            out.capped = true;
            out.h_tilde = options.fallback;
            return out;
        }
        if (probe > kMaxSteps) throw NumericalError("estimate_effective_ht: iteration cap exceeded");
        out.ledger.charge_steps(cost);
        out.probes.push_back(probe);
        for (; t < probe; ++t) p = absorbing.apply(p);
        if (marked_mass() >= options.threshold) {
            out.h_tilde = probe;
            return out;
        }
    }
}

double estimator_step_bound(Index h_tilde) {
    const auto h = static_cast<double>(std::max<Index>(1, h_tilde));
    return (2.0 + std::numbers::sqrt2) * std::sqrt(h) + std::log2(h) + 1.0;
}

Index unique_hitting_time(Index n) {
    static std::mutex mutex;
    static std::map<Index, Index> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    const WalkMatrix P = walk_from_graph(build_torus(n));
    const Index value = effective_hitting_time(P, MarkedSet(P.dim(), {0}));
    std::lock_guard lock(mutex);
    cache.emplace(n, value);
    return value;
}

EffectiveEstimate cap_estimate(const WalkMatrix& P, const MarkedSet& marked, Index n) {
    if (P.dim() != n * n) throw std::invalid_argument("cap_estimate expects the n x n torus walk");
    EstimateOptions options;
    options.fallback = unique_hitting_time(n);
    options.step_budget =
        static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(options.fallback))));
    return estimate_effective_ht(P, marked, options);
}

}  // namespace qwalk

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "qwalk/spectral.hpp"
#include "qwalk/verify.hpp"

using namespace qwalk;
using doctest::Approx;

namespace {

WalkMatrix complete_chain(Index n) {
    return WalkMatrix::from_dense(Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n)));
}

WalkMatrix torus_walk(Index n) { return walk_from_graph(build_torus(n)); }

std::vector<Index> all_but(Index n, Index skip) {
    std::vector<Index> out;
    for (Index x = 0; x < n; ++x)
        if (x != skip) out.push_back(x);
    return out;
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("decomposition of the torus matches the closed form") {
    const Index n = 6;
    const auto spec = decompose(discriminant(torus_walk(n)));
    std::vector<double> expected;
    for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b)
            expected.push_back(0.5 * (std::cos(2 * std::numbers::pi * a / n) + std::cos(2 * std::numbers::pi * b / n)));
    std::sort(expected.rbegin(), expected.rend());
    for (Index k = 0; k < spec.size(); ++k) CHECK(spec.eigenvalues(k) == Approx(expected[static_cast<std::size_t>(k)]).epsilon(1e-12));
    const Eigen::MatrixXd& v = spec.eigenvectors;
    CHECK((v.transpose() * v - Eigen::MatrixXd::Identity(n * n, n * n)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(spec.gap() == Approx(0.5 * (1 - std::cos(2 * std::numbers::pi / n))));
}

TEST_CASE("two-state chain") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Constant(2, 2, 0.5);
    const WalkMatrix p = WalkMatrix::from_dense(m);
    const MarkedSet marked(2, {1});
    const auto spec = decompose(discriminant(p));
    CHECK(spec.eigenvalues(0) == Approx(1.0));
    CHECK(spec.eigenvalues(1) == Approx(0.0));
    CHECK(hitting_time_spectral(p, marked) == Approx(2.0).epsilon(1e-12));
    CHECK(hitting_time_linear(p, marked) == Approx(2.0).epsilon(1e-12));
    CHECK(effective_hitting_time(p, marked) == 2);
}

TEST_CASE("complete chain has geometric hitting time") {
    for (Index n : {3, 5, 10}) {
        const WalkMatrix p = complete_chain(n);
        const MarkedSet single(n, {0});
        CHECK(hitting_time_spectral(p, single) == Approx(static_cast<double>(n)).epsilon(1e-10));
        CHECK(hitting_time_linear(p, single) == Approx(static_cast<double>(n)).epsilon(1e-10));
        const auto e = extended_hitting_time(p, single);
        CHECK(e.value == Approx(static_cast<double>(n - 1)).epsilon(1e-10));
        CHECK(e.escape == Approx(1.0 - 1.0 / n).epsilon(1e-10));
    }
}

TEST_CASE("marking every state but one gives a hitting time in (0, 2]") {
    const WalkMatrix p = torus_walk(3);
    const MarkedSet m(9, all_but(9, 4));
    const double ht = hitting_time_spectral(p, m);
    CHECK(ht > 0.0);
    CHECK(ht <= 2.0);
    CHECK(ht == Approx(1.0));
}

TEST_CASE("spectral and linear hitting times agree on random chains") {
    std::mt19937_64 engine(21);
    for (int trial = 0; trial < 50; ++trial) {
        const Index n = 3 + trial % 12;
        const WalkMatrix p = random_reversible_chain(n, engine);
        std::vector<Index> members{static_cast<Index>(engine() % n)};
        if (trial % 3 == 0) members.push_back((members[0] + 1) % n);
        const MarkedSet m(n, members);
        const double linear = hitting_time_linear(p, m);
        CHECK(hitting_time_spectral(p, m, SpectralRoute::eigen) == Approx(linear).epsilon(1e-9));
        CHECK(hitting_time_spectral(p, m, SpectralRoute::resolvent) == Approx(linear).epsilon(1e-7));
    }
}

TEST_CASE("singleton extended hitting time is the hitting time from pi") {
    std::mt19937_64 engine(4);
    for (int trial = 0; trial < 20; ++trial) {
        const Index n = 4 + trial % 8;
        const WalkMatrix p = random_reversible_chain(n, engine);
        const MarkedSet m(n, {static_cast<Index>(engine() % n)});
        const auto e = extended_hitting_time(p, m);
        CHECK(e.value == Approx(hitting_time_linear(p, m) * (1.0 - e.eps_marked)).epsilon(1e-9));
    }
}

TEST_CASE("escape time") {
    const WalkMatrix p = torus_walk(5);
    const auto pi = stationary(p);
    CHECK(std::abs(escape_time(p, pi.amplitudes())) < 1e-12);

    const WalkMatrix k = complete_chain(6);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(6);
    g(2) = 1.0;
    CHECK(escape_time(k, g) == Approx(1.0 - 1.0 / 6.0).epsilon(1e-12));

    // Upper bound ||g||^2 / gap and lower bound 1/2 on the complement of |pi>.
    const auto spec = decompose(discriminant(p));
    std::mt19937_64 engine(9);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXd h(25);
        for (Index i = 0; i < 25; ++i) h(i) = normal(engine);
        h -= pi.amplitudes().dot(h) * pi.amplitudes();
        h.normalize();
        const double e = escape_time(spec, h);
        CHECK(e >= 0.5 - 1e-12);
        CHECK(e <= 1.0 / spec.gap() + 1e-9);
    }

    std::vector<Index> everything(25);
    for (Index x = 0; x < 25; ++x) everything[static_cast<std::size_t>(x)] = x;
    CHECK(std::abs(escape_time_subset(p, everything)) < 1e-12);
    CHECK_THROWS_AS(escape_time_subset(p, std::vector<Index>{}), std::invalid_argument);
}

TEST_CASE("eigen and resolvent escape routes agree") {
    std::mt19937_64 engine(17);
    for (int trial = 0; trial < 10; ++trial) {
        const WalkMatrix p = random_reversible_chain(12, engine);
        const std::vector<Index> subset{0, 3, 4};
        CHECK(escape_time_subset(p, subset, SpectralRoute::resolvent)
              == Approx(escape_time_subset(p, subset, SpectralRoute::eigen)).epsilon(1e-7));
    }
    const WalkMatrix torus = torus_walk(7);
    const MarkedSet row(49, {0, 1, 2, 3, 4, 5, 6});
    CHECK(extended_hitting_time(torus, row, SpectralRoute::resolvent).value
          == Approx(extended_hitting_time(torus, row, SpectralRoute::eigen).value).epsilon(1e-7));
}

TEST_CASE("escape time does not depend on the basis of a degenerate eigenspace") {
    const WalkMatrix p = torus_walk(6);
    const auto spec = decompose(discriminant(p));
    SpectralDecomposition mixed = spec;
    std::mt19937_64 engine(5);
    std::normal_distribution<double> normal;
    Index start = 0;
    while (start < spec.size()) {
        Index end = start + 1;
        while (end < spec.size() && std::abs(spec.eigenvalues(end) - spec.eigenvalues(start)) < 1e-9) ++end;
        const Index width = end - start;
        if (width > 1) {
            Eigen::MatrixXd r(width, width);
            for (Index i = 0; i < width; ++i)
                for (Index j = 0; j < width; ++j) r(i, j) = normal(engine);
            const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(r).householderQ();
            mixed.eigenvectors.middleCols(start, width) = spec.eigenvectors.middleCols(start, width) * q;
        }
        start = end;
    }
    CHECK((mixed.eigenvectors - spec.eigenvectors).norm() > 1e-3);
    const auto pi = stationary(p);
    const Eigen::VectorXd g = subset_state(pi, std::vector<Index>{0, 1, 7});
    CHECK(escape_time(mixed, g) == Approx(escape_time(spec, g)).epsilon(1e-10));
}

TEST_CASE("interpolated hitting time at s=0 is the escape time of U") {
    const WalkMatrix p = torus_walk(5);
    const MarkedSet m(25, {0, 1});
    const auto pi = stationary(p);
    const double direct = escape_time(p, subset_state(pi, m.unmarked()));
    CHECK(interpolated_hitting_time(p, m, 0.0) == Approx(direct).epsilon(1e-10));
}

TEST_CASE("interpolated hitting times rise to the extended hitting time") {
    const WalkMatrix p = torus_walk(6);
    const MarkedSet single(36, {0});
    const auto limit = extended_hitting_time_limit(p, single);
    CHECK(limit.limit == Approx(hitting_time_spectral(p, single)).epsilon(0.01));
    for (std::size_t i = 1; i < limit.values.size(); ++i) CHECK(limit.values[i] >= limit.values[i - 1] - 1e-9);

    std::vector<Index> half;
    for (Index r = 0; r < 6; ++r)
        for (Index c = 0; c < 3; ++c) half.push_back(r * 6 + c);
    const MarkedSet h(36, half);
    const auto lh = extended_hitting_time_limit(p, h);
    const double eh = extended_hitting_time(p, h).value;
    CHECK(lh.limit / eh >= 0.1);
    CHECK(lh.limit / eh <= 10.0);
}

TEST_CASE("effective hitting time bounds") {
    std::mt19937_64 engine(13);
    for (int trial = 0; trial < 20; ++trial) {
        const Index n = 4 + trial % 10;
        const WalkMatrix p = random_reversible_chain(n, engine);
        const MarkedSet m(n, {static_cast<Index>(engine() % n)});
        const Index eff = effective_hitting_time(p, m);
        CHECK(eff >= 1);
        CHECK(static_cast<double>(eff) <= 3.0 * hitting_time_linear(p, m) + 1.0);
    }
}

TEST_CASE("analyze on the half-marked grid") {
    const WalkMatrix p = walk_from_graph(build_grid(4));
    std::vector<Index> half;
    for (Index r = 0; r < 4; ++r)
        for (Index c = 0; c < 2; ++c) half.push_back(r * 4 + c);
    const auto h = analyze(p, MarkedSet(16, half));
    CHECK(h.eps_marked == Approx(0.5));
    CHECK(h.ergodic);
    CHECK(h.ht == Approx(h.ht_linear).epsilon(1e-9));
    CHECK(h.gap.has_value());
}

}  // TEST_SUITE

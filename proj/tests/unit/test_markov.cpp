#include "doctest.h"

#include <random>
#include <sstream>

#include "qwalk/markov.hpp"
#include "qwalk/verify.hpp"

using namespace qwalk;
using doctest::Approx;

namespace {

WalkMatrix two_state() {
    Eigen::MatrixXd m(2, 2);
    m << 0.5, 0.5, 0.5, 0.5;
    return WalkMatrix::from_dense(m);
}

}  // namespace

TEST_SUITE("markov") {

TEST_CASE("torus walk has entries 1/4, or 1/2 for n=2") {
    const WalkMatrix p3 = walk_from_graph(build_torus(3));
    CHECK(p3.coeff(1, 0) == Approx(0.25));
    CHECK(p3.coeff(4, 0) == 0.0);
    const WalkMatrix p2 = walk_from_graph(build_torus(2));
    CHECK(p2.coeff(1, 0) == Approx(0.5));
    CHECK(p2.coeff(2, 0) == Approx(0.5));
}

TEST_CASE("grid corner column") {
    const WalkMatrix p = walk_from_graph(build_grid(3));
    CHECK(p.coeff(0, 0) == Approx(0.5));
    CHECK(p.coeff(1, 0) == Approx(0.25));
    CHECK(p.coeff(3, 0) == Approx(0.25));
}

TEST_CASE("stationary distributions of lattices are uniform") {
    for (const Graph& g : {build_torus(16), build_grid(8), build_torus(5)}) {
        const auto pi = stationary(walk_from_graph(g));
        const double u = 1.0 / static_cast<double>(g.n_vertices());
        for (Index x = 0; x < pi.size(); ++x) CHECK(pi[x] == Approx(u).epsilon(1e-12));
    }
    const auto pi = stationary(two_state());
    CHECK(pi[0] == Approx(0.5));
}

TEST_CASE("stationary of a non-uniform chain") {
    Eigen::MatrixXd m(2, 2);
    m << 0.9, 0.2, 0.1, 0.8;  // columns: from 0, from 1
    const auto pi = stationary(WalkMatrix::from_dense(m));
    CHECK(pi[0] == Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(pi[1] == Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("reversibility") {
    for (const Graph& g : {build_torus(6), build_grid(5)}) {
        const WalkMatrix p = walk_from_graph(g);
        CHECK(check_reversible(p, stationary(p)).reversible);
    }
    Eigen::MatrixXd cycle = Eigen::MatrixXd::Zero(3, 3);
    cycle(1, 0) = 0.9;
    cycle(2, 0) = 0.1;
    cycle(2, 1) = 0.9;
    cycle(0, 1) = 0.1;
    cycle(0, 2) = 0.9;
    cycle(1, 2) = 0.1;
    const WalkMatrix p = WalkMatrix::from_dense(cycle);
    const auto check = check_reversible(p, stationary(p));
    CHECK_FALSE(check.reversible);
    CHECK(check.max_violation > 0.1);
}

TEST_CASE("ergodicity and period") {
    CHECK(check_ergodic(walk_from_graph(build_grid(4))));
    CHECK(period(walk_from_graph(build_torus(4))) == 2);
    CHECK_FALSE(check_ergodic(walk_from_graph(build_torus(4))));
    CHECK(check_ergodic(walk_from_graph(build_torus(5))));
}

TEST_CASE("absorbing walk") {
    const MarkedSet m(2, {1});
    const WalkMatrix abs = make_absorbing(two_state(), m);
    CHECK(abs.coeff(0, 0) == Approx(0.5));
    CHECK(abs.coeff(1, 0) == Approx(0.5));
    CHECK(abs.coeff(0, 1) == 0.0);
    CHECK(abs.coeff(1, 1) == Approx(1.0));

    const WalkMatrix p = walk_from_graph(build_torus(4));
    const MarkedSet single(16, {0});
    const WalkMatrix a = make_absorbing(p, single);
    CHECK(a.coeff(0, 0) == 1.0);
    for (Index x = 1; x < 16; ++x) {
        CHECK(a.coeff(x, 0) == 0.0);
        for (Index y = 0; y < 16; ++y) CHECK(a.coeff(y, x) == p.coeff(y, x));
    }
    const WalkMatrix twice = make_absorbing(a, single);
    CHECK((twice.dense() - a.dense()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("interpolated walk") {
    const WalkMatrix p = two_state();
    const WalkMatrix abs = make_absorbing(p, MarkedSet(2, {1}));
    CHECK((interpolate(p, abs, 0.0).dense() - p.dense()).norm() == 0.0);
    CHECK((interpolate(p, abs, 1.0).dense() - abs.dense()).norm() == 0.0);
    const WalkMatrix half = interpolate(p, abs, 0.5);
    CHECK(half.coeff(0, 1) == Approx(0.25));
    CHECK(half.coeff(1, 1) == Approx(0.75));
    CHECK_THROWS_AS(interpolate(p, abs, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(interpolate(p, abs, -0.1), std::invalid_argument);

    std::mt19937_64 engine(11);
    const WalkMatrix q = random_reversible_chain(7, engine);
    const WalkMatrix qa = make_absorbing(q, MarkedSet(7, {2, 5}));
    for (double s : {0.1, 0.4, 0.9}) {
        const Eigen::MatrixXd expected = (1.0 - s) * q.dense() + s * qa.dense();
        CHECK((interpolate(q, qa, s).dense() - expected).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("discriminant examples") {
    const WalkMatrix p = walk_from_graph(build_torus(5));
    CHECK((discriminant(p).dense() - p.dense()).cwiseAbs().maxCoeff() < 1e-15);

    const WalkMatrix abs = make_absorbing(two_state(), MarkedSet(2, {1}));
    const Eigen::MatrixXd d = discriminant(abs).dense();
    CHECK(d(0, 0) == Approx(0.5));
    CHECK(d(1, 1) == Approx(1.0));
    CHECK(d(0, 1) == 0.0);
    CHECK(d(1, 0) == 0.0);
}

TEST_CASE("discriminant fixes |pi> for random reversible chains") {
    std::mt19937_64 engine(3);
    for (int trial = 0; trial < 20; ++trial) {
        const WalkMatrix p = random_reversible_chain(4 + trial % 9, engine);
        const auto pi = stationary(p);
        const Eigen::MatrixXd d = discriminant(p).dense();
        CHECK((d - d.transpose()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((d * pi.amplitudes() - pi.amplitudes()).norm() < 1e-10);
        CHECK(check_reversible(p, pi).reversible);
    }
}

TEST_CASE("interpolated chains stay reversible") {
    std::mt19937_64 engine(8);
    for (int trial = 0; trial < 10; ++trial) {
        const WalkMatrix p = random_reversible_chain(6, engine);
        const WalkMatrix pa = make_absorbing(p, MarkedSet(6, {0, 3}));
        for (double s : {0.2, 0.7, 0.99}) {
            const WalkMatrix ps = interpolate(p, pa, s);
            CHECK(check_reversible(ps, stationary(ps)).reversible);
        }
    }
}

TEST_CASE("validation") {
    Eigen::MatrixXd bad(2, 2);
    bad << 0.5, 0.5, 0.4, 0.5;
    CHECK_THROWS_AS(WalkMatrix::from_dense(bad), std::invalid_argument);
    Eigen::MatrixXd negative(2, 2);
    negative << 1.5, 0.5, -0.5, 0.5;
    CHECK_THROWS_AS(WalkMatrix::from_dense(negative), std::invalid_argument);
    CHECK_THROWS_AS(MarkedSet(4, {}), std::invalid_argument);
    CHECK_THROWS_AS(MarkedSet(2, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(MarkedSet(4, {4}), std::invalid_argument);
    CHECK(MarkedSet(5, {3, 1, 3}).size() == 2);
}

TEST_CASE("stationary rejects a reducible chain") {
    CHECK_THROWS_AS(stationary(WalkMatrix::from_dense(Eigen::MatrixXd::Identity(3, 3))), NumericalError);
}

TEST_CASE("triplet output") {
    std::ostringstream out;
    write_triplets(out, two_state().sparse());
    CHECK(out.str() == "0 0 0.5\n1 0 0.5\n0 1 0.5\n1 1 0.5\n");
}

}  // TEST_SUITE

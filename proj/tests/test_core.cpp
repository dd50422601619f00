#include "graphon/core.hpp"

#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>

using namespace graphon;

TEST_CASE("graph symmetrizes and exposes the weight matrix") {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    const Graph g(m);
    CHECK(g.size() == 2);
    CHECK(g.gwm() == 2.0 * m);

    Matrix slightly(2, 2);
    slightly << 0.0, 1.0 + 5e-13, 1.0, 0.0;
    const Graph h(slightly);
    CHECK(h.gso()(0, 1) == h.gso()(1, 0));
}

TEST_CASE("signal norm and inner product conventions") {
    GraphSignal x(ComplexVector(2));
    x.values << Complex(3.0, 0.0), Complex(0.0, 4.0);
    CHECK_THAT(x.norm(), Catch::Matchers::WithinAbs(5.0, 1e-15));

    GraphSignal y(ComplexVector(2));
    y.values << Complex(1.0, 0.0), Complex(0.0, 1.0);
    // sum x_i conj(y_i) = 3 + 4
    CHECK_THAT(std::abs(inner(x, y) - Complex(7.0, 0.0)),
               Catch::Matchers::WithinAbs(0.0, 1e-15));

    const FeatureMap map = {x, y};
    CHECK_THAT(feature_norm(map), Catch::Matchers::WithinAbs(5.0, 1e-15));

    GraphSignal z(ComplexVector(3));
    CHECK_THROWS_AS(inner(x, z), DimensionError);
}

TEST_CASE("partition invariants") {
    const Partition p = Partition::uniform(4);
    CHECK(p.cells() == 4);
    double total = 0.0;
    for (int i = 0; i < 4; ++i) total += p.measure(i);
    CHECK_THAT(total, Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK(p.cell_of(0.0) == 0);
    CHECK(p.cell_of(0.25) == 1);
    CHECK(p.cell_of(1.0) == 3);

    CHECK_THROWS_AS(Partition({0.0, 0.5, 0.4, 1.0}), ParameterError);
    CHECK_THROWS_AS(Partition({0.1, 1.0}), ParameterError);
}

TEST_CASE("step graphon bound and evaluation") {
    Matrix b(2, 2);
    b << 1.0, -3.0, -3.0, 2.0;
    const StepGraphon w(Partition::uniform(2), b);
    CHECK(w.bound() == 3.0);
    CHECK(w(0.1, 0.9) == -3.0);
    CHECK(w(0.9, 0.9) == 2.0);
}

TEST_CASE("step signal L2 norm weights cells by measure") {
    ComplexVector v(2);
    v << Complex(1.0, 0.0), Complex(2.0, 0.0);
    const StepSignal s(Partition({0.0, 0.25, 1.0}), v);
    // sqrt(0.25 * 1 + 0.75 * 4)
    CHECK_THAT(s.l2_norm(), Catch::Matchers::WithinAbs(std::sqrt(3.25), 1e-14));
}

TEST_CASE("permutation inverse composes to the identity") {
    const Permutation p({2, 0, 1, 3});
    const Permutation inv = p.inverse();
    for (int i = 0; i < 4; ++i) CHECK(inv(p(i)) == i);
    CHECK_THROWS_AS(Permutation({0, 0, 1}), ParameterError);
}

TEST_CASE("relabel by the identity and by a swap") {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    const Graph g(m);
    CHECK(relabel(g, Permutation::identity(2)).gso() == m);
    CHECK(relabel(g, Permutation({1, 0})).gso() == m);
    CHECK_THROWS_AS(relabel(g, Permutation::identity(3)), DimensionError);
}

TEST_CASE("relabel matches dense permutation-matrix conjugation") {
    // cyclic shift of diag(1,2,3), oracle assembled from the permutation matrix
    Matrix d = Matrix::Zero(3, 3);
    d.diagonal() << 1.0, 2.0, 3.0;
    const Graph g(d);
    const Permutation cyc({1, 2, 0});
    Matrix p = Matrix::Zero(3, 3);
    for (int j = 0; j < 3; ++j) p(cyc(j), j) = 1.0;  // P e_j = e_{pi(j)}
    const Matrix oracle = p * d * p.transpose();
    CHECK((relabel(g, cyc).gso() - oracle).cwiseAbs().maxCoeff() == 0.0);
    CHECK(oracle(1, 1) == 1.0);  // the diagonal really shifted

    std::mt19937_64 rng(7);
    for (int it = 0; it < 20; ++it) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const Graph rg(testutil::random_symmetric(rng, n));
        std::vector<int> image(n);
        std::iota(image.begin(), image.end(), 0);
        std::shuffle(image.begin(), image.end(), rng);
        const Permutation perm(image);
        Matrix pm = Matrix::Zero(n, n);
        for (int j = 0; j < n; ++j) pm(perm(j), j) = 1.0;
        const Matrix expected = pm * rg.gso() * pm.transpose();
        CHECK((relabel(rg, perm).gso() - expected).cwiseAbs().maxCoeff() == 0.0);

        // signals relabel consistently: P (Delta x) = (P Delta P^T)(P x)
        const GraphSignal x(testutil::random_complex(rng, n));
        const GraphSignal lhs =
            relabel(GraphSignal(ComplexVector(rg.gso().cast<Complex>() * x.values)), perm);
        const ComplexVector rhs =
            relabel(rg, perm).gso().cast<Complex>() * relabel(x, perm).values;
        CHECK((lhs.values - rhs).norm() < 1e-12);
    }
}

TEST_CASE("graph norms: closed forms and power-iteration oracle") {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    const GraphNorms n1 = graph_norms(Graph(m));
    CHECK_THAT(n1.gso_opnorm, Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(n1.gwm_opnorm, Catch::Matchers::WithinAbs(2.0, 1e-12));

    const GraphNorms n0 = graph_norms(Graph(Matrix::Zero(3, 3)));
    CHECK(n0.gso_opnorm == 0.0);
    CHECK(n0.gwm_opnorm == 0.0);

    std::mt19937_64 rng(11);
    for (int it = 0; it < 10; ++it) {
        const Graph g(testutil::random_symmetric(rng, 5));
        const double oracle = testutil::power_iteration_opnorm(g.gso());
        CHECK_THAT(graph_norms(g).gso_opnorm, Catch::Matchers::WithinAbs(oracle, 1e-9));
    }
}

TEST_CASE("gso v1 file round trip at full precision") {
    std::mt19937_64 rng(3);
    const Graph g(testutil::random_symmetric(rng, 6));
    std::stringstream ss;
    write_gso(ss, g);
    const Graph back = read_gso(ss);
    CHECK(back.size() == 6);
    CHECK((back.gso() - g.gso()).cwiseAbs().maxCoeff() == 0.0);

    std::stringstream bad("2\n1.0 2.0\n");
    CHECK_THROWS_AS(read_gso(bad), FormatError);
    std::stringstream empty;
    CHECK_THROWS_AS(read_gso(empty), FormatError);
}

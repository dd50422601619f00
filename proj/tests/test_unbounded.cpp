#include "graphon/unbounded.hpp"

#include "graphon/induction.hpp"
#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace graphon;

TEST_CASE("band dimensions of the circle Laplacian") {
    const SpectralModel model = SpectralModel::laplace();
    CHECK(band_dimension(model, 50.0) == 3);   // 4 pi^2 < 50 < 16 pi^2
    CHECK(band_dimension(model, 1.0) == 1);    // only k = 0
    CHECK(band_dimension(model, 1e-6) == 1);   // zero eigenvalue always in band
    CHECK(band_dimension(model, 4.0 * M_PI * M_PI) == 3);  // boundary included
    CHECK_THROWS_AS(model.band_indices(0.0), ParameterError);
}

TEST_CASE("custom eigenvalue tables") {
    const SpectralModel table = SpectralModel::from_table({{-1, 3.0}, {0, 0.5}, {1, 3.0}});
    CHECK(band_dimension(table, 1.0) == 1);
    CHECK(band_dimension(table, 3.0) == 3);
    CHECK(table.eigenvalue(0) == 0.5);
    CHECK_THROWS_AS(SpectralModel::from_table({{2, 1.0}, {2, 2.0}}), ParameterError);
    CHECK_THROWS_AS(SpectralModel::parse("fourier"), FormatError);
}

TEST_CASE("projection of in-band and out-of-band harmonics") {
    const SpectralModel model = SpectralModel::laplace();
    const auto mode = [](int k) {
        return [k](double x) { return std::exp(Complex(0.0, 2.0 * M_PI * k * x)); };
    };

    const BandSignal in = project_band(model, 50.0, mode(1));
    for (int probe = 0; probe <= 40; ++probe) {
        const double x = probe / 40.0;
        CHECK(std::abs(in(x) - mode(1)(x)) < 1e-8);
    }

    const BandSignal out = project_band(model, 50.0, mode(5));
    CHECK(out.l2_norm() < 1e-10);
}

TEST_CASE("step-signal band coefficients match closed-form cell integrals") {
    const SpectralModel model = SpectralModel::laplace();
    ComplexVector v(2);
    v << 1.0, 0.0;
    const StepSignal s(Partition::uniform(2), v);
    const BandSignal p = project_band(model, 50.0, s);
    REQUIRE(p.ks == std::vector<int>({-1, 0, 1}));
    // integral of exp(-2 pi i k x) over [0, 1/2]
    const auto closed = [](int k) -> Complex {
        if (k == 0) return {0.5, 0.0};
        const Complex d(0.0, 2.0 * M_PI * k);
        return (1.0 - std::exp(-d * 0.5)) / d;
    };
    for (int c = 0; c < 3; ++c)
        CHECK(std::abs(p.coeffs[c] - closed(p.ks[c])) < 1e-14);
}

TEST_CASE("finite difference GSO: stencil, row sums, circulant spectrum") {
    const Graph g3 = finite_difference_graph(3);
    Matrix expected(3, 3);
    expected << -2, 1, 1, 1, -2, 1, 1, 1, -2;
    CHECK(g3.gso() == expected);
    CHECK_THROWS_AS(finite_difference_graph(2), ParameterError);

    for (const int n : {3, 8, 17}) {
        const Graph g = finite_difference_graph(n);
        const Vector rowsum = g.gso().rowwise().sum();
        CHECK(rowsum.cwiseAbs().maxCoeff() < 1e-14);
        // circulant eigenvalues 2 cos(2 pi j / n) - 2
        std::vector<double> formula(n);
        for (int j = 0; j < n; ++j) formula[j] = 2.0 * std::cos(2.0 * M_PI * j / n) - 2.0;
        std::sort(formula.begin(), formula.end());
        Eigen::SelfAdjointEigenSolver<Matrix> es(g.gso(), Eigen::EigenvaluesOnly);
        for (int j = 0; j < n; ++j)
            CHECK_THAT(es.eigenvalues()[j], Catch::Matchers::WithinAbs(formula[j], 1e-9));
    }
}

namespace {

StepOperator scaled_fd_operator(int n) {
    const Graph g = finite_difference_graph(n);
    return induce_operator(Graph(double(n) * double(n) * g.gso()));
}

}  // namespace

TEST_CASE("compressed operator closed forms") {
    const SpectralModel model = SpectralModel::laplace();

    const StepOperator zero(StepGraphon(Partition::uniform(8), Matrix::Zero(8, 8)));
    CHECK(compressed_operator(model, 50.0, zero).cwiseAbs().maxCoeff() == 0.0);

    // constant kernel appears only in the k = 0 slot
    const StepOperator c(StepGraphon(Partition::uniform(8), 0.7 * Matrix::Ones(8, 8)));
    const ComplexMatrix e = compressed_operator(model, 50.0, c);
    CHECK(std::abs(e(1, 1) - Complex(0.7, 0.0)) < 1e-12);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != 1 || j != 1) CHECK(std::abs(e(i, j)) < 1e-12);
}

TEST_CASE("finite differences approach the Laplacian eigenvalues in band") {
    const SpectralModel model = SpectralModel::laplace();
    const ComplexMatrix e = compressed_operator(model, 50.0, scaled_fd_operator(512));
    // diagonal entries approach -4 pi^2 k^2 for k = -1, 0, 1
    CHECK(std::abs(e(0, 0).real() + 4.0 * M_PI * M_PI) < 0.05);
    CHECK(std::abs(e(1, 1)) < 1e-9);
    CHECK(std::abs(e(2, 2).real() + 4.0 * M_PI * M_PI) < 0.05);

    double prev = std::numeric_limits<double>::infinity();
    for (const int n : {64, 128, 256, 512}) {
        const double gap = unbdd_convergence_gap(model, 50.0, scaled_fd_operator(n));
        CHECK(gap < prev);
        prev = gap;
    }
}

TEST_CASE("discretized truncated kernel reproduces the band eigenvalues") {
    // kernel sum of lambda_k phi_k phi_k^* over the band, midpoint-sampled on
    // P_256; the only deviation from diag(lambda) is the sinc^2 cell factor
    const SpectralModel model = SpectralModel::laplace();
    const double lam = 4.0 * M_PI * M_PI;
    const int n = 256;
    Matrix b(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double u = (i + 0.5) / n, v = (j + 0.5) / n;
            b(i, j) = 2.0 * lam * std::cos(2.0 * M_PI * (u - v));
        }
    const StepOperator t(StepGraphon(Partition::uniform(n), b));
    const double gap = unbdd_convergence_gap(model, 50.0, t, +1.0);
    const double sinc = std::sin(M_PI / n) / (M_PI / n);
    const double predicted = lam * (1.0 - sinc * sinc);
    CHECK_THAT(gap, Catch::Matchers::WithinAbs(predicted, 1e-9));
    CHECK(gap < 2.5e-3);
}

TEST_CASE("zero operator has zero gap below the first nonzero eigenvalue") {
    const SpectralModel model = SpectralModel::laplace();
    const StepOperator zero(StepGraphon(Partition::uniform(16), Matrix::Zero(16, 16)));
    CHECK(unbdd_convergence_gap(model, 1.0, zero) == 0.0);
}

TEST_CASE("approximate commutation gaps") {
    const SpectralModel model = SpectralModel::laplace();

    CHECK(approx_commutation_gap(model, 50.0, scaled_fd_operator(64), 1) < 1e-10);

    // a kernel whose band is exactly invariant: constant kernel, rank one
    const StepOperator c(StepGraphon(Partition::uniform(8), 0.7 * Matrix::Ones(8, 8)));
    CHECK(approx_commutation_gap(model, 50.0, c, 2) < 1e-12);
    CHECK(approx_commutation_gap(model, 50.0, c, 3) < 1e-12);

    double prev = std::numeric_limits<double>::infinity();
    for (const int n : {64, 128, 256, 512}) {
        const double gap = approx_commutation_gap(model, 50.0, scaled_fd_operator(n), 2);
        CHECK(gap < prev);
        prev = gap;
    }

    CHECK_THROWS_AS(approx_commutation_gap(model, 50.0, c, 0), ParameterError);
}

#include "graphon/motifs.hpp"

#include "graphon/induction.hpp"
#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace graphon;

namespace {

Graph triangle() {
    Matrix adj(3, 3);
    adj << 0, 1, 1, 1, 0, 1, 1, 1, 0;
    return Graph(adj / 3.0);  // GWM equals the adjacency matrix
}

// brute-force oracle: iterate every node map explicitly
double brute_hom(const Motif& f, const Matrix& gwm) {
    const int n = static_cast<int>(gwm.rows());
    const int nv = f.nodes();
    std::vector<int> map(nv, 0);
    double total = 0.0;
    while (true) {
        double term = 1.0;
        for (const auto& [u, v] : f.edges()) term *= gwm(map[u], map[v]);
        total += term;
        int pos = 0;
        while (pos < nv && ++map[pos] == n) map[pos++] = 0;
        if (pos == nv) break;
    }
    return total;
}

}  // namespace

TEST_CASE("motif parsing and validation") {
    CHECK(Motif::parse("K2").edges().size() == 1);
    CHECK(Motif::parse("K3").edges().size() == 3);
    CHECK(Motif::parse("P3").edges().size() == 2);
    CHECK(Motif::parse("C4").edges().size() == 4);
    const Motif custom = Motif::parse("edges:0-1,1-2");
    CHECK(custom.nodes() == 3);
    CHECK_THROWS_AS(Motif::parse("Q5"), FormatError);
    CHECK_THROWS_AS(Motif(2, {{0, 0}}), ParameterError);
    CHECK_THROWS_AS(Motif(2, {{0, 1}, {1, 0}}), ParameterError);
    CHECK_THROWS_AS(Motif(7, {}), ParameterError);
}

TEST_CASE("hom numbers on the triangle") {
    CHECK_THAT(hom_number(Motif::complete(2), triangle()),
               Catch::Matchers::WithinAbs(6.0, 1e-12));
    CHECK_THAT(hom_number(Motif(1, {}), triangle()),
               Catch::Matchers::WithinAbs(3.0, 1e-12));
    CHECK_THAT(hom_number(Motif::complete(3), triangle()),
               Catch::Matchers::WithinAbs(6.0, 1e-12));
}

TEST_CASE("hom numbers match the brute-force oracle on random graphs") {
    std::mt19937_64 rng(67);
    for (int it = 0; it < 10; ++it) {
        const int n = 3 + static_cast<int>(rng() % 4);
        const Graph g(testutil::random_symmetric(rng, n));
        for (const auto& f : {Motif::complete(2), Motif::path(3), Motif::complete(3),
                              Motif::cycle(4)}) {
            const double expected = brute_hom(f, g.gwm());
            CHECK_THAT(hom_number(f, g),
                       Catch::Matchers::WithinAbs(expected, 1e-9 * std::max(1.0, std::abs(expected))));
        }
    }
}

TEST_CASE("hom densities") {
    CHECK_THAT(hom_density_graph(Motif::complete(2), triangle()),
               Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-13));
    CHECK_THAT(hom_density_graph(Motif(3, {}), triangle()),
               Catch::Matchers::WithinAbs(1.0, 1e-13));
    CHECK(hom_density_graph(Motif::complete(2), Graph(Matrix::Zero(4, 4))) == 0.0);
}

TEST_CASE("graphon densities: constant and induced kernels") {
    const StepGraphon half(Partition::uniform(3), 0.5 * Matrix::Ones(3, 3));
    CHECK_THAT(hom_density_step(Motif::complete(3), half),
               Catch::Matchers::WithinAbs(0.125, 1e-13));

    CHECK_THAT(hom_density_step(Motif::complete(2), induce_graphon(triangle())),
               Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-13));

    const StepGraphon zero(Partition::uniform(2), Matrix::Zero(2, 2));
    CHECK(hom_density_step(Motif::complete(2), zero) == 0.0);
}

TEST_CASE("density preservation under induction, signed version") {
    std::mt19937_64 rng(71);
    for (int it = 0; it < 10; ++it) {
        const int n = 3 + static_cast<int>(rng() % 4);
        const Graph g(testutil::random_symmetric(rng, n));  // negative weights allowed
        for (const auto& f : {Motif::complete(2), Motif::path(3), Motif::complete(4)}) {
            const double signed_graph =
                hom_number(f, g) / std::pow(double(g.size()), f.nodes());
            CHECK_THAT(hom_density_step(f, induce_graphon(g)),
                       Catch::Matchers::WithinAbs(signed_graph,
                                                  1e-12 * std::max(1.0, std::abs(signed_graph))));
        }
    }
}

TEST_CASE("monte carlo densities") {
    GraphonEvaluator constant{[](double, double) { return 0.5; }, 0.5, "const"};
    const McEstimate c = hom_density_mc(Motif::complete(3), constant, 200, 9);
    CHECK_THAT(c.estimate, Catch::Matchers::WithinAbs(0.125, 1e-12));
    CHECK(c.stderr_ < 1e-12);

    GraphonEvaluator product{[](double u, double v) { return u * v; }, 1.0, "product"};
    const McEstimate p = hom_density_mc(Motif::complete(2), product, 20000, 10);
    CHECK(std::abs(p.estimate - 0.25) <= 3.0 * p.stderr_ + 1e-12);

    GraphonEvaluator zero{[](double, double) { return 0.0; }, 0.0, "zero"};
    CHECK(hom_density_mc(Motif::complete(2), zero, 100, 1).estimate == 0.0);

    CHECK_THROWS_AS(hom_density_mc(Motif::complete(2), zero, 50, 1), ParameterError);
}

TEST_CASE("cut norm closed forms") {
    const StepGraphon c(Partition::uniform(3), -0.75 * Matrix::Ones(3, 3));
    const CutNorm cn = cut_norm_exact(c);
    CHECK_THAT(cn.value, Catch::Matchers::WithinAbs(0.75, 1e-13));
    CHECK(cn.s_cells.size() == 3);
    CHECK(cn.t_cells.size() == 3);

    Matrix pm(2, 2);
    pm << 1.0, -1.0, -1.0, 1.0;
    const CutNorm cp = cut_norm_exact(StepGraphon(Partition::uniform(2), pm));
    CHECK_THAT(cp.value, Catch::Matchers::WithinAbs(0.25, 1e-13));
    CHECK(cp.s_cells.size() == 1);
    CHECK(cp.t_cells.size() == 1);

    CHECK(cut_norm_exact(StepGraphon(Partition::uniform(2), Matrix::Zero(2, 2))).value ==
          0.0);
}

TEST_CASE("cut norm exact against full rectangle enumeration") {
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int it = 0; it < 25; ++it) {
        const int k = 2 + static_cast<int>(rng() % 5);
        Matrix b(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = i; j < k; ++j) b(i, j) = b(j, i) = unif(rng);
        const StepGraphon w(Partition::uniform(k), b);
        // oracle: enumerate every (S, T) pair of cell subsets
        double best = 0.0;
        for (std::uint32_t s = 0; s < (1u << k); ++s)
            for (std::uint32_t t = 0; t < (1u << k); ++t) {
                double v = 0.0;
                for (int i = 0; i < k; ++i)
                    if (s & (1u << i))
                        for (int j = 0; j < k; ++j)
                            if (t & (1u << j)) v += b(i, j) / double(k) / double(k);
                best = std::max(best, std::abs(v));
            }
        CHECK_THAT(cut_norm_exact(w).value, Catch::Matchers::WithinAbs(best, 1e-12));
    }
}

TEST_CASE("cut norm heuristic never exceeds the exact value") {
    std::mt19937_64 rng(79);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    int matches = 0;
    for (int it = 0; it < 40; ++it) {
        const int k = 10;
        Matrix b(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = i; j < k; ++j) b(i, j) = b(j, i) = unif(rng);
        const StepGraphon w(Partition::uniform(k), b);
        const double exact = cut_norm_exact(w).value;
        const double heur = cut_norm_heuristic(w, 20, rng());
        CHECK(heur <= exact + 1e-12);
        if (std::abs(heur - exact) <= 1e-9) ++matches;
    }
    CHECK(matches >= 36);  // at least 90 percent

    const StepGraphon c(Partition::uniform(4), 0.3 * Matrix::Ones(4, 4));
    CHECK_THAT(cut_norm_heuristic(c, 5, 11), Catch::Matchers::WithinAbs(0.3, 1e-12));
    const StepGraphon z(Partition::uniform(4), Matrix::Zero(4, 4));
    CHECK(cut_norm_heuristic(z, 5, 11) == 0.0);
}

TEST_CASE("aligned cut distance") {
    std::mt19937_64 rng(83);
    const StepGraphon a(Partition::uniform(5), testutil::random_symmetric(rng, 5));
    CHECK(cut_distance_aligned(a, a, AlignMode::Exact) == 0.0);

    // a relabeled copy is recovered exactly
    std::vector<int> image = {2, 0, 4, 1, 3};
    Matrix vb(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) vb(image[i], image[j]) = a.values()(i, j);
    const StepGraphon b(Partition::uniform(5), vb);
    CHECK(cut_distance_aligned(a, b, AlignMode::Exact) <= 1e-14);
    CHECK(cut_distance_aligned(a, b, AlignMode::Heuristic) >=
          cut_distance_aligned(a, b, AlignMode::Exact) - 1e-14);

    const StepGraphon small(Partition::uniform(3), Matrix::Zero(3, 3));
    CHECK_THROWS_AS(cut_distance_aligned(a, small, AlignMode::Exact), DimensionError);
}

TEST_CASE("aligned cut distance of independent SBM samples is pinned") {
    // two independent n=8 samples of the same two-block graphon; the exact
    // 8!-enumeration value is frozen as a regression fixture
    const auto sbm = [](double u, double v) {
        return (u < 0.5) == (v < 0.5) ? 0.8 : 0.2;
    };
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const auto sample = [&]() {
        std::vector<double> u(8);
        for (double& x : u) x = unif(rng);
        std::sort(u.begin(), u.end());
        Matrix b(8, 8);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) b(i, j) = sbm(u[i], u[j]);
        return StepGraphon(Partition::uniform(8), b);
    };
    const StepGraphon w1 = sample();
    const StepGraphon w2 = sample();
    const double dist = cut_distance_aligned(w1, w2, AlignMode::Exact);
    CHECK(dist >= 0.0);
    CHECK(dist <= 0.6);  // coarse sanity; exact value pinned below
    CHECK_THAT(dist, Catch::Matchers::WithinAbs(0.075, 1e-9));
}

#pragma once

#include "graphon/harness.hpp"

#include <json.hpp>

namespace graphon::verify {

struct CheckResult {
    bool pass = false;
    std::string detail;
};

struct Check {
    std::string name;
    std::function<CheckResult(std::uint64_t, bool)> run;  // (seed, mutate)
};

namespace detail {

using graphon::detail::hermitian_norm;

inline Matrix random_symmetric(std::mt19937_64& rng, int n, double opnorm = -1.0) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m(i, j) = m(j, i) = unif(rng);
    if (opnorm > 0.0) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
        const double cur = es.eigenvalues().cwiseAbs().maxCoeff();
        if (cur > 0.0) m *= opnorm / cur;
    }
    return m;
}

inline ComplexVector random_complex(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    ComplexVector v(n);
    for (int i = 0; i < n; ++i) v[i] = Complex(unif(rng), unif(rng));
    return v;
}

inline StepGraphon random_step_graphon(std::mt19937_64& rng, int k, double bound = 1.0) {
    std::uniform_real_distribution<double> unif(-bound, bound);
    Matrix m(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) m(i, j) = m(j, i) = unif(rng);
    return StepGraphon(Partition::uniform(k), std::move(m));
}

inline Partition random_partition(std::mt19937_64& rng, int k) {
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    std::vector<double> cuts{0.0};
    double acc = 0.0;
    std::vector<double> lens(k);
    for (double& l : lens) {
        l = unif(rng);
        acc += l;
    }
    double run = 0.0;
    for (int i = 0; i < k - 1; ++i) {
        run += lens[i] / acc;
        cuts.push_back(run);
    }
    cuts.push_back(1.0);
    return Partition(std::move(cuts));
}

inline FilterSpec random_polynomial(std::mt19937_64& rng, int max_degree,
                                    bool zero_at_zero, double domain_bound = 1.0) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::uniform_int_distribution<int> degree(1, max_degree);
    std::vector<double> c(degree(rng) + 1);
    for (double& ci : c) ci = unif(rng);
    if (zero_at_zero) c[0] = 0.0;
    return FilterSpec::polynomial(std::move(c), domain_bound);
}

inline Matrix matrix_polynomial(const std::vector<double>& c, const Matrix& a) {
    Matrix r = Matrix::Zero(a.rows(), a.cols());
    const Matrix id = Matrix::Identity(a.rows(), a.cols());
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = (r * a + *it * id).eval();
    return r;
}

inline double matrix_opnorm(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()),
                                             Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

inline double complex_opnorm(const ComplexMatrix& m) {
    return Eigen::JacobiSVD<ComplexMatrix>(m).singularValues()(0);
}

inline std::string fmt(double v) { return format_double(v); }

}  // namespace detail

// --- individual checks ------------------------------------------------------

inline CheckResult check_induced_norm_scaling(std::uint64_t seed, bool) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> size(1, 64);
    double worst = 0.0;
    for (int it = 0; it < 50; ++it) {
        const int n = size(rng);
        const GraphSignal x(detail::random_complex(rng, n));
        const GraphSignal y(detail::random_complex(rng, n));
        const double lhs = induce_signal(x).l2_norm();
        const double rhs = x.norm() / std::sqrt(static_cast<double>(n));
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, rhs));
        const Complex ip = l2_inner(induce_signal(x), induce_signal(y));
        const Complex ref = inner(x, y) / static_cast<double>(n);
        worst = std::max(worst, std::abs(ip - ref) / std::max(1.0, std::abs(ref)));
    }
    return {worst <= 1e-12, "max_rel_err=" + detail::fmt(worst)};
}

inline CheckResult check_relabel_spectrum(std::uint64_t seed, bool) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> size(2, 32);
    double worst = 0.0;
    for (int it = 0; it < 20; ++it) {
        const int n = size(rng);
        const Graph g(detail::random_symmetric(rng, n));
        std::vector<int> image(n);
        std::iota(image.begin(), image.end(), 0);
        std::shuffle(image.begin(), image.end(), rng);
        const Graph rg = relabel(g, Permutation(image));
        Eigen::SelfAdjointEigenSolver<Matrix> e1(g.gso(), Eigen::EigenvaluesOnly);
        Eigen::SelfAdjointEigenSolver<Matrix> e2(rg.gso(), Eigen::EigenvaluesOnly);
        worst = std::max(worst,
                         (e1.eigenvalues() - e2.eigenvalues()).cwiseAbs().maxCoeff());
    }
    return {worst <= 1e-10, "max_abs_err=" + detail::fmt(worst)};
}

inline CheckResult check_refinement_exactness(std::uint64_t seed, bool) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> cells(2, 10);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst = 0.0;
    for (int it = 0; it < 20; ++it) {
        std::uniform_real_distribution<double> val(-1.0, 1.0);
        Partition pa = detail::random_partition(rng, cells(rng));
        Partition pb = detail::random_partition(rng, cells(rng));
        const int ka = pa.cells(), kb = pb.cells();
        Matrix va(ka, ka), vb(kb, kb);
        for (int i = 0; i < ka; ++i)
            for (int j = i; j < ka; ++j) va(i, j) = va(j, i) = val(rng);
        for (int i = 0; i < kb; ++i)
            for (int j = i; j < kb; ++j) vb(i, j) = vb(j, i) = val(rng);
        const StepGraphon a(pa, va), b(pb, vb);
        auto [ra, rb] = common_refinement(a, b);
        for (int probe = 0; probe < 100; ++probe) {
            const double u = unif(rng), v = unif(rng);
            worst = std::max(worst, std::abs(a(u, v) - ra(u, v)));
            worst = std::max(worst, std::abs(b(u, v) - rb(u, v)));
        }
    }
    return {worst == 0.0, "max_abs_err=" + detail::fmt(worst)};
}

inline CheckResult check_hom_density_preservation(std::uint64_t seed, bool) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> size(3, 6);
    const std::vector<Motif> motifs = {Motif::complete(2), Motif::path(3),
                                       Motif::complete(3), Motif::cycle(4),
                                       Motif::complete(4)};
    double worst = 0.0;
    for (int it = 0; it < 10; ++it) {
        const Graph g(detail::random_symmetric(rng, size(rng)));
        const StepGraphon w = induce_graphon(g);
        for (const auto& f : motifs) {
            const double signed_graph =
                hom_number(f, g) / std::pow(static_cast<double>(g.size()), f.nodes());
            const double graphon_side = hom_density_step(f, w);
            worst = std::max(worst, std::abs(signed_graph - graphon_side) /
                                        std::max(1.0, std::abs(signed_graph)));
        }
    }
    return {worst <= 1e-12, "max_rel_err=" + detail::fmt(worst)};
}

/// Filtering commutes with induction on the operator side: applying a filter
/// with h(0)=0 to the induced operator reproduces the induced graphon of
/// n*h(gso), the matrix polynomial assembled directly as the oracle.
inline CheckResult check_filter_induction_identity(std::uint64_t seed, bool mutate) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> size(2, 64);
    double worst = 0.0;
    for (int it = 0; it < 50; ++it) {
        const int n = size(rng);
        const Graph g(detail::random_symmetric(rng, n, 1.0));
        const FilterSpec h = detail::random_polynomial(rng, 6, true);
        const StepOperator filtered = filter_step_operator(h, induce_operator(g));
        const double factor = mutate ? 1.0 : static_cast<double>(n);
        const Matrix oracle =
            factor * detail::matrix_polynomial(h.poly_coefficients(), g.gso());
        const double scale = std::max(1.0, oracle.cwiseAbs().maxCoeff());
        worst = std::max(
            worst, (filtered.kernel().values() - oracle).cwiseAbs().maxCoeff() / scale);
    }
    return {worst <= 1e-8, "max_rel_err=" + detail::fmt(worst)};
}

/// Filtering commutes with induction on the signal side, for any continuous
/// filter (no vanishing-at-zero hypothesis).
inline CheckResult check_signal_filter_commutation(std::uint64_t seed, bool) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> size(2, 64);
    double worst = 0.0;
    for (int it = 0; it < 50; ++it) {
        const int n = size(rng);
        const Graph g(detail::random_symmetric(rng, n, 1.0));
        const FilterSpec h = it % 3 == 0
                                 ? FilterSpec::rational({1.0, 1.0}, {2.0, 1.0})
                                 : detail::random_polynomial(rng, 6, false);
        const GraphSignal x(detail::random_complex(rng, n));
        const ComplexVector filtered = filter_matrix(h, g.gso()).cast<Complex>() * x.values;
        const StepSignal lhs = induce_signal(GraphSignal(filtered));
        const StepSignal rhs = filter_apply(h, induce_operator(g), induce_signal(x));
        worst = std::max(worst, l2_distance(lhs, rhs) / std::max(1.0, lhs.l2_norm()));
    }
    return {worst <= 1e-8, "max_rel_err=" + detail::fmt(worst)};
}

inline CheckResult check_functional_calculus_norm(std::uint64_t seed, bool) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> size(2, 48);
    double worst = 0.0;
    for (int it = 0; it < 50; ++it) {
        const Graph g(detail::random_symmetric(rng, size(rng), 1.0));
        const FilterSpec h = detail::random_polynomial(rng, 5, false);
        const Graph fg = filter_graph(h, g);
        const EigenDecomposition ed = decompose(g.gso());
        double expected = 0.0;
        for (int j = 0; j < ed.eigenvalues.size(); ++j)
            expected = std::max(expected, std::abs(h(ed.eigenvalues[j])));
        worst = std::max(worst, std::abs(graph_norms(fg).gso_opnorm - expected) /
                                    std::max(1.0, expected));
    }
    return {worst <= 1e-10, "max_rel_err=" + detail::fmt(worst)};
}

inline CheckResult check_unitary_exp_lipschitz(std::uint64_t seed, bool) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> size(2, 32);
    std::uniform_real_distribution<double> avals(-10.0, 10.0);
    double worst_excess = -1.0;
    for (int it = 0; it < 200; ++it) {
        const int n = size(rng);
        const Matrix a = detail::random_symmetric(rng, n);
        const Matrix b = detail::random_symmetric(rng, n);
        const double t = avals(rng);
        const double lhs = detail::complex_opnorm(unitary_exp(t, a) - unitary_exp(t, b));
        const double rhs = std::abs(t) * detail::matrix_opnorm(a - b);
        worst_excess = std::max(worst_excess, lhs - rhs);
    }
    return {worst_excess <= 1e-9, "max_excess=" + detail::fmt(worst_excess)};
}

/// Ratio of filtered to raw Schatten distances over a random family; the
/// constant is recorded, not asserted against any universal bound.
inline CheckResult check_schatten_lipschitz_trend(std::uint64_t seed, bool) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> cells(2, 12);
    const std::vector<FilterSpec> filters = {
        FilterSpec::parse("sq"), FilterSpec::parse("cube-minus-id"),
        FilterSpec::tabulated([](double x) { return std::abs(x); }, nullptr, 1.0, false,
                              "abs")};
    double max_ratio = 0.0;
    for (int it = 0; it < 30; ++it) {
        const int k = cells(rng);
        const StepGraphon a = detail::random_step_graphon(rng, k);
        const StepGraphon b = detail::random_step_graphon(rng, k);
        for (const double p : {3.0, 4.0, 6.0}) {
            const double raw = operator_distance(a, b, p);
            if (raw < 1e-12) continue;
            for (const auto& h : filters) {
                const double filtered =
                    filter_distance(h, StepOperator(a), StepOperator(b), p);
                max_ratio = std::max(max_ratio, filtered / raw);
            }
        }
    }
    return {std::isfinite(max_ratio), "max_ratio=" + detail::fmt(max_ratio)};
}

inline CheckResult check_sandwich_inequality(std::uint64_t seed, bool) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> cells(2, 12);
    double worst = -1.0;
    for (int it = 0; it < 100; ++it) {
        const StepGraphon w = detail::random_step_graphon(rng, cells(rng));
        const double cut = cut_norm_exact(w).value;
        const StepOperator t(w);
        const double op = operator_norm(t);
        worst = std::max(worst, cut - op);
        for (const double p : {3.0, 4.0, 6.0}) {
            const double sp = schatten_norm(t, p);
            worst = std::max(worst, op - sp);
            const double upper = std::sqrt(2.0) * std::pow(cut, 0.5 - 1.0 / p);
            worst = std::max(worst, sp - upper);
        }
    }
    return {worst <= 1e-9, "max_violation=" + detail::fmt(worst)};
}

inline CheckResult check_counting_lemma(std::uint64_t seed, bool) {
    std::mt19937_64 rng(seed);
    const std::vector<Motif> motifs = {Motif::complete(2), Motif::path(3),
                                       Motif::complete(3), Motif::path(4)};
    double worst = -1.0;
    for (int it = 0; it < 10; ++it) {
        const StepGraphon u = detail::random_step_graphon(rng, 8);
        const StepGraphon w = detail::random_step_graphon(rng, 8);
        const double dist = cut_distance_aligned(u, w, AlignMode::Exact);
        for (const auto& f : motifs) {
            const double m = static_cast<double>(f.edges().size());
            const double gap =
                std::abs(hom_density_step(f, u) - hom_density_step(f, w));
            worst = std::max(worst, gap - 4.0 * m * dist);
        }
    }
    return {worst <= 1e-9, "max_violation=" + detail::fmt(worst)};
}

inline CheckResult check_cut_heuristic_vs_exact(std::uint64_t seed, bool) {
    std::mt19937_64 rng(seed);
    int matches = 0;
    double worst_over = -1.0;
    for (int it = 0; it < 100; ++it) {
        const StepGraphon w = detail::random_step_graphon(rng, 10);
        const double exact = cut_norm_exact(w).value;
        const double heur = cut_norm_heuristic(w, 20, rng());
        worst_over = std::max(worst_over, heur - exact);
        if (std::abs(heur - exact) <= 1e-9) ++matches;
    }
    const bool pass = worst_over <= 1e-12 && matches >= 90;
    return {pass, "matches=" + std::to_string(matches) +
                      " max_over=" + detail::fmt(worst_over)};
}

/// The operator stability bound realized on matrix pairs at several
/// perturbation scales.
inline CheckResult check_filter_stability_matrix_bound(std::uint64_t seed, bool) {
    std::mt19937_64 rng(seed);
    const double gamma = 1.0;
    const std::vector<FilterSpec> filters = {
        FilterSpec::parse("sq"), FilterSpec::parse("cube-minus-id"),
        FilterSpec::rational({0.0, 1.0}, {2.0, 1.0})};
    double worst = -1.0;
    for (const auto& h : filters) {
        const double constant = stability_constant(h).lemma_constant;
        for (const double eps : {1e-1, 1e-2, 1e-3}) {
            for (int it = 0; it < 10; ++it) {
                const Matrix a = detail::random_symmetric(rng, 16, gamma - eps);
                const Matrix e = detail::random_symmetric(rng, 16, 1.0);
                const Matrix b = a + eps * e;
                const double lhs =
                    detail::matrix_opnorm(filter_matrix(h, a) - filter_matrix(h, b));
                const double dist = detail::matrix_opnorm(a - b);
                worst = std::max(worst, lhs - constant * dist);
            }
        }
    }
    return {worst <= 1e-8, "max_excess=" + detail::fmt(worst)};
}

inline CheckResult check_stability_constant_doubling(std::uint64_t seed, bool) {
    (void)seed;
    double worst = 0.0;
    for (const auto& name : {"sq", "cube-minus-id"}) {
        const FilterSpec h = FilterSpec::parse(name);
        const double c1 = stability_constant(h, 2048, 1 << 14).coeff_sum;
        const double c2 = stability_constant(h, 2048, 1 << 15).coeff_sum;
        worst = std::max(worst, std::abs(c1 - c2) / std::max(1e-30, std::abs(c1)));
    }
    return {worst <= 1e-6, "max_rel_change=" + detail::fmt(worst)};
}

inline CheckResult check_extension_reproduces_filter(std::uint64_t seed, bool) {
    (void)seed;
    const std::vector<FilterSpec> filters = {
        FilterSpec::parse("sq"), FilterSpec::parse("cube-minus-id"),
        FilterSpec::rational({0.0, 1.0}, {2.0, 1.0})};
    double worst = 0.0;
    for (const auto& h : filters) {
        const PeriodicExtension ext(h);
        const double gamma = h.domain_bound();
        for (int i = 0; i <= 1000; ++i) {
            const double x = -gamma + 2.0 * gamma * i / 1000.0;
            worst = std::max(worst, std::abs(ext(x) - h(x)));
        }
    }
    return {worst <= 1e-12, "max_abs_err=" + detail::fmt(worst)};
}

namespace detail {

inline ScnnSpec random_scnn(std::mt19937_64& rng, int max_layers, int max_width) {
    std::uniform_int_distribution<int> layers(1, max_layers);
    std::uniform_int_distribution<int> width(1, max_width);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::uniform_int_distribution<int> act(0, 3);
    ScnnSpec s;
    const int L = layers(rng);
    s.widths.push_back(width(rng));
    for (int l = 0; l < L; ++l) s.widths.push_back(width(rng));
    for (int l = 0; l < L; ++l) {
        const int fout = s.widths[l + 1], fin = s.widths[l];
        std::vector<std::vector<FilterSpec>> bank(fout);
        for (int j = 0; j < fout; ++j)
            for (int k = 0; k < fin; ++k)
                bank[j].push_back(random_polynomial(rng, 3, false));
        s.filters.push_back(std::move(bank));
        Matrix m(fout, fin);
        for (int j = 0; j < fout; ++j)
            for (int k = 0; k < fin; ++k) m(j, k) = unif(rng);
        s.weights.push_back(std::move(m));
    }
    const Activation::Kind kinds[] = {Activation::Identity, Activation::Relu,
                                      Activation::Tanh, Activation::LeakyRelu};
    s.activation = Activation(kinds[act(rng)]);
    return s;
}

// gate-passing two-layer width-two network on [-gamma, gamma]
inline ScnnSpec gate_passing_scnn(double gamma) {
    ScnnSpec s;
    s.widths = {2, 2, 2};
    const FilterSpec sq = FilterSpec::parse("sq", gamma);
    const FilterSpec cmi = FilterSpec::parse("cube-minus-id", gamma);
    s.filters = {{{sq, cmi}, {cmi, sq}}, {{cmi, sq}, {sq, cmi}}};
    Matrix m1(2, 2), m2(2, 2);
    m1 << 0.5, 0.5, 0.3, 0.7;
    m2 << 0.6, 0.4, 0.2, 0.8;
    s.weights = {m1, m2};
    s.activation = Activation(Activation::Relu);
    return s;
}

}  // namespace detail

/// The network commutes with induction: inducing the graph output equals the
/// graphon forward pass on the induced operator and inputs.
inline CheckResult check_scnn_induction_commutation(std::uint64_t seed, bool) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> size(4, 32);
    double worst = 0.0;
    for (int it = 0; it < 50; ++it) {
        const int n = size(rng);
        const Graph g(detail::random_symmetric(rng, n, 1.0));
        const ScnnSpec s = detail::random_scnn(rng, 3, 4);
        FeatureMap x;
        for (int k = 0; k < s.widths[0]; ++k)
            x.emplace_back(detail::random_complex(rng, n));
        const FeatureMap graph_out = scnn_forward_graph(s, g, x);
        StepFeatureMap induced_in;
        for (const auto& f : x) induced_in.push_back(induce_signal(f));
        const StepFeatureMap graphon_out =
            scnn_forward_graphon(s, induce_operator(g), induced_in);
        for (std::size_t k = 0; k < graph_out.size(); ++k) {
            const double d =
                l2_distance(induce_signal(graph_out[k]), graphon_out[k]);
            worst = std::max(worst, d / std::max(1.0, graphon_out[k].l2_norm()));
        }
    }
    return {worst <= 1e-8, "max_rel_err=" + detail::fmt(worst)};
}

inline CheckResult check_scnn_transfer_bound(std::uint64_t seed, bool) {
    ScnnTransferConfig cfg;
    cfg.graphon = "sbm:2,0.8,0.2";
    cfg.spec = detail::gate_passing_scnn(0.8);
    cfg.spec_name = "gate2x2";
    cfg.inputs = {"u", "cos"};
    cfg.n1 = 64;
    cfg.n2 = 128;
    cfg.trials = 10;
    cfg.seed = seed;
    const ScnnTransferResult res = run_scnn_transfer(cfg);
    double margin = 0.0;
    for (const auto& t : res.trials)
        margin = std::max(margin, t.repercussion - res.constant * t.epsilon);
    return {res.all_hold, "C_L=" + detail::fmt(res.constant) +
                              " max_excess=" + detail::fmt(margin)};
}

inline CheckResult check_contractivity_propagation(std::uint64_t seed, bool) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> size(4, 32);
    double worst = -1.0;
    for (int it = 0; it < 20; ++it) {
        const int n = size(rng);
        const Graph g(detail::random_symmetric(rng, n, 0.8));
        ScnnSpec s = detail::gate_passing_scnn(1.0);
        const Activation::Kind kinds[] = {Activation::Relu, Activation::Tanh,
                                          Activation::LeakyRelu, Activation::Identity};
        s.activation = Activation(kinds[it % 4]);
        StepFeatureMap y;
        for (int k = 0; k < s.widths[0]; ++k) {
            ComplexVector v = detail::random_complex(rng, n);
            y.emplace_back(Partition::uniform(n), std::move(v));
        }
        const StepFeatureMap out = scnn_forward_graphon(s, induce_operator(g), y);
        worst = std::max(worst, feature_norm(out) - feature_norm(y));
    }
    return {worst <= 1e-12, "max_excess=" + detail::fmt(worst)};
}

inline CheckResult check_projector_algebra(std::uint64_t seed, bool) {
    std::mt19937_64 rng(seed);
    const SpectralModel model = SpectralModel::laplace();
    const double lambda = 50.0;
    const int dim = band_dimension(model, lambda);
    double worst = 0.0;
    for (int it = 0; it < 20; ++it) {
        const StepSignal s(Partition::uniform(64), detail::random_complex(rng, 64));
        const StepSignal t(Partition::uniform(64), detail::random_complex(rng, 64));
        const BandSignal ps = project_band(model, lambda, s);
        const BandSignal pt = project_band(model, lambda, t);
        if (static_cast<int>(ps.ks.size()) != dim)
            return {false, "band dimension mismatch"};
        // self-adjointness: <Ps,t> = <s,Pt> via the band coefficients
        const Complex lhs = ps.coeffs.conjugate().dot(pt.coeffs.conjugate());
        const Complex rhs = pt.coeffs.adjoint() * ps.coeffs;
        worst = std::max(worst, std::abs(lhs - rhs));
        // Bessel: the projection never increases the norm
        worst = std::max(worst, ps.l2_norm() - s.l2_norm());
    }
    // in-band eigenfunction reproduced, out-of-band one annihilated
    const auto mode = [](int k) {
        return [k](double x) { return std::exp(Complex(0.0, 2.0 * M_PI * k * x)); };
    };
    double recon = 0.0;
    const BandSignal in_band = project_band(model, lambda, mode(1));
    for (int probe = 0; probe <= 50; ++probe) {
        const double x = probe / 50.0;
        recon = std::max(recon, std::abs(in_band(x) - mode(1)(x)));
    }
    const BandSignal out_band = project_band(model, lambda, mode(5));
    recon = std::max(recon, out_band.l2_norm());
    return {worst <= 1e-9 && recon <= 1e-8,
            "max_alg_err=" + detail::fmt(worst) + " max_recon_err=" + detail::fmt(recon)};
}

inline CheckResult check_commutation_linearity(std::uint64_t seed, bool) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    const SpectralModel model = SpectralModel::laplace();
    const double lambda = 50.0;
    const int n = 128;
    const Graph g = finite_difference_graph(n);
    const StepOperator t = induce_operator(Graph(double(n) * double(n) * g.gso()));
    const double gap1 = approx_commutation_gap(model, lambda, t, 1);
    const double gap2 = approx_commutation_gap(model, lambda, t, 2);
    double worst = -1.0;
    for (int it = 0; it < 10; ++it) {
        const double alpha = unif(rng), beta = unif(rng);
        const FilterSpec h = FilterSpec::polynomial({0.0, alpha, beta});
        const double gap = approx_commutation_gap(model, lambda, t, h);
        worst = std::max(worst,
                         gap - (std::abs(alpha) * gap1 + std::abs(beta) * gap2));
    }
    return {worst <= 1e-9, "max_excess=" + detail::fmt(worst)};
}

inline CheckResult check_square_summability_gate(std::uint64_t, bool) {
    const SpectralModel model = SpectralModel::laplace();
    for (const double lambda : {1.0, 50.0, 1000.0})
        if (!std::isfinite(model.band_square_sum(lambda)))
            return {false, "band square sum diverges at lambda=" + detail::fmt(lambda)};
    if (band_dimension(model, 50.0) != 3) return {false, "band dimension at 50 is not 3"};
    try {
        SpectralModel::from_table({{0, 0.0}, {0, 1.0}});
        return {false, "duplicate eigenfunction index accepted"};
    } catch (const ParameterError&) {
    }
    return {true, "probe bands finite, duplicate index rejected"};
}

inline CheckResult check_graphon_families(std::uint64_t seed, bool) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double worst = 0.0;
    for (const auto& spec : {"const:0.5", "product", "min", "expdist:2", "sbm:2,0.8,0.2",
                             "sbm:3,0.9,0.1"}) {
        const GraphonEvaluator w = make_graphon(spec);
        for (int probe = 0; probe < 10000; ++probe) {
            const double u = unif(rng), v = unif(rng);
            worst = std::max(worst, std::abs(w(u, v) - w(v, u)));
            worst = std::max(worst, std::abs(w(u, v)) - w.bound);
        }
    }
    return {worst <= 1e-12, "max_violation=" + detail::fmt(worst)};
}

inline CheckResult check_harness_determinism(std::uint64_t seed, bool) {
    ConvergenceConfig cfg;
    cfg.graphon = "product";
    cfg.filter = "sq";
    cfg.sizes = {8, 16};
    cfg.mode = SampleMode::Iid;
    cfg.trials = 2;
    cfg.seed = seed;
    std::ostringstream a, b;
    write_csv(a, run_convergence(cfg).rows, false);
    write_csv(b, run_convergence(cfg).rows, false);
    const bool same_graph =
        sample_graph(make_graphon("product"), 16, SampleMode::Iid, seed).gso() ==
        sample_graph(make_graphon("product"), 16, SampleMode::Iid, seed).gso();
    const bool pass = a.str() == b.str() && same_graph;
    return {pass, pass ? "byte-identical reruns" : "rerun output differs"};
}

/// Grid and sorted-iid sampling converge at comparable rates for graphons
/// monotone in each argument; the rate is the decay factor across the last
/// size doubling.
inline CheckResult check_sorted_iid_rate(std::uint64_t seed, bool) {
    std::string detail_str;
    bool pass = true;
    for (const auto& family : {"product", "min", "expdist:2"}) {
        ConvergenceConfig cfg;
        cfg.graphon = family;
        cfg.filter = "id";
        cfg.sizes = {32, 64, 128};
        cfg.trials = 5;
        cfg.seed = seed;
        cfg.mode = SampleMode::Grid;
        const auto grid = run_convergence(cfg);
        cfg.mode = SampleMode::Iid;
        const auto iid = run_convergence(cfg);
        const auto rate = [](const std::vector<double>& m) {
            return m[m.size() - 2] / std::max(1e-30, m.back());
        };
        const double ratio = rate(iid.medians) / std::max(1e-30, rate(grid.medians));
        pass = pass && ratio <= 4.0 && ratio >= 0.25;
        detail_str += std::string(family) + ":rate_ratio=" + detail::fmt(ratio) + " ";
    }
    return {pass, detail_str};
}

inline CheckResult check_induced_operator_spectrum(std::uint64_t seed, bool) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> size(2, 64);
    double worst = 0.0;
    for (int it = 0; it < 50; ++it) {
        const Graph g(detail::random_symmetric(rng, size(rng)));
        const StepOperator t = induce_operator(g);
        Eigen::SelfAdjointEigenSolver<Matrix> e1(g.gso(), Eigen::EigenvaluesOnly);
        Eigen::SelfAdjointEigenSolver<Matrix> e2(t.sym(), Eigen::EigenvaluesOnly);
        const double scale = std::max(1.0, e1.eigenvalues().cwiseAbs().maxCoeff());
        worst = std::max(
            worst, (e1.eigenvalues() - e2.eigenvalues()).cwiseAbs().maxCoeff() / scale);
    }
    return {worst <= 1e-8, "max_rel_err=" + detail::fmt(worst)};
}

// --- suite ------------------------------------------------------------------

inline std::vector<Check> all_checks() {
    return {
        {"induced-norm-scaling", check_induced_norm_scaling},
        {"relabel-spectrum", check_relabel_spectrum},
        {"refinement-exactness", check_refinement_exactness},
        {"hom-density-preservation", check_hom_density_preservation},
        {"filter-induction-identity", check_filter_induction_identity},
        {"signal-filter-commutation", check_signal_filter_commutation},
        {"induced-operator-spectrum", check_induced_operator_spectrum},
        {"functional-calculus-norm", check_functional_calculus_norm},
        {"unitary-exp-lipschitz", check_unitary_exp_lipschitz},
        {"schatten-lipschitz-trend", check_schatten_lipschitz_trend},
        {"cut-op-schatten-sandwich", check_sandwich_inequality},
        {"counting-lemma", check_counting_lemma},
        {"cut-heuristic-vs-exact", check_cut_heuristic_vs_exact},
        {"filter-stability-matrix-bound", check_filter_stability_matrix_bound},
        {"stability-constant-doubling", check_stability_constant_doubling},
        {"extension-reproduces-filter", check_extension_reproduces_filter},
        {"scnn-induction-commutation", check_scnn_induction_commutation},
        {"scnn-transfer-bound", check_scnn_transfer_bound},
        {"contractivity-propagation", check_contractivity_propagation},
        {"projector-algebra", check_projector_algebra},
        {"commutation-linearity", check_commutation_linearity},
        {"square-summability-gate", check_square_summability_gate},
        {"graphon-families", check_graphon_families},
        {"harness-determinism", check_harness_determinism},
        {"sorted-iid-rate", check_sorted_iid_rate},
    };
}

struct Report {
    bool all_pass = false;
    nlohmann::ordered_json json;

    std::string dump() const { return json.dump(2) + "\n"; }
};

/// Run every invariant check with seeds derived from the master seed.
/// `mutate` deliberately corrupts the named check's implementation path, for
/// fault-injection tests of the suite itself.
inline Report verify_suite(std::uint64_t seed, const std::string& mutate = "") {
    Report rep;
    rep.all_pass = true;
    rep.json["seed"] = seed;
    rep.json["checks"] = nlohmann::ordered_json::array();
    for (const auto& check : all_checks()) {
        const std::uint64_t check_seed = derive_seed(seed, check.name, 0, 0);
        CheckResult res;
        try {
            res = check.run(check_seed, check.name == mutate);
        } catch (const std::exception& e) {
            res = {false, std::string("exception: ") + e.what()};
        }
        rep.all_pass = rep.all_pass && res.pass;
        nlohmann::ordered_json jc;
        jc["name"] = check.name;
        jc["pass"] = res.pass;
        jc["detail"] = res.detail;
        rep.json["checks"].push_back(std::move(jc));
    }
    rep.json["all_pass"] = rep.all_pass;
    return rep;
}

}  // namespace graphon::verify

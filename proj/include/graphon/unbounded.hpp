#pragma once

#include "graphon/spectral.hpp"

#include <map>

namespace graphon {

/// Self-adjoint operator given by eigen-data over the Fourier basis
/// {exp(2 pi i k x)}: either the circle Laplacian with lambda(k) = 4 pi^2 k^2
/// or a finite table of (k, lambda_k) pairs.
class SpectralModel {
public:
    static SpectralModel laplace() {
        SpectralModel m;
        m.laplace_ = true;
        m.name_ = "laplace";
        return m;
    }

    static SpectralModel from_table(const std::vector<std::pair<int, double>>& entries) {
        SpectralModel m;
        m.laplace_ = false;
        m.name_ = "eigs";
        for (const auto& [k, lam] : entries) {
            if (m.table_.count(k))
                throw ParameterError("SpectralModel: duplicate eigenfunction index " +
                                     std::to_string(k));
            m.table_[k] = lam;
        }
        return m;
    }

    /// "laplace" or "eigs:<file>" with one "k lambda_k" pair per line.
    static SpectralModel parse(const std::string& spec) {
        if (spec == "laplace") return laplace();
        if (spec.rfind("eigs:", 0) == 0) {
            std::ifstream is(spec.substr(5));
            if (!is) throw FormatError("SpectralModel: cannot open " + spec.substr(5));
            std::vector<std::pair<int, double>> entries;
            int k;
            double lam;
            while (is >> k >> lam) entries.emplace_back(k, lam);
            if (entries.empty()) throw FormatError("SpectralModel: empty eigenvalue table");
            return from_table(entries);
        }
        throw FormatError("SpectralModel: unknown model spec \"" + spec + "\"");
    }

    double eigenvalue(int k) const {
        if (laplace_) return 4.0 * M_PI * M_PI * static_cast<double>(k) * k;
        auto it = table_.find(k);
        return it == table_.end() ? std::numeric_limits<double>::quiet_NaN() : it->second;
    }

    /// Indices k with |lambda(k)| <= lambda, sorted ascending by k.
    std::vector<int> band_indices(double lambda) const {
        if (lambda <= 0.0) throw ParameterError("band_indices: band must be positive");
        std::vector<int> ks;
        if (laplace_) {
            int kmax = static_cast<int>(std::floor(std::sqrt(lambda) / (2.0 * M_PI)));
            while (eigenvalue(kmax + 1) <= lambda) ++kmax;
            while (kmax > 0 && eigenvalue(kmax) > lambda) --kmax;
            for (int k = -kmax; k <= kmax; ++k) ks.push_back(k);
        } else {
            for (const auto& [k, lam] : table_)
                if (std::abs(lam) <= lambda) ks.push_back(k);
        }
        return ks;
    }

    /// Sum of squared eigenvalues over a band; finite for every valid model.
    double band_square_sum(double lambda) const {
        double s = 0.0;
        for (int k : band_indices(lambda)) s += eigenvalue(k) * eigenvalue(k);
        return s;
    }

    const std::string& name() const { return name_; }

private:
    SpectralModel() = default;
    bool laplace_ = true;
    std::map<int, double> table_;
    std::string name_;
};

inline int band_dimension(const SpectralModel& model, double lambda) {
    return static_cast<int>(model.band_indices(lambda).size());
}

namespace detail {

// Exact integral of exp(2 pi i k u) over [a, b].
inline Complex fourier_cell_integral(int k, double a, double b) {
    if (k == 0) return {b - a, 0.0};
    const Complex tpik(0.0, 2.0 * M_PI * k);
    return (std::exp(tpik * b) - std::exp(tpik * a)) / tpik;
}

// Cells x band matrix of eigenfunction cell integrals.
inline ComplexMatrix band_integrals(const Partition& part, const std::vector<int>& ks) {
    ComplexMatrix j(part.cells(), ks.size());
    for (int i = 0; i < part.cells(); ++i)
        for (std::size_t c = 0; c < ks.size(); ++c)
            j(i, c) = fourier_cell_integral(ks[c], part.breakpoints()[i],
                                            part.breakpoints()[i + 1]);
    return j;
}

inline double hermitian_norm(const ComplexMatrix& m) {
    if (m.rows() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace detail

/// Band-limited signal: coefficients against the Fourier eigenfunctions of a
/// band. Projection restricted to the same band is the identity.
struct BandSignal {
    double lambda = 0.0;
    std::vector<int> ks;
    ComplexVector coeffs;

    Complex operator()(double x) const {
        Complex s = 0.0;
        for (std::size_t c = 0; c < ks.size(); ++c)
            s += coeffs[static_cast<int>(c)] *
                 std::exp(Complex(0.0, 2.0 * M_PI * ks[c] * x));
        return s;
    }

    double l2_norm() const { return coeffs.norm(); }
};

/// Spectral projection of a step signal onto the band: coefficients are
/// exact per-cell integrals against the Fourier eigenfunctions.
inline BandSignal project_band(const SpectralModel& model, double lambda,
                               const StepSignal& s) {
    BandSignal out;
    out.lambda = lambda;
    out.ks = model.band_indices(lambda);
    const ComplexMatrix j = detail::band_integrals(s.partition(), out.ks);
    out.coeffs = j.adjoint() * s.values();
    return out;
}

/// Midpoint sampling of a function into a step signal on the uniform partition.
inline StepSignal sample_step(const std::function<Complex(double)>& f, int n) {
    ComplexVector v(n);
    for (int i = 0; i < n; ++i) v[i] = f((i + 0.5) / n);
    return StepSignal(Partition::uniform(n), std::move(v));
}

inline BandSignal project_band(const SpectralModel& model, double lambda,
                               const std::function<Complex(double)>& f,
                               int resolution = 1 << 15) {
    return project_band(model, lambda, sample_step(f, resolution));
}

/// Circulant second-difference GSO: -2 on the diagonal, 1 on the wrap-around
/// off-diagonals. The GWM is n times this matrix.
inline Graph finite_difference_graph(int n) {
    if (n < 3) throw ParameterError("finite_difference_graph: need at least 3 nodes");
    Matrix m = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = -2.0;
        m(i, (i + 1) % n) += 1.0;
        m(i, (i + n - 1) % n) += 1.0;
    }
    return Graph(std::move(m));
}

/// The band compression P T P as a d x d Hermitian matrix in the Fourier
/// eigenfunction basis, entries <T phi_k, phi_k'> from exact cell integrals.
inline ComplexMatrix compressed_operator(const SpectralModel& model, double lambda,
                                         const StepOperator& t) {
    const std::vector<int> ks = model.band_indices(lambda);
    const ComplexMatrix j = detail::band_integrals(t.partition(), ks);
    return j.adjoint() * t.kernel().values() * j;
}

/// Norm of the band compression of T against the model's own eigenvalues.
/// `sign` fixes the comparison target sign*lambda(k); the default -1 matches
/// the second-difference stencil, which discretizes f'' while the model
/// spectrum is stated for -f''.
inline double unbdd_convergence_gap(const SpectralModel& model, double lambda,
                                    const StepOperator& t, double sign = -1.0) {
    const std::vector<int> ks = model.band_indices(lambda);
    ComplexMatrix e = compressed_operator(model, lambda, t);
    for (std::size_t c = 0; c < ks.size(); ++c)
        e(static_cast<int>(c), static_cast<int>(c)) -= sign * model.eigenvalue(ks[c]);
    return detail::hermitian_norm(e);
}

/// | P h(T) P - h(P T P) | in the band basis for a polynomial filter with
/// h(0) = 0; h is applied to the compressed matrix by Horner evaluation.
inline double approx_commutation_gap(const SpectralModel& model, double lambda,
                                     const StepOperator& t, const FilterSpec& h) {
    const std::vector<double>& c = h.poly_coefficients();
    const ComplexMatrix lhs =
        compressed_operator(model, lambda, filter_step_operator(h, t));
    const ComplexMatrix e1 = compressed_operator(model, lambda, t);
    const ComplexMatrix id = ComplexMatrix::Identity(e1.rows(), e1.cols());
    ComplexMatrix rhs = ComplexMatrix::Zero(e1.rows(), e1.cols());
    for (auto it = c.rbegin(); it != c.rend(); ++it) rhs = (rhs * e1 + *it * id).eval();
    return detail::hermitian_norm(lhs - rhs);
}

/// | P T^k P - (P T P)^k | in the band basis; zero for k = 1 by construction.
inline double approx_commutation_gap(const SpectralModel& model, double lambda,
                                     const StepOperator& t, int k) {
    if (k < 1) throw ParameterError("approx_commutation_gap: power must be at least 1");
    std::vector<double> coeffs(k + 1, 0.0);
    coeffs.back() = 1.0;
    return approx_commutation_gap(model, lambda, t, FilterSpec::polynomial(coeffs));
}

}  // namespace graphon

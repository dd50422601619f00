#pragma once

#include "graphon/core.hpp"
#include "graphon/filters.hpp"
#include "graphon/induction.hpp"

namespace graphon {

struct EigenDecomposition {
    Vector eigenvalues;   // ascending
    Matrix eigenvectors;  // orthonormal columns
};

inline EigenDecomposition decompose(const Matrix& sym) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    if (es.info() != Eigen::Success)
        throw Error("decompose: eigensolver did not converge");
    return {es.eigenvalues(), es.eigenvectors()};
}

namespace detail {

// h applied to a spectrum, with the loud rational-singularity check.
inline Vector filter_eigenvalues(const FilterSpec& h, const Vector& eigs) {
    if (h.kind() == FilterKind::Rational) {
        double qmax = 0.0;
        for (int j = 0; j < eigs.size(); ++j)
            qmax = std::max(qmax, std::abs(h.denominator_at(eigs[j])));
        for (int j = 0; j < eigs.size(); ++j)
            if (std::abs(h.denominator_at(eigs[j])) < 1e-12 * std::max(1.0, qmax))
                throw SingularFilterError(
                    "rational filter denominator vanishes at eigenvalue " +
                    std::to_string(eigs[j]));
    }
    Vector out(eigs.size());
    for (int j = 0; j < eigs.size(); ++j) out[j] = h(eigs[j]);
    return out;
}

}  // namespace detail

/// Realization h(gso) = Q diag(h(lambda)) Q^T of a filter on a graph.
inline Graph filter_graph(const FilterSpec& h, const Graph& g) {
    const EigenDecomposition ed = decompose(g.gso());
    const Vector fl = detail::filter_eigenvalues(h, ed.eigenvalues);
    Matrix out = ed.eigenvectors * fl.asDiagonal() * ed.eigenvectors.transpose();
    return Graph(std::move(out));
}

/// Matrix functional calculus for plain symmetric matrices.
inline Matrix filter_matrix(const FilterSpec& h, const Matrix& sym) {
    const EigenDecomposition ed = decompose(sym);
    const Vector fl = detail::filter_eigenvalues(h, ed.eigenvalues);
    return ed.eigenvectors * fl.asDiagonal() * ed.eigenvectors.transpose();
}

/// Integral operator with a step kernel. The matrix of the operator in an
/// orthonormal basis of the step space is S = D^{1/2} B D^{1/2} with
/// D = diag(cell measures); cells of measure below 1e-14 carry weight zero.
class StepOperator {
public:
    explicit StepOperator(StepGraphon kernel) : kernel_(std::move(kernel)) {
        const int k = kernel_.cells();
        Vector w(k);
        for (int i = 0; i < k; ++i) {
            const double mu = kernel_.partition().measure(i);
            w[i] = mu >= 1e-14 ? std::sqrt(mu) : 0.0;
        }
        sym_ = w.asDiagonal() * kernel_.values() * w.asDiagonal();
        weights_ = std::move(w);
    }

    const StepGraphon& kernel() const { return kernel_; }
    const Partition& partition() const { return kernel_.partition(); }
    const Matrix& sym() const { return sym_; }
    const Vector& weights() const { return weights_; }
    int cells() const { return kernel_.cells(); }

private:
    StepGraphon kernel_;
    Matrix sym_;
    Vector weights_;
};

inline StepOperator induce_operator(const Graph& g) {
    return StepOperator(induce_graphon(g));
}

/// (T psi)_i = sum_j B_ij mu_j psi_j on a shared partition.
inline StepSignal grso_apply(const StepOperator& t, const StepSignal& s) {
    if (!t.partition().same_as(s.partition()))
        throw DimensionError("grso_apply: partition mismatch, refinement required");
    const int k = t.cells();
    ComplexVector out = ComplexVector::Zero(k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            out[i] += t.kernel().values()(i, j) * t.partition().measure(j) * s.values()[j];
    return StepSignal(t.partition(), std::move(out));
}

/// Functional calculus on a step operator. With strict=true the filter must
/// vanish at zero: h(0) != 0 would act on the infinite-dimensional kernel of
/// the integral operator, which no step kernel represents.
inline StepOperator filter_step_operator(const FilterSpec& h, const StepOperator& t,
                                         bool strict = true) {
    if (strict && !h.zero_at_zero())
        throw ParameterError(
            "filter_step_operator: h(0) != 0 acts on the operator kernel eigenspace and is "
            "not a step kernel; use the signal route or strict=false on the operator range");
    const EigenDecomposition ed = decompose(t.sym());
    const Vector fl = detail::filter_eigenvalues(h, ed.eigenvalues);
    Matrix sym2 = ed.eigenvectors * fl.asDiagonal() * ed.eigenvectors.transpose();
    const int k = t.cells();
    Vector winv(k);
    for (int i = 0; i < k; ++i)
        winv[i] = t.weights()[i] > 0.0 ? 1.0 / t.weights()[i] : 0.0;
    Matrix values = winv.asDiagonal() * sym2 * winv.asDiagonal();
    return StepOperator(StepGraphon(t.partition(), std::move(values)));
}

/// h(T) psi evaluated on a step signal; valid for any continuous h because
/// a step signal has no component in the operator kernel beyond the step
/// space itself.
inline StepSignal filter_apply(const FilterSpec& h, const StepOperator& t,
                               const StepSignal& s) {
    if (!t.partition().same_as(s.partition()))
        throw DimensionError("filter_apply: partition mismatch, refinement required");
    const EigenDecomposition ed = decompose(t.sym());
    const Vector fl = detail::filter_eigenvalues(h, ed.eigenvalues);
    const int k = t.cells();
    ComplexVector y(k);
    for (int i = 0; i < k; ++i) y[i] = t.weights()[i] * s.values()[i];
    ComplexVector coeff = ed.eigenvectors.transpose().cast<Complex>() * y;
    for (int j = 0; j < k; ++j) coeff[j] *= fl[j];
    ComplexVector z = ed.eigenvectors.cast<Complex>() * coeff;
    ComplexVector out(k);
    for (int i = 0; i < k; ++i)
        out[i] = t.weights()[i] > 0.0 ? z[i] / t.weights()[i] : Complex(0.0);
    return StepSignal(t.partition(), std::move(out));
}

constexpr double kSchattenInf = std::numeric_limits<double>::infinity();

/// Schatten p-norm of the operator; p = infinity gives the operator norm.
inline double schatten_norm(const StepOperator& t, double p = kSchattenInf) {
    if (p < 1.0) throw ParameterError("schatten_norm: p must be at least 1");
    Eigen::SelfAdjointEigenSolver<Matrix> es(t.sym(), Eigen::EigenvaluesOnly);
    const Vector abs = es.eigenvalues().cwiseAbs();
    if (abs.size() == 0) return 0.0;
    if (std::isinf(p)) return abs.maxCoeff();
    double s = 0.0;
    for (int i = 0; i < abs.size(); ++i) s += std::pow(abs[i], p);
    return std::pow(s, 1.0 / p);
}

inline double operator_norm(const StepOperator& t) { return schatten_norm(t); }

/// Norm of T_a - T_b for step kernels on arbitrary partitions.
inline double operator_distance(const StepGraphon& a, const StepGraphon& b,
                                double p = kSchattenInf) {
    auto [ra, rb] = common_refinement(a, b);
    return schatten_norm(StepOperator(StepGraphon(ra.partition(), ra.values() - rb.values())),
                         p);
}

/// Q diag(exp(i a lambda)) Q^T for a real symmetric matrix; unitary.
inline ComplexMatrix unitary_exp(double a, const Matrix& m) {
    const EigenDecomposition ed = decompose(m);
    ComplexVector phase(ed.eigenvalues.size());
    for (int j = 0; j < ed.eigenvalues.size(); ++j)
        phase[j] = std::exp(Complex(0.0, a * ed.eigenvalues[j]));
    return ed.eigenvectors.cast<Complex>() * phase.asDiagonal() *
           ed.eigenvectors.transpose().cast<Complex>();
}

/// Chosen norm of h(t1) - h(t2) after refining to a common partition.
inline double filter_distance(const FilterSpec& h, const StepOperator& t1,
                              const StepOperator& t2, double p = kSchattenInf,
                              bool strict = true) {
    auto [ra, rb] = common_refinement(t1.kernel(), t2.kernel());
    const StepOperator f1 = filter_step_operator(h, StepOperator(ra), strict);
    const StepOperator f2 = filter_step_operator(h, StepOperator(rb), strict);
    return operator_distance(f1.kernel(), f2.kernel(), p);
}

}  // namespace graphon

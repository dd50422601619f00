#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace graphon {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class ParameterError : public Error {
public:
    using Error::Error;
};

class SingularFilterError : public Error {
public:
    using Error::Error;
};

class RegularityError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

/// A graph represented by its symmetric shift operator (GSO).
/// The weight matrix (GWM) is the entrywise rescaling A = n * gso.
class Graph {
public:
    explicit Graph(Matrix gso) {
        if (gso.rows() != gso.cols() || gso.rows() == 0)
            throw DimensionError("Graph: GSO must be square and nonempty");
        const double scale = std::max(1.0, gso.cwiseAbs().maxCoeff());
        const double asym = (gso - gso.transpose()).cwiseAbs().maxCoeff();
        if (asym > 1e-9 * scale)
            std::cerr << "graphon: warning: GSO asymmetry " << asym
                      << " exceeds 1e-9, symmetrizing\n";
        gso_ = 0.5 * (gso + gso.transpose());
    }

    int size() const { return static_cast<int>(gso_.rows()); }
    const Matrix& gso() const { return gso_; }
    Matrix gwm() const { return static_cast<double>(size()) * gso_; }

private:
    Matrix gso_;
};

/// One feature: a complex signal with the plain l2 inner product
/// <x,y> = sum_i x_i conj(y_i).
struct GraphSignal {
    ComplexVector values;

    GraphSignal() = default;
    explicit GraphSignal(ComplexVector v) : values(std::move(v)) {}
    explicit GraphSignal(const Vector& v) : values(v.cast<Complex>()) {}

    int size() const { return static_cast<int>(values.size()); }
    double norm() const { return values.norm(); }
};

inline Complex inner(const GraphSignal& x, const GraphSignal& y) {
    if (x.size() != y.size())
        throw DimensionError("inner: signal length mismatch");
    return y.values.dot(x.values);  // Eigen dot conjugates the left argument
}

/// Multi-feature signal; the norm is the max over per-feature norms.
using FeatureMap = std::vector<GraphSignal>;

inline double feature_norm(const FeatureMap& x) {
    double m = 0.0;
    for (const auto& f : x) m = std::max(m, f.norm());
    return m;
}

/// Partition of [0,1] into consecutive cells given by strictly increasing
/// breakpoints 0 = b_0 < ... < b_k = 1.
class Partition {
public:
    explicit Partition(std::vector<double> breakpoints)
        : breaks_(std::move(breakpoints)) {
        if (breaks_.size() < 2)
            throw ParameterError("Partition: need at least two breakpoints");
        if (std::abs(breaks_.front()) > 1e-12 || std::abs(breaks_.back() - 1.0) > 1e-12)
            throw ParameterError("Partition: breakpoints must span [0,1]");
        breaks_.front() = 0.0;
        breaks_.back() = 1.0;
        for (std::size_t i = 1; i < breaks_.size(); ++i)
            if (!(breaks_[i] > breaks_[i - 1]))
                throw ParameterError("Partition: breakpoints must be strictly increasing");
    }

    static Partition uniform(int n) {
        if (n < 1) throw ParameterError("Partition::uniform: n must be positive");
        std::vector<double> b(n + 1);
        for (int i = 0; i <= n; ++i) b[i] = static_cast<double>(i) / n;
        return Partition(std::move(b));
    }

    int cells() const { return static_cast<int>(breaks_.size()) - 1; }
    double measure(int i) const { return breaks_[i + 1] - breaks_[i]; }
    const std::vector<double>& breakpoints() const { return breaks_; }

    Vector measures() const {
        Vector mu(cells());
        for (int i = 0; i < cells(); ++i) mu[i] = measure(i);
        return mu;
    }

    /// Index of the cell containing u (cells are half-open, the last closed).
    int cell_of(double u) const {
        auto it = std::upper_bound(breaks_.begin(), breaks_.end(), u);
        int idx = static_cast<int>(it - breaks_.begin()) - 1;
        return std::clamp(idx, 0, cells() - 1);
    }

    bool same_as(const Partition& other, double tol = 1e-14) const {
        if (cells() != other.cells()) return false;
        for (std::size_t i = 0; i < breaks_.size(); ++i)
            if (std::abs(breaks_[i] - other.breaks_[i]) > tol) return false;
        return true;
    }

private:
    std::vector<double> breaks_;
};

/// Piecewise constant graphon: value B(i,j) on cell P_i x P_j.
class StepGraphon {
public:
    StepGraphon(Partition partition, Matrix values)
        : part_(std::move(partition)), values_(std::move(values)) {
        if (values_.rows() != part_.cells() || values_.cols() != part_.cells())
            throw DimensionError("StepGraphon: value matrix does not match partition");
        const double scale = std::max(1.0, values_.cwiseAbs().maxCoeff());
        if ((values_ - values_.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
            std::cerr << "graphon: warning: step graphon values asymmetric, symmetrizing\n";
        values_ = 0.5 * (values_ + values_.transpose()).eval();
    }

    const Partition& partition() const { return part_; }
    const Matrix& values() const { return values_; }
    int cells() const { return part_.cells(); }

    /// Smallest Gamma with the graphon in W_Gamma.
    double bound() const { return values_.size() ? values_.cwiseAbs().maxCoeff() : 0.0; }

    double operator()(double u, double v) const {
        return values_(part_.cell_of(u), part_.cell_of(v));
    }

private:
    Partition part_;
    Matrix values_;
};

/// Symmetric measurable kernel given as a callable, with a declared bound.
struct GraphonEvaluator {
    std::function<double(double, double)> eval;
    double bound = 1.0;
    std::string name;

    double operator()(double u, double v) const { return eval(u, v); }
};

/// Piecewise constant signal on a partition; L2 norm weights each cell by
/// its measure.
class StepSignal {
public:
    StepSignal(Partition partition, ComplexVector values)
        : part_(std::move(partition)), values_(std::move(values)) {
        if (values_.size() != part_.cells())
            throw DimensionError("StepSignal: value vector does not match partition");
    }

    const Partition& partition() const { return part_; }
    const ComplexVector& values() const { return values_; }
    int cells() const { return part_.cells(); }

    double l2_norm() const {
        double s = 0.0;
        for (int i = 0; i < cells(); ++i)
            s += part_.measure(i) * std::norm(values_[i]);
        return std::sqrt(s);
    }

private:
    Partition part_;
    ComplexVector values_;
};

/// <a,b>_{L2} for signals on the same partition.
inline Complex l2_inner(const StepSignal& a, const StepSignal& b) {
    if (!a.partition().same_as(b.partition()))
        throw DimensionError("l2_inner: partitions differ, refine first");
    Complex s = 0.0;
    for (int i = 0; i < a.cells(); ++i)
        s += a.partition().measure(i) * a.values()[i] * std::conj(b.values()[i]);
    return s;
}

/// Bijection on {0..n-1} stored as the image array i -> pi(i).
class Permutation {
public:
    explicit Permutation(std::vector<int> image) : map_(std::move(image)) {
        std::vector<char> seen(map_.size(), 0);
        for (int v : map_) {
            if (v < 0 || v >= static_cast<int>(map_.size()) || seen[v])
                throw ParameterError("Permutation: image is not a bijection");
            seen[v] = 1;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> im(n);
        std::iota(im.begin(), im.end(), 0);
        return Permutation(std::move(im));
    }

    int size() const { return static_cast<int>(map_.size()); }
    int operator()(int i) const { return map_[i]; }

    Permutation inverse() const {
        std::vector<int> inv(map_.size());
        for (int i = 0; i < size(); ++i) inv[map_[i]] = i;
        return Permutation(std::move(inv));
    }

private:
    std::vector<int> map_;
};

/// Relabel a graph by pi: the entry at (i,j) of the result is the input
/// entry at (pi^-1(i), pi^-1(j)), i.e. conjugation by the permutation
/// matrix P with P e_j = e_{pi(j)}.
inline Graph relabel(const Graph& g, const Permutation& p) {
    if (p.size() != g.size())
        throw DimensionError("relabel: permutation length does not match graph");
    const Permutation inv = p.inverse();
    Matrix out(g.size(), g.size());
    for (int i = 0; i < g.size(); ++i)
        for (int j = 0; j < g.size(); ++j)
            out(i, j) = g.gso()(inv(i), inv(j));
    return Graph(std::move(out));
}

/// Relabel a signal with the same convention as the graph relabeling.
inline GraphSignal relabel(const GraphSignal& x, const Permutation& p) {
    if (p.size() != x.size())
        throw DimensionError("relabel: permutation length does not match signal");
    const Permutation inv = p.inverse();
    ComplexVector out(x.size());
    for (int i = 0; i < x.size(); ++i) out[i] = x.values[inv(i)];
    return GraphSignal(std::move(out));
}

struct GraphNorms {
    double gso_opnorm;
    double gwm_opnorm;
};

/// Spectral norms of the GSO and the GWM (the latter is exactly n times
/// the former).
inline GraphNorms graph_norms(const Graph& g) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(g.gso(), Eigen::EigenvaluesOnly);
    const double nrm = es.eigenvalues().size()
                           ? es.eigenvalues().cwiseAbs().maxCoeff()
                           : 0.0;
    return {nrm, static_cast<double>(g.size()) * nrm};
}

// --- "gso v1" file format -------------------------------------------------
// line 1: node count n; lines 2..n+1: the n x n GSO, one row per line.

inline void write_gso(std::ostream& os, const Graph& g) {
    os << g.size() << "\n";
    os.precision(17);
    for (int i = 0; i < g.size(); ++i) {
        for (int j = 0; j < g.size(); ++j)
            os << (j ? " " : "") << g.gso()(i, j);
        os << "\n";
    }
}

inline void write_gso(const std::string& path, const Graph& g) {
    std::ofstream os(path);
    if (!os) throw FormatError("write_gso: cannot open " + path);
    write_gso(os, g);
}

inline Graph read_gso(std::istream& is) {
    int n = 0;
    if (!(is >> n) || n <= 0)
        throw FormatError("read_gso: missing or invalid node count");
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!(is >> m(i, j)))
                throw FormatError("read_gso: truncated matrix data");
    return Graph(std::move(m));
}

inline Graph read_gso(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw FormatError("read_gso: cannot open " + path);
    return read_gso(is);
}

}  // namespace graphon

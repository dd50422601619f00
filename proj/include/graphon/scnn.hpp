#pragma once

#include "graphon/spectral.hpp"

#include <json.hpp>

namespace graphon {

/// Shipped activations; all are contractive with Lipschitz constant 1.
/// Complex inputs are handled componentwise on real and imaginary parts,
/// which preserves contractivity.
class Activation {
public:
    enum Kind { Identity, Relu, Tanh, LeakyRelu };

    Activation(Kind k = Identity) : kind_(k) {}

    static Activation parse(const std::string& name) {
        if (name == "identity" || name == "id") return Activation(Identity);
        if (name == "relu") return Activation(Relu);
        if (name == "tanh") return Activation(Tanh);
        if (name == "leaky-relu" || name == "leaky_relu") return Activation(LeakyRelu);
        throw FormatError("Activation: unknown activation \"" + name + "\"");
    }

    std::string name() const {
        switch (kind_) {
            case Identity: return "identity";
            case Relu: return "relu";
            case Tanh: return "tanh";
            case LeakyRelu: return "leaky-relu";
        }
        return "identity";
    }

    double operator()(double x) const {
        switch (kind_) {
            case Identity: return x;
            case Relu: return x > 0.0 ? x : 0.0;
            case Tanh: return std::tanh(x);
            case LeakyRelu: return x > 0.0 ? x : 0.1 * x;
        }
        return x;
    }

    Complex operator()(Complex z) const {
        return {(*this)(z.real()), (*this)(z.imag())};
    }

    bool contractive() const { return true; }
    double lipschitz() const { return 1.0; }

private:
    Kind kind_;
};

/// Spectral CNN: per layer a filter bank H_l (F_l x F_{l-1} filter functions),
/// a weight matrix M_l and a shared activation. Defined independently of any
/// particular graph.
struct ScnnSpec {
    std::vector<int> widths;                                  // F_0..F_L
    std::vector<std::vector<std::vector<FilterSpec>>> filters;  // [l][j][k]
    std::vector<Matrix> weights;                              // M_l, F_l x F_{l-1}
    Activation activation;

    int layers() const { return static_cast<int>(widths.size()) - 1; }

    void validate() const {
        const int L = layers();
        if (L < 1) throw ParameterError("ScnnSpec: need at least one layer");
        if (static_cast<int>(filters.size()) != L || static_cast<int>(weights.size()) != L)
            throw DimensionError("ScnnSpec: filters/weights do not match layer count");
        for (int l = 0; l < L; ++l) {
            const int fout = widths[l + 1], fin = widths[l];
            if (weights[l].rows() != fout || weights[l].cols() != fin)
                throw DimensionError("ScnnSpec: weight matrix shape mismatch at layer " +
                                     std::to_string(l + 1));
            if (static_cast<int>(filters[l].size()) != fout)
                throw DimensionError("ScnnSpec: filter bank shape mismatch at layer " +
                                     std::to_string(l + 1));
            for (const auto& row : filters[l])
                if (static_cast<int>(row.size()) != fin)
                    throw DimensionError("ScnnSpec: filter bank shape mismatch at layer " +
                                         std::to_string(l + 1));
        }
    }

    /// Structured text format, schema tag "scnn/1".
    static ScnnSpec from_json(const nlohmann::json& j, double domain_bound = 1.0) {
        if (!j.contains("version") || j["version"] != "scnn/1")
            throw FormatError("ScnnSpec: missing or unsupported schema version");
        ScnnSpec s;
        s.widths = j.at("widths").get<std::vector<int>>();
        s.activation = Activation::parse(j.at("activation").get<std::string>());
        const int L = j.at("layers").get<int>();
        if (static_cast<int>(s.widths.size()) != L + 1)
            throw FormatError("ScnnSpec: widths must list F_0..F_L");
        for (int l = 0; l < L; ++l) {
            const auto& jf = j.at("filters").at(l);
            std::vector<std::vector<FilterSpec>> bank;
            for (const auto& row : jf) {
                std::vector<FilterSpec> r;
                for (const auto& cell : row)
                    r.push_back(FilterSpec::parse(cell.get<std::string>(), domain_bound));
                bank.push_back(std::move(r));
            }
            s.filters.push_back(std::move(bank));
            const auto& jw = j.at("weights").at(l);
            Matrix m(s.widths[l + 1], s.widths[l]);
            for (int r = 0; r < m.rows(); ++r)
                for (int c = 0; c < m.cols(); ++c)
                    m(r, c) = jw.at(r).at(c).get<double>();
            s.weights.push_back(std::move(m));
        }
        s.validate();
        return s;
    }

    static ScnnSpec load(const std::string& path, double domain_bound = 1.0) {
        std::ifstream is(path);
        if (!is) throw FormatError("ScnnSpec: cannot open " + path);
        nlohmann::json j;
        is >> j;
        return from_json(j, domain_bound);
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["version"] = "scnn/1";
        j["layers"] = layers();
        j["widths"] = widths;
        j["activation"] = activation.name();
        for (int l = 0; l < layers(); ++l) {
            nlohmann::json bank = nlohmann::json::array();
            for (const auto& row : filters[l]) {
                nlohmann::json r = nlohmann::json::array();
                for (const auto& h : row) r.push_back(h.name());
                bank.push_back(std::move(r));
            }
            j["filters"].push_back(std::move(bank));
            nlohmann::json w = nlohmann::json::array();
            for (int r = 0; r < weights[l].rows(); ++r) {
                nlohmann::json rr = nlohmann::json::array();
                for (int c = 0; c < weights[l].cols(); ++c) rr.push_back(weights[l](r, c));
                w.push_back(std::move(rr));
            }
            j["weights"].push_back(std::move(w));
        }
        return j;
    }
};

/// Pre-activation feature maps per layer, for callers that need them.
struct ScnnTrace {
    std::vector<FeatureMap> preactivations;
    std::vector<FeatureMap> outputs;
};

/// Layer recursion on a graph: x_l^j = rho(sum_k m_l^{jk} h_l^{jk}(gso) x_{l-1}^k),
/// with the activation applied once per output feature after the sum.
inline FeatureMap scnn_forward_graph(const ScnnSpec& s, const Graph& g, const FeatureMap& x,
                                     ScnnTrace* trace = nullptr) {
    s.validate();
    if (static_cast<int>(x.size()) != s.widths[0])
        throw DimensionError("scnn_forward_graph: input width mismatch");
    for (const auto& f : x)
        if (f.size() != g.size())
            throw DimensionError("scnn_forward_graph: signal length mismatch");

    const EigenDecomposition ed = decompose(g.gso());
    const ComplexMatrix q = ed.eigenvectors.cast<Complex>();
    FeatureMap cur = x;
    for (int l = 0; l < s.layers(); ++l) {
        std::vector<ComplexVector> coeff(cur.size());
        for (std::size_t k = 0; k < cur.size(); ++k)
            coeff[k] = q.adjoint() * cur[k].values;
        FeatureMap next(s.widths[l + 1]);
        FeatureMap pre(s.widths[l + 1]);
        for (int j = 0; j < s.widths[l + 1]; ++j) {
            ComplexVector acc = ComplexVector::Zero(g.size());
            for (int k = 0; k < s.widths[l]; ++k) {
                const Vector fl =
                    detail::filter_eigenvalues(s.filters[l][j][k], ed.eigenvalues);
                acc += s.weights[l](j, k) *
                       (fl.cast<Complex>().asDiagonal() * coeff[k]);
            }
            ComplexVector tilde = q * acc;
            pre[j] = GraphSignal(tilde);
            for (int i = 0; i < tilde.size(); ++i) tilde[i] = s.activation(tilde[i]);
            next[j] = GraphSignal(std::move(tilde));
        }
        if (trace) {
            trace->preactivations.push_back(pre);
            trace->outputs.push_back(next);
        }
        cur = std::move(next);
    }
    return cur;
}

using StepFeatureMap = std::vector<StepSignal>;

inline double feature_norm(const StepFeatureMap& y) {
    double m = 0.0;
    for (const auto& f : y) m = std::max(m, f.l2_norm());
    return m;
}

/// Same recursion with the GRSO in place of the GSO; filters act through the
/// spectrum of the symmetrized step matrix and the activation is applied
/// pointwise per cell.
inline StepFeatureMap scnn_forward_graphon(const ScnnSpec& s, const StepOperator& t,
                                           const StepFeatureMap& y) {
    s.validate();
    if (static_cast<int>(y.size()) != s.widths[0])
        throw DimensionError("scnn_forward_graphon: input width mismatch");
    for (const auto& f : y)
        if (!f.partition().same_as(t.partition()))
            throw DimensionError("scnn_forward_graphon: signal partition mismatch");

    const int cells = t.cells();
    const EigenDecomposition ed = decompose(t.sym());
    const ComplexMatrix q = ed.eigenvectors.cast<Complex>();
    std::vector<ComplexVector> cur(y.size());
    for (std::size_t k = 0; k < y.size(); ++k) cur[k] = y[k].values();

    for (int l = 0; l < s.layers(); ++l) {
        std::vector<ComplexVector> coeff(cur.size());
        for (std::size_t k = 0; k < cur.size(); ++k) {
            ComplexVector weighted(cells);
            for (int i = 0; i < cells; ++i) weighted[i] = t.weights()[i] * cur[k][i];
            coeff[k] = q.adjoint() * weighted;
        }
        std::vector<ComplexVector> next(s.widths[l + 1]);
        for (int j = 0; j < s.widths[l + 1]; ++j) {
            ComplexVector acc = ComplexVector::Zero(cells);
            for (int k = 0; k < s.widths[l]; ++k) {
                const Vector fl =
                    detail::filter_eigenvalues(s.filters[l][j][k], ed.eigenvalues);
                acc += s.weights[l](j, k) *
                       (fl.cast<Complex>().asDiagonal() * coeff[k]);
            }
            ComplexVector z = q * acc;
            ComplexVector vals(cells);
            for (int i = 0; i < cells; ++i) {
                const Complex v = t.weights()[i] > 0.0 ? z[i] / t.weights()[i] : Complex(0.0);
                vals[i] = s.activation(v);
            }
            next[j] = std::move(vals);
        }
        cur = std::move(next);
    }

    StepFeatureMap out;
    out.reserve(cur.size());
    for (auto& v : cur) out.emplace_back(t.partition(), std::move(v));
    return out;
}

/// Per-filter transfer gate: C^1 with Lipschitz derivative, h(0) = 0, and
/// sup |h| <= 1 on the filter's own domain bound.
inline bool transfer_gate(const FilterSpec& h, std::string* why = nullptr) {
    std::string reason;
    if (!regularity_gate(h, &reason)) {
        if (why) *why = reason;
        return false;
    }
    if (!h.zero_at_zero()) {
        if (why) *why = "filter does not vanish at zero";
        return false;
    }
    const double gamma = h.domain_bound();
    for (int i = 0; i <= 2000; ++i) {
        const double x = -gamma + 2.0 * gamma * i / 2000.0;
        if (std::abs(h(x)) > 1.0 + 1e-9) {
            if (why) *why = "filter sup norm exceeds 1 on the domain";
            return false;
        }
    }
    return true;
}

/// End-to-end transfer constant C_L = M^L (1 + L C): M is the largest
/// max-row-sum norm of the weight matrices, C the largest per-filter
/// stability constant.
inline double transfer_constant(const ScnnSpec& s) {
    s.validate();
    std::string offending;
    double c = 0.0;
    for (int l = 0; l < s.layers(); ++l)
        for (std::size_t j = 0; j < s.filters[l].size(); ++j)
            for (std::size_t k = 0; k < s.filters[l][j].size(); ++k) {
                const FilterSpec& h = s.filters[l][j][k];
                std::string why;
                if (!transfer_gate(h, &why)) {
                    offending += "  layer " + std::to_string(l + 1) + " filter (" +
                                 std::to_string(j + 1) + "," + std::to_string(k + 1) +
                                 "): " + why + "\n";
                    continue;
                }
                c = std::max(c, stability_constant(h).lemma_constant);
            }
    if (!offending.empty())
        throw RegularityError("transfer_constant: gate failure\n" + offending);
    double m = 0.0;
    for (const auto& w : s.weights)
        m = std::max(m, w.cwiseAbs().rowwise().sum().maxCoeff());
    const int L = s.layers();
    return std::pow(m, L) * (1.0 + L * c);
}

/// Max-over-features L2 distance between the induced outputs of the network
/// realized on two graphs.
inline double scnn_repercussion(const ScnnSpec& s, const Graph& g1, const FeatureMap& x1,
                                const Graph& g2, const FeatureMap& x2) {
    const FeatureMap out1 = scnn_forward_graph(s, g1, x1);
    const FeatureMap out2 = scnn_forward_graph(s, g2, x2);
    double d = 0.0;
    for (std::size_t k = 0; k < out1.size(); ++k)
        d = std::max(d, l2_distance(induce_signal(out1[k]), induce_signal(out2[k])));
    return d;
}

/// Precondition validator: induced norm of every feature at most 1.
inline void require_normalized(const FeatureMap& x) {
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double induced = x[k].norm() / std::sqrt(static_cast<double>(x[k].size()));
        if (induced > 1.0 + 1e-9)
            throw ParameterError("feature " + std::to_string(k + 1) +
                                 " is not normalized (induced norm " +
                                 std::to_string(induced) + ")");
    }
}

}  // namespace graphon

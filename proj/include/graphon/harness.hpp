#pragma once

#include "graphon/motifs.hpp"
#include "graphon/scnn.hpp"
#include "graphon/spectral.hpp"
#include "graphon/unbounded.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <memory>
#include <random>
#include <tuple>

namespace graphon {

// --- graphon families -------------------------------------------------------

/// "const:p" | "product" | "min" | "expdist:s" | "sbm:k,pin,pout" | "step:file"
inline GraphonEvaluator make_graphon(const std::string& spec) {
    GraphonEvaluator w;
    w.name = spec;
    if (spec.rfind("const:", 0) == 0) {
        const double p = std::stod(spec.substr(6));
        w.eval = [p](double, double) { return p; };
        w.bound = std::abs(p);
        return w;
    }
    if (spec == "product") {
        w.eval = [](double u, double v) { return u * v; };
        w.bound = 1.0;
        return w;
    }
    if (spec == "min") {
        w.eval = [](double u, double v) { return std::min(u, v); };
        w.bound = 1.0;
        return w;
    }
    if (spec.rfind("expdist:", 0) == 0) {
        const double s = std::stod(spec.substr(8));
        if (s < 0.0) throw ParameterError("expdist: rate must be nonnegative");
        w.eval = [s](double u, double v) { return std::exp(-s * std::abs(u - v)); };
        w.bound = 1.0;
        return w;
    }
    if (spec.rfind("sbm:", 0) == 0) {
        std::stringstream ss(spec.substr(4));
        std::string tok;
        std::vector<double> args;
        while (std::getline(ss, tok, ',')) args.push_back(std::stod(tok));
        if (args.size() != 3) throw FormatError("sbm spec needs k,p_in,p_out");
        const int k = static_cast<int>(args[0]);
        if (k < 1) throw ParameterError("sbm: block count must be positive");
        const double pin = args[1], pout = args[2];
        w.eval = [k, pin, pout](double u, double v) {
            const int cu = std::min(k - 1, static_cast<int>(u * k));
            const int cv = std::min(k - 1, static_cast<int>(v * k));
            return cu == cv ? pin : pout;
        };
        w.bound = std::max(std::abs(pin), std::abs(pout));
        return w;
    }
    if (spec.rfind("step:", 0) == 0) {
        const Graph g = read_gso(spec.substr(5));
        // the file stores the block values directly, not a GSO to rescale
        auto sg = std::make_shared<StepGraphon>(Partition::uniform(g.size()), g.gso());
        w.eval = [sg](double u, double v) { return (*sg)(u, v); };
        w.bound = sg->bound();
        return w;
    }
    throw FormatError("make_graphon: unknown graphon spec \"" + spec + "\"");
}

/// Named signal functions on [0,1] used for sampled graph signals.
inline std::function<double(double)> make_signal(const std::string& name) {
    if (name == "one") return [](double) { return 1.0; };
    if (name == "u") return [](double u) { return u; };
    if (name == "cos") return [](double u) { return std::cos(2.0 * M_PI * u); };
    if (name == "sin") return [](double u) { return std::sin(2.0 * M_PI * u); };
    throw FormatError("make_signal: unknown signal \"" + name + "\"");
}

// --- seeded sampling --------------------------------------------------------

enum class SampleMode { Grid, Iid };

inline SampleMode parse_sample_mode(const std::string& s) {
    if (s == "grid") return SampleMode::Grid;
    if (s == "iid") return SampleMode::Iid;
    throw FormatError("sampling mode must be grid or iid");
}

inline std::string to_string(SampleMode m) {
    return m == SampleMode::Grid ? "grid" : "iid";
}

/// Node placements: grid midpoints, or i.i.d. uniforms sorted ascending (the
/// sorting is the alignment convention used everywhere downstream).
inline std::vector<double> sample_points(int n, SampleMode mode, std::uint64_t seed) {
    if (n < 2) throw ParameterError("sample_points: need at least 2 nodes");
    std::vector<double> u(n);
    if (mode == SampleMode::Grid) {
        for (int i = 0; i < n; ++i) u[i] = (i + 0.5) / n;
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (double& ui : u) ui = unif(rng);
        std::sort(u.begin(), u.end());
    }
    return u;
}

inline Graph graph_from_points(const GraphonEvaluator& w, const std::vector<double>& u) {
    const int n = static_cast<int>(u.size());
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) a(i, j) = a(j, i) = w(u[i], u[j]);
    return Graph(a / static_cast<double>(n));  // GWM entries back to GSO scale
}

inline Graph sample_graph(const GraphonEvaluator& w, int n, SampleMode mode,
                          std::uint64_t seed) {
    return graph_from_points(w, sample_points(n, mode, seed));
}

/// Signal sampled at the same node placements as the graph with this seed.
inline GraphSignal sample_signal(const std::function<double(double)>& f, int n,
                                 SampleMode mode, std::uint64_t seed) {
    const std::vector<double> u = sample_points(n, mode, seed);
    ComplexVector v(n);
    for (int i = 0; i < n; ++i) v[i] = f(u[i]);
    return GraphSignal(std::move(v));
}

/// Per-trial seed: FNV-1a over (master seed, experiment name, size, trial),
/// so trials are reproducible independently of execution order.
inline std::uint64_t derive_seed(std::uint64_t master, const std::string& experiment,
                                 int n, int trial) {
    std::uint64_t h = 14695981039346656037ull;
    const auto mix = [&h](std::uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xffu;
            h *= 1099511628211ull;
        }
    };
    mix(master);
    for (char c : experiment) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    mix(static_cast<std::uint64_t>(n));
    mix(static_cast<std::uint64_t>(trial));
    return h;
}

// --- CSV reporting ----------------------------------------------------------

struct CsvRow {
    std::string experiment;
    std::string graphon;
    std::string filter_or_scnn;
    int n = 0;
    int m = 0;
    int trial = 0;
    std::uint64_t seed = 0;
    std::string metric;
    double value = 0.0;
};

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Fixed column schema; rows are ordered by (n, trial, metric) regardless of
/// the order they were produced in.
inline void write_csv(std::ostream& os, std::vector<CsvRow> rows,
                      bool timestamp_header = true) {
    if (timestamp_header) {
        const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[64];
        std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&now));
        os << "# generated " << buf << "\n";
    }
    std::stable_sort(rows.begin(), rows.end(), [](const CsvRow& a, const CsvRow& b) {
        return std::tie(a.n, a.trial, a.metric) < std::tie(b.n, b.trial, b.metric);
    });
    os << "experiment,graphon,filter_or_scnn,n,m,trial,seed,metric,value\n";
    for (const auto& r : rows)
        os << r.experiment << "," << r.graphon << "," << r.filter_or_scnn << "," << r.n
           << "," << r.m << "," << r.trial << "," << r.seed << "," << r.metric << ","
           << format_double(r.value) << "\n";
}

inline double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

/// Strict decrease along a ladder; consecutive values that both sit below the
/// exactness floor (kernels representable exactly at every size) count as
/// converged rather than as violations.
inline bool strictly_decreasing(const std::vector<double>& v, double floor_tol = 1e-12,
                                int allowed_exceptions = 0) {
    int bad = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] < v[i - 1]) continue;
        if (v[i] <= floor_tol && v[i - 1] <= floor_tol) continue;
        ++bad;
    }
    return bad <= allowed_exceptions;
}

// --- experiment runners -----------------------------------------------------

struct ConvergenceConfig {
    std::string experiment = "converge";
    std::string graphon = "product";
    std::string filter = "sq";
    std::vector<int> sizes;
    SampleMode mode = SampleMode::Grid;
    int trials = 1;
    std::uint64_t seed = 0;

    void validate() const {
        if (sizes.empty()) throw ParameterError("config: sizes must be nonempty");
        for (std::size_t i = 1; i < sizes.size(); ++i)
            if (sizes[i] <= sizes[i - 1])
                throw ParameterError("config: sizes must be strictly increasing");
        if (trials < 1) throw ParameterError("config: trials must be at least 1");
    }
};

struct ConvergenceResult {
    std::vector<CsvRow> rows;
    int reference_size = 0;
    std::vector<double> medians;  // one per size
    bool median_decreasing = false;
};

/// Distance of each sampled, filtered, induced operator to a high-resolution
/// reference: the filter applied to the grid discretization of the graphon at
/// twice the largest requested size.
inline ConvergenceResult run_convergence(const ConvergenceConfig& cfg) {
    cfg.validate();
    const GraphonEvaluator w = make_graphon(cfg.graphon);
    const FilterSpec h = FilterSpec::parse(cfg.filter, std::max(1.0, w.bound));

    ConvergenceResult out;
    out.reference_size = 2 * cfg.sizes.back();
    const Graph ref = sample_graph(w, out.reference_size, SampleMode::Grid, 0);
    const StepGraphon ref_filtered = induce_graphon(filter_graph(h, ref));

    for (int n : cfg.sizes) {
        std::vector<double> values;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            const std::uint64_t seed = derive_seed(cfg.seed, cfg.experiment, n, trial);
            const Graph g = sample_graph(w, n, cfg.mode, seed);
            const StepGraphon filtered = induce_graphon(filter_graph(h, g));
            const double d = operator_distance(filtered, ref_filtered);
            values.push_back(d);
            out.rows.push_back({cfg.experiment, w.name, h.name(), n, out.reference_size,
                                trial, seed, "op_distance", d});
        }
        out.medians.push_back(median(values));
    }
    out.median_decreasing = strictly_decreasing(out.medians);
    return out;
}

struct TransferConfig {
    std::string experiment = "transfer";
    std::string graphon = "product";
    std::string filter = "sq";
    int n1 = 32;
    int n2 = 64;
    int trials = 1;
    std::uint64_t seed = 0;
};

struct TransferTrial {
    int trial = 0;
    std::uint64_t seed1 = 0, seed2 = 0;
    double lhs = 0.0;      // distance of the induced filtered operators
    double rhs_raw = 0.0;  // distance of the raw induced operators
    bool holds = false;
};

struct TransferResult {
    std::vector<TransferTrial> trials;
    double constant = 0.0;  // stability constant of the filter
    bool all_hold = false;
    std::vector<CsvRow> rows;
};

/// Linear stability experiment: compare |T_{n1 h(D1)} - T_{n2 h(D2)}| against
/// C * |T_{A1} - T_{A2}| for independently sampled graphs of two sizes.
inline TransferResult run_transfer_bound(const TransferConfig& cfg) {
    if (cfg.trials < 1) throw ParameterError("config: trials must be at least 1");
    const GraphonEvaluator w = make_graphon(cfg.graphon);
    const double gamma = std::max(w.bound, 1e-9);
    const FilterSpec h = FilterSpec::parse(cfg.filter, gamma);
    std::string why;
    if (!regularity_gate(h, &why) || !h.zero_at_zero())
        throw RegularityError("run_transfer_bound: filter fails the stability gate: " +
                              (why.empty() ? "h(0) != 0" : why));

    TransferResult out;
    out.constant = stability_constant(h).lemma_constant;
    out.all_hold = true;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        TransferTrial t;
        t.trial = trial;
        t.seed1 = derive_seed(cfg.seed, cfg.experiment + "/a", cfg.n1, trial);
        t.seed2 = derive_seed(cfg.seed, cfg.experiment + "/b", cfg.n2, trial);
        const Graph g1 = sample_graph(w, cfg.n1, SampleMode::Iid, t.seed1);
        const Graph g2 = sample_graph(w, cfg.n2, SampleMode::Iid, t.seed2);
        t.lhs = operator_distance(induce_graphon(filter_graph(h, g1)),
                                  induce_graphon(filter_graph(h, g2)));
        t.rhs_raw = operator_distance(induce_graphon(g1), induce_graphon(g2));
        t.holds = t.lhs <= out.constant * t.rhs_raw + 1e-8;
        out.all_hold = out.all_hold && t.holds;
        for (const auto& [metric, value] :
             std::initializer_list<std::pair<const char*, double>>{
                 {"lhs", t.lhs},
                 {"rhs_raw", t.rhs_raw},
                 {"constant", out.constant},
                 {"bound_holds", t.holds ? 1.0 : 0.0}})
            out.rows.push_back({cfg.experiment, w.name, h.name(), cfg.n1, cfg.n2, trial,
                                t.seed1, metric, value});
        out.trials.push_back(t);
    }
    return out;
}

struct ScnnTransferConfig {
    std::string experiment = "scnn";
    std::string graphon = "sbm:2,0.8,0.2";
    ScnnSpec spec;
    std::string spec_name = "scnn";
    std::vector<std::string> inputs;  // named signals, one per input feature
    int n1 = 64;
    int n2 = 128;
    int trials = 1;
    std::uint64_t seed = 0;
};

struct ScnnTransferTrial {
    int trial = 0;
    double epsilon = 0.0;
    double repercussion = 0.0;
    bool holds = false;
};

struct ScnnTransferResult {
    std::vector<ScnnTransferTrial> trials;
    double constant = 0.0;  // C_L
    bool all_hold = false;
    std::vector<CsvRow> rows;
};

/// End-to-end transfer experiment: repercussion of the network on two sampled
/// graphs against C_L * max(operator distance, induced input distance).
inline ScnnTransferResult run_scnn_transfer(const ScnnTransferConfig& cfg) {
    if (cfg.trials < 1) throw ParameterError("config: trials must be at least 1");
    const GraphonEvaluator w = make_graphon(cfg.graphon);
    cfg.spec.validate();
    if (static_cast<int>(cfg.inputs.size()) != cfg.spec.widths[0])
        throw ParameterError("run_scnn_transfer: need one input signal per feature");

    ScnnTransferResult out;
    out.constant = transfer_constant(cfg.spec);
    out.all_hold = true;

    const auto features = [&](int n, std::uint64_t seed) {
        FeatureMap x;
        for (const auto& name : cfg.inputs)
            x.push_back(sample_signal(make_signal(name), n, SampleMode::Iid, seed));
        return x;
    };

    for (int trial = 0; trial < cfg.trials; ++trial) {
        const std::uint64_t s1 = derive_seed(cfg.seed, cfg.experiment + "/a", cfg.n1, trial);
        const std::uint64_t s2 = derive_seed(cfg.seed, cfg.experiment + "/b", cfg.n2, trial);
        const Graph g1 = sample_graph(w, cfg.n1, SampleMode::Iid, s1);
        const Graph g2 = sample_graph(w, cfg.n2, SampleMode::Iid, s2);
        const FeatureMap x1 = features(cfg.n1, s1);
        const FeatureMap x2 = features(cfg.n2, s2);
        require_normalized(x1);
        require_normalized(x2);

        double sig_dist = 0.0;
        for (std::size_t k = 0; k < x1.size(); ++k)
            sig_dist = std::max(sig_dist,
                                l2_distance(induce_signal(x1[k]), induce_signal(x2[k])));
        const double op_dist =
            operator_distance(induce_graphon(g1), induce_graphon(g2));

        ScnnTransferTrial t;
        t.trial = trial;
        t.epsilon = std::max(op_dist, sig_dist);
        t.repercussion = scnn_repercussion(cfg.spec, g1, x1, g2, x2);
        t.holds = t.repercussion <= out.constant * t.epsilon + 1e-7;
        out.all_hold = out.all_hold && t.holds;
        for (const auto& [metric, value] :
             std::initializer_list<std::pair<const char*, double>>{
                 {"epsilon", t.epsilon},
                 {"repercussion", t.repercussion},
                 {"constant", out.constant},
                 {"bound_holds", t.holds ? 1.0 : 0.0}})
            out.rows.push_back({cfg.experiment, w.name, cfg.spec_name, cfg.n1, cfg.n2,
                                trial, s1, metric, value});
        out.trials.push_back(t);
    }
    return out;
}

struct LaplaceConfig {
    std::string experiment = "laplace";
    double lambda = 50.0;
    int power = 2;
    std::vector<int> sizes;
    double scale_exponent = 2.0;  // GSO multiplied by n^e; 2 matches the grid spacing
    double sign = -1.0;           // comparison target sign, see unbdd_convergence_gap
};

struct LaplaceResult {
    std::vector<double> convergence_gaps;
    std::vector<double> commutation_gaps;
    bool gaps_decreasing = false;
    std::vector<CsvRow> rows;
};

/// Band-compression diagnostics of the finite-difference sequence against the
/// circle Laplacian.
inline LaplaceResult run_laplace(const LaplaceConfig& cfg) {
    if (cfg.lambda <= 0.0) throw ParameterError("laplace: band must be positive");
    if (cfg.power < 1) throw ParameterError("laplace: power must be at least 1");
    if (cfg.sizes.empty()) throw ParameterError("laplace: sizes must be nonempty");
    const SpectralModel model = SpectralModel::laplace();
    LaplaceResult out;
    for (int n : cfg.sizes) {
        const Graph g = finite_difference_graph(n);
        const double scale = std::pow(static_cast<double>(n), cfg.scale_exponent);
        const Graph scaled(scale * g.gso());
        const StepOperator t = induce_operator(scaled);
        const double cgap = unbdd_convergence_gap(model, cfg.lambda, t, cfg.sign);
        const double kgap = approx_commutation_gap(model, cfg.lambda, t, cfg.power);
        out.convergence_gaps.push_back(cgap);
        out.commutation_gaps.push_back(kgap);
        out.rows.push_back({cfg.experiment, "finite-difference", "x^" + std::to_string(cfg.power),
                            n, 0, 0, 0, "convergence_gap", cgap});
        out.rows.push_back({cfg.experiment, "finite-difference", "x^" + std::to_string(cfg.power),
                            n, 0, 0, 0, "commutation_gap", kgap});
    }
    out.gaps_decreasing = strictly_decreasing(out.convergence_gaps, 1e-12, 1) &&
                          strictly_decreasing(out.commutation_gaps, 1e-12, 1);
    return out;
}

}  // namespace graphon

#pragma once

#include "graphon/core.hpp"

#include <random>

namespace graphon {

/// A simple motif: at most 6 nodes, undirected edges, no loops.
class Motif {
public:
    Motif(int nodes, std::vector<std::pair<int, int>> edges)
        : nodes_(nodes), edges_(std::move(edges)) {
        if (nodes_ < 1 || nodes_ > 6)
            throw ParameterError("Motif: node count must be in 1..6");
        std::vector<std::vector<char>> seen(nodes_, std::vector<char>(nodes_, 0));
        for (auto& [u, v] : edges_) {
            if (u > v) std::swap(u, v);
            if (u < 0 || v >= nodes_ || u == v)
                throw ParameterError("Motif: invalid edge");
            if (seen[u][v]) throw ParameterError("Motif: duplicate edge");
            seen[u][v] = 1;
        }
    }

    static Motif complete(int k) {
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) e.emplace_back(i, j);
        return Motif(k, std::move(e));
    }

    static Motif path(int k) {
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i + 1 < k; ++i) e.emplace_back(i, i + 1);
        return Motif(k, std::move(e));
    }

    static Motif cycle(int k) {
        auto m = path(k);
        std::vector<std::pair<int, int>> e = m.edges();
        e.emplace_back(0, k - 1);
        return Motif(k, std::move(e));
    }

    /// "K2" | "K3" | "P3" | "C4" | ... | "edges:0-1,1-2,..." (node count inferred).
    static Motif parse(const std::string& s) {
        if (s.size() == 2 && (s[0] == 'K' || s[0] == 'P' || s[0] == 'C')) {
            const int k = s[1] - '0';
            if (k >= 1 && k <= 6) {
                if (s[0] == 'K') return complete(k);
                if (s[0] == 'P') return path(k);
                if (k >= 3) return cycle(k);
            }
        }
        if (s.rfind("edges:", 0) == 0) {
            std::vector<std::pair<int, int>> e;
            int max_node = 0;
            std::stringstream ss(s.substr(6));
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                const auto dash = tok.find('-');
                if (dash == std::string::npos)
                    throw FormatError("Motif: bad edge token \"" + tok + "\"");
                const int u = std::stoi(tok.substr(0, dash));
                const int v = std::stoi(tok.substr(dash + 1));
                e.emplace_back(u, v);
                max_node = std::max({max_node, u, v});
            }
            return Motif(max_node + 1, std::move(e));
        }
        throw FormatError("Motif: unknown motif spec \"" + s + "\"");
    }

    int nodes() const { return nodes_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

private:
    int nodes_;
    std::vector<std::pair<int, int>> edges_;
};

namespace detail {

constexpr double kHomBudget = 1e8;

// Sum over all node maps of the edge-weight product, weights(i,j) read from
// the given matrix, each map additionally weighted by node_weight(i).
template <typename NodeWeight>
double hom_sum(const Motif& f, const Matrix& weights, NodeWeight node_weight) {
    const int base = static_cast<int>(weights.rows());
    const int nv = f.nodes();
    if (std::pow(static_cast<double>(base), nv) > kHomBudget)
        throw ParameterError(
            "homomorphism enumeration budget exceeded; use the Monte Carlo density instead");
    std::vector<int> assign(nv, 0);
    double total = 0.0;
    while (true) {
        double term = 1.0;
        for (const auto& [u, v] : f.edges()) term *= weights(assign[u], assign[v]);
        for (int i = 0; i < nv; ++i) term *= node_weight(assign[i]);
        total += term;
        int pos = nv - 1;
        while (pos >= 0 && ++assign[pos] == base) assign[pos--] = 0;
        if (pos < 0) break;
    }
    return total;
}

}  // namespace detail

/// hom(F,G): sum over all node maps of the GWM edge-weight products.
inline double hom_number(const Motif& f, const Graph& g) {
    const Matrix a = g.gwm();
    return detail::hom_sum(f, a, [](int) { return 1.0; });
}

/// t(F,G) = |hom(F,G)| / n^{|V(F)|}.
inline double hom_density_graph(const Motif& f, const Graph& g) {
    return std::abs(hom_number(f, g)) /
           std::pow(static_cast<double>(g.size()), f.nodes());
}

/// Signed homomorphism density of a motif in a step graphon (exact cell sum).
inline double hom_density_step(const Motif& f, const StepGraphon& w) {
    const Vector mu = w.partition().measures();
    return detail::hom_sum(f, w.values(), [&](int i) { return mu[i]; });
}

struct McEstimate {
    double estimate;
    double stderr_;
};

/// Monte Carlo estimate of t(F,W) for a general graphon evaluator.
inline McEstimate hom_density_mc(const Motif& f, const GraphonEvaluator& w, int samples,
                                 std::uint64_t seed) {
    if (samples < 100) throw ParameterError("hom_density_mc: need at least 100 samples");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> u(f.nodes());
    double sum = 0.0, sumsq = 0.0;
    for (int s = 0; s < samples; ++s) {
        for (double& ui : u) ui = unif(rng);
        double term = 1.0;
        for (const auto& [a, b] : f.edges()) term *= w(u[a], u[b]);
        sum += term;
        sumsq += term * term;
    }
    const double mean = sum / samples;
    const double var = std::max(0.0, sumsq / samples - mean * mean);
    return {mean, std::sqrt(var / samples)};
}

struct CutNorm {
    double value = 0.0;
    std::vector<int> s_cells;
    std::vector<int> t_cells;
};

/// Exact cut norm of a step graphon. For a fixed cell subset S the optimal T
/// is sign-greedy per column, so the search space is 2^k instead of 4^k; the
/// supremum over measurable sets is attained on unions of cells because the
/// rectangle integral is linear in each cell's inclusion fraction.
inline CutNorm cut_norm_exact(const StepGraphon& w) {
    const int k = w.cells();
    if (k > 20)
        throw ParameterError("cut_norm_exact: more than 20 cells, use the heuristic");
    const Vector mu = w.partition().measures();
    Matrix mass(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) mass(i, j) = w.values()(i, j) * mu[i] * mu[j];

    Vector r = Vector::Zero(k);  // column sums over the current S
    std::uint32_t mask = 0;
    double best = 0.0;
    std::uint32_t best_mask = 0;
    bool best_positive = true;
    const std::uint32_t total = 1u << k;
    for (std::uint32_t g = 1; g < total; ++g) {
        // Gray-code step: one cell flips per iteration
        const std::uint32_t gray = g ^ (g >> 1);
        const std::uint32_t prev = (g - 1) ^ ((g - 1) >> 1);
        const int flip = std::countr_zero(gray ^ prev);
        if (gray & (1u << flip))
            r += mass.row(flip).transpose();
        else
            r -= mass.row(flip).transpose();
        mask = gray;
        double plus = 0.0, minus = 0.0;
        for (int j = 0; j < k; ++j) {
            if (r[j] > 0.0) plus += r[j];
            if (r[j] < 0.0) minus -= r[j];
        }
        const double val = std::max(plus, minus);
        const bool positive = plus >= minus;
        if (val > best || (val == best && mask < best_mask)) {
            best = val;
            best_mask = mask;
            best_positive = positive;
        }
    }

    CutNorm out;
    out.value = best;
    Vector rbest = Vector::Zero(k);
    for (int i = 0; i < k; ++i)
        if (best_mask & (1u << i)) {
            out.s_cells.push_back(i);
            rbest += mass.row(i).transpose();
        }
    for (int j = 0; j < k; ++j)
        if ((best_positive && rbest[j] > 0.0) || (!best_positive && rbest[j] < 0.0))
            out.t_cells.push_back(j);
    return out;
}

/// Randomized greedy lower bound on the cut norm: random restarts of a
/// single-cell flip descent on S, with T chosen sign-greedily.
inline double cut_norm_heuristic(const StepGraphon& w, int restarts, std::uint64_t seed) {
    const int k = w.cells();
    const Vector mu = w.partition().measures();
    Matrix mass(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) mass(i, j) = w.values()(i, j) * mu[i] * mu[j];

    const auto value_of = [&](const Vector& r) {
        double plus = 0.0, minus = 0.0;
        for (int j = 0; j < k; ++j) {
            if (r[j] > 0.0) plus += r[j];
            if (r[j] < 0.0) minus -= r[j];
        }
        return std::max(plus, minus);
    };

    std::mt19937_64 rng(seed);
    double best = 0.0;  // empty rectangle is always feasible
    for (int rs = 0; rs < std::max(1, restarts); ++rs) {
        std::vector<char> in(k, 0);
        for (int i = 0; i < k; ++i) in[i] = static_cast<char>(rng() & 1u);
        Vector r = Vector::Zero(k);
        for (int i = 0; i < k; ++i)
            if (in[i]) r += mass.row(i).transpose();
        double cur = value_of(r);
        bool improved = true;
        while (improved) {
            improved = false;
            for (int i = 0; i < k; ++i) {
                const double sgn = in[i] ? -1.0 : 1.0;
                Vector cand = r + sgn * mass.row(i).transpose();
                const double v = value_of(cand);
                if (v > cur + 1e-15) {
                    cur = v;
                    r = std::move(cand);
                    in[i] = !in[i];
                    improved = true;
                }
            }
        }
        best = std::max(best, cur);
    }
    return best;
}

enum class AlignMode { Exact, Heuristic };

namespace detail {

inline double aligned_diff_cut(const StepGraphon& a, const StepGraphon& b,
                               const std::vector<int>& perm, bool exact,
                               std::uint64_t seed) {
    const int n = a.cells();
    Matrix diff(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            diff(i, j) = a.values()(i, j) - b.values()(perm[i], perm[j]);
    StepGraphon d(a.partition(), std::move(diff));
    return exact ? cut_norm_exact(d).value : cut_norm_heuristic(d, 8, seed);
}

}  // namespace detail

/// Upper bound on the cut distance between two step graphons on uniform
/// partitions of equal size: minimum over node permutations of the cut norm
/// of the aligned difference. Exact mode enumerates all n! permutations.
inline double cut_distance_aligned(const StepGraphon& a, const StepGraphon& b,
                                   AlignMode mode, std::uint64_t seed = 0) {
    const int n = a.cells();
    if (b.cells() != n)
        throw DimensionError("cut_distance_aligned: sizes differ, no overlay implemented");
    if (!a.partition().same_as(Partition::uniform(n)) ||
        !b.partition().same_as(Partition::uniform(n)))
        throw ParameterError("cut_distance_aligned: partitions must be uniform");

    if (mode == AlignMode::Exact) {
        if (n > 8) throw ParameterError("cut_distance_aligned: exact mode needs n <= 8");
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        double best = std::numeric_limits<double>::infinity();
        do {
            best = std::min(best, detail::aligned_diff_cut(a, b, perm, true, seed));
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }

    // heuristic: degree-sort alignment, then pairwise-swap descent
    const bool exact_cut = n <= 14;
    const auto degree_order = [](const StepGraphon& w) {
        const int k = w.cells();
        std::vector<int> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        Vector deg = w.values().rowwise().sum();
        std::stable_sort(idx.begin(), idx.end(),
                         [&](int i, int j) { return deg[i] > deg[j]; });
        return idx;
    };
    const auto oa = degree_order(a);
    const auto ob = degree_order(b);
    std::vector<int> perm(n);
    for (int r = 0; r < n; ++r) perm[oa[r]] = ob[r];
    double best = detail::aligned_diff_cut(a, b, perm, exact_cut, seed);
    bool improved = true;
    while (improved) {
        improved = false;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                std::swap(perm[i], perm[j]);
                const double v = detail::aligned_diff_cut(a, b, perm, exact_cut, seed);
                if (v < best - 1e-15) {
                    best = v;
                    improved = true;
                } else {
                    std::swap(perm[i], perm[j]);
                }
            }
    }
    return best;
}

}  // namespace graphon

#pragma once

#include "graphon/core.hpp"

namespace graphon {

/// Step graphon induced by a graph: value A(i,j) = n * gso(i,j) on the
/// uniform cell P_i x P_j.
inline StepGraphon induce_graphon(const Graph& g) {
    return StepGraphon(Partition::uniform(g.size()), g.gwm());
}

/// Step signal induced by a graph signal: value x_j on cell P_j, so that
/// the L2 norm equals (1/sqrt(n)) * |x|.
inline StepSignal induce_signal(const GraphSignal& x) {
    return StepSignal(Partition::uniform(x.size()), x.values);
}

namespace detail {

// Sorted union of two breakpoint lists; points closer than 1e-14 merge.
inline std::vector<double> merge_breakpoints(const std::vector<double>& a,
                                             const std::vector<double>& b) {
    std::vector<double> all;
    all.reserve(a.size() + b.size());
    all.insert(all.end(), a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end());
    std::vector<double> out;
    out.reserve(all.size());
    for (double x : all)
        if (out.empty() || x - out.back() > 1e-14) out.push_back(x);
    out.front() = 0.0;
    out.back() = 1.0;
    return out;
}

// For each refined cell, the index of the source cell containing it.
inline std::vector<int> cell_map(const Partition& fine, const Partition& coarse) {
    std::vector<int> map(fine.cells());
    for (int i = 0; i < fine.cells(); ++i) {
        const double mid = 0.5 * (fine.breakpoints()[i] + fine.breakpoints()[i + 1]);
        map[i] = coarse.cell_of(mid);
    }
    return map;
}

}  // namespace detail

/// Re-express two step graphons on the common refinement of their
/// partitions. Values are unchanged pointwise a.e.
inline std::pair<StepGraphon, StepGraphon> common_refinement(const StepGraphon& a,
                                                             const StepGraphon& b) {
    Partition joint(detail::merge_breakpoints(a.partition().breakpoints(),
                                              b.partition().breakpoints()));
    const auto ma = detail::cell_map(joint, a.partition());
    const auto mb = detail::cell_map(joint, b.partition());
    const int k = joint.cells();
    Matrix va(k, k), vb(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            va(i, j) = a.values()(ma[i], ma[j]);
            vb(i, j) = b.values()(mb[i], mb[j]);
        }
    return {StepGraphon(joint, std::move(va)), StepGraphon(std::move(joint), std::move(vb))};
}

/// Common-refinement counterpart for step signals.
inline std::pair<StepSignal, StepSignal> signal_refinement(const StepSignal& a,
                                                           const StepSignal& b) {
    Partition joint(detail::merge_breakpoints(a.partition().breakpoints(),
                                              b.partition().breakpoints()));
    const auto ma = detail::cell_map(joint, a.partition());
    const auto mb = detail::cell_map(joint, b.partition());
    const int k = joint.cells();
    ComplexVector va(k), vb(k);
    for (int i = 0; i < k; ++i) {
        va[i] = a.values()[ma[i]];
        vb[i] = b.values()[mb[i]];
    }
    return {StepSignal(joint, std::move(va)), StepSignal(std::move(joint), std::move(vb))};
}

/// L2 distance between two step signals on arbitrary partitions.
inline double l2_distance(const StepSignal& a, const StepSignal& b) {
    auto [ra, rb] = signal_refinement(a, b);
    double s = 0.0;
    for (int i = 0; i < ra.cells(); ++i)
        s += ra.partition().measure(i) * std::norm(ra.values()[i] - rb.values()[i]);
    return std::sqrt(s);
}

}  // namespace graphon

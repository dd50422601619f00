#pragma once

#include "graphon/core.hpp"

#include <random>

namespace testutil {

inline graphon::Matrix random_symmetric(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    graphon::Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m(i, j) = m(j, i) = unif(rng);
    return m;
}

inline graphon::ComplexVector random_complex(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    graphon::ComplexVector v(n);
    for (int i = 0; i < n; ++i) v[i] = graphon::Complex(unif(rng), unif(rng));
    return v;
}

// Independent spectral-norm oracle: power iteration on m^2 (squaring makes
// the dominant eigenvalue unique in magnitude even for a sign-symmetric
// spectrum), final estimate sqrt of the Rayleigh quotient.
inline double power_iteration_opnorm(const graphon::Matrix& m, int iters = 20000) {
    const graphon::Matrix m2 = m * m;
    graphon::Vector v = graphon::Vector::Ones(m.rows());
    v[0] = 1.5;  // break symmetry
    v.normalize();
    double estimate = 0.0;
    for (int it = 0; it < iters; ++it) {
        graphon::Vector w = m2 * v;
        const double nw = w.norm();
        if (nw == 0.0) return 0.0;
        w /= nw;
        const double next = std::sqrt(std::abs(w.dot(m2 * w)));
        if (it > 10 && std::abs(next - estimate) < 1e-13 * std::max(1.0, next)) {
            estimate = next;
            break;
        }
        estimate = next;
        v = std::move(w);
    }
    return estimate;
}

}  // namespace testutil

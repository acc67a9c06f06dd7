#pragma once

// Grundmann-Moeller quadrature on the reference n-simplex, organized by the
// rule index s (exact for total degree 2s+1). The point sets are nested
// across s, which lets integrals of hierarchically enriched bases reuse
// evaluations. Weights are kept exactly as rationals with a double mirror.

#include <hpfec/polynomial.hpp>

#include <memory>
#include <mutex>
#include <vector>

namespace hpfec {

struct QuadratureRule
{
    int n = 0;
    int s = 0;
    int exact_degree = 0;
    std::vector<std::vector<Rational>> points; // reference coordinates (size n each)
    std::vector<Rational> weights;

    std::vector<std::vector<double>> points_d;
    std::vector<double> weights_d;

    std::size_t size() const { return weights.size(); }
};

/// Builds the rule of index s on the n-simplex; exact for degree 2s+1.
QuadratureRule grundmann_moeller(int n, int s);

/// Cached, shared rules.
const QuadratureRule& quadrature_cache(int n, int s);

/// Smallest rule index exact for the given polynomial degree.
inline int rule_index_for_degree(int degree)
{
    return std::max(0, (degree - 1 + 1) / 2); // 2s+1 >= degree
}

template <typename T>
T integrate(const Polynomial<T>& p, const QuadratureRule& rule)
{
    T sum(0);
    if constexpr (std::is_same_v<T, double>) {
        for (std::size_t i = 0; i < rule.size(); ++i)
            sum += rule.weights_d[i] * p.template evaluate<double>(rule.points_d[i]);
    } else {
        for (std::size_t i = 0; i < rule.size(); ++i) {
            std::vector<T> x(rule.points[i].begin(), rule.points[i].end());
            sum += T(rule.weights[i]) * p.template evaluate<T>(x);
        }
    }
    return sum;
}

} // namespace hpfec

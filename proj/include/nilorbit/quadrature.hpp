#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace nilorbit {

/// Gauss-Legendre nodes and weights on [-1,1], computed once per order by
/// Newton iteration on the Legendre recurrence and cached.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussLegendreRule &gauss_legendre(int order);

/// Composite Gauss-Legendre: `panels` equal panels of the given order.
struct QuadratureSpec {
    int panels = 8;
    int order = 16;

    QuadratureSpec scaled(int factor) const { return {panels * factor, order}; }
    int points() const { return panels * order; }
};

/// Flattened node/weight list for the composite rule over [a,b].
void composite_nodes(const QuadratureSpec &spec, double a, double b,
                     std::vector<double> &nodes, std::vector<double> &weights);

std::complex<double> integrate(const QuadratureSpec &spec, double a, double b,
                               const std::function<std::complex<double>(double)> &f);

} // namespace nilorbit

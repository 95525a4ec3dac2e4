#include "nilorbit/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace nilorbit {

namespace {

GaussLegendreRule compute_rule(int order) {
    GaussLegendreRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < order; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = order * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    return rule;
}

} // namespace

const GaussLegendreRule &gauss_legendre(int order) {
    if (order < 1 || order > 512) throw std::invalid_argument("gauss_legendre order");
    static std::map<int, GaussLegendreRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
    return it->second;
}

void composite_nodes(const QuadratureSpec &spec, double a, double b,
                     std::vector<double> &nodes, std::vector<double> &weights) {
    const GaussLegendreRule &rule = gauss_legendre(spec.order);
    nodes.clear();
    weights.clear();
    nodes.reserve(spec.points());
    weights.reserve(spec.points());
    const double h = (b - a) / spec.panels;
    for (int p = 0; p < spec.panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h, half = 0.5 * h;
        for (int i = 0; i < spec.order; ++i) {
            nodes.push_back(mid + half * rule.nodes[i]);
            weights.push_back(half * rule.weights[i]);
        }
    }
}

std::complex<double> integrate(const QuadratureSpec &spec, double a, double b,
                               const std::function<std::complex<double>(double)> &f) {
    std::vector<double> nodes, weights;
    composite_nodes(spec, a, b, nodes, weights);
    std::complex<double> sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
}

} // namespace nilorbit

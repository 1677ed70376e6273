#include "arrdual/quadrature.hpp"

#include "arrdual/errors.hpp"

#include <algorithm>
#include <cmath>

namespace arrdual::quadrature {

double jacobi_poly(int n, double a, double b, double x) {
    if (n == 0) return 1.0;
    double p0 = 1.0;
    double p1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
    for (int m = 2; m <= n; ++m) {
        double s = 2.0 * m + a + b;
        double c1 = 2.0 * m * (m + a + b) * (s - 2.0);
        double c2 = (s - 1.0) * (a * a - b * b);
        double c3 = (s - 2.0) * (s - 1.0) * s;
        double c4 = 2.0 * (m + a - 1.0) * (m + b - 1.0) * s;
        double p2 = ((c2 + c3 * x) * p1 - c4 * p0) / c1;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

double jacobi_poly_derivative(int n, double a, double b, double x) {
    if (n == 0) return 0.0;
    return 0.5 * (n + a + b + 1.0) * jacobi_poly(n - 1, a + 1.0, b + 1.0, x);
}

Rule gauss_jacobi(int n, double a, double b) {
    if (n < 1) throw DomainError("quadrature rule needs at least one node");
    if (a <= -1.0 || b <= -1.0) throw DomainError("Jacobi exponents must exceed -1");

    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    for (int i = 1; i <= n; ++i) {
        // Chebyshev-flavored initial guess, refined by Newton iteration.
        double x = std::cos(M_PI * (0.5 * a + i - 0.25) / (0.5 * (1.0 + a + b) + n));
        for (int it = 0; it < 200; ++it) {
            double p = jacobi_poly(n, a, b, x);
            double dp = jacobi_poly_derivative(n, a, b, x);
            double step = p / dp;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        rule.nodes[i - 1] = x;
    }
    std::sort(rule.nodes.begin(), rule.nodes.end());
    for (int i = 1; i < n; ++i)
        if (!(rule.nodes[i] > rule.nodes[i - 1]))
            throw Error("Gauss-Jacobi Newton iteration produced coincident nodes");

    double log_factor = std::lgamma(n + a + 1.0) + std::lgamma(n + b + 1.0) -
                        std::lgamma(n + a + b + 1.0) - std::lgamma(n + 2.0);
    double factor = -(2.0 * n + a + b + 2.0) / (n + a + b + 1.0) * std::exp(log_factor) *
                    std::pow(2.0, a + b);
    for (int i = 0; i < n; ++i) {
        double x = rule.nodes[i];
        double dp = jacobi_poly_derivative(n, a, b, x);
        rule.weights[i] = factor / (dp * jacobi_poly(n + 1, a, b, x));
    }
    return rule;
}

}  // namespace arrdual::quadrature

#pragma once

#include <vector>

namespace arrdual::quadrature {

// Nodes and weights on [-1, 1] for the weight (1-x)^a (1+x)^b, a, b > -1.
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

double jacobi_poly(int n, double a, double b, double x);
double jacobi_poly_derivative(int n, double a, double b, double x);

Rule gauss_jacobi(int n, double a, double b);

inline Rule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

}  // namespace arrdual::quadrature
